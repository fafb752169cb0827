// edparse: command-line front end for the enhanced UD parser toolkit.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 semantic failure
// (non-derivable sentence, replay mismatch, invalid graph, misaligned
// evaluation input).

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "edparse/conllu.h"
#include "edparse/evaluation.h"
#include "edparse/linear_model.h"
#include "edparse/oracle.h"
#include "edparse/policy.h"
#include "edparse/postprocess.h"

namespace edparse {
namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kSemanticError = 2;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "-" or empty means standard input / output.
bool IsStdio(const std::string& path) { return path.empty() || path == "-"; }

Document ReadDocument(const std::string& path) {
  if (IsStdio(path)) return ParseConllu(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return ParseConllu(in);
}

// Writes to a file or stdout. Files are written in full or not at all from
// the caller's point of view: content is buffered and flushed on Commit.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buffer_; }
  void Commit() {
    if (IsStdio(path_)) {
      std::cout << buffer_.str() << std::flush;
      return;
    }
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path_);
    out << buffer_.str();
    if (!out.flush()) throw IoError("cannot write " + path_);
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

std::string Label(const Sentence& s, size_t index) {
  const std::string id = s.SentId();
  return id.empty() ? "#" + std::to_string(index + 1) : id;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Work is handed out by
// index, so any result written to slot i keeps the input order.
void ParallelFor(size_t n, int jobs, const std::function<void(size_t)>& fn) {
  const size_t threads =
      std::min<size_t>(n, static_cast<size_t>(std::max(jobs, 1)));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct CommonFlags {
  int budget_multiplier = 50;
  int max_heads = 7;
  double max_nulls_per_word = 1.0;
  int jobs = 1;

  ConstraintParams params() const { return {max_heads, max_nulls_per_word}; }
};

void AddConstraintFlags(CLI::App* app, CommonFlags& flags) {
  app->add_option("--budget-mult", flags.budget_multiplier,
                  "Transition budget per word")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-heads", flags.max_heads, "Head cap per node")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-nulls-per-word", flags.max_nulls_per_word,
                  "Null node cap as a multiple of the word count")
      ->check(CLI::NonNegativeNumber);
}

void AddJobsFlag(CLI::App* app, CommonFlags& flags) {
  app->add_option("--jobs,-j", flags.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string input;
  std::string trace;
  CommonFlags flags;
};

int RunOracle(const OracleArgs& args) {
  const Document doc = ReadDocument(args.input);
  std::vector<OracleResult> results(doc.size());
  const OracleOptions options{args.flags.params(),
                              args.flags.budget_multiplier};
  ParallelFor(doc.size(), args.flags.jobs, [&](size_t i) {
    results[i] =
        OracleSequence(ExtractGraph(doc[i]), doc[i].WordCount(), options);
  });

  Output out(args.trace);
  int failures = 0;
  for (size_t i = 0; i < doc.size(); ++i) {
    TraceBlock block;
    block.sent_id = Label(doc[i], i);
    if (!results[i].derivable) {
      ++failures;
      block.comments.push_back("# error = " + results[i].diagnostic);
      std::cerr << block.sent_id << ": " << results[i].diagnostic << "\n";
    }
    for (const TraceStep& step : results[i].steps) {
      block.transitions.push_back(step.transition);
    }
    WriteTraceBlock(out.stream(), block);
  }
  out.Commit();
  if (failures > 0) {
    std::cerr << failures << " of " << doc.size()
              << " sentences not derivable\n";
    return kSemanticError;
  }
  return kOk;
}

// --- replay -----------------------------------------------------------------

struct ReplayArgs {
  std::string input;
  std::string trace;
  CommonFlags flags;
};

int RunReplay(const ReplayArgs& args) {
  const Document doc = ReadDocument(args.input);
  std::vector<TraceBlock> traces;
  if (!args.trace.empty()) {
    std::ifstream in(args.trace, std::ios::binary);
    if (!in) throw IoError("cannot open " + args.trace);
    traces = ReadTraces(in);
    if (traces.size() != doc.size()) {
      throw IoError("trace has " + std::to_string(traces.size()) +
                    " blocks for " + std::to_string(doc.size()) +
                    " sentences");
    }
    for (size_t i = 0; i < doc.size(); ++i) {
      if (traces[i].sent_id != Label(doc[i], i)) {
        throw IoError("trace block " + std::to_string(i + 1) + " is for " +
                      traces[i].sent_id + ", expected " + Label(doc[i], i));
      }
    }
  }

  enum class Outcome { kMatch, kMismatch, kSkipped };
  std::vector<Outcome> outcomes(doc.size());
  std::vector<std::string> notes(doc.size());
  ParallelFor(doc.size(), args.flags.jobs, [&](size_t i) {
    const EnhancedGraph gold = ExtractGraph(doc[i]);
    const int n = doc[i].WordCount();
    std::vector<Transition> sequence;
    if (traces.empty()) {
      const OracleResult oracle = OracleSequence(
          gold, n, {args.flags.params(), args.flags.budget_multiplier});
      if (!oracle.derivable) {
        outcomes[i] = Outcome::kSkipped;
        notes[i] = oracle.diagnostic;
        return;
      }
      for (const TraceStep& step : oracle.steps) {
        sequence.push_back(step.transition);
      }
    } else {
      sequence = traces[i].transitions;
    }
    const OracleResult replayed = Replay(n, sequence, args.flags.params());
    if (!replayed.derivable) {
      outcomes[i] = Outcome::kMismatch;
      notes[i] = replayed.diagnostic;
    } else if (!EqualModuloNullIds(replayed.graph(), gold)) {
      outcomes[i] = Outcome::kMismatch;
      notes[i] = "graph differs from gold";
    } else {
      outcomes[i] = Outcome::kMatch;
    }
  });

  int matched = 0, compared = 0;
  for (size_t i = 0; i < doc.size(); ++i) {
    std::cout << Label(doc[i], i) << '\t';
    switch (outcomes[i]) {
      case Outcome::kMatch:
        std::cout << "MATCH\n";
        ++matched;
        ++compared;
        break;
      case Outcome::kMismatch:
        std::cout << "MISMATCH\t" << notes[i] << '\n';
        ++compared;
        break;
      case Outcome::kSkipped:
        std::cout << "SKIPPED\t" << notes[i] << '\n';
        break;
    }
  }
  std::cout << "replay_match=" << matched << '/' << compared << " ("
            << FormatPercent(compared == 0 ? 1.0
                                           : static_cast<double>(matched) /
                                                 compared)
            << "%)\n";
  return matched == compared ? kOk : kSemanticError;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
  std::vector<std::string> inputs;
  std::string model;
  std::string log;
  int epochs = 10;
  std::uint64_t seed = 1;
  std::uint32_t feature_dim = kDefaultFeatureDim;
  CommonFlags flags;
};

int RunTrain(const TrainArgs& args) {
  Document treebank;
  for (const std::string& path : args.inputs) {
    Document part = ReadDocument(path);
    std::move(part.begin(), part.end(), std::back_inserter(treebank));
  }
  TrainOptions options;
  options.epochs = args.epochs;
  options.seed = args.seed;
  options.params = args.flags.params();
  options.budget_multiplier = args.flags.budget_multiplier;
  options.feature_dim = args.feature_dim;

  std::ostringstream log;
  const TrainResult result = Train(treebank, options, &log);
  Output model(args.model);
  result.model.Save(model.stream());
  model.Commit();
  if (args.log.empty()) {
    std::cerr << log.str();
  } else {
    Output log_file(args.log);
    log_file.stream() << log.str();
    log_file.Commit();
  }
  return kOk;
}

// --- parse ------------------------------------------------------------------

struct ParseArgs {
  std::string input;
  std::string output;
  std::string model;
  std::string policy;
  std::string gold;
  CommonFlags flags;
};

int RunParse(const ParseArgs& args) {
  const Document doc = ReadDocument(args.input);
  const std::string policy_name =
      args.policy.empty() ? (args.model.empty() ? "" : "model") : args.policy;
  if (policy_name.empty()) {
    throw CLI::ValidationError("parse", "either --model or --policy is required");
  }
  if (policy_name == "model" && args.model.empty()) {
    throw CLI::ValidationError("parse", "--policy model needs --model");
  }

  std::unique_ptr<LinearModel> model;
  if (policy_name == "model") {
    std::ifstream in(args.model, std::ios::binary);
    if (!in) throw IoError("cannot open " + args.model);
    model = std::make_unique<LinearModel>(LinearModel::Load(in));
  }
  Document gold;
  if (policy_name == "oracle") {
    gold = args.gold.empty() ? doc : ReadDocument(args.gold);
    if (gold.size() != doc.size()) {
      throw AlignmentError("gold has " + std::to_string(gold.size()) +
                           " sentences, input has " +
                           std::to_string(doc.size()));
    }
  }

  ParseOptions options;
  options.params = args.flags.params();
  options.budget_multiplier = args.flags.budget_multiplier;
  Document out(doc.size());
  std::vector<RepairReport> reports(doc.size());
  ParallelFor(doc.size(), args.flags.jobs, [&](size_t i) {
    std::unique_ptr<Policy> policy;
    if (policy_name == "model") {
      policy = std::make_unique<ModelPolicy>(*model);
    } else if (policy_name == "oracle") {
      if (gold[i].WordCount() != doc[i].WordCount()) {
        throw AlignmentError("sentence " + Label(doc[i], i) +
                             " has a different length in the gold file");
      }
      policy =
          std::make_unique<OraclePolicy>(ExtractGraph(gold[i]), options.params);
    } else {
      policy = std::make_unique<ShiftPolicy>();
    }
    ParseResult result = Parse(doc[i], *policy, options);
    out[i] = InjectGraph(doc[i], result.graph);
    reports[i] = std::move(result.report);
  });

  Output output(args.output);
  WriteConllu(output.stream(), out);
  output.Commit();
  int repaired = 0, premature = 0;
  for (const RepairReport& r : reports) {
    repaired += !r.attached_nodes.empty();
    premature += r.premature_finish;
  }
  std::cerr << "parsed " << doc.size() << " sentences; " << premature
            << " ended early, " << repaired << " repaired\n";
  return kOk;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string gold;
  std::string pred;
  std::string output;
  bool per_label = false;
  CommonFlags flags;
};

int RunEval(const EvalArgs& args) {
  const Document gold = ReadDocument(args.gold);
  const Document pred = ReadDocument(args.pred);
  if (gold.size() != pred.size()) {
    // Let Evaluate produce the standard message.
    Evaluate(gold, pred);
  }
  // Contiguous chunks scored independently, merged in order.
  const size_t chunks = std::max<size_t>(
      1, std::min<size_t>(gold.size(), static_cast<size_t>(args.flags.jobs)));
  std::vector<Evaluation> parts(chunks);
  ParallelFor(chunks, args.flags.jobs, [&](size_t c) {
    const size_t begin = gold.size() * c / chunks;
    const size_t end = gold.size() * (c + 1) / chunks;
    parts[c] = Evaluate(Document(gold.begin() + begin, gold.begin() + end),
                        Document(pred.begin() + begin, pred.begin() + end));
  });
  Evaluation total;
  for (const Evaluation& part : parts) {
    total.total += part.total;
    total.per_sentence.insert(total.per_sentence.end(),
                              part.per_sentence.begin(),
                              part.per_sentence.end());
    for (const auto& [label, score] : part.per_label) {
      total.per_label[label] += score;
    }
  }
  Output out(args.output);
  out.stream() << FormatReport(total, args.per_label);
  out.Commit();
  return kOk;
}

// --- validate ---------------------------------------------------------------

int RunValidate(const std::string& input) {
  const Document doc = ReadDocument(input);
  int invalid = 0;
  for (size_t i = 0; i < doc.size(); ++i) {
    std::vector<std::string> problems;
    try {
      for (const Violation& v : Validate(ExtractGraph(doc[i]))) {
        problems.push_back(v.ToString());
      }
    } catch (const GraphError& e) {
      problems.push_back(e.what());
    }
    if (problems.empty()) continue;
    ++invalid;
    std::cout << Label(doc[i], i);
    for (const std::string& p : problems) std::cout << '\t' << p;
    std::cout << '\n';
  }
  std::cout << "valid=" << doc.size() - invalid << '/' << doc.size() << '\n';
  return invalid == 0 ? kOk : kSemanticError;
}

// --- stats ------------------------------------------------------------------

int RunStats(const std::vector<std::string>& inputs) {
  Document doc;
  for (const std::string& path : inputs) {
    Document part = ReadDocument(path);
    std::move(part.begin(), part.end(), std::back_inserter(doc));
  }
  std::int64_t words = 0, nulls = 0, arcs = 0;
  for (const Sentence& s : doc) {
    words += s.WordCount();
    for (const TokenRow& row : s.rows) {
      nulls += row.is_null();
      if (!row.is_range()) arcs += static_cast<std::int64_t>(row.deps.size());
    }
  }
  const LabelInventory inventory = BuildLabelInventory(doc);
  std::cout << "sentences=" << doc.size() << '\n'
            << "words=" << words << '\n'
            << "null_nodes=" << nulls << '\n'
            << "enhanced_arcs=" << arcs << '\n'
            << "labels=" << inventory.labels.size() << '\n'
            << "labels_with_suffix=" << inventory.with_suffix << '\n'
            << "transitions=" << inventory.TransitionCount() << '\n';
  for (const std::string& label : inventory.labels) {
    std::cout << "label\t" << label << '\t' << inventory.counts.at(label)
              << '\n';
  }
  return kOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Transition-based enhanced UD parsing toolkit", "edparse"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "edparse 1.0.0");

  OracleArgs oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Write static-oracle transition traces");
  oracle_cmd->add_option("--input,-i", oracle.input, "Gold CoNLL-U (- = stdin)");
  oracle_cmd->add_option("--trace,-o", oracle.trace, "Trace TSV (- = stdout)");
  AddConstraintFlags(oracle_cmd, oracle.flags);
  AddJobsFlag(oracle_cmd, oracle.flags);

  ReplayArgs replay;
  CLI::App* replay_cmd = app.add_subcommand(
      "replay", "Replay oracle (or given) traces and compare with gold");
  replay_cmd->add_option("--input,-i", replay.input, "Gold CoNLL-U");
  replay_cmd->add_option("--trace,-t", replay.trace,
                         "Replay this trace file instead of the oracle");
  AddConstraintFlags(replay_cmd, replay.flags);
  AddJobsFlag(replay_cmd, replay.flags);

  TrainArgs train;
  CLI::App* train_cmd =
      app.add_subcommand("train", "Train an averaged-perceptron model");
  train_cmd->add_option("--input,-i", train.inputs,
                        "Training CoNLL-U; repeat to concatenate")
      ->required();
  train_cmd->add_option("--model,-m", train.model, "Output model file")
      ->required();
  train_cmd->add_option("--epochs", train.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--feature-dim", train.feature_dim)
      ->check(CLI::PositiveNumber);
  train_cmd->add_option("--log", train.log, "Epoch log file (default stderr)");
  AddConstraintFlags(train_cmd, train.flags);

  ParseArgs parse;
  CLI::App* parse_cmd =
      app.add_subcommand("parse", "Parse CoNLL-U and fill the DEPS column");
  parse_cmd->add_option("--input,-i", parse.input, "Input CoNLL-U");
  parse_cmd->add_option("--output,-o", parse.output, "Output CoNLL-U");
  parse_cmd->add_option("--model,-m", parse.model, "Trained model file");
  parse_cmd->add_option("--policy", parse.policy)
      ->check(CLI::IsMember({"model", "oracle", "shift"}));
  parse_cmd->add_option("--gold", parse.gold,
                        "Gold CoNLL-U for --policy oracle (default: input)");
  AddConstraintFlags(parse_cmd, parse.flags);
  AddJobsFlag(parse_cmd, parse.flags);

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions (ELAS)");
  eval_cmd->add_option("--gold,-g", eval.gold)->required();
  eval_cmd->add_option("--pred,-p", eval.pred)->required();
  eval_cmd->add_option("--output,-o", eval.output, "Report file");
  eval_cmd->add_flag("--per-label", eval.per_label, "Add per-label scores");
  AddJobsFlag(eval_cmd, eval.flags);

  std::string validate_input;
  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check graph connectivity and heads");
  validate_cmd->add_option("--input,-i", validate_input);

  std::vector<std::string> stats_inputs;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Treebank and label inventory statistics");
  stats_cmd->add_option("--input,-i", stats_inputs, "Repeat to concatenate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (*oracle_cmd) return RunOracle(oracle);
    if (*replay_cmd) return RunReplay(replay);
    if (*train_cmd) return RunTrain(train);
    if (*parse_cmd) return RunParse(parse);
    if (*eval_cmd) return RunEval(eval);
    if (*validate_cmd) return RunValidate(validate_input);
    if (*stats_cmd) {
      if (stats_inputs.empty()) stats_inputs.push_back("-");
      return RunStats(stats_inputs);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "edparse: " << e.what() << '\n';
    return kIoError;
  } catch (const IoError& e) {
    std::cerr << "edparse: " << e.what() << '\n';
    return kIoError;
  } catch (const ConlluError& e) {
    std::cerr << "edparse: " << e.what() << '\n';
    return kIoError;
  } catch (const ModelError& e) {
    std::cerr << "edparse: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    // AlignmentError, GraphError and the like: the input is well-formed but
    // not usable for the requested operation.
    std::cerr << "edparse: " << e.what() << '\n';
    return kSemanticError;
  }
  return kIoError;
}

}  // namespace
}  // namespace edparse

int main(int argc, char** argv) { return edparse::Main(argc, argv); }
