#include "edparse/linear_model.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "edparse/oracle.h"

namespace edparse {
namespace {

constexpr std::string_view kMagic = "edparse-model";
constexpr int kFormatVersion = 1;

std::string DocumentLabel(const Sentence& sentence, size_t index) {
  const std::string id = sentence.SentId();
  return id.empty() ? "#" + std::to_string(index + 1) : id;
}

// A training sentence with its precomputed gold transition sequence.
struct Example {
  const Sentence* sentence;
  std::vector<Transition> gold;
};

std::vector<std::string> CollectLabels(const Document& treebank) {
  std::set<std::string> labels;
  for (const Sentence& s : treebank) {
    for (const TokenRow& row : s.rows) {
      for (const EnhancedArcRef& dep : row.deps) labels.insert(dep.label);
    }
  }
  return {labels.begin(), labels.end()};
}

std::vector<Example> BuildExamples(const Document& treebank,
                                   const ConstraintParams& params,
                                   int budget_multiplier,
                                   std::vector<std::string>* dropped) {
  std::vector<Example> examples;
  OracleOptions options{params, budget_multiplier};
  for (size_t i = 0; i < treebank.size(); ++i) {
    const Sentence& s = treebank[i];
    std::string problem;
    try {
      OracleResult result =
          OracleSequence(ExtractGraph(s), s.WordCount(), options);
      if (result.derivable) {
        Example example{&s, {}};
        for (const TraceStep& step : result.steps) {
          example.gold.push_back(step.transition);
        }
        examples.push_back(std::move(example));
        continue;
      }
      problem = result.diagnostic;
    } catch (const std::exception& e) {
      problem = e.what();
    }
    if (dropped) dropped->push_back(DocumentLabel(s, i) + ": " + problem);
  }
  return examples;
}

}  // namespace

std::vector<Transition> TransitionInventory(
    const std::vector<std::string>& labels) {
  std::vector<Transition> out = {
      Transition::Shift(), Transition::Reduce0(), Transition::Reduce1(),
      Transition::Node(),  Transition::Swap(),    Transition::Finish()};
  for (const std::string& label : labels) {
    out.push_back(Transition::LeftEdge(label));
    out.push_back(Transition::RightEdge(label));
  }
  return out;
}

LinearModel::LinearModel(std::vector<Transition> transitions,
                         std::uint32_t feature_dim)
    : transitions_(std::move(transitions)), feature_dim_(feature_dim) {
  if (feature_dim_ == 0) throw ModelError("feature_dim must be positive");
  for (size_t i = 0; i < transitions_.size(); ++i) {
    if (!columns_.emplace(transitions_[i], static_cast<int>(i)).second) {
      throw ModelError("duplicate transition " + transitions_[i].ToString());
    }
  }
}

std::optional<int> LinearModel::ColumnOf(const Transition& t) const {
  auto it = columns_.find(t);
  if (it == columns_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> LinearModel::EdgeLabels() const {
  std::set<std::string> labels;
  for (const Transition& t : transitions_) {
    if (t.is_edge()) labels.insert(t.label);
  }
  return {labels.begin(), labels.end()};
}

double LinearModel::Weight(std::uint32_t feature, int column) const {
  auto it = weights_.find(Key(feature, column));
  return it == weights_.end() ? 0.0 : it->second;
}

void LinearModel::SetWeight(std::uint32_t feature, int column, double value) {
  if (value == 0.0) {
    weights_.erase(Key(feature, column));
  } else {
    weights_[Key(feature, column)] = value;
  }
}

double LinearModel::Score(const FeatureVector& features, int column) const {
  double sum = 0.0;
  for (std::uint32_t f : features) sum += Weight(f, column);
  return sum;
}

size_t LinearModel::Best(const FeatureVector& features,
                         std::span<const Transition> candidates) const {
  size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  int best_column = std::numeric_limits<int>::max();
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto column = ColumnOf(candidates[i]);
    const double score = column ? Score(features, *column)
                                : -std::numeric_limits<double>::infinity();
    const int col = column.value_or(std::numeric_limits<int>::max());
    if (score > best_score || (score == best_score && col < best_column)) {
      best = i;
      best_score = score;
      best_column = col;
    }
  }
  return best;
}

void LinearModel::Save(std::ostream& out) const {
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "feature_dim " << feature_dim_ << '\n';
  out << "transitions " << transitions_.size() << '\n';
  for (const Transition& t : transitions_) out << t.ToString() << '\n';
  std::vector<std::pair<std::uint64_t, double>> sorted(weights_.begin(),
                                                       weights_.end());
  std::sort(sorted.begin(), sorted.end());
  out << "weights " << sorted.size() << '\n';
  char buffer[64];
  for (const auto& [key, value] : sorted) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out << key / transitions_.size() << '\t' << key % transitions_.size()
        << '\t' << buffer << '\n';
  }
}

LinearModel LinearModel::Load(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw ModelError(std::string("model file truncated before ") + what);
    }
    return std::istringstream(line);
  };
  auto header = [&](const char* key) {
    auto fields = next_line(key);
    std::string name;
    std::uint64_t value = 0;
    if (!(fields >> name >> value) || name != key) {
      throw ModelError(std::string("expected '") + key + " <n>', got '" +
                       line + "'");
    }
    return value;
  };

  {
    auto fields = next_line("header");
    std::string magic;
    int version = 0;
    if (!(fields >> magic >> version) || magic != kMagic) {
      throw ModelError("not an edparse model file");
    }
    if (version != kFormatVersion) {
      throw ModelError("unsupported model version " + std::to_string(version));
    }
  }
  const auto dim = header("feature_dim");
  if (dim == 0 || dim > std::numeric_limits<std::uint32_t>::max()) {
    throw ModelError("feature_dim out of range");
  }
  const auto count = header("transitions");
  std::vector<Transition> transitions;
  for (std::uint64_t i = 0; i < count; ++i) {
    next_line("transition list");
    auto t = Transition::Parse(line);
    if (!t) throw ModelError("unknown transition '" + line + "'");
    transitions.push_back(std::move(*t));
  }
  LinearModel model(std::move(transitions),
                    static_cast<std::uint32_t>(dim));
  const auto weights = header("weights");
  for (std::uint64_t i = 0; i < weights; ++i) {
    auto fields = next_line("weights");
    std::uint64_t feature = 0, column = 0;
    double value = 0.0;
    if (!(fields >> feature >> column >> value) || feature >= dim ||
        column >= count) {
      throw ModelError("malformed weight line '" + line + "'");
    }
    model.SetWeight(static_cast<std::uint32_t>(feature),
                    static_cast<int>(column), value);
  }
  return model;
}

TrainResult Train(const Document& treebank, const TrainOptions& options,
                  std::ostream* log) {
  if (treebank.empty()) throw ModelError("empty treebank");
  if (options.epochs < 1) throw ModelError("epochs must be positive");

  TrainResult result;
  const std::vector<std::string> labels = CollectLabels(treebank);
  std::vector<Example> examples = BuildExamples(
      treebank, options.params, options.budget_multiplier, &result.dropped);
  if (log) {
    for (const std::string& d : result.dropped) {
      *log << "warning: dropped " << d << '\n';
    }
  }
  if (examples.empty()) throw ModelError("no derivable training sentence");

  LinearModel current(TransitionInventory(labels), options.feature_dim);
  // Sum of step * update per weight, for averaging.
  std::unordered_map<std::uint64_t, double> accumulated;
  const auto n_columns = static_cast<std::uint64_t>(current.transitions().size());
  auto update = [&](const FeatureVector& features, int column, double delta,
                    double step) {
    for (std::uint32_t f : features) {
      current.SetWeight(f, column, current.Weight(f, column) + delta);
      accumulated[static_cast<std::uint64_t>(f) * n_columns + column] +=
          step * delta;
    }
  };

  TransitionSystem system(options.params);
  std::mt19937_64 rng(options.seed);
  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  double step = 1.0;

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    // Fisher-Yates with the engine directly; std::shuffle's use of the
    // engine is implementation-defined.
    for (size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng() % i]);
    }
    EpochStats stats{epoch, 0, 0};
    for (size_t index : order) {
      const Example& example = examples[index];
      const SentenceContext context(*example.sentence);
      Configuration c = Configuration::Initial(context.word_count());
      for (const Transition& gold : example.gold) {
        const auto legal = system.LegalTransitions(c, labels);
        const FeatureVector features =
            Featurize(c, context, options.feature_dim);
        const Transition& predicted = legal[current.Best(features, legal)];
        ++stats.total;
        if (predicted == gold) {
          ++stats.correct;
        } else {
          update(features, *current.ColumnOf(gold), 1.0, step);
          update(features, *current.ColumnOf(predicted), -1.0, step);
        }
        step += 1.0;
        system.Apply(c, gold);
      }
    }
    result.epochs.push_back(stats);
    if (log) {
      char buffer[128];
      std::snprintf(buffer, sizeof(buffer),
                    "epoch %d: oracle-transition accuracy %.4f (%lld/%lld)\n",
                    epoch, stats.accuracy(),
                    static_cast<long long>(stats.correct),
                    static_cast<long long>(stats.total));
      *log << buffer;
    }
  }

  LinearModel averaged(current.transitions(), options.feature_dim);
  std::vector<std::uint64_t> keys;
  keys.reserve(accumulated.size());
  for (const auto& entry : accumulated) keys.push_back(entry.first);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t key : keys) {
    const auto feature = static_cast<std::uint32_t>(key / n_columns);
    const int column = static_cast<int>(key % n_columns);
    const double value =
        current.Weight(feature, column) - accumulated[key] / step;
    averaged.SetWeight(feature, column, value);
  }
  result.model = std::move(averaged);
  return result;
}

EpochStats OracleAccuracy(const LinearModel& model, const Document& treebank,
                          const ConstraintParams& params,
                          int budget_multiplier) {
  EpochStats stats;
  const std::vector<std::string> labels = model.EdgeLabels();
  TransitionSystem system(params);
  for (const Example& example :
       BuildExamples(treebank, params, budget_multiplier, nullptr)) {
    const SentenceContext context(*example.sentence);
    Configuration c = Configuration::Initial(context.word_count());
    for (const Transition& gold : example.gold) {
      const auto legal = system.LegalTransitions(c, labels);
      const FeatureVector features = Featurize(c, context, model.feature_dim());
      ++stats.total;
      if (!legal.empty() && legal[model.Best(features, legal)] == gold) {
        ++stats.correct;
      }
      if (!system.IsLegal(c, gold)) break;
      system.Apply(c, gold);
    }
  }
  return stats;
}

}  // namespace edparse
