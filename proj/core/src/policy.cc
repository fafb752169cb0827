#include "edparse/policy.h"

#include <algorithm>
#include <set>

namespace edparse {
namespace {

bool Contains(std::span<const Transition> legal, const Transition& t) {
  return std::find(legal.begin(), legal.end(), t) != legal.end();
}

std::vector<std::string> GraphLabels(const EnhancedGraph& graph) {
  std::set<std::string> labels;
  for (const Arc& arc : graph.arcs()) labels.insert(arc.label);
  return {labels.begin(), labels.end()};
}

}  // namespace

OraclePolicy::OraclePolicy(const EnhancedGraph& gold, ConstraintParams params)
    : oracle_(gold, params), labels_(GraphLabels(gold)) {}

std::optional<Transition> OraclePolicy::Choose(
    const Configuration& c, std::span<const Transition> legal) {
  try {
    Transition t = oracle_.Next(c);
    if (Contains(legal, t)) return t;
  } catch (const OracleError&) {
  }
  return std::nullopt;
}

std::optional<Transition> ShiftPolicy::Choose(
    const Configuration& c, std::span<const Transition> legal) {
  (void)c;
  if (Contains(legal, Transition::Shift())) return Transition::Shift();
  if (Contains(legal, Transition::Finish())) return Transition::Finish();
  return std::nullopt;
}

void ModelPolicy::Begin(const Sentence& sentence) { context_.emplace(sentence); }

std::optional<Transition> ModelPolicy::Choose(
    const Configuration& c, std::span<const Transition> legal) {
  if (legal.empty() || !context_) return std::nullopt;
  const FeatureVector features = Featurize(c, *context_, model_.feature_dim());
  return legal[model_.Best(features, legal)];
}

ParseResult Parse(const Sentence& sentence, Policy& policy,
                  const ParseOptions& options) {
  const int words = sentence.WordCount();
  const TransitionSystem system(options.params);
  const std::vector<std::string> labels = policy.EdgeLabels();
  const int budget = options.budget_multiplier * words;

  ParseResult result;
  result.final_config = Configuration::Initial(words);
  Configuration& c = result.final_config;
  policy.Begin(sentence);
  bool premature = false;
  while (!c.terminal()) {
    if (static_cast<int>(result.trace.size()) >= budget) {
      TransitionSystem::Terminate(c);
      premature = true;
      break;
    }
    const std::vector<Transition> legal = system.LegalTransitions(c, labels);
    if (legal.empty()) {
      system.ForceFinish(c, labels);
      premature = true;
      break;
    }
    std::optional<Transition> choice = policy.Choose(c, legal);
    if (!choice) {
      TransitionSystem::Terminate(c);
      premature = true;
      break;
    }
    if (!Contains(legal, *choice)) {
      throw PolicyError("policy chose illegal transition " +
                        choice->ToString());
    }
    TraceStep step{static_cast<int>(result.trace.size()) + 1, *choice, {}};
    if (choice->is_edge()) {
      const NodeId s0 = *c.stack_at(0);
      const NodeId s1 = *c.stack_at(1);
      step.arc_added = choice->kind == TransitionKind::kLeftEdge
                           ? Arc{s0, s1, choice->label}
                           : Arc{s1, s0, choice->label};
    }
    system.Apply(c, *choice);
    result.trace.push_back(std::move(step));
  }

  auto [graph, report] = Repair(c.ToGraph());
  report.premature_finish = premature;
  result.graph = std::move(graph);
  result.report = std::move(report);
  return result;
}

LabelInventory BuildLabelInventory(const Document& treebank) {
  LabelInventory inventory;
  for (const Sentence& s : treebank) {
    for (const TokenRow& row : s.rows) {
      for (const EnhancedArcRef& dep : row.deps) ++inventory.counts[dep.label];
    }
  }
  for (const auto& [label, count] : inventory.counts) {
    inventory.labels.push_back(label);
    if (label.find(':') != std::string::npos) ++inventory.with_suffix;
  }
  return inventory;
}

EnhancedGraph CopyTreeBaseline(const Sentence& sentence) {
  EnhancedGraph graph = EnhancedGraph::WithWords(sentence.WordCount());
  for (const TokenRow& row : sentence.rows) {
    if (!row.is_word()) continue;
    if (!row.head || row.deprel == "_") {
      throw GraphError("word " + row.node().ToString() +
                       " has no basic-tree head");
    }
    graph.AddArc(*row.head, row.node(), row.deprel);
  }
  return graph;
}

}  // namespace edparse
