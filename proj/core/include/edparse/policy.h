#ifndef EDPARSE_POLICY_H_
#define EDPARSE_POLICY_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "edparse/conllu.h"
#include "edparse/features.h"
#include "edparse/graph.h"
#include "edparse/linear_model.h"
#include "edparse/oracle.h"
#include "edparse/postprocess.h"
#include "edparse/transition.h"

namespace edparse {

// A policy chose a transition outside the legal set.
class PolicyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Chooses the next transition during parsing. Implementations may keep
// per-sentence state and are not shared between threads.
class Policy {
 public:
  virtual ~Policy() = default;

  // Edge labels over which the driver instantiates edge transitions.
  virtual std::vector<std::string> EdgeLabels() const = 0;

  // Called once per sentence before the first Choose.
  virtual void Begin(const Sentence& sentence) { (void)sentence; }

  // Returns a member of `legal`, or nullopt to give up; the driver then
  // terminates the parse early and leaves the rest to repair.
  virtual std::optional<Transition> Choose(
      const Configuration& c, std::span<const Transition> legal) = 0;
};

// Replays the static oracle for one gold graph.
class OraclePolicy : public Policy {
 public:
  OraclePolicy(const EnhancedGraph& gold, ConstraintParams params = {});

  std::vector<std::string> EdgeLabels() const override { return labels_; }
  std::optional<Transition> Choose(const Configuration& c,
                                   std::span<const Transition> legal) override;

 private:
  Oracle oracle_;
  std::vector<std::string> labels_;
};

// Shifts while it can, finishes if allowed, and gives up otherwise.
class ShiftPolicy : public Policy {
 public:
  std::vector<std::string> EdgeLabels() const override { return {}; }
  std::optional<Transition> Choose(const Configuration& c,
                                   std::span<const Transition> legal) override;
};

// Greedy argmax of a trained linear model.
class ModelPolicy : public Policy {
 public:
  explicit ModelPolicy(const LinearModel& model)
      : model_(model), labels_(model.EdgeLabels()) {}

  std::vector<std::string> EdgeLabels() const override { return labels_; }
  void Begin(const Sentence& sentence) override;
  std::optional<Transition> Choose(const Configuration& c,
                                   std::span<const Transition> legal) override;

 private:
  const LinearModel& model_;
  std::vector<std::string> labels_;
  std::optional<SentenceContext> context_;
};

struct ParseOptions {
  ConstraintParams params;
  int budget_multiplier = 50;  // transitions allowed per word
};

struct ParseResult {
  EnhancedGraph graph;  // repaired
  RepairReport report;
  std::vector<TraceStep> trace;
  Configuration final_config;
};

// initial -> choose/apply until Finish; a dead end, an abstaining policy or
// an exhausted budget end the parse early (report.premature_finish). The
// constructed graph is then repaired, so the result always validates.
// Throws PolicyError if the policy returns an illegal transition.
ParseResult Parse(const Sentence& sentence, Policy& policy,
                  const ParseOptions& options = {});

struct LabelInventory {
  std::vector<std::string> labels;              // sorted, distinct
  std::map<std::string, std::int64_t> counts;   // occurrences per label
  int with_suffix = 0;  // labels containing ':'

  // Left/Right edges per label plus the six label-free transitions.
  int TransitionCount() const {
    return 2 * static_cast<int>(labels.size()) + 6;
  }
};

LabelInventory BuildLabelInventory(const Document& treebank);

// The basic tree (HEAD/DEPREL) read as an enhanced graph, without nulls.
// Throws GraphError if a word has no HEAD or DEPREL.
EnhancedGraph CopyTreeBaseline(const Sentence& sentence);

}  // namespace edparse

#endif  // EDPARSE_POLICY_H_
