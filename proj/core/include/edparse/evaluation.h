#ifndef EDPARSE_EVALUATION_H_
#define EDPARSE_EVALUATION_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "edparse/conllu.h"
#include "edparse/graph.h"

namespace edparse {

// Gold and predicted documents do not line up sentence by sentence.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Score {
  std::int64_t correct = 0;
  std::int64_t predicted = 0;
  std::int64_t gold = 0;

  // 0/0 is defined as 0 for all three.
  double precision() const;
  double recall() const;
  double f1() const;

  Score& operator+=(const Score& other);
  bool operator==(const Score&) const = default;
};

// Comparison unit after removing null nodes. Paths head -l1-> null -l2-> dep
// become (head, dep, "l1>l2"), composing through chains of nulls; a path
// ending in a null without further outgoing arcs yields an empty dependent.
struct CollapsedItem {
  NodeId head;
  std::optional<NodeId> dependent;
  std::string label;

  auto operator<=>(const CollapsedItem&) const = default;
};

// Sorted multiset. Invariant under renaming of null nodes.
std::vector<CollapsedItem> CollapseNulls(const EnhancedGraph& graph);

// Multiset intersection counts for one graph pair.
Score ScoreGraphs(const EnhancedGraph& gold, const EnhancedGraph& predicted);

struct Evaluation {
  Score total;                          // micro-average over all sentences
  std::vector<Score> per_sentence;
  std::map<std::string, Score> per_label;  // keyed by collapsed label

  // Macro average of per-sentence F1.
  double MacroF1() const;
};

// Throws AlignmentError on a sentence count or tokenization mismatch (word
// count or any word form).
Evaluation Evaluate(const Document& gold, const Document& predicted);
Score Elas(const Document& gold, const Document& predicted);
std::map<std::string, Score> PerLabelReport(const Document& gold,
                                            const Document& predicted);

// Percentage with two decimals, e.g. 94.74.
std::string FormatPercent(double ratio);

// Human-readable summary followed by ELAS_P=, ELAS_R=, ELAS_F1= lines.
std::string FormatReport(const Evaluation& evaluation, bool per_label);

}  // namespace edparse

#endif  // EDPARSE_EVALUATION_H_
