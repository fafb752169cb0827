#ifndef EDPARSE_TRANSITION_H_
#define EDPARSE_TRANSITION_H_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "edparse/graph.h"
#include "edparse/node_id.h"

namespace edparse {

// Thrown by Apply() for a transition whose precondition does not hold, and
// by ForceFinish() when called on a configuration that is not a dead end.
class TransitionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class TransitionKind {
  kShift,
  kReduce0,
  kReduce1,
  kNode,
  kLeftEdge,
  kRightEdge,
  kSwap,
  kFinish,
};

struct Transition {
  TransitionKind kind = TransitionKind::kShift;
  std::string label;  // non-empty exactly for the two edge kinds

  static Transition Shift() { return {TransitionKind::kShift, ""}; }
  static Transition Reduce0() { return {TransitionKind::kReduce0, ""}; }
  static Transition Reduce1() { return {TransitionKind::kReduce1, ""}; }
  static Transition Node() { return {TransitionKind::kNode, ""}; }
  static Transition LeftEdge(std::string label) {
    return {TransitionKind::kLeftEdge, std::move(label)};
  }
  static Transition RightEdge(std::string label) {
    return {TransitionKind::kRightEdge, std::move(label)};
  }
  static Transition Swap() { return {TransitionKind::kSwap, ""}; }
  static Transition Finish() { return {TransitionKind::kFinish, ""}; }

  bool is_edge() const {
    return kind == TransitionKind::kLeftEdge ||
           kind == TransitionKind::kRightEdge;
  }

  // Trace encoding: SHIFT, REDUCE-0, REDUCE-1, NODE, LEFT-EDGE:<label>,
  // RIGHT-EDGE:<label>, SWAP, FINISH.
  std::string ToString() const;
  static std::optional<Transition> Parse(std::string_view text);

  auto operator<=>(const Transition&) const = default;
};

// Tunable limits. The null cap is max_nulls_per_word * word_count.
struct ConstraintParams {
  int max_heads = 7;
  double max_nulls_per_word = 1.0;

  int NullLimit(int word_count) const {
    return static_cast<int>(max_nulls_per_word * word_count);
  }
};

// Parser state: stack (top = back), buffer (front = index 0), the node set,
// constructed arcs and the generated order i(x) used by Swap.
class Configuration {
 public:
  // Stack [Root], buffer [Word(1) .. Word(n)]. Throws std::invalid_argument
  // for n < 1.
  static Configuration Initial(int word_count);

  const std::vector<NodeId>& stack() const { return stack_; }
  std::vector<NodeId> buffer() const;
  size_t buffer_size() const { return buffer_rev_.size(); }
  bool buffer_empty() const { return buffer_rev_.empty(); }
  // Precondition: !buffer_empty().
  NodeId buffer_front() const { return buffer_rev_.back(); }
  // i-th buffer element from the front, if any.
  std::optional<NodeId> buffer_at(size_t i) const;
  // i-th stack element from the top (0 = s0), if any.
  std::optional<NodeId> stack_at(size_t i) const;

  // Arcs in construction order.
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  bool HasNode(NodeId node) const { return SlotOf(node) >= 0; }
  bool HasArc(NodeId head, NodeId dependent, std::string_view label) const;
  int HeadCount(NodeId node) const;
  int DependentCount(NodeId node) const;
  // Labels of constructed arcs head -> dependent, in construction order.
  std::vector<std::string_view> LabelsBetween(NodeId head,
                                              NodeId dependent) const;
  std::optional<int> GenOrder(NodeId node) const;

  int word_count() const { return word_count_; }
  int null_count() const { return static_cast<int>(null_ids_.size()); }
  bool terminal() const { return terminal_; }

  // Id that the next Node transition will create: `p.k` with p the anchor
  // of the stack top (0 for the root or an empty stack) and k one past the
  // number of nulls already created at p.
  NodeId NextNullId() const;

  // The constructed graph: root, words, created nulls and all arcs.
  EnhancedGraph ToGraph() const;

 private:
  friend class TransitionSystem;

  struct NodeInfo {
    NodeId id;
    int gen_order = -1;
    int head_count = 0;
    int dependent_count = 0;
    std::vector<int> in_arcs;  // indices into arcs_
  };

  int SlotOf(NodeId node) const;

  std::vector<NodeId> stack_;
  std::vector<NodeId> buffer_rev_;  // front of the buffer is back()
  std::vector<NodeId> nodes_;
  std::vector<NodeInfo> info_;      // slot 0 root, 1..n words, then nulls
  std::vector<NodeId> null_ids_;    // creation order
  std::vector<Arc> arcs_;
  int word_count_ = 0;
  int next_gen_order_ = 1;
  bool terminal_ = false;
};

// Interprets transitions under a set of constraints.
class TransitionSystem {
 public:
  explicit TransitionSystem(ConstraintParams params = {}) : params_(params) {}

  const ConstraintParams& params() const { return params_; }

  bool IsLegal(const Configuration& c, const Transition& t) const {
    return !Violation(c, t).has_value();
  }
  // Description of the first violated condition, or nullopt if legal.
  std::optional<std::string> Violation(const Configuration& c,
                                       const Transition& t) const;

  // Applies a legal transition in place; throws TransitionError otherwise.
  void Apply(Configuration& c, const Transition& t) const;
  Configuration Applied(const Configuration& c, const Transition& t) const {
    Configuration next = c;
    Apply(next, t);
    return next;
  }

  // All legal transitions, edge kinds instantiated over `labels`. Order:
  // Shift, Reduce0, Reduce1, Node, Swap, Finish, then Left/Right per label.
  std::vector<Transition> LegalTransitions(
      const Configuration& c, std::span<const std::string> labels) const;

  // Marks a dead-end configuration terminal, keeping stack and buffer.
  // Throws TransitionError if `c` is terminal or any transition is legal.
  void ForceFinish(Configuration& c,
                   std::span<const std::string> labels) const;

  // Marks `c` terminal unconditionally (budget exhaustion, abstaining
  // policy). Stack and buffer are kept.
  static void Terminate(Configuration& c) { c.terminal_ = true; }

 private:
  ConstraintParams params_;
};

}  // namespace edparse

#endif  // EDPARSE_TRANSITION_H_
