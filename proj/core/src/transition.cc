#include "edparse/transition.h"

#include <algorithm>
#include <stdexcept>

namespace edparse {
namespace {

constexpr std::string_view kLeftPrefix = "LEFT-EDGE:";
constexpr std::string_view kRightPrefix = "RIGHT-EDGE:";

}  // namespace

std::string Transition::ToString() const {
  switch (kind) {
    case TransitionKind::kShift:
      return "SHIFT";
    case TransitionKind::kReduce0:
      return "REDUCE-0";
    case TransitionKind::kReduce1:
      return "REDUCE-1";
    case TransitionKind::kNode:
      return "NODE";
    case TransitionKind::kLeftEdge:
      return std::string(kLeftPrefix) + label;
    case TransitionKind::kRightEdge:
      return std::string(kRightPrefix) + label;
    case TransitionKind::kSwap:
      return "SWAP";
    case TransitionKind::kFinish:
      return "FINISH";
  }
  return "?";
}

std::optional<Transition> Transition::Parse(std::string_view text) {
  if (text == "SHIFT") return Shift();
  if (text == "REDUCE-0") return Reduce0();
  if (text == "REDUCE-1") return Reduce1();
  if (text == "NODE") return Node();
  if (text == "SWAP") return Swap();
  if (text == "FINISH") return Finish();
  if (text.starts_with(kLeftPrefix) && text.size() > kLeftPrefix.size()) {
    return LeftEdge(std::string(text.substr(kLeftPrefix.size())));
  }
  if (text.starts_with(kRightPrefix) && text.size() > kRightPrefix.size()) {
    return RightEdge(std::string(text.substr(kRightPrefix.size())));
  }
  return std::nullopt;
}

Configuration Configuration::Initial(int word_count) {
  if (word_count < 1) {
    throw std::invalid_argument("a configuration needs at least one word");
  }
  Configuration c;
  c.word_count_ = word_count;
  c.stack_.push_back(NodeId::Root());
  c.info_.resize(word_count + 1);
  c.nodes_.reserve(word_count + 1);
  for (int i = 0; i <= word_count; ++i) {
    c.info_[i].id = NodeId::Word(i);
    c.nodes_.push_back(NodeId::Word(i));
  }
  c.info_[0].gen_order = 0;
  c.buffer_rev_.reserve(word_count);
  for (int i = word_count; i >= 1; --i) c.buffer_rev_.push_back(NodeId::Word(i));
  return c;
}

int Configuration::SlotOf(NodeId node) const {
  if (!node.is_null()) {
    return node.anchor() <= word_count_ ? node.anchor() : -1;
  }
  for (size_t k = 0; k < null_ids_.size(); ++k) {
    if (null_ids_[k] == node) return word_count_ + 1 + static_cast<int>(k);
  }
  return -1;
}

std::vector<NodeId> Configuration::buffer() const {
  return {buffer_rev_.rbegin(), buffer_rev_.rend()};
}

std::optional<NodeId> Configuration::buffer_at(size_t i) const {
  if (i >= buffer_rev_.size()) return std::nullopt;
  return buffer_rev_[buffer_rev_.size() - 1 - i];
}

std::optional<NodeId> Configuration::stack_at(size_t i) const {
  if (i >= stack_.size()) return std::nullopt;
  return stack_[stack_.size() - 1 - i];
}

bool Configuration::HasArc(NodeId head, NodeId dependent,
                           std::string_view label) const {
  const int slot = SlotOf(dependent);
  if (slot < 0) return false;
  for (int index : info_[slot].in_arcs) {
    const Arc& arc = arcs_[index];
    if (arc.head == head && arc.label == label) return true;
  }
  return false;
}

int Configuration::HeadCount(NodeId node) const {
  const int slot = SlotOf(node);
  return slot < 0 ? 0 : info_[slot].head_count;
}

int Configuration::DependentCount(NodeId node) const {
  const int slot = SlotOf(node);
  return slot < 0 ? 0 : info_[slot].dependent_count;
}

std::vector<std::string_view> Configuration::LabelsBetween(
    NodeId head, NodeId dependent) const {
  std::vector<std::string_view> out;
  const int slot = SlotOf(dependent);
  if (slot < 0) return out;
  for (int index : info_[slot].in_arcs) {
    if (arcs_[index].head == head) out.push_back(arcs_[index].label);
  }
  return out;
}

std::optional<int> Configuration::GenOrder(NodeId node) const {
  const int slot = SlotOf(node);
  if (slot < 0 || info_[slot].gen_order < 0) return std::nullopt;
  return info_[slot].gen_order;
}

NodeId Configuration::NextNullId() const {
  const int anchor = stack_.empty() ? 0 : stack_.back().anchor();
  int sub = 1;
  for (NodeId n : null_ids_) {
    if (n.anchor() == anchor) sub = std::max(sub, n.sub() + 1);
  }
  return NodeId::Null(anchor, sub);
}

EnhancedGraph Configuration::ToGraph() const {
  EnhancedGraph graph;
  for (NodeId n : nodes_) graph.AddNode(n);
  for (const Arc& arc : arcs_) graph.AddArc(arc);
  return graph;
}

std::optional<std::string> TransitionSystem::Violation(
    const Configuration& c, const Transition& t) const {
  if (c.terminal_) return "configuration is terminal";
  const size_t depth = c.stack_.size();
  const auto s0 = c.stack_at(0);
  const auto s1 = c.stack_at(1);
  switch (t.kind) {
    case TransitionKind::kShift:
      if (c.buffer_empty()) return "Shift needs a non-empty buffer";
      return std::nullopt;
    case TransitionKind::kReduce0:
      if (depth < 1) return "Reduce-0 needs a stack element";
      if (s0->is_root()) return "Reduce-0 may not pop the root";
      if (c.HeadCount(*s0) == 0) return "Reduce-0 on a node without a head";
      return std::nullopt;
    case TransitionKind::kReduce1:
      if (depth < 2) return "Reduce-1 needs two stack elements";
      if (s1->is_root()) return "Reduce-1 may not remove the root";
      if (c.HeadCount(*s1) == 0) return "Reduce-1 on a node without a head";
      return std::nullopt;
    case TransitionKind::kNode:
      if (!t.label.empty()) return "Node takes no label";
      if (c.null_count() >= params_.NullLimit(c.word_count_)) {
        return "Node would exceed the null-node limit";
      }
      return std::nullopt;
    case TransitionKind::kLeftEdge:
      if (t.label.empty()) return "Left-Edge needs a label";
      if (depth < 2) return "Left-Edge needs two stack elements";
      if (s1->is_root()) return "Left-Edge may not make the root a dependent";
      if (c.HasArc(*s0, *s1, t.label)) return "Left-Edge arc already exists";
      if (c.HeadCount(*s1) >= params_.max_heads) {
        return "Left-Edge would exceed the head limit";
      }
      return std::nullopt;
    case TransitionKind::kRightEdge:
      if (t.label.empty()) return "Right-Edge needs a label";
      if (depth < 2) return "Right-Edge needs two stack elements";
      if (s0->is_root()) return "Right-Edge may not make the root a dependent";
      if (c.HasArc(*s1, *s0, t.label)) return "Right-Edge arc already exists";
      if (c.HeadCount(*s0) >= params_.max_heads) {
        return "Right-Edge would exceed the head limit";
      }
      return std::nullopt;
    case TransitionKind::kSwap: {
      if (depth < 2) return "Swap needs two stack elements";
      if (s1->is_root()) return "Swap may not move the root";
      const auto g1 = c.GenOrder(*s1);
      const auto g0 = c.GenOrder(*s0);
      if (!g1 || !g0 || *g1 >= *g0) {
        return "Swap needs s1 and s0 in generated order";
      }
      return std::nullopt;
    }
    case TransitionKind::kFinish:
      if (!c.buffer_empty() || depth != 1 || !s0->is_root()) {
        return "Finish needs an empty buffer and the stack [root]";
      }
      return std::nullopt;
  }
  return "unknown transition";
}

void TransitionSystem::Apply(Configuration& c, const Transition& t) const {
  if (auto violation = Violation(c, t)) {
    throw TransitionError(t.ToString() + ": " + *violation);
  }
  switch (t.kind) {
    case TransitionKind::kShift: {
      const NodeId b = c.buffer_rev_.back();
      c.buffer_rev_.pop_back();
      c.stack_.push_back(b);
      auto& info = c.info_[c.SlotOf(b)];
      if (info.gen_order < 0) info.gen_order = c.next_gen_order_++;
      break;
    }
    case TransitionKind::kReduce0:
      c.stack_.pop_back();
      break;
    case TransitionKind::kReduce1:
      c.stack_.erase(c.stack_.end() - 2);
      break;
    case TransitionKind::kNode: {
      const NodeId id = c.NextNullId();
      c.null_ids_.push_back(id);
      c.nodes_.push_back(id);
      Configuration::NodeInfo info;
      info.id = id;
      c.info_.push_back(std::move(info));
      c.buffer_rev_.push_back(id);
      break;
    }
    case TransitionKind::kLeftEdge:
    case TransitionKind::kRightEdge: {
      const NodeId s0 = c.stack_[c.stack_.size() - 1];
      const NodeId s1 = c.stack_[c.stack_.size() - 2];
      Arc arc = t.kind == TransitionKind::kLeftEdge ? Arc{s0, s1, t.label}
                                                    : Arc{s1, s0, t.label};
      auto& dep = c.info_[c.SlotOf(arc.dependent)];
      dep.in_arcs.push_back(static_cast<int>(c.arcs_.size()));
      ++dep.head_count;
      ++c.info_[c.SlotOf(arc.head)].dependent_count;
      c.arcs_.push_back(std::move(arc));
      break;
    }
    case TransitionKind::kSwap: {
      const NodeId s1 = c.stack_[c.stack_.size() - 2];
      c.stack_.erase(c.stack_.end() - 2);
      c.buffer_rev_.push_back(s1);
      break;
    }
    case TransitionKind::kFinish:
      c.terminal_ = true;
      break;
  }
}

std::vector<Transition> TransitionSystem::LegalTransitions(
    const Configuration& c, std::span<const std::string> labels) const {
  std::vector<Transition> out;
  if (c.terminal_) return out;
  for (Transition t : {Transition::Shift(), Transition::Reduce0(),
                       Transition::Reduce1(), Transition::Node(),
                       Transition::Swap(), Transition::Finish()}) {
    if (IsLegal(c, t)) out.push_back(std::move(t));
  }
  if (c.stack_.size() < 2) return out;
  for (const std::string& label : labels) {
    Transition left = Transition::LeftEdge(label);
    if (IsLegal(c, left)) out.push_back(std::move(left));
    Transition right = Transition::RightEdge(label);
    if (IsLegal(c, right)) out.push_back(std::move(right));
  }
  return out;
}

void TransitionSystem::ForceFinish(Configuration& c,
                                   std::span<const std::string> labels) const {
  if (c.terminal_) {
    throw TransitionError("ForceFinish on a terminal configuration");
  }
  if (!LegalTransitions(c, labels).empty()) {
    throw TransitionError("ForceFinish while legal transitions exist");
  }
  c.terminal_ = true;
}

}  // namespace edparse
