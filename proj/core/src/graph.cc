#include "edparse/graph.h"

#include <algorithm>
#include <map>
#include <tuple>

namespace edparse {

std::string ToString(const Arc& arc) {
  return "(" + arc.head.ToString() + ", " + arc.dependent.ToString() + ", " +
         arc.label + ")";
}

EnhancedGraph::EnhancedGraph() { nodes_.insert(NodeId::Root()); }

EnhancedGraph EnhancedGraph::WithWords(int word_count) {
  EnhancedGraph graph;
  for (int i = 1; i <= word_count; ++i) graph.AddNode(NodeId::Word(i));
  return graph;
}

void EnhancedGraph::AddNode(NodeId node) { nodes_.insert(node); }

bool EnhancedGraph::AddArc(const Arc& arc) {
  if (arc.label.empty()) {
    throw GraphError("arc " + ToString(arc) + " has an empty label");
  }
  if (arc.dependent.is_root()) {
    throw GraphError("arc " + ToString(arc) + " has the root as dependent");
  }
  if (!HasNode(arc.head) || !HasNode(arc.dependent)) {
    throw GraphError("arc " + ToString(arc) + " references an unknown node");
  }
  return arcs_.insert(arc).second;
}

int EnhancedGraph::WordCount() const {
  return static_cast<int>(std::count_if(
      nodes_.begin(), nodes_.end(), [](NodeId n) { return n.is_word(); }));
}

std::vector<NodeId> EnhancedGraph::NullNodes() const {
  std::vector<NodeId> out;
  for (NodeId n : nodes_) {
    if (n.is_null()) out.push_back(n);
  }
  return out;
}

std::set<LabeledNeighbor> EnhancedGraph::HeadsOf(NodeId node) const {
  if (!HasNode(node)) throw GraphError("unknown node " + node.ToString());
  std::set<LabeledNeighbor> out;
  for (const Arc& arc : arcs_) {
    if (arc.dependent == node) out.emplace(arc.head, arc.label);
  }
  return out;
}

std::set<LabeledNeighbor> EnhancedGraph::DependentsOf(NodeId node) const {
  if (!HasNode(node)) throw GraphError("unknown node " + node.ToString());
  std::set<LabeledNeighbor> out;
  // Arcs are sorted by head, so the dependents of `node` are contiguous.
  auto it = arcs_.lower_bound(Arc{node, NodeId::Root(), ""});
  for (; it != arcs_.end() && it->head == node; ++it) {
    out.emplace(it->dependent, it->label);
  }
  return out;
}

std::set<NodeId> EnhancedGraph::ReachableFrom(NodeId node) const {
  std::map<NodeId, std::vector<NodeId>> children;
  for (const Arc& arc : arcs_) children[arc.head].push_back(arc.dependent);

  std::set<NodeId> seen;
  std::vector<NodeId> agenda = {node};
  while (!agenda.empty()) {
    NodeId current = agenda.back();
    agenda.pop_back();
    auto it = children.find(current);
    if (it == children.end()) continue;
    for (NodeId child : it->second) {
      if (seen.insert(child).second) agenda.push_back(child);
    }
  }
  return seen;
}

bool EnhancedGraph::IsConnected() const {
  // The root has no heads, so it never appears in its own closure.
  return ReachableFrom(NodeId::Root()).size() + 1 == nodes_.size();
}

namespace {

// One incident arc of a null node, with null neighbors anonymized.
// direction: 0 = incoming, 1 = outgoing. kind: 0 = non-null neighbor,
// 1 = other null, 2 = self loop.
using SignatureEntry = std::tuple<int, int, NodeId, std::string>;
using Signature = std::vector<SignatureEntry>;

Signature NullSignature(const EnhancedGraph& g, NodeId null) {
  Signature sig;
  for (const Arc& arc : g.arcs()) {
    if (arc.dependent == null) {
      const int kind = arc.head == null ? 2 : arc.head.is_null() ? 1 : 0;
      sig.emplace_back(0, kind, kind == 0 ? arc.head : NodeId::Root(),
                       arc.label);
    }
    if (arc.head == null) {
      const int kind =
          arc.dependent == null ? 2 : arc.dependent.is_null() ? 1 : 0;
      sig.emplace_back(1, kind, kind == 0 ? arc.dependent : NodeId::Root(),
                       arc.label);
    }
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

class NullMatcher {
 public:
  NullMatcher(const EnhancedGraph& a, const EnhancedGraph& b)
      : a_(a), b_(b), a_nulls_(a.NullNodes()), b_nulls_(b.NullNodes()) {
    for (NodeId n : a_nulls_) a_sigs_.push_back(NullSignature(a, n));
    for (NodeId n : b_nulls_) b_sigs_.push_back(NullSignature(b, n));
    used_.assign(b_nulls_.size(), false);
  }

  bool Run() {
    if (a_nulls_.size() != b_nulls_.size()) return false;
    std::vector<Signature> sa = a_sigs_, sb = b_sigs_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    return Assign(0);
  }

 private:
  NodeId MapNode(NodeId n) const {
    auto it = mapping_.find(n);
    return it == mapping_.end() ? n : it->second;
  }

  // Arcs of `a` between `null` and already-mapped nulls (itself included)
  // must exist in `b` under the mapping, and the counts must agree.
  bool Consistent(NodeId a_null, NodeId b_null) const {
    int a_count = 0;
    for (const Arc& arc : a_.arcs()) {
      const bool touches = arc.head == a_null || arc.dependent == a_null;
      if (!touches) continue;
      const NodeId other = arc.head == a_null ? arc.dependent : arc.head;
      if (other.is_null() && !mapping_.contains(other)) continue;
      ++a_count;
      Arc mapped{MapNode(arc.head), MapNode(arc.dependent), arc.label};
      if (!b_.HasArc(mapped)) return false;
    }
    int b_count = 0;
    for (const Arc& arc : b_.arcs()) {
      const bool touches = arc.head == b_null || arc.dependent == b_null;
      if (!touches) continue;
      const NodeId other = arc.head == b_null ? arc.dependent : arc.head;
      if (other.is_null() && !mapped_targets_.contains(other)) continue;
      ++b_count;
    }
    return a_count == b_count;
  }

  bool Assign(size_t index) {
    if (index == a_nulls_.size()) return true;
    const NodeId a_null = a_nulls_[index];
    for (size_t j = 0; j < b_nulls_.size(); ++j) {
      if (used_[j] || b_sigs_[j] != a_sigs_[index]) continue;
      mapping_[a_null] = b_nulls_[j];
      mapped_targets_.insert(b_nulls_[j]);
      used_[j] = true;
      if (Consistent(a_null, b_nulls_[j]) && Assign(index + 1)) return true;
      used_[j] = false;
      mapped_targets_.erase(b_nulls_[j]);
      mapping_.erase(a_null);
    }
    return false;
  }

  const EnhancedGraph& a_;
  const EnhancedGraph& b_;
  std::vector<NodeId> a_nulls_, b_nulls_;
  std::vector<Signature> a_sigs_, b_sigs_;
  std::vector<bool> used_;
  std::map<NodeId, NodeId> mapping_;
  std::set<NodeId> mapped_targets_;
};

}  // namespace

bool EqualModuloNullIds(const EnhancedGraph& a, const EnhancedGraph& b) {
  if (a.nodes().size() != b.nodes().size()) return false;
  if (a.arcs().size() != b.arcs().size()) return false;
  for (NodeId n : a.nodes()) {
    if (!n.is_null() && !b.HasNode(n)) return false;
  }
  for (const Arc& arc : a.arcs()) {
    if (!arc.head.is_null() && !arc.dependent.is_null() && !b.HasArc(arc)) {
      return false;
    }
  }
  return NullMatcher(a, b).Run();
}

}  // namespace edparse
