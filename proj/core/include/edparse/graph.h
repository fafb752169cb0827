#ifndef EDPARSE_GRAPH_H_
#define EDPARSE_GRAPH_H_

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edparse/node_id.h"

namespace edparse {

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A labeled dependency head -> dependent. Labels are atomic: `nmod:van` is a
// single label, distinct from `nmod`.
struct Arc {
  NodeId head;
  NodeId dependent;
  std::string label;

  auto operator<=>(const Arc&) const = default;
  bool operator==(const Arc&) const = default;
};

std::string ToString(const Arc& arc);

// (neighbor, label) pairs returned by adjacency queries.
using LabeledNeighbor = std::pair<NodeId, std::string>;

// Enhanced dependency graph: the root, words and null nodes plus a set of
// labeled arcs. Multiple heads and cycles are allowed; the root is never a
// dependent and a (head, dependent, label) triple appears at most once.
//
// Arcs iterate sorted by (head, dependent, label).
class EnhancedGraph {
 public:
  // A graph containing only the root.
  EnhancedGraph();

  // Root plus Word(1)..Word(word_count).
  static EnhancedGraph WithWords(int word_count);

  // Adding an existing node is a no-op.
  void AddNode(NodeId node);

  // Returns false if the triple is already present. Throws GraphError for an
  // empty label, an unknown endpoint, or the root as dependent.
  bool AddArc(const Arc& arc);
  bool AddArc(NodeId head, NodeId dependent, std::string label) {
    return AddArc(Arc{head, dependent, std::move(label)});
  }

  bool HasNode(NodeId node) const { return nodes_.contains(node); }
  bool HasArc(const Arc& arc) const { return arcs_.contains(arc); }

  const std::set<NodeId>& nodes() const { return nodes_; }
  const std::set<Arc>& arcs() const { return arcs_; }

  int WordCount() const;
  std::vector<NodeId> NullNodes() const;

  // Exact adjacency; throw GraphError for an unknown node.
  std::set<LabeledNeighbor> HeadsOf(NodeId node) const;
  std::set<LabeledNeighbor> DependentsOf(NodeId node) const;

  // Nodes reachable from `node` along head -> dependent arcs. `node` itself
  // is included only when it lies on a cycle.
  std::set<NodeId> ReachableFrom(NodeId node) const;

  // True iff every non-root node is reachable from the root.
  bool IsConnected() const;

  bool operator==(const EnhancedGraph&) const = default;

 private:
  std::set<NodeId> nodes_;
  std::set<Arc> arcs_;
};

// True iff some bijection between the null nodes of `a` and `b` makes the arc
// sets (and node sets) coincide. Non-null nodes must match exactly.
bool EqualModuloNullIds(const EnhancedGraph& a, const EnhancedGraph& b);

}  // namespace edparse

#endif  // EDPARSE_GRAPH_H_
