#ifndef EDPARSE_POSTPROCESS_H_
#define EDPARSE_POSTPROCESS_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "edparse/graph.h"

namespace edparse {

inline constexpr char kOrphanLabel[] = "orphan";

struct Attachment {
  NodeId node;
  NodeId attached_to;
  bool operator==(const Attachment&) const = default;
};

struct RepairReport {
  std::vector<Attachment> attached_nodes;
  bool premature_finish = false;  // set by the parse driver

  bool empty() const { return attached_nodes.empty() && !premature_finish; }
};

// The attachment point for repairs: the smallest root dependent reached by
// a `root` arc, else the smallest root dependent, else nullopt.
std::optional<NodeId> Predicate(const EnhancedGraph& graph);

// Makes the graph connected. While some node is unreachable from the root,
// the unreachable node with the most descendants (ties: smallest id) gets an
// `orphan` arc from the predicate, or from the root if there is none. Any
// remaining headless node is attached the same way. The predicate is chosen
// once, on the input graph.
std::pair<EnhancedGraph, RepairReport> Repair(EnhancedGraph graph);

struct Violation {
  enum class Kind { kUnreachable, kHeadless, kRootHasHead, kDuplicateArc };
  Kind kind;
  NodeId node;

  std::string ToString() const;
  bool operator==(const Violation&) const = default;
};

// Empty iff the graph is connected, every non-root node has a head, the root
// has no head and no triple is duplicated. Each node not reachable from the
// root is reported once, in id order: Headless if it has no head at all,
// Unreachable otherwise.
std::vector<Violation> Validate(const EnhancedGraph& graph);

}  // namespace edparse

#endif  // EDPARSE_POSTPROCESS_H_
