#include "edparse/postprocess.h"

#include <set>

namespace edparse {

std::optional<NodeId> Predicate(const EnhancedGraph& graph) {
  std::optional<NodeId> any;
  for (const auto& [dependent, label] : graph.DependentsOf(NodeId::Root())) {
    if (label == "root") return dependent;
    if (!any) any = dependent;
  }
  return any;
}

std::pair<EnhancedGraph, RepairReport> Repair(EnhancedGraph graph) {
  RepairReport report;
  const NodeId anchor = Predicate(graph).value_or(NodeId::Root());

  while (true) {
    const std::set<NodeId> reachable = graph.ReachableFrom(NodeId::Root());
    std::optional<NodeId> best;
    size_t best_size = 0;
    for (NodeId n : graph.nodes()) {
      if (n.is_root() || reachable.contains(n)) continue;
      const size_t size = graph.ReachableFrom(n).size();
      if (!best || size > best_size) {
        best = n;
        best_size = size;
      }
    }
    if (!best) break;
    graph.AddArc(anchor, *best, kOrphanLabel);
    report.attached_nodes.push_back({*best, anchor});
  }

  // Unreachable nodes are gone, so every non-root node has a head by now;
  // the pass is kept for graphs where that reasoning would not hold.
  for (NodeId n : graph.nodes()) {
    if (n.is_root() || !graph.HeadsOf(n).empty()) continue;
    graph.AddArc(anchor, n, kOrphanLabel);
    report.attached_nodes.push_back({n, anchor});
  }
  return {std::move(graph), std::move(report)};
}

std::string Violation::ToString() const {
  switch (kind) {
    case Kind::kUnreachable:
      return "Unreachable(" + node.ToString() + ")";
    case Kind::kHeadless:
      return "Headless(" + node.ToString() + ")";
    case Kind::kRootHasHead:
      return "RootHasHead(" + node.ToString() + ")";
    case Kind::kDuplicateArc:
      return "DuplicateArc(" + node.ToString() + ")";
  }
  return "?";
}

std::vector<Violation> Validate(const EnhancedGraph& graph) {
  std::vector<Violation> out;
  // EnhancedGraph rejects root dependents and duplicate triples on
  // insertion, so only connectivity can fail here.
  const std::set<NodeId> reachable = graph.ReachableFrom(NodeId::Root());
  for (NodeId n : graph.nodes()) {
    if (n.is_root() || reachable.contains(n)) continue;
    const bool headless = graph.HeadsOf(n).empty();
    out.push_back({headless ? Violation::Kind::kHeadless
                            : Violation::Kind::kUnreachable,
                   n});
  }
  return out;
}

}  // namespace edparse
