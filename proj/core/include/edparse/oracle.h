#ifndef EDPARSE_ORACLE_H_
#define EDPARSE_ORACLE_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "edparse/graph.h"
#include "edparse/transition.h"

namespace edparse {

// The gold graph cannot be derived from the current configuration.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceStep {
  int index = 0;  // 1-based
  Transition transition;
  std::optional<Arc> arc_added;  // set exactly for edge transitions

  bool operator==(const TraceStep&) const = default;
};

// Static oracle for one gold graph. The first matching rule wins:
//
//   1. empty buffer and stack [root]                      -> Finish
//   2. unconstructed gold arc between s1 and s0           -> Right-Edge
//      (preferred over Left-Edge; smallest label first)      or Left-Edge
//   3. s0 has a gold null neighbor not created yet        -> Node
//   4. s0 complete -> Reduce-0; otherwise s1 complete     -> Reduce-1
//   5. s1, s0 in generated order and s0 has an
//      unconstructed gold arc to a stack node besides s1  -> Swap
//   6.                                                    -> Shift
//
// A node is complete when all its gold arcs are constructed. Placeholder
// nulls created by Node are aligned to the smallest-id uncreated gold null
// adjacent to s0. Only legal transitions are returned.
class Oracle {
 public:
  explicit Oracle(EnhancedGraph gold, ConstraintParams params = {});

  // Throws OracleError at a dead end and for terminal configurations. The
  // returned transition is expected to be applied before the next call; a
  // Node that was not applied is forgotten.
  Transition Next(const Configuration& c);

  const EnhancedGraph& gold() const { return gold_; }
  // Placeholder null id -> gold null id.
  const std::map<NodeId, NodeId>& null_alignment() const { return to_gold_; }

 private:
  void SyncPending(const Configuration& c);
  std::optional<NodeId> ToGold(NodeId config_node) const;
  std::optional<NodeId> ToConfig(NodeId gold_node) const;
  bool Constructed(const Arc& gold_arc, const Configuration& c) const;
  bool Complete(NodeId config_node, const Configuration& c) const;
  // Unconstructed gold labels head -> dependent (config ids), sorted.
  std::vector<std::string> Pending(NodeId head, NodeId dependent,
                                   const Configuration& c) const;
  const std::vector<int>& Incident(NodeId gold_node) const;

  EnhancedGraph gold_;
  TransitionSystem system_;
  std::vector<Arc> arcs_;                     // gold arcs, sorted
  std::map<NodeId, std::vector<int>> incident_;  // gold node -> arc indices
  std::map<NodeId, NodeId> to_gold_;
  std::map<NodeId, NodeId> to_config_;
  std::optional<std::pair<NodeId, NodeId>> pending_;  // placeholder, gold
};

struct OracleOptions {
  ConstraintParams params;
  int budget_multiplier = 50;  // step budget = multiplier * word count
};

struct OracleResult {
  std::vector<TraceStep> steps;
  Configuration final_config;
  // Finished through rule 1 with every gold arc and null node built; the
  // constructed graph then equals the gold graph modulo null ids.
  bool derivable = false;
  std::string diagnostic;  // empty when derivable

  EnhancedGraph graph() const { return final_config.ToGraph(); }
};

// Runs the oracle from the initial configuration until Finish, a dead end
// or the step budget. Never throws for non-derivable graphs.
OracleResult OracleSequence(const EnhancedGraph& gold, int word_count,
                            const OracleOptions& options = {});

// Replays transitions from the initial configuration. Stops at the first
// illegal transition and reports it in `diagnostic`.
OracleResult Replay(int word_count, const std::vector<Transition>& sequence,
                    const ConstraintParams& params = {});

// Trace files: one block per sentence, `# sent_id = <id>` first, optional
// further `#` lines, then `<index>\t<TRANSITION>` lines; blocks are
// separated by a blank line.
struct TraceBlock {
  std::string sent_id;
  std::vector<std::string> comments;  // extra comment lines, verbatim
  std::vector<Transition> transitions;
};

void WriteTraceBlock(std::ostream& out, const TraceBlock& block);
// Throws std::runtime_error with the line number on malformed input.
std::vector<TraceBlock> ReadTraces(std::istream& in);

}  // namespace edparse

#endif  // EDPARSE_ORACLE_H_
