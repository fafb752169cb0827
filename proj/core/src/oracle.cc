#include "edparse/oracle.h"

#include <algorithm>
#include <sstream>

namespace edparse {

Oracle::Oracle(EnhancedGraph gold, ConstraintParams params)
    : gold_(std::move(gold)),
      system_(params),
      arcs_(gold_.arcs().begin(), gold_.arcs().end()) {
  for (size_t i = 0; i < arcs_.size(); ++i) {
    incident_[arcs_[i].head].push_back(static_cast<int>(i));
    if (arcs_[i].dependent != arcs_[i].head) {
      incident_[arcs_[i].dependent].push_back(static_cast<int>(i));
    }
  }
}

const std::vector<int>& Oracle::Incident(NodeId gold_node) const {
  static const std::vector<int> kNone;
  auto it = incident_.find(gold_node);
  return it == incident_.end() ? kNone : it->second;
}

void Oracle::SyncPending(const Configuration& c) {
  if (!pending_) return;
  if (c.HasNode(pending_->first)) {
    to_gold_[pending_->first] = pending_->second;
    to_config_[pending_->second] = pending_->first;
  }
  pending_.reset();
}

std::optional<NodeId> Oracle::ToGold(NodeId config_node) const {
  if (!config_node.is_null()) return config_node;
  auto it = to_gold_.find(config_node);
  if (it == to_gold_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> Oracle::ToConfig(NodeId gold_node) const {
  if (!gold_node.is_null()) return gold_node;
  auto it = to_config_.find(gold_node);
  if (it == to_config_.end()) return std::nullopt;
  return it->second;
}

bool Oracle::Constructed(const Arc& gold_arc, const Configuration& c) const {
  const auto head = ToConfig(gold_arc.head);
  const auto dependent = ToConfig(gold_arc.dependent);
  return head && dependent && c.HasArc(*head, *dependent, gold_arc.label);
}

bool Oracle::Complete(NodeId config_node, const Configuration& c) const {
  const auto gold_node = ToGold(config_node);
  if (!gold_node) return true;
  for (int index : Incident(*gold_node)) {
    if (!Constructed(arcs_[index], c)) return false;
  }
  return true;
}

std::vector<std::string> Oracle::Pending(NodeId head, NodeId dependent,
                                         const Configuration& c) const {
  std::vector<std::string> out;
  const auto gold_head = ToGold(head);
  const auto gold_dep = ToGold(dependent);
  if (!gold_head || !gold_dep) return out;
  for (int index : Incident(*gold_head)) {
    const Arc& arc = arcs_[index];
    if (arc.head == *gold_head && arc.dependent == *gold_dep &&
        !c.HasArc(head, dependent, arc.label)) {
      out.push_back(arc.label);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Transition Oracle::Next(const Configuration& c) {
  SyncPending(c);
  if (c.terminal()) throw OracleError("configuration is terminal");

  const auto& stack = c.stack();
  const auto s0 = c.stack_at(0);
  const auto s1 = c.stack_at(1);

  // 1. Finish.
  if (c.buffer_empty() && stack.size() == 1 && s0->is_root()) {
    return Transition::Finish();
  }

  // 2. Edges between s1 and s0, right before left.
  if (s0 && s1) {
    for (const std::string& label : Pending(*s1, *s0, c)) {
      Transition t = Transition::RightEdge(label);
      if (system_.IsLegal(c, t)) return t;
    }
    for (const std::string& label : Pending(*s0, *s1, c)) {
      Transition t = Transition::LeftEdge(label);
      if (system_.IsLegal(c, t)) return t;
    }
  }

  // 3. s0 has a gold null neighbor that does not exist yet.
  if (s0) {
    if (const auto g0 = ToGold(*s0)) {
      std::optional<NodeId> wanted;
      for (int index : Incident(*g0)) {
        const Arc& arc = arcs_[index];
        const NodeId other = arc.head == *g0 ? arc.dependent : arc.head;
        if (other.is_null() && !to_config_.contains(other) &&
            (!wanted || other < *wanted)) {
          wanted = other;
        }
      }
      if (wanted && system_.IsLegal(c, Transition::Node())) {
        pending_ = {c.NextNullId(), *wanted};
        return Transition::Node();
      }
    }
  }

  // 4. Reduce complete nodes.
  if (s0 && !s0->is_root() && Complete(*s0, c) &&
      system_.IsLegal(c, Transition::Reduce0())) {
    return Transition::Reduce0();
  }
  if (s1 && !s1->is_root() && Complete(*s1, c) &&
      system_.IsLegal(c, Transition::Reduce1())) {
    return Transition::Reduce1();
  }

  // 5. Swap when s0 still needs something deeper in the stack.
  if (s0 && s1 && system_.IsLegal(c, Transition::Swap())) {
    if (const auto g0 = ToGold(*s0)) {
      for (int index : Incident(*g0)) {
        const Arc& arc = arcs_[index];
        if (Constructed(arc, c)) continue;
        const NodeId gold_other = arc.head == *g0 ? arc.dependent : arc.head;
        const auto other = ToConfig(gold_other);
        if (!other || *other == *s0 || *other == *s1) continue;
        if (std::find(stack.begin(), stack.end() - 2, *other) !=
            stack.end() - 2) {
          return Transition::Swap();
        }
      }
    }
  }

  // 6. Shift.
  if (!c.buffer_empty()) return Transition::Shift();

  std::ostringstream message;
  message << "oracle dead end: buffer empty, stack [";
  for (size_t i = 0; i < stack.size(); ++i) {
    message << (i ? " " : "") << stack[i];
  }
  message << "]";
  throw OracleError(message.str());
}

namespace {

std::optional<Arc> ArcOf(const Configuration& c, const Transition& t) {
  if (!t.is_edge()) return std::nullopt;
  const NodeId s0 = *c.stack_at(0);
  const NodeId s1 = *c.stack_at(1);
  if (t.kind == TransitionKind::kLeftEdge) return Arc{s0, s1, t.label};
  return Arc{s1, s0, t.label};
}

std::string CapDiagnostic(const EnhancedGraph& gold, int word_count,
                          const ConstraintParams& params) {
  std::ostringstream out;
  for (NodeId n : gold.nodes()) {
    if (n.is_root()) continue;
    const size_t heads = gold.HeadsOf(n).size();
    if (static_cast<int>(heads) > params.max_heads) {
      out << "; node " << n << " has " << heads << " gold heads (limit "
          << params.max_heads << ")";
    }
  }
  for (const Arc& arc : gold.arcs()) {
    if (arc.head == arc.dependent) out << "; self-loop " << ToString(arc);
  }
  for (NodeId n : gold.NullNodes()) {
    if (gold.HeadsOf(n).empty() && gold.DependentsOf(n).empty()) {
      out << "; null node " << n << " has no arcs";
    }
  }
  const int nulls = static_cast<int>(gold.NullNodes().size());
  if (nulls > params.NullLimit(word_count)) {
    out << "; " << nulls << " gold null nodes (limit "
        << params.NullLimit(word_count) << ")";
  }
  return out.str();
}

}  // namespace

OracleResult OracleSequence(const EnhancedGraph& gold, int word_count,
                            const OracleOptions& options) {
  OracleResult result;
  result.final_config = Configuration::Initial(word_count);
  Configuration& c = result.final_config;
  TransitionSystem system(options.params);
  Oracle oracle(gold, options.params);
  const int budget = options.budget_multiplier * word_count;
  while (!c.terminal()) {
    if (static_cast<int>(result.steps.size()) >= budget) {
      result.diagnostic =
          "step budget of " + std::to_string(budget) + " exhausted";
      break;
    }
    Transition t;
    try {
      t = oracle.Next(c);
    } catch (const OracleError& e) {
      result.diagnostic = e.what();
      break;
    }
    TraceStep step{static_cast<int>(result.steps.size()) + 1, t, ArcOf(c, t)};
    system.Apply(c, t);
    result.steps.push_back(std::move(step));
  }
  // Every constructed arc is a gold arc, so matching counts mean the whole
  // gold graph was built.
  const size_t gold_nulls = gold.NullNodes().size();
  if (c.terminal() && (c.arcs().size() != gold.arcs().size() ||
                       static_cast<size_t>(c.null_count()) != gold_nulls)) {
    result.diagnostic = "finished with " + std::to_string(c.arcs().size()) +
                        " of " + std::to_string(gold.arcs().size()) +
                        " gold arcs and " + std::to_string(c.null_count()) +
                        " of " + std::to_string(gold_nulls) + " null nodes";
  } else {
    result.derivable = c.terminal();
  }
  if (!result.derivable) {
    result.diagnostic += CapDiagnostic(gold, word_count, options.params);
  }
  return result;
}

OracleResult Replay(int word_count, const std::vector<Transition>& sequence,
                    const ConstraintParams& params) {
  OracleResult result;
  result.final_config = Configuration::Initial(word_count);
  Configuration& c = result.final_config;
  TransitionSystem system(params);
  for (const Transition& t : sequence) {
    if (auto violation = system.Violation(c, t)) {
      result.diagnostic = "step " + std::to_string(result.steps.size() + 1) +
                          " " + t.ToString() + ": " + *violation;
      return result;
    }
    TraceStep step{static_cast<int>(result.steps.size()) + 1, t, ArcOf(c, t)};
    system.Apply(c, t);
    result.steps.push_back(std::move(step));
  }
  result.derivable = c.terminal();
  if (!result.derivable) result.diagnostic = "sequence ends before Finish";
  return result;
}

void WriteTraceBlock(std::ostream& out, const TraceBlock& block) {
  out << "# sent_id = " << block.sent_id << '\n';
  for (const std::string& line : block.comments) out << line << '\n';
  for (size_t i = 0; i < block.transitions.size(); ++i) {
    out << (i + 1) << '\t' << block.transitions[i].ToString() << '\n';
  }
  out << '\n';
}

std::vector<TraceBlock> ReadTraces(std::istream& in) {
  std::vector<TraceBlock> blocks;
  std::optional<TraceBlock> current;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("trace line " + std::to_string(line_no) + ": " +
                             what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (current) blocks.push_back(std::move(*current));
      current.reset();
      continue;
    }
    if (!current) current.emplace();
    if (line[0] == '#') {
      constexpr std::string_view kSentId = "# sent_id = ";
      if (line.starts_with(kSentId) && current->transitions.empty() &&
          current->sent_id.empty()) {
        current->sent_id = line.substr(kSentId.size());
      } else {
        current->comments.push_back(line);
      }
      continue;
    }
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) fail("expected <index>\\t<transition>");
    if (line.substr(0, tab) !=
        std::to_string(current->transitions.size() + 1)) {
      fail("step index out of sequence");
    }
    auto t = Transition::Parse(std::string_view(line).substr(tab + 1));
    if (!t) fail("unknown transition '" + line.substr(tab + 1) + "'");
    current->transitions.push_back(std::move(*t));
  }
  if (current) blocks.push_back(std::move(*current));
  return blocks;
}

}  // namespace edparse
