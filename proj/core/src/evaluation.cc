#include "edparse/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <set>
#include <sstream>

namespace edparse {
namespace {

double Ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// Extends the path `head -label-> null` through outgoing arcs of `null`.
void Expand(const EnhancedGraph& graph, NodeId head, NodeId null,
            const std::string& label, std::set<NodeId>& on_path,
            std::vector<CollapsedItem>& out) {
  bool extended = false;
  for (const auto& [dependent, next_label] : graph.DependentsOf(null)) {
    if (on_path.contains(dependent)) continue;
    extended = true;
    const std::string chained = label + ">" + next_label;
    if (dependent.is_null()) {
      on_path.insert(dependent);
      Expand(graph, head, dependent, chained, on_path, out);
      on_path.erase(dependent);
    } else {
      out.push_back({head, dependent, chained});
    }
  }
  if (!extended) out.push_back({head, std::nullopt, label});
}

}  // namespace

double Score::precision() const { return Ratio(correct, predicted); }
double Score::recall() const { return Ratio(correct, gold); }
double Score::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

Score& Score::operator+=(const Score& other) {
  correct += other.correct;
  predicted += other.predicted;
  gold += other.gold;
  return *this;
}

std::vector<CollapsedItem> CollapseNulls(const EnhancedGraph& graph) {
  std::vector<CollapsedItem> out;
  for (const Arc& arc : graph.arcs()) {
    if (arc.head.is_null()) continue;
    if (!arc.dependent.is_null()) {
      out.push_back({arc.head, arc.dependent, arc.label});
      continue;
    }
    std::set<NodeId> on_path = {arc.dependent};
    Expand(graph, arc.head, arc.dependent, arc.label, on_path, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Score ScoreGraphs(const EnhancedGraph& gold, const EnhancedGraph& predicted) {
  const auto gold_items = CollapseNulls(gold);
  const auto pred_items = CollapseNulls(predicted);
  std::vector<CollapsedItem> common;
  std::set_intersection(gold_items.begin(), gold_items.end(),
                        pred_items.begin(), pred_items.end(),
                        std::back_inserter(common));
  return {static_cast<std::int64_t>(common.size()),
          static_cast<std::int64_t>(pred_items.size()),
          static_cast<std::int64_t>(gold_items.size())};
}

double Evaluation::MacroF1() const {
  if (per_sentence.empty()) return 0.0;
  double sum = 0.0;
  for (const Score& s : per_sentence) sum += s.f1();
  return sum / static_cast<double>(per_sentence.size());
}

Evaluation Evaluate(const Document& gold, const Document& predicted) {
  if (gold.size() != predicted.size()) {
    throw AlignmentError("gold has " + std::to_string(gold.size()) +
                         " sentences, prediction has " +
                         std::to_string(predicted.size()));
  }
  Evaluation result;
  for (size_t i = 0; i < gold.size(); ++i) {
    const int words = gold[i].WordCount();
    if (predicted[i].WordCount() != words) {
      throw AlignmentError("sentence " + std::to_string(i + 1) +
                           ": word counts differ");
    }
    for (int w = 1; w <= words; ++w) {
      if (gold[i].Word(w).form != predicted[i].Word(w).form) {
        throw AlignmentError("sentence " + std::to_string(i + 1) + ": word " +
                             std::to_string(w) + " differs");
      }
    }
    const auto gold_items = CollapseNulls(ExtractGraph(gold[i]));
    const auto pred_items = CollapseNulls(ExtractGraph(predicted[i]));
    std::vector<CollapsedItem> common;
    std::set_intersection(gold_items.begin(), gold_items.end(),
                          pred_items.begin(), pred_items.end(),
                          std::back_inserter(common));
    const Score sentence{static_cast<std::int64_t>(common.size()),
                         static_cast<std::int64_t>(pred_items.size()),
                         static_cast<std::int64_t>(gold_items.size())};
    result.per_sentence.push_back(sentence);
    result.total += sentence;
    for (const auto& item : gold_items) ++result.per_label[item.label].gold;
    for (const auto& item : pred_items) {
      ++result.per_label[item.label].predicted;
    }
    for (const auto& item : common) ++result.per_label[item.label].correct;
  }
  return result;
}

Score Elas(const Document& gold, const Document& predicted) {
  return Evaluate(gold, predicted).total;
}

std::map<std::string, Score> PerLabelReport(const Document& gold,
                                            const Document& predicted) {
  return Evaluate(gold, predicted).per_label;
}

std::string FormatPercent(double ratio) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", 100.0 * ratio);
  return buffer;
}

std::string FormatReport(const Evaluation& evaluation, bool per_label) {
  std::ostringstream out;
  const Score& t = evaluation.total;
  out << "sentences: " << evaluation.per_sentence.size() << '\n'
      << "gold items: " << t.gold << "  predicted items: " << t.predicted
      << "  correct: " << t.correct << '\n'
      << "macro F1 over sentences: " << FormatPercent(evaluation.MacroF1())
      << '\n';
  if (per_label) {
    out << "label\tgold\tpred\tcorrect\tP\tR\tF1\n";
    for (const auto& [label, s] : evaluation.per_label) {
      out << label << '\t' << s.gold << '\t' << s.predicted << '\t'
          << s.correct << '\t' << FormatPercent(s.precision()) << '\t'
          << FormatPercent(s.recall()) << '\t' << FormatPercent(s.f1())
          << '\n';
    }
  }
  out << "ELAS_P=" << FormatPercent(t.precision()) << '\n'
      << "ELAS_R=" << FormatPercent(t.recall()) << '\n'
      << "ELAS_F1=" << FormatPercent(t.f1()) << '\n';
  return out.str();
}

}  // namespace edparse
