#include "edparse/conllu.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace edparse {
namespace {

constexpr int kColumns = 10;

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<int> ParsePositive(std::string_view text) {
  auto id = NodeId::Parse(text);
  if (!id || !id->is_word()) return std::nullopt;
  return id->anchor();
}

// Accumulates the rows of one sentence and checks id sequencing.
class SentenceBuilder {
 public:
  bool empty() const { return sentence_.rows.empty() && comments_.empty(); }

  void AddComment(std::string_view line, int line_no) {
    if (!sentence_.rows.empty()) {
      throw ConlluError(line_no, "comment line after token rows");
    }
    comments_.emplace_back(line);
  }

  void AddRow(std::string_view line, int line_no) {
    auto cells = SplitTabs(line);
    if (static_cast<int>(cells.size()) != kColumns) {
      throw ConlluError(line_no, "expected 10 tab-separated columns, got " +
                                     std::to_string(cells.size()));
    }
    TokenRow row;
    row.id = ParseId(cells[0], line_no);
    row.form = cells[1];
    row.lemma = cells[2];
    row.upos = cells[3];
    row.xpos = cells[4];
    row.feats = cells[5];
    if (cells[6] != "_") {
      auto head = NodeId::Parse(cells[6]);
      if (!head || head->is_null()) {
        throw ConlluError(line_no, "malformed HEAD '" +
                                       std::string(cells[6]) + "'");
      }
      row.head = head;
    }
    row.deprel = cells[7];
    row.deps = ParseDeps(cells[8], line_no);
    row.misc = cells[9];
    if (!row.is_range() && row.node().is_null() &&
        (row.head || row.deprel != "_")) {
      throw ConlluError(line_no, "empty node must have '_' HEAD and DEPREL");
    }
    if (row.is_range() && (row.head || row.deprel != "_" || !row.deps.empty())) {
      throw ConlluError(line_no,
                        "multiword token must have '_' HEAD, DEPREL, DEPS");
    }
    sentence_.rows.push_back(std::move(row));
    lines_.push_back(line_no);
  }

  Sentence Finish(int line_no) {
    if (sentence_.rows.empty()) {
      throw ConlluError(line_no, "sentence has comments but no token rows");
    }
    if (words_ == 0) throw ConlluError(line_no, "sentence has no words");
    std::set<NodeId> nodes = {NodeId::Root()};
    for (const TokenRow& row : sentence_.rows) {
      if (!row.is_range()) nodes.insert(row.node());
    }
    for (size_t i = 0; i < sentence_.rows.size(); ++i) {
      const TokenRow& row = sentence_.rows[i];
      if (row.head && row.head->anchor() > words_) {
        throw ConlluError(lines_[i], "HEAD " + row.head->ToString() +
                                         " beyond sentence length");
      }
      for (const EnhancedArcRef& dep : row.deps) {
        if (!nodes.contains(dep.head)) {
          throw ConlluError(lines_[i], "DEPS references nonexistent node " +
                                           dep.head.ToString());
        }
      }
    }
    for (const auto& [first, line] : open_ranges_) {
      if (first > words_) {
        throw ConlluError(line, "multiword token range beyond last word");
      }
    }
    sentence_.metadata = std::move(comments_);
    Sentence out = std::move(sentence_);
    *this = SentenceBuilder();
    return out;
  }

 private:
  std::variant<NodeId, MultiwordRange> ParseId(std::string_view text,
                                               int line_no) {
    const size_t dash = text.find('-');
    if (dash != std::string_view::npos) {
      auto first = ParsePositive(text.substr(0, dash));
      auto last = ParsePositive(text.substr(dash + 1));
      if (!first || !last || *last < *first) {
        throw ConlluError(line_no, "malformed range id '" +
                                       std::string(text) + "'");
      }
      if (*first != words_ + 1) {
        throw ConlluError(line_no, "range '" + std::string(text) +
                                       "' does not start at the next word");
      }
      open_ranges_.emplace_back(*last, line_no);
      return MultiwordRange{*first, *last};
    }
    auto id = NodeId::Parse(text);
    if (!id) {
      throw ConlluError(line_no, "malformed id '" + std::string(text) + "'");
    }
    if (id->is_root()) throw ConlluError(line_no, "token id 0 is reserved");
    if (id->is_word()) {
      if (id->anchor() != words_ + 1) {
        throw ConlluError(line_no, "non-consecutive word id " +
                                       id->ToString() + ", expected " +
                                       std::to_string(words_ + 1));
      }
      words_ = id->anchor();
      return *id;
    }
    if (id->anchor() != words_) {
      throw ConlluError(line_no, "empty node " + id->ToString() +
                                     " out of position");
    }
    const int expected = last_null_anchor_ == words_ ? last_null_sub_ + 1 : 1;
    if (id->sub() != expected) {
      throw ConlluError(line_no, "non-consecutive empty node id " +
                                     id->ToString());
    }
    last_null_anchor_ = id->anchor();
    last_null_sub_ = id->sub();
    return *id;
  }

  Sentence sentence_;
  std::vector<std::string> comments_;
  std::vector<int> lines_;
  std::vector<std::pair<int, int>> open_ranges_;
  int words_ = 0;
  int last_null_anchor_ = -1;
  int last_null_sub_ = 0;
};

}  // namespace

ConlluError::ConlluError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        message
                                  : message),
      line_(line) {}

int Sentence::WordCount() const {
  int count = 0;
  for (const TokenRow& row : rows) count += row.is_word() ? 1 : 0;
  return count;
}

const TokenRow& Sentence::Word(int index) const {
  for (const TokenRow& row : rows) {
    if (row.is_word() && row.node().anchor() == index) return row;
  }
  throw std::out_of_range("no word " + std::to_string(index));
}

std::string Sentence::SentId() const {
  constexpr std::string_view kPrefix = "# sent_id";
  for (const std::string& line : metadata) {
    if (line.rfind(kPrefix, 0) != 0) continue;
    std::string_view rest = std::string_view(line).substr(kPrefix.size());
    const size_t eq = rest.find('=');
    if (eq == std::string_view::npos) continue;
    rest = rest.substr(eq + 1);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    return std::string(rest);
  }
  return "";
}

std::vector<EnhancedArcRef> ParseDeps(std::string_view cell, int line) {
  std::vector<EnhancedArcRef> deps;
  if (cell == "_") return deps;
  size_t start = 0;
  while (start <= cell.size()) {
    size_t bar = cell.find('|', start);
    if (bar == std::string_view::npos) bar = cell.size();
    const std::string_view entry = cell.substr(start, bar - start);
    const size_t colon = entry.find(':');
    if (colon == std::string_view::npos || colon + 1 == entry.size()) {
      throw ConlluError(line, "malformed DEPS entry '" + std::string(entry) +
                                  "'");
    }
    auto head = NodeId::Parse(entry.substr(0, colon));
    if (!head) {
      throw ConlluError(line, "malformed DEPS head in '" +
                                  std::string(entry) + "'");
    }
    deps.push_back({*head, std::string(entry.substr(colon + 1))});
    start = bar + 1;
  }
  std::sort(deps.begin(), deps.end());
  return deps;
}

std::string FormatDeps(const std::vector<EnhancedArcRef>& deps) {
  if (deps.empty()) return "_";
  std::string out;
  for (const EnhancedArcRef& dep : deps) {
    if (!out.empty()) out += '|';
    out += dep.head.ToString();
    out += ':';
    out += dep.label;
  }
  return out;
}

Document ParseConllu(std::istream& in) {
  Document doc;
  SentenceBuilder builder;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!builder.empty()) doc.push_back(builder.Finish(line_no));
    } else if (line[0] == '#') {
      builder.AddComment(line, line_no);
    } else {
      builder.AddRow(line, line_no);
    }
  }
  if (!builder.empty()) doc.push_back(builder.Finish(line_no));
  return doc;
}

Document ParseConllu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConllu(in);
}

Document ReadConlluFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConlluError(0, "cannot open " + path);
  return ParseConllu(in);
}

void WriteSentence(std::ostream& out, const Sentence& sentence) {
  for (const std::string& line : sentence.metadata) out << line << '\n';
  for (const TokenRow& row : sentence.rows) {
    if (row.is_range()) {
      const auto& range = std::get<MultiwordRange>(row.id);
      out << range.first << '-' << range.last;
    } else {
      out << row.node();
    }
    out << '\t' << row.form << '\t' << row.lemma << '\t' << row.upos << '\t'
        << row.xpos << '\t' << row.feats << '\t'
        << (row.head ? row.head->ToString() : "_") << '\t' << row.deprel
        << '\t' << FormatDeps(row.deps) << '\t' << row.misc << '\n';
  }
  out << '\n';
}

void WriteConllu(std::ostream& out, const Document& doc) {
  for (const Sentence& sentence : doc) WriteSentence(out, sentence);
}

std::string SerializeConllu(const Document& doc) {
  std::ostringstream out;
  WriteConllu(out, doc);
  return out.str();
}

EnhancedGraph ExtractGraph(const Sentence& sentence) {
  EnhancedGraph graph;
  for (const TokenRow& row : sentence.rows) {
    if (!row.is_range()) graph.AddNode(row.node());
  }
  for (const TokenRow& row : sentence.rows) {
    if (row.is_range()) continue;
    for (const EnhancedArcRef& dep : row.deps) {
      if (!graph.AddArc(dep.head, row.node(), dep.label)) {
        throw GraphError("duplicate arc (" + dep.head.ToString() + ", " +
                         row.node().ToString() + ", " + dep.label + ")");
      }
    }
  }
  return graph;
}

Sentence InjectGraph(const Sentence& sentence, const EnhancedGraph& graph) {
  const int words = sentence.WordCount();
  for (NodeId n : graph.nodes()) {
    if (n.anchor() > words) {
      throw GraphError("graph node " + n.ToString() +
                       " beyond sentence length " + std::to_string(words));
    }
  }

  // Renumber nulls so that subs run 1..k per anchor, preserving order.
  std::map<NodeId, NodeId> renumber;
  std::map<int, int> next_sub;
  for (NodeId n : graph.nodes()) {
    if (n.is_null()) {
      renumber[n] = NodeId::Null(n.anchor(), ++next_sub[n.anchor()]);
    }
  }
  auto map_node = [&](NodeId n) {
    auto it = renumber.find(n);
    return it == renumber.end() ? n : it->second;
  };

  std::map<NodeId, std::vector<EnhancedArcRef>> deps;
  for (const Arc& arc : graph.arcs()) {
    deps[map_node(arc.dependent)].push_back({map_node(arc.head), arc.label});
  }
  for (auto& [node, refs] : deps) std::sort(refs.begin(), refs.end());

  std::map<NodeId, const TokenRow*> existing_nulls;
  std::multimap<int, const TokenRow*> ranges;
  for (const TokenRow& row : sentence.rows) {
    if (row.is_range()) {
      ranges.emplace(std::get<MultiwordRange>(row.id).first, &row);
    } else if (row.is_null()) {
      existing_nulls[row.node()] = &row;
    }
  }

  Sentence out;
  out.metadata = sentence.metadata;
  auto emit_nulls = [&](int anchor) {
    for (const auto& [old_id, new_id] : renumber) {
      if (new_id.anchor() != anchor) continue;
      TokenRow row;
      auto it = existing_nulls.find(new_id);
      if (it != existing_nulls.end()) row = *it->second;
      row.id = new_id;
      row.deps = deps[new_id];
      out.rows.push_back(std::move(row));
    }
  };
  emit_nulls(0);
  for (int i = 1; i <= words; ++i) {
    auto [lo, hi] = ranges.equal_range(i);
    for (auto it = lo; it != hi; ++it) out.rows.push_back(*it->second);
    TokenRow row = sentence.Word(i);
    row.deps = deps[NodeId::Word(i)];
    out.rows.push_back(std::move(row));
    emit_nulls(i);
  }
  return out;
}

}  // namespace edparse
