#ifndef EDPARSE_CONLLU_H_
#define EDPARSE_CONLLU_H_

#include <compare>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "edparse/graph.h"
#include "edparse/node_id.h"

namespace edparse {

// Malformed CoNLL-U input. line() is 1-based; 0 when not tied to a line.
class ConlluError : public std::runtime_error {
 public:
  ConlluError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Multiword token range row `first-last`; never a graph node.
struct MultiwordRange {
  int first = 0;
  int last = 0;
  auto operator<=>(const MultiwordRange&) const = default;
};

// One `head:label` entry of the DEPS column.
struct EnhancedArcRef {
  NodeId head;
  std::string label;
  auto operator<=>(const EnhancedArcRef&) const = default;
};

struct TokenRow {
  std::variant<NodeId, MultiwordRange> id;
  std::string form = "_";
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  std::optional<NodeId> head;  // basic-tree head; empty renders as `_`
  std::string deprel = "_";
  std::vector<EnhancedArcRef> deps;  // sorted by (head, label)
  std::string misc = "_";

  bool is_range() const {
    return std::holds_alternative<MultiwordRange>(id);
  }
  bool is_word() const { return !is_range() && node().is_word(); }
  bool is_null() const { return !is_range() && node().is_null(); }
  // Precondition: !is_range().
  NodeId node() const { return std::get<NodeId>(id); }

  bool operator==(const TokenRow&) const = default;
};

struct Sentence {
  std::vector<std::string> metadata;  // comment lines, verbatim with '#'
  std::vector<TokenRow> rows;

  int WordCount() const;
  // Row of word `index` (1-based). Throws std::out_of_range.
  const TokenRow& Word(int index) const;
  // Value of the `# sent_id = ...` comment, or empty.
  std::string SentId() const;

  bool operator==(const Sentence&) const = default;
};

using Document = std::vector<Sentence>;

Document ParseConllu(std::istream& in);
Document ParseConllu(std::string_view text);
// Throws ConlluError(0, ...) if the file cannot be opened.
Document ReadConlluFile(const std::string& path);

// Parses one DEPS cell (`_` or `h:l|h:l...`). The head ends at the first
// colon, so `12.1:conj:en` is head 12.1 with label `conj:en`.
std::vector<EnhancedArcRef> ParseDeps(std::string_view cell, int line = 0);
std::string FormatDeps(const std::vector<EnhancedArcRef>& deps);

void WriteSentence(std::ostream& out, const Sentence& sentence);
void WriteConllu(std::ostream& out, const Document& doc);
std::string SerializeConllu(const Document& doc);

// Nodes are the root, the words and the empty nodes; arcs are the union of
// all DEPS entries. Throws GraphError on a duplicated triple.
EnhancedGraph ExtractGraph(const Sentence& sentence);

// Rewrites every DEPS column from `graph`. Empty-node rows are replaced by
// the graph's null nodes: rows for nulls already present in `sentence` are
// kept, new ones get `_` in every column but ID and DEPS. Null ids are
// renumbered so that subs are consecutive per anchor. Throws GraphError if
// the graph has a word beyond the sentence length.
Sentence InjectGraph(const Sentence& sentence, const EnhancedGraph& graph);

}  // namespace edparse

#endif  // EDPARSE_CONLLU_H_
