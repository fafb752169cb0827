#include "testing/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>

namespace edparse::testing {
namespace {

const std::vector<std::string> kNouns = {
    "dog", "cat", "teacher", "farmer", "city", "river", "book", "letter",
    "garden", "child", "doctor", "apple", "train", "house", "song", "road"};
const std::vector<std::string> kVerbs = {
    "saw", "liked", "found", "wrote", "painted", "visited", "sold", "built",
    "carried", "read"};
const std::vector<std::string> kControlVerbs = {"wanted", "tried", "hoped",
                                                "decided"};
const std::vector<std::string> kInfinitives = {"see", "find", "buy", "read",
                                               "visit", "paint"};
const std::vector<std::string> kAdjectives = {"old", "small", "red", "quiet",
                                              "famous", "new"};
const std::vector<std::string> kDeterminers = {"the", "a", "this", "every"};
const std::vector<std::string> kPrepositions = {"in", "near", "with", "from",
                                                "after"};
const std::vector<std::string> kConjunctions = {"and", "or", "but"};

const std::string& Pick(std::mt19937_64& rng,
                        const std::vector<std::string>& words) {
  return words[Uniform(rng, 0, static_cast<int>(words.size()) - 1)];
}

bool Chance(std::mt19937_64& rng, int percent) {
  return Uniform(rng, 1, 100) <= percent;
}

// Collects words in surface order together with basic and enhanced arcs.
class Builder {
 public:
  int Word(const std::string& form, const std::string& upos) {
    rows_.push_back(Row{NodeId::Word(static_cast<int>(rows_.size()) + 1),
                        form, upos});
    return static_cast<int>(rows_.size());
  }

  NodeId Null(int anchor, const std::string& form, const std::string& upos) {
    const NodeId id = NodeId::Null(anchor, ++null_subs_[anchor]);
    nulls_.push_back(Row{id, form, upos});
    return id;
  }

  void Basic(int dependent, int head, const std::string& deprel) {
    Row& row = rows_[dependent - 1];
    row.head = NodeId::Word(head);
    row.deprel = deprel;
  }

  void Enhanced(NodeId head, NodeId dependent, const std::string& label) {
    deps_[dependent].push_back(EnhancedArcRef{head, label});
  }
  void Enhanced(int head, int dependent, const std::string& label) {
    Enhanced(NodeId::Word(head), NodeId::Word(dependent), label);
  }

  // Basic arc mirrored as an enhanced arc with the same label.
  void Both(int dependent, int head, const std::string& deprel) {
    Basic(dependent, head, deprel);
    Enhanced(head, dependent, deprel);
  }

  const std::string& Form(int word) const { return rows_[word - 1].form; }

  Sentence Build(const std::string& sent_id) const {
    Sentence s;
    s.metadata.push_back("# sent_id = " + sent_id);
    std::string text;
    std::vector<Row> all = rows_;
    for (const Row& row : rows_) {
      if (!text.empty() && row.upos != "PUNCT") text += ' ';
      text += row.form;
    }
    s.metadata.push_back("# text = " + text);
    all.insert(all.end(), nulls_.begin(), nulls_.end());
    std::sort(all.begin(), all.end(),
              [](const Row& a, const Row& b) { return a.id < b.id; });
    for (const Row& row : all) {
      TokenRow t;
      t.id = row.id;
      t.form = row.form;
      t.lemma = row.form;
      t.upos = row.upos;
      if (!row.id.is_null()) {
        t.head = row.head;
        t.deprel = row.deprel;
      }
      auto it = deps_.find(row.id);
      if (it != deps_.end()) {
        t.deps = it->second;
        std::sort(t.deps.begin(), t.deps.end());
      }
      s.rows.push_back(std::move(t));
    }
    return s;
  }

 private:
  struct Row {
    NodeId id;
    std::string form;
    std::string upos;
    std::optional<NodeId> head;
    std::string deprel = "_";
  };

  std::vector<Row> rows_;
  std::vector<Row> nulls_;
  std::map<int, int> null_subs_;
  std::map<NodeId, std::vector<EnhancedArcRef>> deps_;
};

// [det] [adj] noun; returns the noun.
int NounPhrase(Builder& b, std::mt19937_64& rng) {
  std::optional<int> det, adj;
  if (Chance(rng, 70)) det = b.Word(Pick(rng, kDeterminers), "DET");
  if (Chance(rng, 30)) adj = b.Word(Pick(rng, kAdjectives), "ADJ");
  const int noun = b.Word(Pick(rng, kNouns), "NOUN");
  if (det) b.Both(*det, noun, "det");
  if (adj) b.Both(*adj, noun, "amod");
  return noun;
}

// Optionally "that VERB [NP]" after `noun`: the relative verb and the noun
// point at each other in the enhanced graph.
void MaybeRelativeClause(Builder& b, std::mt19937_64& rng, int noun,
                         int percent) {
  if (!Chance(rng, percent)) return;
  const int rel = b.Word("that", "PRON");
  const int verb = b.Word(Pick(rng, kVerbs), "VERB");
  b.Basic(rel, verb, "nsubj");
  b.Enhanced(noun, rel, "ref");
  b.Both(verb, noun, "acl:relcl");
  b.Enhanced(verb, noun, "nsubj:relsubj");
  if (Chance(rng, 50)) {
    const int obj = NounPhrase(b, rng);
    b.Both(obj, verb, "obj");
  }
}

// "NP (, NP)* cc NP" attached to `head` with `relation`. Later conjuncts
// get conj:<cc> from the first and a propagated copy of `relation`.
int CoordinatedObject(Builder& b, std::mt19937_64& rng, int head,
                      const std::string& relation) {
  const int first = NounPhrase(b, rng);
  b.Both(first, head, relation);
  if (!Chance(rng, 40)) return first;
  std::vector<int> rest;
  const int extra = Chance(rng, 30) ? 1 : 0;
  for (int i = 0; i < extra; ++i) {
    const int comma = b.Word(",", "PUNCT");
    const int conj = NounPhrase(b, rng);
    b.Both(comma, conj, "punct");
    rest.push_back(conj);
  }
  const int cc = b.Word(Pick(rng, kConjunctions), "CCONJ");
  const int last = NounPhrase(b, rng);
  b.Both(cc, last, "cc");
  rest.push_back(last);
  for (int conj : rest) {
    b.Basic(conj, first, "conj");
    b.Enhanced(first, conj, "conj:" + b.Form(cc));
    b.Enhanced(head, conj, relation);
  }
  return first;
}

}  // namespace

int Uniform(std::mt19937_64& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

Sentence GenerateSentence(std::mt19937_64& rng, const std::string& sent_id) {
  Builder b;
  const int subject = NounPhrase(b, rng);
  MaybeRelativeClause(b, rng, subject, 35);

  const bool control = Chance(rng, 30);
  const int verb =
      b.Word(control ? Pick(rng, kControlVerbs) : Pick(rng, kVerbs), "VERB");
  b.Both(verb, 0, "root");
  b.Both(subject, verb, "nsubj");

  int object_head = verb;
  if (control) {
    const int to = b.Word("to", "PART");
    const int inf = b.Word(Pick(rng, kInfinitives), "VERB");
    b.Both(to, inf, "mark");
    b.Both(inf, verb, "xcomp");
    b.Enhanced(inf, subject, "nsubj:xsubj");
    object_head = inf;
  }

  const int object = CoordinatedObject(b, rng, object_head, "obj");
  MaybeRelativeClause(b, rng, object, 15);

  if (Chance(rng, 45)) {
    const std::string& prep = Pick(rng, kPrepositions);
    const int p = b.Word(prep, "ADP");
    const int noun = NounPhrase(b, rng);
    b.Both(p, noun, "case");
    b.Basic(noun, object_head, "obl");
    b.Enhanced(object_head, noun, "obl:" + prep);
  }

  // Gapping: "and NP NP" with the verb elided. The basic tree promotes the
  // remnant subject; the enhanced graph restores the verb as a null node.
  if (Chance(rng, 30)) {
    const int comma = b.Word(",", "PUNCT");
    const int cc = b.Word(Pick(rng, kConjunctions), "CCONJ");
    const int subject2 = NounPhrase(b, rng);
    const NodeId gap = b.Null(subject2, b.Form(verb), "VERB");
    const int object2 = NounPhrase(b, rng);
    b.Basic(subject2, verb, "conj");
    b.Basic(comma, subject2, "punct");
    b.Basic(cc, subject2, "cc");
    b.Basic(object2, subject2, "orphan");
    b.Enhanced(NodeId::Word(verb), gap, "conj:" + b.Form(cc));
    b.Enhanced(gap, NodeId::Word(comma), "punct");
    b.Enhanced(gap, NodeId::Word(cc), "cc");
    b.Enhanced(gap, NodeId::Word(subject2), "nsubj");
    b.Enhanced(gap, NodeId::Word(object2), "obj");
  }

  const int stop = b.Word(".", "PUNCT");
  b.Both(stop, verb, "punct");
  return b.Build(sent_id);
}

Document GenerateTreebank(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Document doc;
  for (int i = 1; i <= count; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%04d", i);
    doc.push_back(GenerateSentence(rng, id));
  }
  return doc;
}

Sentence ManyHeadSentence(int conjuncts) {
  Builder b;
  const int subject = b.Word("we", "PRON");
  int first = 0;
  for (int i = 0; i < conjuncts; ++i) {
    std::optional<int> cc;
    if (i > 0) cc = b.Word("and", "CCONJ");
    const int verb = b.Word(kVerbs[i % kVerbs.size()], "VERB");
    b.Enhanced(verb, subject, "nsubj");
    if (i == 0) {
      first = verb;
      b.Both(verb, 0, "root");
      b.Basic(subject, verb, "nsubj");
    } else {
      b.Both(*cc, verb, "cc");
      b.Basic(verb, first, "conj");
      b.Enhanced(first, verb, "conj:and");
    }
  }
  const int stop = b.Word(".", "PUNCT");
  b.Both(stop, first, "punct");
  return b.Build("many-heads-" + std::to_string(conjuncts));
}

EnhancedGraph RandomGraph(std::mt19937_64& rng,
                          const RandomGraphOptions& options) {
  const int words = Uniform(rng, options.min_words, options.max_words);
  EnhancedGraph graph = EnhancedGraph::WithWords(words);
  const int nulls = Uniform(rng, 0, options.max_nulls);
  for (int i = 0; i < nulls; ++i) {
    const int anchor = Uniform(rng, 0, words);
    int sub = 1;
    while (graph.HasNode(NodeId::Null(anchor, sub))) ++sub;
    graph.AddNode(NodeId::Null(anchor, sub));
  }
  const std::vector<NodeId> nodes(graph.nodes().begin(), graph.nodes().end());
  const int last = static_cast<int>(nodes.size()) - 1;
  const int arcs = Uniform(rng, 0, options.max_arcs);
  for (int i = 0; i < arcs; ++i) {
    const NodeId head = nodes[Uniform(rng, 0, last)];
    const NodeId dependent = nodes[Uniform(rng, 1, last)];  // never the root
    const std::string& label = Pick(rng, options.labels);
    graph.AddArc(head, dependent, label);
  }
  return graph;
}

}  // namespace edparse::testing
