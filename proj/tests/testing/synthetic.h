#ifndef EDPARSE_TESTS_TESTING_SYNTHETIC_H_
#define EDPARSE_TESTS_TESTING_SYNTHETIC_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "edparse/conllu.h"
#include "edparse/graph.h"

namespace edparse::testing {

// Small English-like grammar producing UD sentences with both a basic tree
// and enhanced DEPS: conjunct propagation and control give words several
// heads, relative clauses give 2-cycles (acl:relcl / nsubj:relsubj plus
// ref), gapping gives a null node standing in for the elided verb.
Sentence GenerateSentence(std::mt19937_64& rng, const std::string& sent_id);

// `count` sentences with sent_ids synth-0001, synth-0002, ...
Document GenerateTreebank(int count, std::uint64_t seed);

// One subject shared by `conjuncts` coordinated verbs, so the subject has
// `conjuncts` enhanced heads.
Sentence ManyHeadSentence(int conjuncts);

struct RandomGraphOptions {
  int min_words = 1;
  int max_words = 8;
  int max_nulls = 2;
  int max_arcs = 16;
  std::vector<std::string> labels = {"a", "b", "c"};
};

// Arbitrary graph over root, words and nulls: arcs are drawn uniformly, so
// it is usually disconnected and may contain cycles, self-loops and headless
// nodes.
EnhancedGraph RandomGraph(std::mt19937_64& rng,
                          const RandomGraphOptions& options = {});

// Uniform integer in [lo, hi] from the engine, portable across standard
// libraries.
int Uniform(std::mt19937_64& rng, int lo, int hi);

}  // namespace edparse::testing

#endif  // EDPARSE_TESTS_TESTING_SYNTHETIC_H_
