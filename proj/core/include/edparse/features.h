#ifndef EDPARSE_FEATURES_H_
#define EDPARSE_FEATURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "edparse/conllu.h"
#include "edparse/transition.h"

namespace edparse {

inline constexpr std::uint32_t kDefaultFeatureDim = 1u << 20;

// 64-bit FNV-1a. Stable across platforms and runs.
std::uint64_t Fnv1a64(std::string_view data);

// Sorted, duplicate-free hashed feature indices.
using FeatureVector = std::vector<std::uint32_t>;

// Word-level attributes of a sentence, indexed by word number. Null nodes
// and the root have fixed pseudo-forms.
class SentenceContext {
 public:
  explicit SentenceContext(const Sentence& sentence);

  std::string_view Form(NodeId node) const;
  std::string_view Upos(NodeId node) const;
  int word_count() const { return static_cast<int>(forms_.size()) - 1; }

 private:
  std::vector<std::string> forms_;  // [0] is the root
  std::vector<std::string> upos_;
};

// Templates over forms/UPOS of s0, s1, s2, b0, b1; null flags of s0, s1,
// b0; constructed labels between s0 and s1; head and dependent counts of
// s0 and s1; buffer length and null-to-word ratio buckets; plus a few
// conjunctions. Missing positions produce sentinel values.
FeatureVector Featurize(const Configuration& c, const SentenceContext& s,
                        std::uint32_t feature_dim = kDefaultFeatureDim);

// Readable template strings before hashing (diagnostics and tests).
std::vector<std::string> FeatureStrings(const Configuration& c,
                                        const SentenceContext& s);

}  // namespace edparse

#endif  // EDPARSE_FEATURES_H_
