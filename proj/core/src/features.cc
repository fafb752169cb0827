#include "edparse/features.h"

#include <algorithm>

namespace edparse {
namespace {

constexpr std::string_view kNone = "<none>";
constexpr std::string_view kRootForm = "<root>";
constexpr std::string_view kNullForm = "<null>";

std::string CountBucket(int count) {
  return count >= 3 ? "3+" : std::to_string(count);
}

std::string BufferBucket(size_t size) {
  if (size <= 2) return std::to_string(size);
  if (size <= 5) return "3-5";
  if (size <= 10) return "6-10";
  return "11+";
}

std::string RatioBucket(int nulls, int words) {
  if (nulls == 0) return "0";
  const double ratio = static_cast<double>(nulls) / words;
  if (ratio < 0.1) return "<.1";
  if (ratio < 0.25) return "<.25";
  if (ratio < 0.5) return "<.5";
  if (ratio < 1.0) return "<1";
  return "1";
}

std::string Cat(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (std::string_view part : parts) {
    out.append(part);
    out.push_back('\x1f');
  }
  return out;
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

SentenceContext::SentenceContext(const Sentence& sentence) {
  forms_.emplace_back(kRootForm);
  upos_.emplace_back(kRootForm);
  for (const TokenRow& row : sentence.rows) {
    if (!row.is_word()) continue;
    forms_.push_back(row.form);
    upos_.push_back(row.upos);
  }
}

std::string_view SentenceContext::Form(NodeId node) const {
  if (node.is_null()) return kNullForm;
  if (node.anchor() >= static_cast<int>(forms_.size())) return kNone;
  return forms_[node.anchor()];
}

std::string_view SentenceContext::Upos(NodeId node) const {
  if (node.is_null()) return kNullForm;
  if (node.anchor() >= static_cast<int>(upos_.size())) return kNone;
  return upos_[node.anchor()];
}

std::vector<std::string> FeatureStrings(const Configuration& c,
                                        const SentenceContext& s) {
  const std::optional<NodeId> slots[] = {c.stack_at(0), c.stack_at(1),
                                         c.stack_at(2), c.buffer_at(0),
                                         c.buffer_at(1)};
  static constexpr std::string_view kNames[] = {"s0", "s1", "s2", "b0", "b1"};
  std::string_view form[5], upos[5];
  for (int i = 0; i < 5; ++i) {
    form[i] = slots[i] ? s.Form(*slots[i]) : kNone;
    upos[i] = slots[i] ? s.Upos(*slots[i]) : kNone;
  }
  auto null_flag = [&](int i) -> std::string_view {
    if (!slots[i]) return kNone;
    return slots[i]->is_null() ? "1" : "0";
  };

  std::vector<std::string> out;
  out.push_back("bias");
  for (int i = 0; i < 5; ++i) {
    out.push_back(Cat({"f", kNames[i], form[i]}));
    out.push_back(Cat({"p", kNames[i], upos[i]}));
  }
  out.push_back(Cat({"n", "s0", null_flag(0)}));
  out.push_back(Cat({"n", "s1", null_flag(1)}));
  out.push_back(Cat({"n", "b0", null_flag(3)}));

  // Labels already drawn between s0 and s1, by direction.
  std::string right = "", left = "";
  if (slots[0] && slots[1]) {
    for (auto label : c.LabelsBetween(*slots[1], *slots[0])) {
      right.append(label).push_back(',');
    }
    for (auto label : c.LabelsBetween(*slots[0], *slots[1])) {
      left.append(label).push_back(',');
    }
  }
  out.push_back(Cat({"lr", right.empty() ? kNone : right}));
  out.push_back(Cat({"ll", left.empty() ? kNone : left}));

  const std::string h0 = slots[0] ? CountBucket(c.HeadCount(*slots[0]))
                                  : std::string(kNone);
  const std::string h1 = slots[1] ? CountBucket(c.HeadCount(*slots[1]))
                                  : std::string(kNone);
  const std::string d0 = slots[0] ? CountBucket(c.DependentCount(*slots[0]))
                                  : std::string(kNone);
  const std::string d1 = slots[1] ? CountBucket(c.DependentCount(*slots[1]))
                                  : std::string(kNone);
  out.push_back(Cat({"h", "s0", h0}));
  out.push_back(Cat({"h", "s1", h1}));
  out.push_back(Cat({"d", "s0", d0}));
  out.push_back(Cat({"d", "s1", d1}));
  out.push_back(Cat({"blen", BufferBucket(c.buffer_size())}));
  out.push_back(
      Cat({"ratio", RatioBucket(c.null_count(), c.word_count())}));
  out.push_back(Cat({"depth", CountBucket(static_cast<int>(c.stack().size()))}));

  std::string_view order = kNone;
  if (slots[0] && slots[1]) {
    const auto g1 = c.GenOrder(*slots[1]);
    const auto g0 = c.GenOrder(*slots[0]);
    order = g1 && g0 && *g1 < *g0 ? "in" : "out";
  }
  out.push_back(Cat({"ord", order}));

  // Conjunctions.
  out.push_back(Cat({"pp", upos[1], upos[0]}));
  out.push_back(Cat({"ppp", upos[1], upos[0], upos[3]}));
  out.push_back(Cat({"p0b0", upos[0], upos[3]}));
  out.push_back(Cat({"ff", form[1], form[0]}));
  out.push_back(Cat({"f0b0", form[0], form[3]}));
  out.push_back(Cat({"f0p1", form[0], upos[1]}));
  out.push_back(Cat({"p0f1", upos[0], form[1]}));
  out.push_back(Cat({"f0h", form[0], h0, d0}));
  out.push_back(Cat({"f1h", form[1], h1, d1}));
  out.push_back(Cat({"p0h", upos[0], h0, d0}));
  out.push_back(Cat({"p1h", upos[1], h1, d1}));
  out.push_back(Cat({"ffl", form[1], form[0], right, left}));
  out.push_back(Cat({"ppl", upos[1], upos[0], right, left}));
  out.push_back(Cat({"ppo", upos[1], upos[0], order}));
  out.push_back(Cat({"ffo", form[1], form[0], order, h0, h1}));
  out.push_back(Cat({"p2p1p0", upos[2], upos[1], upos[0]}));
  out.push_back(Cat({"f0n", form[0], null_flag(3),
                     RatioBucket(c.null_count(), c.word_count())}));
  return out;
}

FeatureVector Featurize(const Configuration& c, const SentenceContext& s,
                        std::uint32_t feature_dim) {
  FeatureVector out;
  for (const std::string& feature : FeatureStrings(c, s)) {
    out.push_back(static_cast<std::uint32_t>(Fnv1a64(feature) % feature_dim));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace edparse
