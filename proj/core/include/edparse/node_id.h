#ifndef EDPARSE_NODE_ID_H_
#define EDPARSE_NODE_ID_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace edparse {

// Identifies a node of an enhanced graph the way CoNLL-U does: the root is
// `0`, word i is `i`, and the s-th empty (null) node after word a is `a.s`.
//
// The ordering is lexicographic on (anchor, sub), which matches CoNLL-U row
// order: 0 < 1 < 1.1 < 1.2 < 2 < ...
class NodeId {
 public:
  constexpr NodeId() = default;

  static constexpr NodeId Root() { return NodeId(0, 0); }
  static constexpr NodeId Word(int index) { return NodeId(index, 0); }
  static constexpr NodeId Null(int anchor, int sub) {
    return NodeId(anchor, sub);
  }

  constexpr bool is_root() const { return anchor_ == 0 && sub_ == 0; }
  constexpr bool is_word() const { return anchor_ > 0 && sub_ == 0; }
  constexpr bool is_null() const { return sub_ > 0; }

  // Word index for words, anchor word for nulls, 0 for the root.
  constexpr int anchor() const { return anchor_; }
  constexpr int sub() const { return sub_; }

  // "0", "7" or "7.1".
  std::string ToString() const;

  // Accepts the same forms ToString produces. Leading zeros, signs, empty
  // components and `a.0` are rejected.
  static std::optional<NodeId> Parse(std::string_view text);

  constexpr auto operator<=>(const NodeId&) const = default;

 private:
  constexpr NodeId(int anchor, int sub) : anchor_(anchor), sub_(sub) {}

  std::int32_t anchor_ = 0;
  std::int32_t sub_ = 0;
};

std::ostream& operator<<(std::ostream& os, const NodeId& id);

}  // namespace edparse

template <>
struct std::hash<edparse::NodeId> {
  std::size_t operator()(const edparse::NodeId& id) const noexcept {
    return (static_cast<std::size_t>(id.anchor()) << 20) ^
           static_cast<std::size_t>(id.sub());
  }
};

#endif  // EDPARSE_NODE_ID_H_
