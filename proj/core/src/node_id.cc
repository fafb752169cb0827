#include "edparse/node_id.h"

#include <charconv>

namespace edparse {
namespace {

// Positive or zero decimal without sign or leading zeros.
std::optional<int> ParseUnsigned(std::string_view text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  if (text[0] < '0' || text[0] > '9') return std::nullopt;
  if (text.size() > 1 && text[0] == '0') return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

std::string NodeId::ToString() const {
  std::string out = std::to_string(anchor_);
  if (sub_ > 0) {
    out += '.';
    out += std::to_string(sub_);
  }
  return out;
}

std::optional<NodeId> NodeId::Parse(std::string_view text) {
  const size_t dot = text.find('.');
  if (dot == std::string_view::npos) {
    auto index = ParseUnsigned(text);
    if (!index) return std::nullopt;
    return NodeId(*index, 0);
  }
  auto anchor = ParseUnsigned(text.substr(0, dot));
  auto sub = ParseUnsigned(text.substr(dot + 1));
  if (!anchor || !sub || *sub == 0) return std::nullopt;
  return NodeId(*anchor, *sub);
}

std::ostream& operator<<(std::ostream& os, const NodeId& id) {
  return os << id.ToString();
}

}  // namespace edparse
