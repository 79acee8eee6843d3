#include "grig/omega.hpp"

#include <stdexcept>

namespace grig {

OmegaPrefix OmegaPrefix::parse(std::string_view text) {
  OmegaPrefix out;
  bool in_period = false;
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == '/') {
      if (in_period) throw std::invalid_argument("omega: more than one '/'");
      in_period = true;
      continue;
    }
    if (ch < '0' || ch > '2')
      throw std::invalid_argument(std::string("omega: bad character '") + ch + "'");
    (in_period ? out.period : out.prefix).push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  if (in_period && out.period.empty())
    throw std::invalid_argument("omega: empty period after '/'");
  return out;
}

std::string OmegaPrefix::str() const {
  std::string out;
  for (auto v : prefix) out += static_cast<char>('0' + v);
  if (!period.empty()) {
    out += '/';
    for (auto v : period) out += static_cast<char>('0' + v);
  }
  return out;
}

std::optional<int> OmegaPrefix::at(std::size_t index) const {
  if (index == 0) return std::nullopt;  // positions are 1-based
  if (index <= prefix.size()) return prefix[index - 1];
  if (period.empty()) return std::nullopt;
  return period[(index - prefix.size() - 1) % period.size()];
}

std::size_t OmegaPrefix::canonical_pos(std::size_t index) const {
  if (period.empty() || index <= prefix.size() + 1) return index;
  return prefix.size() + 1 + (index - prefix.size() - 1) % period.size();
}

}  // namespace grig
