#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

// A point of {0,1,2}^N given by a finite prefix, optionally extended by a
// repeating period. Textual form: "012" (prefix only), "01/2" (prefix 01,
// then 222...), "/012" (purely periodic 012012...).
struct OmegaPrefix {
  std::vector<std::uint8_t> prefix;
  std::vector<std::uint8_t> period;  // empty means undefined past the prefix

  static OmegaPrefix parse(std::string_view text);
  std::string str() const;

  bool periodic() const { return !period.empty(); }

  // 1-based letter access; nullopt beyond a finite prefix.
  std::optional<int> at(std::size_t index) const;

  // Collapses positions in the periodic tail to one representative, so a
  // suffix of omega is identified by a bounded integer. Positions are
  // 1-based; for finite omegas this is the identity.
  std::size_t canonical_pos(std::size_t index) const;

  friend auto operator<=>(const OmegaPrefix&, const OmegaPrefix&) = default;
};

}  // namespace grig
