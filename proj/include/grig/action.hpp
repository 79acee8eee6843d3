#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grig/omega.hpp"
#include "grig/words.hpp"

namespace grig {

// Wreath decomposition of a word: w(i x) = swap^root_swap(i) . section_i(x).
// Section words carry absolute shifts, so they are evaluated against the
// same omega as the input, one tree level down.
struct SectionResult {
  Word left;
  Word right;
  int root_swap = 0;
};

struct NeedsOmega {
  std::size_t index = 0;  // 1-based omega position required
};

using SectionsOutcome = std::variant<SectionResult, NeedsOmega>;

// Partial omega assignment: returns the letter at a 1-based position, or
// nullopt when unconstrained.
using OmegaLookup = std::function<std::optional<int>(std::size_t)>;

// Multiplies out the wreath images of the letters left to right. K-letters
// and a never consult omega; a t-letter at shift s consults position s+1 and
// contributes a root swap iff the letter there differs from its index.
SectionsOutcome sections(const Word& w, const OmegaLookup& omega_at);
SectionResult sections(const Word& w, const OmegaPrefix& omega);  // throws InsufficientOmegaError

// Image of the vertex under the word's action for this omega.
std::string evaluate(const Word& w, const OmegaPrefix& omega, std::string_view vertex);

// Swap bits for every vertex above `depth`, heap-indexed: root at 0, the
// children of node i at 2i+1 and 2i+2.
struct Portrait {
  int depth = 0;
  std::vector<std::uint8_t> bits;  // size 2^depth - 1

  bool bit(std::string_view vertex) const;
  bool all_zero() const;
  // Image of a vertex of length <= depth read off the stored bits.
  std::string apply(std::string_view vertex) const;
};

Portrait portrait(const Word& w, const OmegaPrefix& omega, int depth);

// Packs a depth<=6 portrait into the low 2^depth-1 bits of a word.
std::uint64_t portrait_bits(const Word& w, const OmegaPrefix& omega, int depth);

}  // namespace grig
