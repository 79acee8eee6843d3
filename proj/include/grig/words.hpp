#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

// Generator alphabet. The K-letters b,c,d satisfy the Klein four-group
// relations at every fixed shift; t-letters arise from sectioning K-letters
// and as entries of measure matrices. A letter carries the number of shift
// applications to omega, so (b,2) is the function w -> b at the twice-shifted
// sequence. The letter a is constant in omega and always has shift 0.
enum class Base : std::uint8_t { a = 0, b = 1, c = 2, d = 3, t0 = 4, t1 = 5, t2 = 6 };

inline constexpr std::uint32_t kMaxShift = 64;

constexpr bool is_k(Base x) { return x == Base::b || x == Base::c || x == Base::d; }
constexpr bool is_t(Base x) { return x == Base::t0 || x == Base::t1 || x == Base::t2; }

// b acts through t0 on the left subtree, c through t1, d through t2.
constexpr int k_index(Base x) { return static_cast<int>(x) - 1; }
constexpr int t_index(Base x) { return static_cast<int>(x) - static_cast<int>(Base::t0); }
constexpr Base t_of_index(int i) { return static_cast<Base>(static_cast<int>(Base::t0) + i); }
constexpr Base k_of_index(int i) { return static_cast<Base>(1 + i); }

// Product of two distinct K-letters at equal shift.
constexpr Base third_k(Base x, Base y) {
  return static_cast<Base>(6 - static_cast<int>(x) - static_cast<int>(y));
}

struct Letter {
  Base base = Base::a;
  std::uint32_t shift = 0;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

std::string letter_str(const Letter& l);

// A finite product of letters, leftmost factor applied last (so a word acts
// on tree vertices right to left). Words are plain sequences; call reduce()
// for the normal form under the hard-coded relations.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word single(Base base, std::uint32_t shift = 0);
  // Grammar: concatenated letters "a b c d t0 t1 t2", each optionally
  // suffixed "@<shift>" for shift > 0. Whitespace and '*' separators are
  // allowed; "e" or the empty string denotes the identity.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  // Smallest shift among omega-consulting (non-a) letters; 0 if there are
  // none. The letter a is constant in omega, so it never pins the window.
  std::uint32_t min_shift() const;
  std::uint32_t max_shift() const;

  std::string str() const;

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

Word concat(const Word& lhs, const Word& rhs);

// Normal form under: xx -> e at equal shift (every letter is an involution),
// and xy -> z for distinct K-letters x,y at equal shift. t-letters never
// merge with K-letters and distinct t-letters are left alone.
Word reduce(const Word& w);
bool is_reduced(const Word& w);

// All generators are involutions, so inversion is reversal.
Word inverse(const Word& w);

// Precomposition with the shift: increments every non-a letter's shift.
Word shift_endo(const Word& w);

// Shift every letter down by `amount` (all shifts must be >= amount except a,
// which stays at 0). Used for window-normalised memo keys.
Word unshift(const Word& w, std::uint32_t amount);

// Length first, then lexicographic on letters.
bool shortlex_less(const Word& lhs, const Word& rhs);

}  // namespace grig
