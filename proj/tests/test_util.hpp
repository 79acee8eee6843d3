#pragma once

#include <string>
#include <vector>

#include "grig/omega.hpp"
#include "grig/rng.hpp"
#include "grig/words.hpp"

namespace grig::testutil {

// Random word over the generator alphabet {a,b,c,d} at shift 0.
inline Word random_generator_word(SplitMix64& rng, std::size_t max_len) {
  const std::size_t len = rng.next_below(max_len + 1);
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i) {
    const auto pick = static_cast<int>(rng.next_below(4));
    ls.push_back(Letter{static_cast<Base>(pick), 0});
  }
  return Word(std::move(ls));
}

// Random word over the full alphabet with shifts below max_shift.
inline Word random_word(SplitMix64& rng, std::size_t max_len, std::uint32_t max_shift) {
  const std::size_t len = rng.next_below(max_len + 1);
  std::vector<Letter> ls;
  for (std::size_t i = 0; i < len; ++i) {
    const auto pick = static_cast<int>(rng.next_below(7));
    const Base base = static_cast<Base>(pick);
    const std::uint32_t shift =
        base == Base::a ? 0 : static_cast<std::uint32_t>(rng.next_below(max_shift + 1));
    ls.push_back(Letter{base, shift});
  }
  return Word(std::move(ls));
}

inline OmegaPrefix random_periodic_omega(SplitMix64& rng, std::size_t prefix_len,
                                         std::size_t period_len) {
  OmegaPrefix om;
  for (std::size_t i = 0; i < prefix_len; ++i)
    om.prefix.push_back(static_cast<std::uint8_t>(rng.next_below(3)));
  for (std::size_t i = 0; i < period_len; ++i)
    om.period.push_back(static_cast<std::uint8_t>(rng.next_below(3)));
  return om;
}

inline std::string random_vertex(SplitMix64& rng, std::size_t len) {
  std::string v;
  for (std::size_t i = 0; i < len; ++i) v += rng.next_below(2) ? '1' : '0';
  return v;
}

// Every generator word of exactly the given length (4 letters, repetitions
// allowed; reduction is up to the caller).
inline void enumerate_generator_words(std::size_t len, std::vector<Word>& out) {
  std::vector<Letter> current;
  const Base alphabet[4] = {Base::a, Base::b, Base::c, Base::d};
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (Base b : alphabet) {
      current.push_back(Letter{b, 0});
      self(self, remaining - 1);
      current.pop_back();
    }
  };
  rec(rec, len);
}

}  // namespace grig::testutil
