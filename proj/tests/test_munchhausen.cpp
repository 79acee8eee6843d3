#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "grig/munchhausen.hpp"
#include "grig/rng.hpp"

using namespace grig;

namespace {

CoeffState uniform_start() {
  return CoeffState{Rational(1, 5), Rational(1, 5), Rational(1, 5), 0};
}

CoeffState random_state(SplitMix64& rng) {
  // cA = i/q, cg = j/q with i + 3j <= q keeps the family normalised.
  const std::uint64_t q = 2 + rng.next_below(39);
  const std::uint64_t i = rng.next_below(q + 1);
  const std::uint64_t j = rng.next_below((q - i) / 3 + 1);
  CoeffState s;
  s.cA = Rational(i, q);
  s.cg = Rational(j, q);
  s.c0 = Rational(1) - s.cA - 3 * s.cg;
  s.level = 0;
  return s;
}

}  // namespace

TEST_CASE("fixed point at the identity") {
  Oracle oracle(GroupSpec::universal_group());
  const CoeffState id{Rational(1), Rational(0), Rational(0), 0};
  const CoeffState next = munchhausen_step(oracle, id);
  CHECK(next.c0 == 1);
  CHECK(next.cA == 0);
  CHECK(next.cg == 0);

  const auto rows = munchhausen_iterate(oracle, id, 5);
  for (const auto& row : rows) {
    CHECK(row.state.c0 == 1);
    CHECK(row.entropy == 0.0);
  }
}

TEST_CASE("uniform start reproduces the induced coefficients") {
  Oracle oracle(GroupSpec::universal_group());
  const CoeffState s1 = munchhausen_step(oracle, uniform_start());
  CHECK(s1.c0 == Rational(12, 25));
  CHECK(s1.cA == Rational(2, 5));
  CHECK(s1.cg == Rational(1, 25));
  CHECK(s1.level == 1);

  const CoeffState s2 = munchhausen_step(oracle, s1);
  CHECK(s2.cA == Rational(2, 25));
  CHECK(s2.cg == Rational(1, 35));
  CHECK(s2.c0 == Rational(1) - s2.cA - 3 * s2.cg);
}

TEST_CASE("closed form agrees with the exact induction on random states") {
  // munchhausen_step itself asserts the closed form against the
  // Theorem-4.1 computation; this drives it across the family.
  Oracle oracle(GroupSpec::universal_group());
  SplitMix64 rng(73);
  for (int i = 0; i < 1000; ++i) {
    const CoeffState s = random_state(rng);
    const CoeffState next = munchhausen_step(oracle, s);
    CHECK(next.valid());
    CHECK(next.cA == 2 * s.cg);
  }
}

TEST_CASE("iteration contracts and entropy vanishes") {
  Oracle oracle(GroupSpec::universal_group());
  const auto rows = munchhausen_iterate(oracle, uniform_start(), 60);
  REQUIRE(rows.size() == 61);

  // Conservation, exactly, at every level.
  for (const auto& row : rows)
    CHECK(row.state.c0 + row.state.cA + 3 * row.state.cg == 1);

  // Two-step shrink by at least 2/3.
  for (std::size_t k = 0; k + 2 < rows.size(); ++k) {
    const auto& s0 = rows[k].state;
    const auto& s2 = rows[k + 2].state;
    if (s0.cA > 0) CHECK(s2.cA / s0.cA <= Rational(2, 3));
    if (s0.cg > 0) CHECK(s2.cg / s0.cg <= Rational(2, 3));
  }

  // Envelope implied by the per-coordinate two-step shrink: the constant is
  // the max over the first two levels (one step can double cg into cA, so
  // level 0 alone is not a valid base).
  const Rational base =
      std::max(std::max(rows[0].state.cA, rows[0].state.cg),
               std::max(rows[1].state.cA, rows[1].state.cg));
  Rational envelope = base;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (k >= 2 && k % 2 == 0) envelope = envelope * Rational(2, 3);
    CHECK(std::max(rows[k].state.cA, rows[k].state.cg) <= envelope);
  }

  // Entropy drops below 0.01 within 60 steps.
  bool small = false;
  for (const auto& row : rows) small = small || row.entropy < 0.01;
  CHECK(small);

  const std::string csv = iterate_csv(rows);
  CHECK(csv.find("level,c0_num") == 0);
  CHECK(csv.find("1,12,25,2,5,1,25,") != std::string::npos);
}

TEST_CASE("paper x and y are nonnegative") {
  Oracle oracle(GroupSpec::universal_group());
  const auto [x, y] = paper_xy(oracle, uniform_start());
  CHECK(x == Rational(2, 25));
  CHECK(y == Rational(2, 5) - Rational(3, 35));

  const CoeffState id{Rational(1), Rational(0), Rational(0), 0};
  const auto [x0, y0] = paper_xy(oracle, id);
  CHECK(x0 == 0);
  CHECK(y0 == 0);

  SplitMix64 rng(79);
  for (int i = 0; i < 1000; ++i) {
    const auto [xr, yr] = paper_xy(oracle, random_state(rng));
    CHECK(xr >= 0);
    CHECK(yr >= 0);
  }
}

TEST_CASE("honest comparison of substituted and raw inductions") {
  Oracle oracle(GroupSpec::universal_group());
  const auto rows = honest_comparison(oracle, uniform_start(), 3);
  REQUIRE(rows.size() == 4);

  CHECK(rows[0].entropy_substituted == rows[0].entropy_unsubstituted);
  CHECK(rows[0].support_substituted == rows[0].support_unsubstituted);

  for (const auto& row : rows) {
    CHECK(row.mass_substituted == 1);
    CHECK(row.mass_unsubstituted == 1);
  }

  // The raw induction keeps the three t-atoms instead of {a, e}: at level 1
  // the support is {e, t0, t1, t2, b@1, c@1, d@1}.
  CHECK(rows[1].support_substituted == 5);
  CHECK(rows[1].support_unsubstituted == 7);

  const std::string csv = honest_csv(rows);
  CHECK(csv.find("level,entropy_substituted") == 0);
}
