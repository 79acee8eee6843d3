#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <variant>

#include "grig/errors.hpp"
#include "grig/matrix.hpp"
#include "grig/measure.hpp"
#include "grig/nested.hpp"
#include "grig/rng.hpp"

#include "test_util.hpp"

using namespace grig;

namespace {

GroupMeasure uniform_mu0(Oracle& oracle) {
  GroupMeasure mu(oracle.spec());
  const Rational fifth(1, 5);
  mu.add(oracle, Word(), fifth);
  mu.add(oracle, Word::parse("a"), fifth);
  mu.add(oracle, Word::parse("b"), fifth);
  mu.add(oracle, Word::parse("c"), fifth);
  mu.add(oracle, Word::parse("d"), fifth);
  return mu;
}

GroupMeasure random_probability(Oracle& oracle, SplitMix64& rng, int atoms) {
  GroupMeasure mu(oracle.spec());
  std::vector<Word> support;
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (int i = 0; i < atoms; ++i) {
    support.push_back(reduce(testutil::random_generator_word(rng, 4)));
    weights.push_back(1 + rng.next_below(9));
    total += weights.back();
  }
  for (int i = 0; i < atoms; ++i)
    mu.add(oracle, support[i], Rational(weights[i], total));
  return mu;
}

}  // namespace

TEST_CASE("measure canonicalisation merges equal atoms") {
  Oracle oracle(GroupSpec::universal_group());
  GroupMeasure mu(oracle.spec());
  mu.add(oracle, Word::parse("bc"), Rational(1, 4));
  mu.add(oracle, Word::parse("d"), Rational(1, 4));
  mu.add(oracle, Word::parse("aa"), Rational(1, 2));
  CHECK(mu.support_size() == 2);
  CHECK(mu.mass(oracle, Word::parse("d")) == Rational(1, 2));
  CHECK(mu.mass(oracle, Word()) == Rational(1, 2));
  CHECK(mu.is_probability());
}

TEST_CASE("convolution examples") {
  Oracle oracle(GroupSpec::universal_group());
  const GroupMeasure mu0 = uniform_mu0(oracle);

  CHECK(convolve(oracle, delta(oracle, Word()), mu0) == mu0);
  CHECK(convolve(oracle, mu0, delta(oracle, Word())) == mu0);

  GroupMeasure bc(oracle.spec());
  bc.add(oracle, Word::parse("b"), Rational(1, 2));
  bc.add(oracle, Word::parse("c"), Rational(1, 2));
  const GroupMeasure sq = convolve(oracle, bc, bc);
  CHECK(sq.support_size() == 2);
  CHECK(sq.mass(oracle, Word()) == Rational(1, 2));
  CHECK(sq.mass(oracle, Word::parse("d")) == Rational(1, 2));
}

TEST_CASE("mu0 squared against brute-force enumeration") {
  Oracle oracle(GroupSpec::universal_group());
  const GroupMeasure mu0 = uniform_mu0(oracle);
  const GroupMeasure sq = convolve(oracle, mu0, mu0);

  // Independent enumeration of all 25 products with pairwise equality.
  std::vector<Word> products;
  for (const auto& [g, mg] : mu0.atoms())
    for (const auto& [h, mh] : mu0.atoms()) products.push_back(reduce(concat(g, h)));
  std::vector<Word> classes;
  std::vector<int> counts;
  for (const Word& p : products) {
    bool found = false;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (oracle.equal(p, classes[i])) {
        ++counts[i];
        found = true;
        break;
      }
    if (!found) {
      classes.push_back(p);
      counts.push_back(1);
    }
  }
  CHECK(classes.size() == sq.support_size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    CHECK(sq.mass(oracle, classes[i]) == Rational(counts[i], 25));

  // Frozen expected values.
  CHECK(sq.mass(oracle, Word()) == Rational(5, 25));
  CHECK(sq.mass(oracle, Word::parse("a")) == Rational(2, 25));
  CHECK(sq.mass(oracle, Word::parse("b")) == Rational(4, 25));
  CHECK(sq.mass(oracle, Word::parse("ab")) == Rational(1, 25));
  CHECK(sq.mass(oracle, Word::parse("da")) == Rational(1, 25));
}

TEST_CASE("convolution is associative on sampled measures") {
  Oracle oracle(GroupSpec::universal_group());
  SplitMix64 rng(53);
  for (int i = 0; i < 20; ++i) {
    const GroupMeasure a = random_probability(oracle, rng, 3);
    const GroupMeasure b = random_probability(oracle, rng, 3);
    const GroupMeasure c = random_probability(oracle, rng, 3);
    CHECK(convolve(oracle, convolve(oracle, a, b), c) ==
          convolve(oracle, a, convolve(oracle, b, c)));
  }
}

TEST_CASE("entropy") {
  Oracle oracle(GroupSpec::universal_group());
  CHECK(entropy(delta(oracle, Word())) == 0.0);

  const GroupMeasure mu0 = uniform_mu0(oracle);
  CHECK(entropy(mu0) == doctest::Approx(std::log(5.0)).epsilon(1e-12));

  GroupMeasure mu1(oracle.spec());
  mu1.add(oracle, Word(), Rational(12, 25));
  mu1.add(oracle, Word::parse("a"), Rational(2, 5));
  mu1.add(oracle, Word::parse("b@1"), Rational(1, 25));
  mu1.add(oracle, Word::parse("c@1"), Rational(1, 25));
  mu1.add(oracle, Word::parse("d@1"), Rational(1, 25));
  const double expected = -(0.48 * std::log(0.48) + 0.4 * std::log(0.4) +
                            3 * 0.04 * std::log(0.04));
  CHECK(entropy(mu1) == doctest::Approx(expected).epsilon(1e-12));

  GroupMeasure sub(oracle.spec());
  sub.add(oracle, Word(), Rational(1, 2));
  CHECK_THROWS_AS(entropy(sub), std::invalid_argument);
}

TEST_CASE("entropy subadditivity on random pairs") {
  Oracle oracle(GroupSpec::universal_group());
  SplitMix64 rng(59);
  for (int i = 0; i < 100; ++i) {
    const GroupMeasure a = random_probability(oracle, rng, 4);
    const GroupMeasure b = random_probability(oracle, rng, 4);
    const double ha = entropy(a), hb = entropy(b);
    CHECK(entropy(convolve(oracle, a, b)) <= ha + hb + 1e-9);
  }
}

TEST_CASE("measure JSON round trip") {
  Oracle oracle(GroupSpec::universal_group());
  GroupMeasure mu(oracle.spec());
  mu.add(oracle, Word(), Rational(12, 25));
  mu.add(oracle, Word::parse("a"), Rational(2, 5));
  // A mass whose numerator does not fit in 64 bits.
  mu.add(oracle, Word::parse("b@2"),
         Rational(BigInt("123456789012345678901234567"),
                  BigInt("1000000000000000000000000000")));
  const std::string json = measure_to_json(mu);
  const GroupMeasure back = measure_from_json(oracle, json);
  CHECK(back == mu);
}

TEST_CASE("augmentation") {
  Oracle oracle(GroupSpec::universal_group());
  MeasureMatrix ma = mg_matrix(oracle, Word::parse("a"));
  StochasticMatrix pa = augmentation(ma);
  CHECK(pa.p[0][0] == 0);
  CHECK(pa.p[0][1] == 1);
  CHECK(pa.p[1][0] == 1);
  CHECK(pa.p[1][1] == 0);

  const MeasureMatrix m0 = build_matrix(oracle, uniform_mu0(oracle));
  StochasticMatrix p0 = augmentation(m0);
  CHECK(p0.p[0][0] == Rational(4, 5));  // alpha + 3m
  CHECK(p0.p[0][1] == Rational(1, 5));  // beta
  CHECK(p0.p[1][0] == Rational(1, 5));
  CHECK(p0.p[1][1] == Rational(4, 5));
  CHECK(p0.is_stochastic());

  const MeasureMatrix id = MeasureMatrix::identity(oracle, 2);
  const StochasticMatrix pid = augmentation(id);
  CHECK(pid.p[0][0] == 1);
  CHECK(pid.p[0][1] == 0);

  // Augmentation is multiplicative.
  SplitMix64 rng(61);
  for (int i = 0; i < 10; ++i) {
    const MeasureMatrix x = build_matrix(oracle, random_probability(oracle, rng, 3));
    const MeasureMatrix y = build_matrix(oracle, random_probability(oracle, rng, 3));
    const StochasticMatrix lhs = augmentation(matmul(oracle, x, y));
    const StochasticMatrix rhs = matmul(augmentation(x), augmentation(y));
    CHECK(lhs.p == rhs.p);
  }
}

TEST_CASE("finite closure") {
  Oracle oracle(GroupSpec::universal_group());
  auto trivial = finite_closure(oracle, {Word()}, 16);
  REQUIRE(std::holds_alternative<FiniteClosure>(trivial));
  CHECK(std::get<FiniteClosure>(trivial).elements.size() == 1);

  auto klein = finite_closure(
      oracle, {Word::parse("b@1"), Word::parse("c@1"), Word::parse("d@1")}, 16);
  REQUIRE(std::holds_alternative<FiniteClosure>(klein));
  const FiniteClosure& cl = std::get<FiniteClosure>(klein);
  CHECK(cl.elements.size() == 4);
  // Klein table: every element an involution, product of two distinct
  // nontrivial elements is the third.
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(cl.table[i][i] == 0);
    CHECK(cl.inverse[i] == i);
  }
  CHECK(cl.table[1][2] == cl.table[2][1]);

  auto big = finite_closure(oracle, {Word::parse("a"), Word::parse("b")}, 64);
  CHECK(std::holds_alternative<TooLarge>(big));
}

TEST_CASE("neumann inverse, scalar geometric series") {
  Oracle oracle(GroupSpec::universal_group());
  MeasureMatrix m = MeasureMatrix::zero(oracle.spec(), 1);
  m.at(0, 0).add(oracle, Word(), Rational(1, 3));
  const NeumannResult inv = neumann_inverse(oracle, m, NeumannExact{});
  CHECK(inv.exact);
  CHECK(inv.value.at(0, 0).mass(oracle, Word()) == Rational(3, 2));
}

TEST_CASE("neumann inverse over the Klein subgroup") {
  Oracle oracle(GroupSpec::universal_group());
  MeasureMatrix m = MeasureMatrix::zero(oracle.spec(), 1);
  m.at(0, 0).add(oracle, Word(), Rational(1, 5));
  m.at(0, 0).add(oracle, Word::parse("b@1"), Rational(1, 5));
  m.at(0, 0).add(oracle, Word::parse("c@1"), Rational(1, 5));
  m.at(0, 0).add(oracle, Word::parse("d@1"), Rational(1, 5));

  const NeumannResult inv = neumann_inverse(oracle, m, NeumannExact{});
  CHECK(inv.exact);
  CHECK(inv.subgroup_order == 4);
  const GroupMeasure& val = inv.value.at(0, 0);
  CHECK(val.mass(oracle, Word()) == 2);
  CHECK(val.mass(oracle, Word::parse("b@1")) == 1);
  CHECK(val.mass(oracle, Word::parse("c@1")) == 1);
  CHECK(val.mass(oracle, Word::parse("d@1")) == 1);

  // (I - M) R = I is equivalent to R = delta_e + M R.
  const GroupMeasure conv = convolve(oracle, m.at(0, 0), val);
  CHECK(val.mass(oracle, Word()) == conv.mass(oracle, Word()) + 1);
  for (const auto& [w, mass] : val.atoms())
    if (!oracle.is_trivial(w)) CHECK(mass == conv.mass(oracle, w));
  for (const auto& [w, mass] : conv.atoms()) CHECK(val.mass(oracle, w) != 0);

  // Truncated mode agrees within its tolerance.
  const NeumannResult trunc = neumann_inverse(oracle, m, NeumannTruncated{1e-10});
  CHECK(!trunc.exact);
  for (const auto& [w, mass] : inv.value.at(0, 0).atoms()) {
    const Rational diff = mass - trunc.value.at(0, 0).mass(oracle, w);
    CHECK(to_double(diff) >= 0.0);
    CHECK(to_double(diff) < 1e-9);
  }
}

TEST_CASE("neumann inverse rejects non-transient chains") {
  Oracle oracle(GroupSpec::universal_group());
  MeasureMatrix m = MeasureMatrix::zero(oracle.spec(), 1);
  m.at(0, 0).add(oracle, Word(), 1);
  CHECK_THROWS(neumann_inverse(oracle, m, NeumannExact{}));
}

TEST_CASE("rational matrix inversion") {
  using Row = std::vector<Rational>;
  std::vector<Row> m = {Row{Rational(2), Rational(1)}, Row{Rational(1), Rational(1)}};
  auto inv = invert_rational_matrix(m);
  REQUIRE(inv.has_value());
  CHECK((*inv)[0][0] == 1);
  CHECK((*inv)[0][1] == -1);
  CHECK((*inv)[1][0] == -1);
  CHECK((*inv)[1][1] == 2);

  std::vector<Row> sing = {Row{Rational(1), Rational(2)}, Row{Rational(2), Rational(4)}};
  CHECK(!invert_rational_matrix(sing).has_value());
}
