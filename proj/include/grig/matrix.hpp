#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "grig/measure.hpp"
#include "grig/oracle.hpp"
#include "grig/rational.hpp"

namespace grig {

// Square matrix of sub-probability measures (the transition matrix of a
// random walk with internal degrees of freedom).
struct MeasureMatrix {
  GroupSpec spec;
  std::size_t dim = 0;
  std::vector<std::vector<GroupMeasure>> entries;

  static MeasureMatrix zero(GroupSpec spec, std::size_t dim);
  static MeasureMatrix identity(Oracle& oracle, std::size_t dim);
  const GroupMeasure& at(std::size_t x, std::size_t y) const { return entries[x][y]; }
  GroupMeasure& at(std::size_t x, std::size_t y) { return entries[x][y]; }
};

struct StochasticMatrix {
  std::size_t dim = 0;
  std::vector<std::vector<Rational>> p;

  std::vector<Rational> row_sums() const;
  bool is_stochastic() const;  // rows sum to 1, entries >= 0
};

// Entrywise total mass.
StochasticMatrix augmentation(const MeasureMatrix& m);

StochasticMatrix matmul(const StochasticMatrix& a, const StochasticMatrix& b);
MeasureMatrix matmul(Oracle& oracle, const MeasureMatrix& a, const MeasureMatrix& b,
                     std::size_t support_cap = 1'000'000);
MeasureMatrix matadd(Oracle& oracle, const MeasureMatrix& a, const MeasureMatrix& b);

// Closure of a generating set under multiplication, with the full
// multiplication table, when the generated subgroup has order <= cap.
struct FiniteClosure {
  std::vector<Word> elements;               // canonical words, elements[0] = e
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = index of gi*gj
  std::vector<std::size_t> inverse;

  std::optional<std::size_t> index_of(Oracle& oracle, const Word& w) const;
};

struct TooLarge {
  std::size_t cap = 0;
};

std::variant<FiniteClosure, TooLarge> finite_closure(Oracle& oracle,
                                                     const std::vector<Word>& gens,
                                                     std::size_t cap);

// (I - M)^{-1} over the group algebra.
//
// Exact mode embeds every entry into the regular representation of the
// finite subgroup generated by all atom supports and inverts one exact
// rational matrix; it requires that subgroup to be finite (<= closure_cap).
// Truncated mode sums powers of M until the residual mass of the tail,
// bounded through the augmentation chain, drops below eps.
struct NeumannExact {
  std::size_t closure_cap = 4096;
};
struct NeumannTruncated {
  double eps = 1e-12;
};
using NeumannMode = std::variant<NeumannExact, NeumannTruncated>;

struct NeumannResult {
  MeasureMatrix value;
  bool exact = false;
  std::size_t terms = 0;          // truncated mode: number of summed powers
  std::size_t subgroup_order = 0; // exact mode
};

NeumannResult neumann_inverse(Oracle& oracle, const MeasureMatrix& msub,
                              const NeumannMode& mode);

// Exact inverse of a square rational matrix; nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert_rational_matrix(
    std::vector<std::vector<Rational>> m);

}  // namespace grig
