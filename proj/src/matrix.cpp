#include "grig/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grig/errors.hpp"

namespace grig {

MeasureMatrix MeasureMatrix::zero(GroupSpec spec, std::size_t dim) {
  MeasureMatrix m;
  m.spec = spec;
  m.dim = dim;
  m.entries.assign(dim, std::vector<GroupMeasure>(dim, GroupMeasure(spec)));
  return m;
}

MeasureMatrix MeasureMatrix::identity(Oracle& oracle, std::size_t dim) {
  MeasureMatrix m = zero(oracle.spec(), dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i).add(oracle, Word(), 1);
  return m;
}

std::vector<Rational> StochasticMatrix::row_sums() const {
  std::vector<Rational> sums(dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) sums[i] += p[i][j];
  return sums;
}

bool StochasticMatrix::is_stochastic() const {
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (p[i][j] < 0) return false;
  for (const Rational& s : row_sums())
    if (s != 1) return false;
  return true;
}

StochasticMatrix augmentation(const MeasureMatrix& m) {
  StochasticMatrix out;
  out.dim = m.dim;
  out.p.assign(m.dim, std::vector<Rational>(m.dim, 0));
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) out.p[i][j] = m.at(i, j).total_mass();
  return out;
}

StochasticMatrix matmul(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.dim != b.dim) throw std::invalid_argument("matmul: dimension mismatch");
  StochasticMatrix out;
  out.dim = a.dim;
  out.p.assign(a.dim, std::vector<Rational>(a.dim, 0));
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < a.dim; ++k)
      if (a.p[i][k] != 0)
        for (std::size_t j = 0; j < a.dim; ++j) out.p[i][j] += a.p[i][k] * b.p[k][j];
  return out;
}

MeasureMatrix matmul(Oracle& oracle, const MeasureMatrix& a, const MeasureMatrix& b,
                     std::size_t support_cap) {
  if (a.dim != b.dim || !(a.spec == b.spec))
    throw std::invalid_argument("matmul: matrix mismatch");
  MeasureMatrix out = MeasureMatrix::zero(a.spec, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t k = 0; k < a.dim; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < a.dim; ++j) {
        if (b.at(k, j).is_zero()) continue;
        GroupMeasure prod = convolve(oracle, a.at(i, k), b.at(k, j), support_cap);
        for (const auto& [w, mass] : prod.atoms()) out.at(i, j).add(oracle, w, mass);
      }
    }
  return out;
}

MeasureMatrix matadd(Oracle& oracle, const MeasureMatrix& a, const MeasureMatrix& b) {
  if (a.dim != b.dim || !(a.spec == b.spec))
    throw std::invalid_argument("matadd: matrix mismatch");
  MeasureMatrix out = a;
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (const auto& [w, mass] : b.at(i, j).atoms()) out.at(i, j).add(oracle, w, mass);
  return out;
}

std::optional<std::size_t> FiniteClosure::index_of(Oracle& oracle, const Word& w) const {
  const std::size_t cid = oracle.canonical_id(w);
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (oracle.canonical_id(elements[i]) == cid) return i;
  return std::nullopt;
}

std::variant<FiniteClosure, TooLarge> finite_closure(Oracle& oracle,
                                                     const std::vector<Word>& gens,
                                                     std::size_t cap) {
  FiniteClosure out;
  std::unordered_map<std::size_t, std::size_t> index_by_class;
  auto try_insert = [&](const Word& w) -> std::optional<std::size_t> {
    const std::size_t cid = oracle.canonical_id(w);
    auto it = index_by_class.find(cid);
    if (it != index_by_class.end()) return it->second;
    if (out.elements.size() >= cap) return std::nullopt;
    const std::size_t idx = out.elements.size();
    out.elements.push_back(oracle.canonical_word(cid));
    index_by_class.emplace(cid, idx);
    return idx;
  };

  try_insert(Word());
  for (const Word& g : gens)
    if (!try_insert(g)) return TooLarge{cap};

  // Grow until stable; a finite set closed under multiplication is a group.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t size = out.elements.size();
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        const std::size_t before = out.elements.size();
        if (!try_insert(reduce(concat(out.elements[i], out.elements[j]))))
          return TooLarge{cap};
        grew = grew || out.elements.size() != before;
      }
  }

  const std::size_t n = out.elements.size();
  out.table.assign(n, std::vector<std::size_t>(n, 0));
  out.inverse.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto idx = try_insert(reduce(concat(out.elements[i], out.elements[j])));
      if (!idx) throw std::logic_error("finite_closure: table not closed");
      out.table[i][j] = *idx;
      if (*idx == 0) out.inverse[i] = j;
    }
  return out;
}

namespace {

// (I-P)^{-1} of the substochastic augmentation, exactly. Existence together
// with nonnegative entries is equivalent to transience of the chain, so this
// doubles as the convergence guard (a float spectral-radius estimate breaks
// down once the escape mass is below the rounding error).
std::vector<std::vector<Rational>> green_matrix(const StochasticMatrix& p) {
  const std::size_t d = p.dim;
  std::vector<std::vector<Rational>> imp(d, std::vector<Rational>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    imp[i][i] = 1;
    for (std::size_t j = 0; j < d; ++j) imp[i][j] -= p.p[i][j];
  }
  auto inv = invert_rational_matrix(std::move(imp));
  if (!inv)
    throw std::runtime_error(
        "neumann_inverse: I - P is singular, the internal chain is not transient");
  for (const auto& row : *inv)
    for (const Rational& v : row)
      if (v < 0)
        throw std::runtime_error(
            "neumann_inverse: the internal chain is not transient");
  return *inv;
}

// Left-multiplication operator of mu in the basis {e_g : g in closure}.
std::vector<std::vector<Rational>> regular_rep(Oracle& oracle, const FiniteClosure& cl,
                                               const GroupMeasure& mu) {
  const std::size_t n = cl.elements.size();
  std::vector<std::vector<Rational>> rep(n, std::vector<Rational>(n, 0));
  for (const auto& [h, mass] : mu.atoms()) {
    const auto hi = cl.index_of(oracle, h);
    if (!hi) throw std::invalid_argument("regular_rep: atom outside the closure");
    for (std::size_t g = 0; g < n; ++g) rep[cl.table[*hi][g]][g] += mass;
  }
  return rep;
}

NeumannResult neumann_exact(Oracle& oracle, const MeasureMatrix& msub,
                            const NeumannExact& mode) {
  std::vector<Word> support;
  for (std::size_t i = 0; i < msub.dim; ++i)
    for (std::size_t j = 0; j < msub.dim; ++j)
      for (const auto& [w, mass] : msub.at(i, j).atoms()) support.push_back(w);
  auto closure = finite_closure(oracle, support, mode.closure_cap);
  if (std::holds_alternative<TooLarge>(closure))
    throw ResourceCapError("neumann_inverse: support closure exceeds cap " +
                           std::to_string(mode.closure_cap));
  const FiniteClosure& cl = std::get<FiniteClosure>(closure);
  const std::size_t k = cl.elements.size();
  const std::size_t d = msub.dim;
  const std::size_t n = d * k;

  // I - blocks R(mu_ij), block (i,j) at rows i*k.., cols j*k..
  std::vector<std::vector<Rational>> big(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) big[i][i] = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (msub.at(i, j).is_zero()) continue;
      const auto rep = regular_rep(oracle, cl, msub.at(i, j));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) big[i * k + r][j * k + c] -= rep[r][c];
    }

  auto inv = invert_rational_matrix(std::move(big));
  if (!inv)
    throw std::runtime_error("neumann_inverse: I - M is singular (walk not transient)");

  NeumannResult out;
  out.exact = true;
  out.subgroup_order = k;
  out.value = MeasureMatrix::zero(msub.spec, d);
  // Column at the identity of block (i,j) lists the inverse's coefficients.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t g = 0; g < k; ++g) {
        const Rational& coeff = (*inv)[i * k + g][j * k + 0];
        if (coeff != 0) out.value.at(i, j).add(oracle, cl.elements[g], coeff);
      }
  return out;
}

NeumannResult neumann_truncated(Oracle& oracle, const MeasureMatrix& msub,
                                const NeumannTruncated& mode) {
  const std::size_t d = msub.dim;
  const StochasticMatrix aug = augmentation(msub);

  // Residual after T terms of the series, bounded through the augmentation:
  // row sums of P^T (I-P)^{-1}. Solve (I-P) u = 1 exactly, then push u
  // through P until it is small.
  auto inv = green_matrix(aug);
  std::vector<double> u(d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u[i] += to_double(inv[i][j]);

  std::vector<std::vector<double>> pd(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) pd[i][j] = to_double(aug.p[i][j]);

  std::size_t terms = 1;
  std::vector<double> r = u;
  const std::size_t term_cap = 1'000'000;
  for (;;) {
    std::vector<double> next(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) next[i] += pd[i][j] * r[j];
    r = std::move(next);
    double worst = 0.0;
    for (double v : r) worst = std::max(worst, v);
    if (worst < mode.eps) break;
    if (++terms > term_cap)
      throw ResourceCapError("neumann_inverse: truncated series does not converge");
  }

  // Horner form of I + M + ... + M^{terms-1}.
  MeasureMatrix sum = MeasureMatrix::identity(oracle, d);
  for (std::size_t t = 1; t < terms; ++t)
    sum = matadd(oracle, MeasureMatrix::identity(oracle, d), matmul(oracle, msub, sum));

  NeumannResult out;
  out.exact = false;
  out.terms = terms;
  out.value = std::move(sum);
  return out;
}

}  // namespace

NeumannResult neumann_inverse(Oracle& oracle, const MeasureMatrix& msub,
                              const NeumannMode& mode) {
  green_matrix(augmentation(msub));  // exact transience check
  if (const auto* exact = std::get_if<NeumannExact>(&mode))
    return neumann_exact(oracle, msub, *exact);
  return neumann_truncated(oracle, msub, std::get<NeumannTruncated>(mode));
}

std::optional<std::vector<std::vector<Rational>>> invert_rational_matrix(
    std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational lead = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= lead;
      inv[col][j] /= lead;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0) continue;
      const Rational factor = m[row][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[row][j] -= factor * m[col][j];
        inv[row][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace grig
