#include "grig/munchhausen.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace grig {

namespace {

void check_state(const CoeffState& s) {
  if (!s.valid())
    throw std::invalid_argument("coefficient state violates c0+cA+3cg=1 or sign");
  if (s.level < 0 || s.level >= static_cast<int>(kMaxShift))
    throw std::invalid_argument("coefficient state level out of range");
}

double plogp(const Rational& p) {
  if (p == 0) return 0.0;
  const double x = to_double(p);
  return -x * std::log(x);
}

}  // namespace

GroupMeasure CoeffState::measure(Oracle& oracle) const {
  GroupMeasure mu(oracle.spec());
  const auto shift = static_cast<std::uint32_t>(level);
  if (c0 > 0) mu.add(oracle, Word(), c0);
  if (cA > 0) mu.add(oracle, Word::single(Base::a), cA);
  if (cg > 0) {
    mu.add(oracle, Word::single(Base::b, shift), cg);
    mu.add(oracle, Word::single(Base::c, shift), cg);
    mu.add(oracle, Word::single(Base::d, shift), cg);
  }
  return mu;
}

double CoeffState::entropy_nats() const {
  return plogp(c0) + plogp(cA) + 3 * plogp(cg);
}

CoeffState munchhausen_step(Oracle& oracle, const CoeffState& s) {
  check_state(s);
  if (s.cA == 0 && s.cg == 0) return s;  // point mass at the identity

  const MeasureMatrix m = substitute_t_identity(oracle, build_matrix(oracle, s.measure(oracle)));
  const InducedMeasure ind = induced_measure(oracle, m, 0, NeumannExact{});
  if (ind.measure.total_mass() != 1)
    throw std::runtime_error("munchhausen_step: induced measure lost mass");

  // Read the result back as a symmetric family one level deeper.
  CoeffState next;
  next.level = s.level + 1;
  const auto shift = static_cast<std::uint32_t>(next.level);
  next.c0 = ind.measure.mass(oracle, Word());
  next.cA = ind.measure.mass(oracle, Word::single(Base::a));
  const Rational mb = ind.measure.mass(oracle, Word::single(Base::b, shift));
  const Rational mc = ind.measure.mass(oracle, Word::single(Base::c, shift));
  const Rational md = ind.measure.mass(oracle, Word::single(Base::d, shift));
  if (mb != mc || mc != md)
    throw std::runtime_error("munchhausen_step: induced measure is not symmetric");
  next.cg = mb;
  if (next.c0 + next.cA + 3 * next.cg != 1)
    throw std::runtime_error("munchhausen_step: induced support left the family");

  // Closed-form cross-check (a derived identity, recomputed every step).
  const Rational cA_closed = 2 * s.cg;
  const Rational cg_closed =
      (s.cA + 4 * s.cg) == 0 ? Rational(0) : s.cA * s.cg / (s.cA + 4 * s.cg);
  if (next.cA != cA_closed || next.cg != cg_closed)
    throw std::runtime_error("munchhausen_step: closed form disagrees with Theorem-4.1 value");
  return next;
}

std::vector<IterateRow> munchhausen_iterate(Oracle& oracle, const CoeffState& start,
                                            int steps) {
  check_state(start);
  if (steps < 0 || start.level + steps > static_cast<int>(kMaxShift) - 2)
    throw std::invalid_argument("munchhausen_iterate: too many steps for the shift cap");
  std::vector<IterateRow> rows;
  CoeffState s = start;
  rows.push_back({s, s.entropy_nats()});
  for (int k = 0; k < steps; ++k) {
    s = munchhausen_step(oracle, s);
    rows.push_back({s, s.entropy_nats()});
  }
  return rows;
}

std::string iterate_csv(const std::vector<IterateRow>& rows) {
  std::ostringstream out;
  out << "level,c0_num,c0_den,cA_num,cA_den,cg_num,cg_den,entropy\n";
  out.precision(17);
  for (const auto& row : rows) {
    out << row.state.level << ',' << numerator(row.state.c0) << ','
        << denominator(row.state.c0) << ',' << numerator(row.state.cA) << ','
        << denominator(row.state.cA) << ',' << numerator(row.state.cg) << ','
        << denominator(row.state.cg) << ',' << row.entropy << '\n';
  }
  return out.str();
}

std::pair<Rational, Rational> paper_xy(Oracle& oracle, const CoeffState& s) {
  const CoeffState s1 = munchhausen_step(oracle, s);
  const CoeffState s2 = munchhausen_step(oracle, s1);
  return {s.cA - 3 * s1.cg, s1.cA - 3 * s2.cg};
}

std::vector<HonestRow> honest_comparison(Oracle& oracle, const CoeffState& start,
                                         int levels) {
  check_state(start);
  std::vector<HonestRow> rows;
  CoeffState s = start;
  for (int level = 0; level <= levels; ++level) {
    HonestRow row;
    row.level = level;
    if (level == 0) {
      const GroupMeasure mu = s.measure(oracle);
      row.entropy_substituted = row.entropy_unsubstituted = entropy(mu);
      row.support_substituted = row.support_unsubstituted = mu.support_size();
      row.mass_substituted = row.mass_unsubstituted = mu.total_mass();
    } else {
      const MeasureMatrix raw = build_matrix(oracle, s.measure(oracle));
      const InducedMeasure unsub = induced_measure(oracle, raw, 0, NeumannExact{});
      s = munchhausen_step(oracle, s);
      const GroupMeasure sub = s.measure(oracle);
      row.entropy_substituted = entropy(sub);
      row.entropy_unsubstituted = entropy(unsub.measure);
      row.support_substituted = sub.support_size();
      row.support_unsubstituted = unsub.measure.support_size();
      row.mass_substituted = sub.total_mass();
      row.mass_unsubstituted = unsub.measure.total_mass();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string honest_csv(const std::vector<HonestRow>& rows) {
  std::ostringstream out;
  out << "level,entropy_substituted,entropy_unsubstituted,support_substituted,"
         "support_unsubstituted,mass_substituted,mass_unsubstituted\n";
  out.precision(17);
  for (const auto& row : rows)
    out << row.level << ',' << row.entropy_substituted << ','
        << row.entropy_unsubstituted << ',' << row.support_substituted << ','
        << row.support_unsubstituted << ',' << rational_str(row.mass_substituted)
        << ',' << rational_str(row.mass_unsubstituted) << '\n';
  return out.str();
}

}  // namespace grig
