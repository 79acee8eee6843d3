#pragma once

#include <string>
#include <vector>

#include "grig/measure.hpp"
#include "grig/nested.hpp"
#include "grig/oracle.hpp"
#include "grig/rational.hpp"

namespace grig {

// Symmetric measure family c0*e + cA*a + cg*(b+c+d at shift `level`) driving
// the induced-measure iteration. The family is closed under one induction
// step at internal state 0 (after the t-triple rewriting), with atoms moving
// one shift deeper per level.
struct CoeffState {
  Rational c0, cA, cg;
  int level = 0;

  bool valid() const { return c0 >= 0 && cA >= 0 && cg >= 0 && c0 + cA + 3 * cg == 1; }
  GroupMeasure measure(Oracle& oracle) const;
  double entropy_nats() const;
};

// One induction step, computed through the exact induced-measure machinery.
// The closed form cA' = 2 cg, cg' = cA cg / (cA + 4 cg) is asserted against
// that computation on every call.
CoeffState munchhausen_step(Oracle& oracle, const CoeffState& s);

struct IterateRow {
  CoeffState state;
  double entropy = 0.0;
};

std::vector<IterateRow> munchhausen_iterate(Oracle& oracle, const CoeffState& start,
                                            int steps);

// level,c0_num,c0_den,cA_num,cA_den,cg_num,cg_den,entropy (natural log).
std::string iterate_csv(const std::vector<IterateRow>& rows);

// x from the first induction and y from the second: the nonnegative
// leftovers of the geometric series after the Klein relations collapse it.
// x = cA(0) - 3 cg(1), y = cA(1) - 3 cg(2).
std::pair<Rational, Rational> paper_xy(Oracle& oracle, const CoeffState& s);

// Side-by-side entropies of the substituted chain and of a one-step
// induction without the t-triple rewriting (whose support keeps the three
// t-atoms instead of a and e).
struct HonestRow {
  int level = 0;
  double entropy_substituted = 0.0;
  double entropy_unsubstituted = 0.0;
  std::size_t support_substituted = 0;
  std::size_t support_unsubstituted = 0;
  Rational mass_substituted, mass_unsubstituted;
};

std::vector<HonestRow> honest_comparison(Oracle& oracle, const CoeffState& start,
                                         int levels);

std::string honest_csv(const std::vector<HonestRow>& rows);

}  // namespace grig
