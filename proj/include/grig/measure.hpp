#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "grig/oracle.hpp"
#include "grig/rational.hpp"
#include "grig/words.hpp"

namespace grig {

// Finitely supported measure on a group, atoms keyed by canonical words.
// All masses are exact positive rationals; entropy is the only operation
// that rounds. Atom keys are canonicalised through the oracle, so no two
// keys represent the same group element.
class GroupMeasure {
 public:
  GroupMeasure() = default;
  explicit GroupMeasure(GroupSpec spec) : spec_(std::move(spec)) {}

  const GroupSpec& spec() const { return spec_; }
  const std::map<Word, Rational>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  bool is_zero() const { return atoms_.empty(); }

  void add(Oracle& oracle, const Word& w, const Rational& mass);
  Rational mass(Oracle& oracle, const Word& w) const;
  Rational total_mass() const;
  bool is_probability() const { return total_mass() == 1; }

  void scale(const Rational& factor);

  friend bool operator==(const GroupMeasure&, const GroupMeasure&) = default;

 private:
  GroupSpec spec_;
  std::map<Word, Rational> atoms_;
};

GroupMeasure delta(Oracle& oracle, const Word& w);

GroupMeasure convolve(Oracle& oracle, const GroupMeasure& mu, const GroupMeasure& nu,
                      std::size_t support_cap = 1'000'000);

// Natural-log entropy of a probability measure.
double entropy(const GroupMeasure& mu);

// Exact-roundtrip JSON: [{"word": w, "mass_numerator": "p",
// "mass_denominator": "q"}, ...]. Numerator/denominator are decimal strings
// so arbitrary precision survives; plain integers are also accepted on input.
std::string measure_to_json(const GroupMeasure& mu);
GroupMeasure measure_from_json(Oracle& oracle, const std::string& text);

// Image of the measure under evaluation at a concrete omega: atoms are
// re-keyed by their G_omega class. gw_oracle must carry that omega.
GroupMeasure pushforward(Oracle& gw_oracle, const GroupMeasure& mu);

// Total-variation distance between two measures over a shared oracle.
Rational total_variation(Oracle& oracle, const GroupMeasure& mu, const GroupMeasure& nu);

}  // namespace grig
