#include "grig/measure.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "grig/errors.hpp"

namespace grig {

namespace {

void check_oracle(const Oracle& oracle, const GroupSpec& spec) {
  if (!(oracle.spec() == spec))
    throw std::invalid_argument("oracle group does not match measure group");
}

}  // namespace

void GroupMeasure::add(Oracle& oracle, const Word& w, const Rational& mass) {
  check_oracle(oracle, spec_);
  if (mass == 0) return;
  if (mass < 0) throw std::invalid_argument("measure masses must be positive");
  const Word& key = oracle.canonical(w);
  atoms_[key] += mass;
}

Rational GroupMeasure::mass(Oracle& oracle, const Word& w) const {
  check_oracle(oracle, spec_);
  auto it = atoms_.find(oracle.canonical(w));
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational GroupMeasure::total_mass() const {
  Rational total = 0;
  for (const auto& [w, m] : atoms_) total += m;
  return total;
}

void GroupMeasure::scale(const Rational& factor) {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  for (auto& [w, m] : atoms_) m *= factor;
}

GroupMeasure delta(Oracle& oracle, const Word& w) {
  GroupMeasure mu(oracle.spec());
  mu.add(oracle, w, 1);
  return mu;
}

GroupMeasure convolve(Oracle& oracle, const GroupMeasure& mu, const GroupMeasure& nu,
                      std::size_t support_cap) {
  if (!(mu.spec() == nu.spec()))
    throw std::invalid_argument("convolve: measures on different groups");
  GroupMeasure out(mu.spec());
  for (const auto& [g, mg] : mu.atoms()) {
    for (const auto& [h, mh] : nu.atoms()) {
      out.add(oracle, concat(g, h), mg * mh);
      if (out.support_size() > support_cap)
        throw ResourceCapError("convolution support cap exceeded");
    }
  }
  return out;
}

double entropy(const GroupMeasure& mu) {
  if (!mu.is_probability())
    throw std::invalid_argument("entropy requires a probability measure");
  double h = 0.0;
  for (const auto& [w, m] : mu.atoms()) {
    const double p = to_double(m);
    h -= p * std::log(p);
  }
  return h < 0 ? 0.0 : h;
}

std::string measure_to_json(const GroupMeasure& mu) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, m] : mu.atoms()) {
    arr.push_back({{"word", w.str()},
                   {"mass_numerator", numerator(m).str()},
                   {"mass_denominator", denominator(m).str()}});
  }
  return arr.dump(2);
}

GroupMeasure measure_from_json(Oracle& oracle, const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("measure JSON must be an array");
  GroupMeasure mu(oracle.spec());
  for (const auto& item : arr) {
    const Word w = Word::parse(item.at("word").get<std::string>());
    auto big = [](const nlohmann::json& v) {
      return v.is_string() ? BigInt(v.get<std::string>())
                           : BigInt(v.get<long long>());
    };
    const BigInt num = big(item.at("mass_numerator"));
    const BigInt den = big(item.at("mass_denominator"));
    if (den == 0) throw std::invalid_argument("measure JSON: zero denominator");
    mu.add(oracle, w, Rational(num, den));
  }
  return mu;
}

GroupMeasure pushforward(Oracle& gw_oracle, const GroupMeasure& mu) {
  if (gw_oracle.spec().kind != GroupSpec::Kind::gw)
    throw std::invalid_argument("pushforward needs a G_omega oracle");
  GroupMeasure out(gw_oracle.spec());
  for (const auto& [w, m] : mu.atoms()) out.add(gw_oracle, w, m);
  return out;
}

Rational total_variation(Oracle& oracle, const GroupMeasure& mu, const GroupMeasure& nu) {
  Rational dist = 0;
  for (const auto& [w, m] : mu.atoms()) {
    const Rational other = nu.mass(oracle, w);
    if (m > other) dist += m - other;
  }
  for (const auto& [w, m] : nu.atoms()) {
    const Rational other = mu.mass(oracle, w);
    if (m > other) dist += m - other;
  }
  return dist / 2;
}

}  // namespace grig
