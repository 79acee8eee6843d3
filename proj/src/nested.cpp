#include "grig/nested.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "grig/errors.hpp"
#include "grig/rng.hpp"

namespace grig {

namespace {

NestedStructure::GenImage image_of(Base base) {
  SectionsOutcome out = sections(Word::single(base),
                                 [](std::size_t) { return std::optional<int>{}; });
  const SectionResult& s = std::get<SectionResult>(out);
  return {s.left, s.right, s.root_swap};
}

}  // namespace

NestedStructure grig_nested() {
  NestedStructure ns;
  ns.a = image_of(Base::a);
  ns.b = image_of(Base::b);
  ns.c = image_of(Base::c);
  ns.d = image_of(Base::d);
  return ns;
}

bool NestedStructure::verify(Oracle& oracle) const {
  static const char* relations[] = {"aa", "bb", "cc", "dd", "bcd"};
  for (const char* rel : relations) {
    const Word w = Word::parse(rel);
    SectionsOutcome out =
        sections(w, [](std::size_t) { return std::optional<int>{}; });
    const auto* s = std::get_if<SectionResult>(&out);
    if (s == nullptr) return false;  // a defining relation consulted omega
    if (s->root_swap != 0) return false;
    if (!oracle.is_trivial(s->left) || !oracle.is_trivial(s->right)) return false;
  }
  // The root permutations generate Sym({0,1}): a contributes the swap.
  return a.swap == 1 && b.swap == 0 && c.swap == 0 && d.swap == 0;
}

MeasureMatrix mg_matrix(Oracle& oracle, const Word& g) {
  SectionsOutcome out =
      sections(g, [](std::size_t) { return std::optional<int>{}; });
  if (std::holds_alternative<NeedsOmega>(out))
    throw std::invalid_argument(
        "mg_matrix: word has t-letters, its root permutation depends on omega");
  const SectionResult& s = std::get<SectionResult>(out);
  // Column y holds the section at y, placed at row sigma_g(y). With words
  // acting rightmost-letter-first this is the layout that makes g -> M^g
  // multiplicative: column-y entries accumulate the increments the walk
  // appends while the tracked coordinate is y.
  MeasureMatrix m = MeasureMatrix::zero(oracle.spec(), 2);
  if (s.root_swap == 0) {
    m.at(0, 0).add(oracle, s.left, 1);
    m.at(1, 1).add(oracle, s.right, 1);
  } else {
    m.at(1, 0).add(oracle, s.left, 1);
    m.at(0, 1).add(oracle, s.right, 1);
  }
  return m;
}

MeasureMatrix build_matrix(Oracle& oracle, const GroupMeasure& mu) {
  MeasureMatrix out = MeasureMatrix::zero(oracle.spec(), 2);
  for (const auto& [g, mass] : mu.atoms()) {
    MeasureMatrix mg = mg_matrix(oracle, g);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (const auto& [w, one] : mg.at(i, j).atoms())
          out.at(i, j).add(oracle, w, mass * one);
  }
  return out;
}

MeasureMatrix substitute_t_identity(Oracle& oracle, const MeasureMatrix& m) {
  MeasureMatrix out = MeasureMatrix::zero(m.spec, m.dim);
  for (std::size_t i = 0; i < m.dim; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) {
      std::map<std::uint32_t, std::vector<std::pair<Base, Rational>>> t_by_shift;
      for (const auto& [w, mass] : m.at(i, j).atoms()) {
        if (w.size() == 1 && is_t(w.letters()[0].base))
          t_by_shift[w.letters()[0].shift].emplace_back(w.letters()[0].base, mass);
        else
          out.at(i, j).add(oracle, w, mass);
      }
      for (const auto& [shift, atoms] : t_by_shift) {
        if (atoms.size() != 3 || atoms[0].second != atoms[1].second ||
            atoms[1].second != atoms[2].second)
          throw std::invalid_argument(
              "substitute_t_identity: t-atoms at shift " + std::to_string(shift) +
              " do not form an equal-mass triple");
        const Rational& mass = atoms[0].second;
        out.at(i, j).add(oracle, Word::single(Base::a), 2 * mass);
        out.at(i, j).add(oracle, Word(), mass);
      }
    }
  return out;
}

InducedMeasure induced_measure(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                               const NeumannMode& mode) {
  const std::size_t d = m.dim;
  if (x >= d) throw std::invalid_argument("induced_measure: state out of range");

  // Complement indices in order.
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < d; ++i)
    if (i != x) rest.push_back(i);

  InducedMeasure out;
  out.measure = m.at(x, x);

  bool can_leave = false, can_return = false;
  for (std::size_t i : rest) {
    can_leave = can_leave || !m.at(x, i).is_zero();
    can_return = can_return || !m.at(i, x).is_zero();
  }
  if (!rest.empty() && can_leave && can_return) {
    MeasureMatrix msub = MeasureMatrix::zero(m.spec, rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (std::size_t j = 0; j < rest.size(); ++j)
        msub.at(i, j) = m.at(rest[i], rest[j]);
    NeumannResult inv = neumann_inverse(oracle, msub, mode);
    out.exact = inv.exact;
    // mu_xx + sum_{i,j} M[x][rest_i] inv[i][j] M[rest_j][x]
    for (std::size_t i = 0; i < rest.size(); ++i)
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (m.at(x, rest[i]).is_zero() || inv.value.at(i, j).is_zero() ||
            m.at(rest[j], x).is_zero())
          continue;
        GroupMeasure part =
            convolve(oracle, convolve(oracle, m.at(x, rest[i]), inv.value.at(i, j)),
                     m.at(rest[j], x));
        for (const auto& [w, mass] : part.atoms()) out.measure.add(oracle, w, mass);
      }
  } else {
    out.exact = true;
  }
  out.mass_defect = Rational(1) - out.measure.total_mass();
  if (out.exact && out.mass_defect != 0)
    throw std::runtime_error("induced_measure: exact mode lost mass");
  return out;
}

namespace {

// Flattened sampler over the atoms of one row of a measure matrix (or of a
// single measure): deterministic order, cumulative double weights.
struct RowSampler {
  std::vector<double> cumulative;
  std::vector<std::size_t> target;  // destination internal state
  std::vector<const Word*> atom;

  std::size_t pick(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1;
    return idx;
  }
};

RowSampler make_row_sampler(const MeasureMatrix& m, std::size_t z) {
  RowSampler s;
  double acc = 0.0;
  for (std::size_t y = 0; y < m.dim; ++y) {
    for (const auto& [w, mass] : m.at(z, y).atoms()) {
      acc += to_double(mass);
      s.cumulative.push_back(acc);
      s.target.push_back(y);
      s.atom.push_back(&w);
    }
  }
  if (s.cumulative.empty() || std::abs(acc - 1.0) > 1e-9)
    throw std::invalid_argument("rwidf: matrix row is not a probability");
  return s;
}

RowSampler make_measure_sampler(const GroupMeasure& mu) {
  RowSampler s;
  double acc = 0.0;
  for (const auto& [w, mass] : mu.atoms()) {
    acc += to_double(mass);
    s.cumulative.push_back(acc);
    s.target.push_back(0);
    s.atom.push_back(&w);
  }
  if (!mu.is_probability())
    throw std::invalid_argument("walk: measure is not a probability");
  return s;
}

}  // namespace

WalkPath walk_simulate(Oracle& oracle, const GroupMeasure& mu, std::size_t steps,
                       std::uint64_t seed) {
  const RowSampler sampler = make_measure_sampler(mu);
  WalkPath path;
  path.seed = seed;
  SplitMix64 rng(seed);
  Word position;
  path.positions.push_back(position);
  for (std::size_t n = 0; n < steps; ++n) {
    const std::size_t idx = sampler.pick(rng.next_double());
    const Word& k = *sampler.atom[idx];
    path.increments.push_back(k);
    position = reduce(concat(position, k));
    path.positions.push_back(position);
  }
  (void)oracle;
  return path;
}

namespace {

constexpr unsigned kReplicas = 32;

template <typename Work>
void run_replicas(unsigned jobs, Work&& work) {
  if (jobs <= 1) {
    for (unsigned r = 0; r < kReplicas; ++r) work(r);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(kReplicas);
  const unsigned t = std::min(jobs, kReplicas);
  for (unsigned ti = 0; ti < t; ++ti)
    threads.emplace_back([ti, t, &work, &errors] {
      for (unsigned r = ti; r < kReplicas; r += t) {
        try {
          work(r);
        } catch (...) {
          errors[r] = std::current_exception();
        }
      }
    });
  for (auto& th : threads) th.join();
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace

EmpiricalMeasure walk_position_sample(Oracle& oracle, const GroupMeasure& mu,
                                      std::size_t n, std::uint64_t paths,
                                      std::uint64_t seed, unsigned jobs) {
  const RowSampler sampler = make_measure_sampler(mu);
  std::vector<std::map<std::string, std::uint64_t>> local(kReplicas);
  run_replicas(jobs, [&](unsigned r) {
    std::uint64_t count = paths / kReplicas + (r < paths % kReplicas ? 1 : 0);
    SplitMix64 rng(derive_seed(seed, r));
    auto& mine = local[r];
    for (std::uint64_t p = 0; p < count; ++p) {
      Word position;
      for (std::size_t step = 0; step < n; ++step) {
        const std::size_t idx = sampler.pick(rng.next_double());
        position = reduce(concat(position, *sampler.atom[idx]));
      }
      ++mine[position.str()];
    }
  });
  EmpiricalMeasure out;
  out.samples = paths;
  for (unsigned r = 0; r < kReplicas; ++r)
    for (const auto& [str, cnt] : local[r])
      out.counts[oracle.canonical(Word::parse(str))] += cnt;
  return out;
}

namespace {

TraceResult run_rwidf(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                      std::uint64_t blocks, std::uint64_t transitions,
                      std::uint64_t seed, unsigned jobs, std::uint64_t block_cap) {
  if (x >= m.dim) throw std::invalid_argument("rwidf: state out of range");
  std::vector<RowSampler> samplers;
  for (std::size_t z = 0; z < m.dim; ++z) samplers.push_back(make_row_sampler(m, z));

  struct Local {
    std::map<std::string, std::uint64_t> counts;
    std::vector<std::uint64_t> occupation;
    std::uint64_t transitions = 0;
  };
  std::vector<Local> local(kReplicas);
  const bool by_blocks = blocks > 0;

  run_replicas(jobs, [&](unsigned r) {
    Local& mine = local[r];
    mine.occupation.assign(m.dim, 0);
    const std::uint64_t quota = (by_blocks ? blocks : transitions) / kReplicas +
                                (r < (by_blocks ? blocks : transitions) % kReplicas ? 1 : 0);
    SplitMix64 rng(derive_seed(seed, r));
    std::size_t z = x;
    Word block;
    std::uint64_t block_len = 0, done = 0;
    while (done < quota) {
      ++mine.occupation[z];
      ++mine.transitions;
      const RowSampler& s = samplers[z];
      const std::size_t idx = s.pick(rng.next_double());
      block = reduce(concat(block, *s.atom[idx]));
      z = s.target[idx];
      ++block_len;
      if (block_len > block_cap)
        throw ResourceCapError("rwidf: return block exceeded the step cap");
      if (z == x) {
        ++mine.counts[block.str()];
        block = Word();
        block_len = 0;
        if (by_blocks) ++done;
      }
      if (!by_blocks) ++done;
    }
  });

  TraceResult out;
  out.occupation.assign(m.dim, 0);
  for (unsigned r = 0; r < kReplicas; ++r) {
    for (const auto& [str, cnt] : local[r].counts)
      out.trace.counts[oracle.canonical(Word::parse(str))] += cnt;
    for (std::size_t z = 0; z < m.dim; ++z) out.occupation[z] += local[r].occupation[z];
    out.transitions += local[r].transitions;
  }
  for (const auto& [w, cnt] : out.trace.counts) out.trace.samples += cnt;
  return out;
}

}  // namespace

TraceResult rwidf_simulate_trace(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                                 std::uint64_t blocks, std::uint64_t seed, unsigned jobs,
                                 std::uint64_t block_cap) {
  return run_rwidf(oracle, m, x, blocks, 0, seed, jobs, block_cap);
}

TraceResult rwidf_occupation(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                             std::uint64_t transitions, std::uint64_t seed, unsigned jobs) {
  return run_rwidf(oracle, m, x, 0, transitions, seed, jobs, 1'000'000);
}

EntropyReport entropy_report(Oracle& oracle, const GroupMeasure& mu, std::size_t x,
                             int kmax, bool substitute) {
  if (kmax < 1) throw std::invalid_argument("entropy_report: kmax must be >= 1");
  MeasureMatrix m = build_matrix(oracle, mu);
  if (substitute) m = substitute_t_identity(oracle, m);
  InducedMeasure ind = induced_measure(oracle, m, x, NeumannExact{});

  EntropyReport report;
  report.induced = ind.measure;
  GroupMeasure base_power = mu;
  GroupMeasure ind_power = ind.measure;
  std::ostringstream csv;
  csv << "k,H_base_over_k,H_induced_over_k\n";
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1) {
      base_power = convolve(oracle, base_power, mu);
      ind_power = convolve(oracle, ind_power, ind.measure);
    }
    report.base_over_k.push_back(entropy(base_power) / k);
    report.induced_over_k.push_back(entropy(ind_power) / k);
    csv << k << ',' << report.base_over_k.back() << ',' << report.induced_over_k.back()
        << '\n';
  }
  report.csv = csv.str();
  return report;
}

}  // namespace grig
