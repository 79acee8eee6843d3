#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grig/matrix.hpp"
#include "grig/measure.hpp"
#include "grig/oracle.hpp"

namespace grig {

// The self-similar structure of the universal group over X = {0,1}: each
// generator maps to (left section, right section, root permutation). The
// section target is the subgroup generated by a, the shifted K-letters and
// the t-letters, which is the smallest group containing every section.
struct NestedStructure {
  struct GenImage {
    Word left;
    Word right;
    int swap = 0;
  };
  GenImage a, b, c, d;

  // Checks the defining relations through the embedding and that the root
  // permutations act transitively on {0,1}.
  bool verify(Oracle& oracle) const;
};

NestedStructure grig_nested();

// Matrix of the point mass at g: one nonzero entry per row, M[x][x.sigma_g]
// holding the section of g at x. g must be omega-independent at the root,
// i.e. contain no t-letters.
MeasureMatrix mg_matrix(Oracle& oracle, const Word& g);

// M^mu = sum_g mu(g) M^g.
MeasureMatrix build_matrix(Oracle& oracle, const GroupMeasure& mu);

// Rewrites mass on t-letter triples at one shift into 2m on a plus m on the
// identity, entry by entry. All three t-atoms at a shift must carry equal
// mass. Preserves the augmentation and every evaluation pushforward.
MeasureMatrix substitute_t_identity(Oracle& oracle, const MeasureMatrix& m);

// Trace measure of the walk with internal degrees of freedom at internal
// state x: mu_xx + M_{x,other} (I - M_{other,other})^{-1} M_{other,x}.
struct InducedMeasure {
  GroupMeasure measure;
  bool exact = false;
  Rational mass_defect = 0;  // 1 - total mass (zero in exact mode)
};

InducedMeasure induced_measure(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                               const NeumannMode& mode);

// Plain right random walk g_n = g_0 k_1 ... k_n with iid mu increments.
struct WalkPath {
  std::uint64_t seed = 0;
  std::vector<Word> increments;
  std::vector<Word> positions;  // positions[n] after n steps, reduced
};

WalkPath walk_simulate(Oracle& oracle, const GroupMeasure& mu, std::size_t steps,
                       std::uint64_t seed);

// Empirical distribution of the walk position at time n over many
// independent paths. Paths are split over fixed replicas with derived seeds,
// so the result is independent of the number of worker threads.
struct EmpiricalMeasure {
  std::uint64_t samples = 0;
  std::map<Word, std::uint64_t> counts;  // keyed by canonical words
};

EmpiricalMeasure walk_position_sample(Oracle& oracle, const GroupMeasure& mu,
                                      std::size_t n, std::uint64_t paths,
                                      std::uint64_t seed, unsigned jobs = 1);

// Simulates the chain (g,z) -> (g h, y) with (y,h) ~ M[z][.], recording the
// group increment accumulated between returns to internal state x and the
// occupation counts of the internal chain.
struct TraceResult {
  EmpiricalMeasure trace;                  // one sample per completed block
  std::vector<std::uint64_t> occupation;   // raw transitions spent at each z
  std::uint64_t transitions = 0;
};

TraceResult rwidf_simulate_trace(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                                 std::uint64_t blocks, std::uint64_t seed,
                                 unsigned jobs = 1, std::uint64_t block_cap = 1'000'000);

// Occupation frequencies of the internal chain alone over raw transitions.
TraceResult rwidf_occupation(Oracle& oracle, const MeasureMatrix& m, std::size_t x,
                             std::uint64_t transitions, std::uint64_t seed,
                             unsigned jobs = 1);

// H(mu^{*k})/k for the base walk and H((mu^x)^{*k})/k for the induced walk.
struct EntropyReport {
  std::vector<double> base_over_k;     // index k-1
  std::vector<double> induced_over_k;
  GroupMeasure induced;
  std::string csv;  // k,H_base_over_k,H_induced_over_k
};

EntropyReport entropy_report(Oracle& oracle, const GroupMeasure& mu, std::size_t x,
                             int kmax, bool substitute = true);

}  // namespace grig
