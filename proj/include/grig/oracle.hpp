#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "grig/action.hpp"
#include "grig/omega.hpp"
#include "grig/words.hpp"

namespace grig {

struct GroupSpec {
  enum class Kind { universal, gw };
  Kind kind = Kind::universal;
  OmegaPrefix omega;  // used when kind == gw

  static GroupSpec universal_group() { return GroupSpec{}; }
  static GroupSpec gw(OmegaPrefix om) { return GroupSpec{Kind::gw, std::move(om)}; }
  // "universal" or the omega spec string.
  static GroupSpec parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct OracleLimits {
  std::size_t node_budget = 8'000'000;  // DFS states per word-problem query
};

struct OracleStats {
  std::uint64_t triviality_queries = 0;
  std::uint64_t dfs_nodes = 0;
  std::uint64_t fingerprints = 0;
  std::uint64_t exact_equalities = 0;
};

// Word problem and canonical forms for one group (the universal group or a
// fixed G_omega). Triviality is decided by the sectioning recursion over the
// finite graph of window-normalised states; for the universal group the
// recursion branches over all three values whenever an unconstrained omega
// letter is consulted. Cycles through already-active states contribute no
// root swap and are therefore trivial, which makes the search exact on
// eventually periodic omegas.
//
// Not thread safe; use one instance per worker.
class Oracle {
 public:
  explicit Oracle(GroupSpec spec, OracleLimits limits = {});

  const GroupSpec& spec() const { return spec_; }
  const OracleStats& stats() const { return stats_; }

  bool is_trivial(const Word& w);
  bool equal(const Word& lhs, const Word& rhs);

  // Universal group only: a prefix such that the word is nontrivial in
  // G_omega for every omega extending it, or nullopt when the word is
  // trivial for all omega.
  std::optional<OmegaPrefix> witness_omega(const Word& w);

  // Canonical-form interner. Equal words share one id; the stored
  // representative is the first reduced word interned for the class.
  std::size_t canonical_id(const Word& w);
  const Word& canonical_word(std::size_t id) const { return class_reps_[id]; }
  const Word& canonical(const Word& w) { return class_reps_[canonical_id(w)]; }

  // Portrait-based equality-invariant hash (equal words always collide).
  std::uint64_t fingerprint(const Word& w);

 private:
  struct TrivResult {
    bool trivial;
    bool dependent;  // true when the verdict leaned on an in-progress state
  };
  using Constraints = std::map<std::size_t, int>;

  TrivResult dfs_gw(const Word& reduced);
  TrivResult dfs_universal(const Word& reduced, const Constraints& cons);
  bool witness_dfs(const Word& reduced, Constraints& cons,
                   std::unordered_set<std::string>& visited,
                   Constraints& out_witness);
  std::string gw_key(const Word& reduced) const;
  static std::string universal_key(const Word& reduced, const Constraints& cons);
  void finish_query(bool trivial);
  void charge_node();

  GroupSpec spec_;
  OracleLimits limits_;
  OracleStats stats_;

  std::vector<OmegaPrefix> probes_;  // fingerprint probe omegas

  std::unordered_map<std::string, bool> memo_;
  std::unordered_set<std::string> in_progress_;
  std::vector<std::string> pending_true_;
  std::size_t query_nodes_ = 0;

  std::vector<Word> class_reps_;
  std::unordered_map<std::string, std::size_t> id_by_str_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  std::unordered_map<std::string, std::uint64_t> fp_cache_;
};

// Convenience wrappers.
bool is_trivial_gw(const Word& w, const OmegaPrefix& omega);
bool is_trivial_universal(const Word& w);

// Instrumented word-problem run for a fixed omega. When no cycle rule fired,
// the verdict provably depends only on omega positions <= max_consulted, so
// any omega agreeing there gives the same answer. Cycle-resolved verdicts
// (periodic omegas looping through a window) depend on the tail pattern and
// carry used_cycle = true.
struct TrivialityTrace {
  bool trivial = false;
  std::size_t max_consulted = 0;
  bool used_cycle = false;
};

TrivialityTrace is_trivial_gw_traced(const Word& w, const OmegaPrefix& omega);

// Breadth-first ball over the generators a,b,c,d with deduplication by the
// oracle's equality. reps[i] is the shortlex-least candidate word seen for
// class i; first_radius[i] the radius at which the class appeared.
struct BallReport {
  int radius = 0;
  std::vector<std::size_t> counts;  // cumulative ball sizes, index = radius
  std::vector<Word> reps;
  std::vector<int> first_radius;
};

BallReport ball(Oracle& oracle, int radius, std::size_t class_cap = 2'000'000);

struct GrowthTable {
  BallReport ball;
  std::vector<double> ratios;  // ratios[r] = count(r)/count(r-1), r >= 1
};

GrowthTable growth_table(Oracle& oracle, int max_radius);

// |A g  delta  A| / |A| for a set of pairwise-distinct canonical words. The
// numerator and denominator are exact; the value is returned as a pair.
std::pair<std::size_t, std::size_t> folner_counts(Oracle& oracle,
                                                  const std::vector<Word>& set,
                                                  const Word& g);

}  // namespace grig
