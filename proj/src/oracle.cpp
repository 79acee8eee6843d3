#include "grig/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "grig/errors.hpp"
#include "grig/rng.hpp"

namespace grig {

namespace {

struct InProgressGuard {
  std::unordered_set<std::string>& set;
  const std::string& key;
  ~InProgressGuard() { set.erase(key); }
};

std::vector<OmegaPrefix> universal_probes() {
  std::vector<OmegaPrefix> probes;
  for (int len = 1; len <= 3; ++len) {
    const int total = len == 1 ? 3 : len == 2 ? 9 : 27;
    for (int code = 0; code < total; ++code) {
      OmegaPrefix om;
      int c = code;
      for (int i = 0; i < len; ++i) {
        om.period.push_back(static_cast<std::uint8_t>(c % 3));
        c /= 3;
      }
      probes.push_back(std::move(om));
    }
  }
  SplitMix64 rng(0x517CC1B727220A95ULL);
  for (int i = 0; i < 8; ++i) {
    OmegaPrefix om;
    for (int j = 0; j < 5; ++j)
      om.period.push_back(static_cast<std::uint8_t>(rng.next_below(3)));
    probes.push_back(std::move(om));
  }
  return probes;
}

}  // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
  if (text == "universal" || text == "Universal" || text == "gr2")
    return universal_group();
  return gw(OmegaPrefix::parse(text));
}

std::string GroupSpec::str() const {
  return kind == Kind::universal ? "universal" : omega.str();
}

Oracle::Oracle(GroupSpec spec, OracleLimits limits)
    : spec_(std::move(spec)), limits_(limits) {
  if (spec_.kind == GroupSpec::Kind::universal)
    probes_ = universal_probes();
  else
    probes_ = {spec_.omega};
}

void Oracle::charge_node() {
  ++stats_.dfs_nodes;
  if (++query_nodes_ > limits_.node_budget)
    throw ResourceCapError("word-problem node budget exceeded (" +
                           std::to_string(limits_.node_budget) + " states)");
}

std::string Oracle::gw_key(const Word& reduced) const {
  const std::uint32_t m = reduced.min_shift();
  const std::size_t pos = spec_.omega.canonical_pos(m + 1);
  return unshift(reduced, m).str() + "#" + std::to_string(pos);
}

std::string Oracle::universal_key(const Word& reduced, const Constraints& cons) {
  const std::uint32_t m = reduced.min_shift();
  std::string key = unshift(reduced, m).str();
  key += '#';
  for (const auto& [idx, val] : cons) {
    if (idx <= m) continue;  // below the consulted window
    key += std::to_string(idx - m);
    key += ':';
    key += static_cast<char>('0' + val);
    key += ',';
  }
  return key;
}

Oracle::TrivResult Oracle::dfs_gw(const Word& reduced) {
  if (reduced.empty()) return {true, false};
  charge_node();
  const std::string key = gw_key(reduced);
  if (auto it = memo_.find(key); it != memo_.end()) return {it->second, false};
  if (in_progress_.count(key)) return {true, true};  // no swap along this loop
  in_progress_.insert(key);
  InProgressGuard guard{in_progress_, key};

  const SectionResult s = sections(reduced, spec_.omega);
  TrivResult res{true, false};
  if (s.root_swap) {
    res = {false, false};
  } else {
    const TrivResult l = dfs_gw(s.left);
    if (!l.trivial) {
      res = {false, false};
    } else {
      const TrivResult r = dfs_gw(s.right);
      res = {r.trivial, l.dependent || r.dependent};
    }
  }

  if (!res.trivial)
    memo_[key] = false;  // a swap was reached: definitive
  else if (!res.dependent)
    memo_[key] = true;
  else
    pending_true_.push_back(key);  // valid only if the whole query closes clean
  return res;
}

Oracle::TrivResult Oracle::dfs_universal(const Word& reduced, const Constraints& cons) {
  if (reduced.empty()) return {true, false};
  charge_node();
  const std::uint32_t m = reduced.min_shift();
  Constraints pruned;
  for (const auto& [idx, val] : cons)
    if (idx > m) pruned.emplace(idx, val);

  const std::string key = universal_key(reduced, pruned);
  if (auto it = memo_.find(key); it != memo_.end()) return {it->second, false};
  if (in_progress_.count(key)) return {true, true};
  in_progress_.insert(key);
  InProgressGuard guard{in_progress_, key};

  SectionsOutcome outcome = sections(reduced, [&pruned](std::size_t i) -> std::optional<int> {
    auto it = pruned.find(i);
    if (it == pruned.end()) return std::nullopt;
    return it->second;
  });

  TrivResult res{true, false};
  if (const auto* need = std::get_if<NeedsOmega>(&outcome)) {
    for (int v = 0; v < 3 && res.trivial; ++v) {
      Constraints next = pruned;
      next[need->index] = v;
      const TrivResult r = dfs_universal(reduced, next);
      if (!r.trivial)
        res = {false, false};
      else
        res.dependent = res.dependent || r.dependent;
    }
  } else {
    const SectionResult& s = std::get<SectionResult>(outcome);
    if (s.root_swap) {
      res = {false, false};
    } else {
      const TrivResult l = dfs_universal(s.left, pruned);
      if (!l.trivial) {
        res = {false, false};
      } else {
        const TrivResult r = dfs_universal(s.right, pruned);
        res = {r.trivial, l.dependent || r.dependent};
      }
    }
  }

  if (!res.trivial)
    memo_[key] = false;
  else if (!res.dependent)
    memo_[key] = true;
  else
    pending_true_.push_back(key);
  return res;
}

void Oracle::finish_query(bool trivial) {
  if (trivial)
    for (const std::string& key : pending_true_) memo_[key] = true;
  pending_true_.clear();
}

bool Oracle::is_trivial(const Word& w) {
  const Word r = reduce(w);
  if (r.empty()) return true;
  ++stats_.triviality_queries;
  query_nodes_ = 0;
  pending_true_.clear();
  TrivResult res = spec_.kind == GroupSpec::Kind::gw ? dfs_gw(r)
                                                     : dfs_universal(r, Constraints{});
  finish_query(res.trivial);
  return res.trivial;
}

bool Oracle::equal(const Word& lhs, const Word& rhs) {
  return is_trivial(concat(lhs, inverse(rhs)));
}

bool Oracle::witness_dfs(const Word& reduced, Constraints& cons,
                         std::unordered_set<std::string>& visited,
                         Constraints& out_witness) {
  if (reduced.empty()) return false;
  charge_node();
  const std::uint32_t m = reduced.min_shift();
  Constraints pruned;
  for (const auto& [idx, val] : cons)
    if (idx > m) pruned.emplace(idx, val);
  const std::string key = universal_key(reduced, pruned);
  if (auto it = memo_.find(key); it != memo_.end() && it->second)
    return false;  // definitively trivial below: no witness here
  if (!visited.insert(key).second) return false;

  SectionsOutcome outcome = sections(reduced, [&cons](std::size_t i) -> std::optional<int> {
    auto it = cons.find(i);
    if (it == cons.end()) return std::nullopt;
    return it->second;
  });

  if (const auto* need = std::get_if<NeedsOmega>(&outcome)) {
    for (int v = 0; v < 3; ++v) {
      cons[need->index] = v;
      if (witness_dfs(reduced, cons, visited, out_witness)) return true;
      cons.erase(need->index);
    }
    return false;
  }
  const SectionResult& s = std::get<SectionResult>(outcome);
  if (s.root_swap) {
    out_witness = cons;
    return true;
  }
  return witness_dfs(s.left, cons, visited, out_witness) ||
         witness_dfs(s.right, cons, visited, out_witness);
}

std::optional<OmegaPrefix> Oracle::witness_omega(const Word& w) {
  if (spec_.kind != GroupSpec::Kind::universal)
    throw std::invalid_argument("witness_omega needs the universal group");
  const Word r = reduce(w);
  if (r.empty()) return std::nullopt;
  query_nodes_ = 0;
  Constraints cons, found;
  std::unordered_set<std::string> visited;
  if (!witness_dfs(r, cons, visited, found)) return std::nullopt;
  std::size_t len = 0;
  for (const auto& [idx, val] : found) len = std::max(len, idx);
  OmegaPrefix out;
  out.prefix.assign(len, 0);
  for (const auto& [idx, val] : found) out.prefix[idx - 1] = static_cast<std::uint8_t>(val);
  return out;
}

std::uint64_t Oracle::fingerprint(const Word& w) {
  const Word r = reduce(w);
  const std::string s = r.str();
  if (auto it = fp_cache_.find(s); it != fp_cache_.end()) return it->second;
  ++stats_.fingerprints;
  std::uint64_t h = 0x9E3779B97F4A7C15ULL;
  for (const OmegaPrefix& probe : probes_) {
    std::uint64_t bits = 0;
    for (int depth = 6; depth >= 1; --depth) {
      try {
        bits = portrait_bits(r, probe, depth);
        break;
      } catch (const InsufficientOmegaError&) {
        if (depth == 1) bits = 0;  // finite omega too short to discriminate
      }
    }
    h = mix64(h ^ bits);
  }
  fp_cache_.emplace(s, h);
  return h;
}

std::size_t Oracle::canonical_id(const Word& w) {
  const Word r = reduce(w);
  const std::string s = r.str();
  if (auto it = id_by_str_.find(s); it != id_by_str_.end()) return it->second;
  const std::uint64_t fp = fingerprint(r);
  std::vector<std::size_t>& bucket = buckets_[fp];
  for (std::size_t id : bucket) {
    ++stats_.exact_equalities;
    if (is_trivial(concat(r, inverse(class_reps_[id])))) {
      id_by_str_.emplace(s, id);
      return id;
    }
  }
  const std::size_t id = class_reps_.size();
  class_reps_.push_back(r);
  bucket.push_back(id);
  id_by_str_.emplace(s, id);
  return id;
}

bool is_trivial_gw(const Word& w, const OmegaPrefix& omega) {
  Oracle oracle(GroupSpec::gw(omega));
  return oracle.is_trivial(w);
}

namespace {

struct TracedDfs {
  const OmegaPrefix& omega;
  TrivialityTrace& trace;
  std::unordered_map<std::string, bool> memo;
  std::unordered_set<std::string> active;

  std::string key(const Word& reduced) const {
    const std::uint32_t m = reduced.min_shift();
    return unshift(reduced, m).str() + "#" +
           std::to_string(omega.canonical_pos(m + 1));
  }

  bool run(const Word& reduced) {
    if (reduced.empty()) return true;
    for (const Letter& l : reduced.letters())
      if (is_t(l.base))
        trace.max_consulted = std::max<std::size_t>(trace.max_consulted, l.shift + 1);
    const std::string k = key(reduced);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    if (active.count(k)) {
      trace.used_cycle = true;
      return true;
    }
    active.insert(k);
    const SectionResult s = sections(reduced, omega);
    const bool ans = s.root_swap == 0 && run(s.left) && run(s.right);
    active.erase(k);
    memo[k] = ans;
    return ans;
  }
};

}  // namespace

TrivialityTrace is_trivial_gw_traced(const Word& w, const OmegaPrefix& omega) {
  TrivialityTrace trace;
  TracedDfs dfs{omega, trace, {}, {}};
  trace.trivial = dfs.run(reduce(w));
  return trace;
}

bool is_trivial_universal(const Word& w) {
  Oracle oracle(GroupSpec::universal_group());
  return oracle.is_trivial(w);
}

BallReport ball(Oracle& oracle, int radius, std::size_t class_cap) {
  if (radius < 0) throw std::invalid_argument("ball: radius must be >= 0");
  const Word gens[4] = {Word::single(Base::a), Word::single(Base::b),
                        Word::single(Base::c), Word::single(Base::d)};
  BallReport report;
  report.radius = radius;

  std::unordered_map<std::size_t, std::size_t> class_to_index;
  auto insert_class = [&](const Word& w, int r) -> bool {
    const std::size_t cid = oracle.canonical_id(w);
    auto [it, fresh] = class_to_index.emplace(cid, report.reps.size());
    if (fresh) {
      report.reps.push_back(reduce(w));
      report.first_radius.push_back(r);
      if (report.reps.size() > class_cap)
        throw ResourceCapError("ball class cap exceeded");
      return true;
    }
    const std::size_t idx = it->second;
    Word red = reduce(w);
    if (shortlex_less(red, report.reps[idx])) report.reps[idx] = std::move(red);
    return false;
  };

  insert_class(Word(), 0);
  report.counts.push_back(1);
  std::vector<Word> frontier{Word()};
  for (int r = 1; r <= radius; ++r) {
    std::vector<Word> candidates;
    candidates.reserve(frontier.size() * 4);
    for (const Word& rep : frontier)
      for (const Word& g : gens) candidates.push_back(reduce(concat(rep, g)));
    std::sort(candidates.begin(), candidates.end(), shortlex_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Word> fresh;
    for (const Word& w : candidates)
      if (insert_class(w, r)) fresh.push_back(reduce(w));
    frontier = std::move(fresh);
    report.counts.push_back(report.reps.size());
  }
  return report;
}

GrowthTable growth_table(Oracle& oracle, int max_radius) {
  GrowthTable table;
  table.ball = ball(oracle, max_radius);
  table.ratios.assign(table.ball.counts.size(), 0.0);
  for (std::size_t r = 1; r < table.ball.counts.size(); ++r)
    table.ratios[r] = static_cast<double>(table.ball.counts[r]) /
                      static_cast<double>(table.ball.counts[r - 1]);
  return table;
}

std::pair<std::size_t, std::size_t> folner_counts(Oracle& oracle,
                                                  const std::vector<Word>& set,
                                                  const Word& g) {
  if (set.empty()) throw std::invalid_argument("folner_counts: empty set");
  std::unordered_set<std::size_t> ids;
  for (const Word& w : set)
    if (!ids.insert(oracle.canonical_id(w)).second)
      throw std::invalid_argument("folner_counts: set has equal elements");
  std::size_t missing = 0;
  for (const Word& w : set)
    if (!ids.count(oracle.canonical_id(concat(w, g)))) ++missing;
  return {2 * missing, set.size()};
}

}  // namespace grig
