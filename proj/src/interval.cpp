#include "grig/interval.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "grig/action.hpp"
#include "grig/errors.hpp"
#include "grig/words.hpp"

namespace grig {

namespace {

// Column of the omega letter: entries for rows (U,V,W).
const char* column_of(int letter) {
  switch (letter) {
    case 0: return "TTI";
    case 1: return "TIT";
    case 2: return "ITT";
    default: throw std::logic_error("bad omega letter");
  }
}

char row_entry(const OmegaPrefix& omega, int row, std::size_t k) {
  const std::optional<int> letter = omega.at(k);
  if (!letter) throw InsufficientOmegaError(k);
  return column_of(*letter)[row];
}

}  // namespace

RowTriple build_rows(const OmegaPrefix& omega, std::size_t len) {
  RowTriple rows;
  for (std::size_t k = 1; k <= len; ++k) {
    rows.U += row_entry(omega, 0, k);
    rows.V += row_entry(omega, 1, k);
    rows.W += row_entry(omega, 2, k);
  }
  return rows;
}

std::string interval_apply(char gen, const OmegaPrefix& omega, std::string_view point) {
  for (char ch : point)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("point must be a binary expansion prefix");
  std::string out(point);
  if (gen == 'a') {  // transposition of the two halves of [0,1]
    if (!out.empty()) out[0] = out[0] == '0' ? '1' : '0';
    return out;
  }
  int row;
  switch (gen) {
    case 'b': row = 0; break;
    case 'c': row = 1; break;
    case 'd': row = 2; break;
    default: throw std::invalid_argument("generator must be one of a,b,c,d");
  }
  // Locate the dyadic piece: expansions 1^{k-1} 0 ... form piece k.
  std::size_t zero = out.find('0');
  if (zero == std::string::npos)
    throw std::domain_error("point is all-ones to the available depth");
  const std::size_t k = zero + 1;
  if (row_entry(omega, row, k) == 'T') {
    // Transpose the two halves of the piece: flip the bit after the prefix.
    if (zero + 1 < out.size()) out[zero + 1] = out[zero + 1] == '0' ? '1' : '0';
  }
  return out;
}

std::vector<std::map<char, char>> valid_relabelings(const OmegaPrefix& omega, int depth) {
  static const char kGens[] = {'b', 'c', 'd'};
  std::vector<std::string> points;
  for (int len = 1; len <= depth; ++len)
    for (unsigned v = 0; v < (1u << len); ++v) {
      std::string p;
      for (int i = len - 1; i >= 0; --i) p += (v >> i) & 1 ? '1' : '0';
      points.push_back(std::move(p));
    }

  // a must match the tree generator a outright.
  for (const std::string& p : points)
    if (interval_apply('a', omega, p) != evaluate(Word::single(Base::a), omega, p))
      return {};

  std::vector<std::map<char, char>> valid;
  std::array<char, 3> perm = {'b', 'c', 'd'};
  std::sort(perm.begin(), perm.end());
  do {
    bool ok = true;
    for (int gi = 0; gi < 3 && ok; ++gi) {
      const char interval_gen = kGens[gi];
      const Base tree_base = perm[gi] == 'b'   ? Base::b
                             : perm[gi] == 'c' ? Base::c
                                               : Base::d;
      for (const std::string& p : points) {
        std::string lhs;
        try {
          lhs = interval_apply(interval_gen, omega, p);
        } catch (const std::domain_error&) {
          continue;  // all-ones point: the piece map is undetermined
        }
        if (lhs != evaluate(Word::single(tree_base), omega, p)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) valid.push_back({{'b', perm[0]}, {'c', perm[1]}, {'d', perm[2]}});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return valid;
}

std::optional<std::map<char, char>> crosscheck(const OmegaPrefix& omega, int depth) {
  const auto valid = valid_relabelings(omega, depth);
  if (valid.size() != 1) return std::nullopt;
  return valid.front();
}

}  // namespace grig
