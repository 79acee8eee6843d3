#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "grig/omega.hpp"

namespace grig {

// Rows of the 3 x len matrix obtained by replacing each omega letter with
// its column: 0 -> (T,T,I), 1 -> (T,I,T), 2 -> (I,T,T). Row U drives the
// interval generator b, V drives c, W drives d.
struct RowTriple {
  std::string U, V, W;  // words over {T,I}
};

RowTriple build_rows(const OmegaPrefix& omega, std::size_t len);

// Action of an interval generator on a finite binary expansion prefix.
// a swaps the halves of [0,1]; b applies u_k on the k-th dyadic piece (the
// points expanding as 1^{k-1}0...), c uses V, d uses W. Throws
// std::domain_error when the point is all-ones to the available depth (the
// piece is undetermined) and std::invalid_argument on bad input.
std::string interval_apply(char gen, const OmegaPrefix& omega, std::string_view point);

// All relabelings rho of {b,c,d} under which the interval action matches the
// tree action on every comparable point up to `depth`, for this omega.
// Requires the interval generator a to match the tree a outright. Constant
// omegas admit more than one relabeling (generators coincide there);
// non-constant omegas pin down exactly one.
std::vector<std::map<char, char>> valid_relabelings(const OmegaPrefix& omega, int depth);

// The unique valid relabeling, or nullopt when none or several work.
std::optional<std::map<char, char>> crosscheck(const OmegaPrefix& omega, int depth);

}  // namespace grig
