#include "grig/action.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

#include "grig/errors.hpp"

namespace grig {

namespace {

bool all_generator_letters_shift0(const Word& w) {
  for (const Letter& l : w.letters())
    if (is_t(l.base) || l.shift != 0) return false;
  return true;
}

}  // namespace

SectionsOutcome sections(const Word& w, const OmegaLookup& omega_at) {
  const Word r = is_reduced(w) ? w : reduce(w);
  std::vector<Letter> left, right;
  int swap = 0;
  for (const Letter& l : r.letters()) {
    switch (l.base) {
      case Base::a:
        std::swap(left, right);
        swap ^= 1;
        break;
      case Base::b:
      case Base::c:
      case Base::d:
        left.push_back(Letter{t_of_index(k_index(l.base)), l.shift});
        right.push_back(Letter{l.base, l.shift + 1});
        break;
      default: {  // t-letter: resolves to Id or a depending on omega
        const std::size_t pos = l.shift + 1;
        std::optional<int> v = omega_at(pos);
        if (!v) return NeedsOmega{pos};
        if (*v != t_index(l.base)) {
          std::swap(left, right);
          swap ^= 1;
        }
        break;
      }
    }
  }
  SectionResult out{reduce(Word(std::move(left))), reduce(Word(std::move(right))), swap};
  // Contraction bound for plain generator words; a violation would mean the
  // rewriting is broken.
  assert(!all_generator_letters_shift0(r) ||
         (out.left.size() <= (r.size() + 2) / 2 && out.right.size() <= (r.size() + 2) / 2));
  return out;
}

SectionResult sections(const Word& w, const OmegaPrefix& omega) {
  SectionsOutcome out = sections(w, [&omega](std::size_t i) { return omega.at(i); });
  if (auto* need = std::get_if<NeedsOmega>(&out))
    throw InsufficientOmegaError(need->index);
  return std::get<SectionResult>(std::move(out));
}

namespace {

// Applies one letter to a vertex (recursion on the vertex suffix).
void apply_letter(const Letter& l, const OmegaPrefix& omega, std::string& v,
                  std::size_t from) {
  if (from >= v.size()) return;
  switch (l.base) {
    case Base::a:
      v[from] = v[from] == '0' ? '1' : '0';
      return;
    case Base::b:
    case Base::c:
    case Base::d:
      if (v[from] == '0') {
        apply_letter(Letter{t_of_index(k_index(l.base)), l.shift}, omega, v, from + 1);
      } else {
        apply_letter(Letter{l.base, l.shift + 1}, omega, v, from + 1);
      }
      return;
    default: {
      std::optional<int> w1 = omega.at(l.shift + 1);
      if (!w1) throw InsufficientOmegaError(l.shift + 1);
      if (*w1 != t_index(l.base)) v[from] = v[from] == '0' ? '1' : '0';
      return;
    }
  }
}

}  // namespace

std::string evaluate(const Word& w, const OmegaPrefix& omega, std::string_view vertex) {
  std::string v(vertex);
  for (char ch : v)
    if (ch != '0' && ch != '1')
      throw std::invalid_argument("vertex must be a word over {0,1}");
  // Rightmost letter acts first.
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    apply_letter(*it, omega, v, 0);
  return v;
}

namespace {

void fill_portrait(const Word& w, const OmegaPrefix& omega, int depth,
                   std::size_t node, std::vector<std::uint8_t>& bits) {
  SectionResult s = sections(w, omega);
  bits[node] = static_cast<std::uint8_t>(s.root_swap);
  if (depth > 1) {
    fill_portrait(s.left, omega, depth - 1, 2 * node + 1, bits);
    fill_portrait(s.right, omega, depth - 1, 2 * node + 2, bits);
  }
}

}  // namespace

bool Portrait::bit(std::string_view vertex) const {
  std::size_t node = 0;
  for (char ch : vertex) node = 2 * node + 1 + (ch == '1' ? 1 : 0);
  return bits[node] != 0;
}

bool Portrait::all_zero() const {
  for (auto b : bits)
    if (b) return false;
  return true;
}

std::string Portrait::apply(std::string_view vertex) const {
  std::string out(vertex);
  std::size_t node = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const bool flip = bits[node] != 0;
    const bool one = out[i] == '1';
    if (flip) out[i] = one ? '0' : '1';
    node = 2 * node + 1 + (one ? 1 : 0);
  }
  return out;
}

Portrait portrait(const Word& w, const OmegaPrefix& omega, int depth) {
  if (depth < 1) throw std::invalid_argument("portrait depth must be >= 1");
  Portrait p;
  p.depth = depth;
  p.bits.assign((std::size_t{1} << depth) - 1, 0);
  fill_portrait(reduce(w), omega, depth, 0, p.bits);
  return p;
}

std::uint64_t portrait_bits(const Word& w, const OmegaPrefix& omega, int depth) {
  if (depth < 1 || depth > 6) throw std::invalid_argument("portrait_bits: depth in [1,6]");
  Portrait p = portrait(w, omega, depth);
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p.bits.size(); ++i)
    if (p.bits[i]) out |= std::uint64_t{1} << i;
  return out;
}

}  // namespace grig
