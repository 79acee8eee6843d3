#include "grig/words.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "grig/errors.hpp"

namespace grig {

namespace {

// The kMaxShift guard applies to user-facing construction (parse,
// shift_endo); sectioning may push shifts past it transiently, bounded by
// the recursion it serves.
void check_letter(const Letter& l) {
  if (l.base == Base::a && l.shift != 0)
    throw std::invalid_argument("letter a cannot carry a shift");
}

// Push one letter onto a reduced stack, applying the rewriting rules until
// the stack is reduced again.
void push_reduced(std::vector<Letter>& stack, Letter x) {
  for (;;) {
    if (stack.empty()) {
      stack.push_back(x);
      return;
    }
    const Letter top = stack.back();
    if (top == x) {  // involution
      stack.pop_back();
      return;
    }
    if (top.shift == x.shift && is_k(top.base) && is_k(x.base)) {
      stack.pop_back();
      x = Letter{third_k(top.base, x.base), x.shift};
      continue;  // the merged letter may interact with the new top
    }
    stack.push_back(x);
    return;
  }
}

}  // namespace

std::string letter_str(const Letter& l) {
  static const char* names[] = {"a", "b", "c", "d", "t0", "t1", "t2"};
  std::string out = names[static_cast<int>(l.base)];
  if (l.shift > 0) out += "@" + std::to_string(l.shift);
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (const Letter& l : letters_) check_letter(l);
}

Word Word::single(Base base, std::uint32_t shift) {
  return Word(std::vector<Letter>{Letter{base, shift}});
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_sep();
  if (i < text.size() && text[i] == 'e') {
    ++i;
    skip_sep();
    if (i != text.size())
      throw std::invalid_argument("'e' must stand alone as the identity word");
    return Word();
  }
  while (i < text.size()) {
    char ch = text[i];
    Base base;
    switch (ch) {
      case 'a': base = Base::a; break;
      case 'b': base = Base::b; break;
      case 'c': base = Base::c; break;
      case 'd': base = Base::d; break;
      case 't': {
        if (i + 1 >= text.size() || text[i + 1] < '0' || text[i + 1] > '2')
          throw std::invalid_argument("expected t0, t1 or t2 in word");
        base = t_of_index(text[i + 1] - '0');
        ++i;
        break;
      }
      default:
        throw std::invalid_argument(std::string("unexpected character '") + ch +
                                    "' in word");
    }
    ++i;
    std::uint32_t shift = 0;
    if (i < text.size() && text[i] == '@') {
      ++i;
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("expected digits after '@'");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > kMaxShift)
          throw ShiftOverflowError("shift exceeds the configured maximum");
        ++i;
      }
      shift = static_cast<std::uint32_t>(v);
    }
    Letter l{base, shift};
    check_letter(l);
    out.push_back(l);
    skip_sep();
  }
  return Word(std::move(out));
}

std::uint32_t Word::min_shift() const {
  std::uint32_t m = 0;
  bool seen = false;
  for (const Letter& l : letters_) {
    if (l.base == Base::a) continue;
    if (!seen || l.shift < m) m = l.shift;
    seen = true;
  }
  return seen ? m : 0;
}

std::uint32_t Word::max_shift() const {
  std::uint32_t m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.shift);
  return m;
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (const Letter& l : letters_) out += letter_str(l);
  return out;
}

Word concat(const Word& lhs, const Word& rhs) {
  std::vector<Letter> ls;
  ls.reserve(lhs.size() + rhs.size());
  ls.insert(ls.end(), lhs.letters().begin(), lhs.letters().end());
  ls.insert(ls.end(), rhs.letters().begin(), rhs.letters().end());
  return Word(std::move(ls));
}

Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w.letters()) push_reduced(stack, l);
  return Word(std::move(stack));
}

bool is_reduced(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    if (ls[i] == ls[i + 1]) return false;
    if (ls[i].shift == ls[i + 1].shift && is_k(ls[i].base) && is_k(ls[i + 1].base))
      return false;
  }
  return true;
}

Word inverse(const Word& w) {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(ls));
}

Word shift_endo(const Word& w) {
  std::vector<Letter> ls = w.letters();
  for (Letter& l : ls) {
    if (l.base == Base::a) continue;
    if (l.shift >= kMaxShift)
      throw ShiftOverflowError("shift_endo would exceed the shift maximum");
    ++l.shift;
  }
  return Word(std::move(ls));
}

Word unshift(const Word& w, std::uint32_t amount) {
  if (amount == 0) return w;
  std::vector<Letter> ls = w.letters();
  for (Letter& l : ls) {
    if (l.base == Base::a) continue;
    if (l.shift < amount)
      throw std::invalid_argument("unshift amount exceeds a letter shift");
    l.shift -= amount;
  }
  return Word(std::move(ls));
}

bool shortlex_less(const Word& lhs, const Word& rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return lhs.letters() < rhs.letters();
}

}  // namespace grig
