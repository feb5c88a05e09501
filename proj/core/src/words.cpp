#include "snowflake/words.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace snowflake {

char kind_char(Kind k) {
  switch (k) {
    case Kind::x: return 'x';
    case Kind::y: return 'y';
    case Kind::a: return 'a';
    case Kind::b: return 'b';
    case Kind::c: return 'c';
    case Kind::t: return 't';
    case Kind::r: return 'r';
    case Kind::s: return 's';
    case Kind::u: return 'u';
  }
  return '?';
}

Kind kind_from_char(char ch) {
  switch (ch) {
    case 'x': return Kind::x;
    case 'y': return Kind::y;
    case 'a': return Kind::a;
    case 'b': return Kind::b;
    case 'c': return Kind::c;
    case 't': return Kind::t;
    case 'r': return Kind::r;
    case 's': return Kind::s;
    case 'u': return Kind::u;
    default: throw ParseError(std::string("unknown generator kind '") + ch + "'");
  }
}

std::string Letter::str() const {
  char ch = kind_char(kind);
  if (sign < 0) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return std::string(1, ch) + std::to_string(index);
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out), reduced_);
}

Word Word::operator*(const Word& o) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(out));
}

std::string Word::str() const { return print_word(*this); }

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << print_word(w); }

Word reduce(const Word& w) {
  if (w.reduced_flag()) return w;
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w.letters()) {
    if (!stack.empty() && stack.back().is_inverse_of(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack), true);
}

Word rmul(const Word& u, const Word& v) { return reduce(u * v); }

Letter tau(const Letter& l) {
  switch (l.kind) {
    case Kind::x:
    case Kind::y:
    case Kind::a:
    case Kind::b:
      return l.inverse();
    case Kind::t:
    case Kind::c:
      return l;
    default:
      throw AlphabetError("tau is undefined on letter " + l.str());
  }
}

Word tau(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) out.push_back(tau(l));
  return Word(std::move(out), w.reduced_flag());
}

bool is_palindromic(const Word& w) {
  // w(x^-1,y^-1) = w^-1 letterwise iff the letter sequence is a palindrome.
  const auto& ls = w.letters();
  std::size_t n = ls.size();
  for (std::size_t i = 0; i < n / 2 + 1 && i < n; ++i) {
    if (!(ls[i] == ls[n - 1 - i])) return false;
  }
  return true;
}

bool is_positive(const Word& w) {
  for (const Letter& l : w.letters())
    if (l.sign < 0) return false;
  return true;
}

bool is_monotone(const Word& w) {
  bool pos = true, neg = true;
  for (const Letter& l : w.letters()) {
    if (l.sign < 0) pos = false;
    if (l.sign > 0) neg = false;
  }
  return pos || neg;
}

QuadNum letter_weight(const Letter& l) {
  if (l.kind == Kind::x || l.kind == Kind::a) return QuadNum(Rational(1), Rational(1));
  return QuadNum(1);
}

LengthReport measure(const Word& w) {
  LengthReport rep;
  for (const Letter& l : w.letters()) {
    rep.total += 1;
    QuadNum wt = letter_weight(l);
    rep.weighted_total += wt;
    switch (l.kind) {
      case Kind::x:
        rep.x_count += 1;
        rep.weighted_x += wt;
        break;
      case Kind::y:
        rep.y_count += 1;
        rep.weighted_y += wt;
        break;
      case Kind::a:
      case Kind::b:
      case Kind::c:
        rep.per_peripheral[l.index] += 1;
        rep.weighted_per_peripheral[l.index] += wt;
        break;
      case Kind::t:
      case Kind::r:
      case Kind::s:
      case Kind::u:
        rep.stable_count += 1;
        break;
    }
  }
  return rep;
}

QuadNum weighted_length(const Word& w) {
  QuadNum total;
  for (const Letter& l : w.letters()) total += letter_weight(l);
  return total;
}

Word substitute_xy(const Word& w, const Letter& to_x, const Letter& to_y) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    Letter base;
    if (l.kind == Kind::x) {
      base = to_x;
    } else if (l.kind == Kind::y) {
      base = to_y;
    } else {
      throw AlphabetError("substitute_xy expects a word over {x, y}, got " + l.str());
    }
    out.emplace_back(base.kind, base.index, base.sign * l.sign);
  }
  return Word(std::move(out), w.reduced_flag());
}

Word peripheral_to_xyt(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const Letter& l : w.letters()) {
    switch (l.kind) {
      case Kind::a: out.emplace_back(Kind::x, 0, l.sign); break;
      case Kind::b: out.emplace_back(Kind::y, 0, l.sign); break;
      case Kind::c: out.emplace_back(Kind::t, 0, l.sign); break;
      default:
        throw AlphabetError("expected a peripheral word, got letter " + l.str());
    }
  }
  return Word(std::move(out), w.reduced_flag());
}

Word parse_word(std::string_view text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) {
      throw ParseError("unexpected character '" + std::string(1, ch) + "' in word");
    }
    int sign = std::isupper(static_cast<unsigned char>(ch)) ? -1 : 1;
    Kind kind = kind_from_char(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("letter '" + std::string(1, ch) + "' is missing its index");
    }
    std::uint64_t idx = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (idx > 0xffffffffULL) throw ParseError("letter index out of range");
      ++i;
    }
    out.emplace_back(kind, static_cast<std::uint32_t>(idx), sign);
  }
  return Word(std::move(out));
}

std::string print_word(const Word& w) {
  if (w.empty()) return "";
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : w.letters()) {
    if (!first) os << ' ';
    os << l.str();
    first = false;
  }
  return os.str();
}

}  // namespace snowflake
