#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "snowflake/exactnum.hpp"

// Letters, words, free reduction, the involution tau, word classes and the
// length functions, over the alphabets of F, V_T, S_{T,n} and G_{T,n}.

namespace snowflake {

struct AlphabetError : std::runtime_error {
  explicit AlphabetError(const std::string& what) : std::runtime_error(what) {}
};
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class Kind : std::uint8_t { x, y, a, b, c, t, r, s, u };

char kind_char(Kind k);
Kind kind_from_char(char ch);

/// One signed, indexed generator letter, e.g. x3, A0 (= a0^-1), r2.
struct Letter {
  Kind kind{Kind::x};
  std::uint32_t index{0};
  std::int8_t sign{1};  // +1 or -1

  Letter() = default;
  Letter(Kind k, std::uint32_t i, int s = 1)
      : kind(k), index(i), sign(static_cast<std::int8_t>(s)) {}

  Letter inverse() const { return Letter(kind, index, -sign); }
  bool is_inverse_of(const Letter& o) const {
    return kind == o.kind && index == o.index && sign == -o.sign;
  }
  bool operator==(const Letter& o) const = default;
  auto operator<=>(const Letter& o) const = default;

  std::string str() const;
};

/// A finite sequence of letters; `reduced` is a cached flag meaning no
/// adjacent letter-inverse pair survives.
class Word {
 public:
  Word() : reduced_(true) {}
  explicit Word(std::vector<Letter> letters, bool reduced = false)
      : letters_(std::move(letters)), reduced_(reduced) {}

  static Word one(const Letter& l) { return Word({l}, true); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool reduced_flag() const { return reduced_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word operator*(const Word& o) const;  // concatenation (no reduction)
  void append(const Letter& l) { letters_.push_back(l); reduced_ = false; }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  auto operator<=>(const Word& o) const { return letters_ <=> o.letters_; }

  std::string str() const;

 private:
  std::vector<Letter> letters_;
  bool reduced_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// Free reduction; idempotent, and a homomorphic normal form on free words.
Word reduce(const Word& w);

/// Concatenate-and-reduce convenience.
Word rmul(const Word& u, const Word& v);

/// The involution x -> x^-1, y -> y^-1 (t fixed); defined letterwise, also
/// acts on peripheral letters a, b (inverted) and c (fixed).
/// Letters r, s, u are outside the domain.
Word tau(const Word& w);
Letter tau(const Letter& l);

/// True iff w(x^-1, y^-1) = w(x, y)^-1 as literal words.
bool is_palindromic(const Word& w);

/// True iff w is positive or negative.
bool is_monotone(const Word& w);

bool is_positive(const Word& w);

/// All counts of Definitions of length: totals, per-kind and per-peripheral
/// counts, and their weighted versions with d1 = 1+sqrt(2) on x/a letters,
/// d2 = 1 on y/b letters and 1 on stable letters.
struct LengthReport {
  BigInt total{0};
  BigInt x_count{0};
  BigInt y_count{0};
  BigInt stable_count{0};  // r, s, u and t/c occurrences
  std::map<std::uint32_t, BigInt> per_peripheral;  // index -> #(a_i, b_i, c_i)
  QuadNum weighted_total;
  QuadNum weighted_x;
  QuadNum weighted_y;
  std::map<std::uint32_t, QuadNum> weighted_per_peripheral;
};

/// Weight of a single letter: 1+sqrt(2) for x/a, 1 otherwise.
QuadNum letter_weight(const Letter& l);

LengthReport measure(const Word& w);

/// Weighted total alone.
QuadNum weighted_length(const Word& w);

/// Substitute generators: maps x -> to_x, y -> to_y letterwise (signs
/// distribute). w must be a word over {x, y}.
Word substitute_xy(const Word& w, const Letter& to_x, const Letter& to_y);

/// Re-read a word over {a_i, b_i} (optionally c_i) as a word over {x, y, t}.
Word peripheral_to_xyt(const Word& w);

/// Plain-text syntax: kind char + index digits, capital = inverse
/// ("x3 X3 a0 r2" or compact "x3X3a0r2"; whitespace optional).
Word parse_word(std::string_view text);
std::string print_word(const Word& w);

}  // namespace snowflake
