#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "snowflake/exactnum.hpp"
#include "snowflake/words.hpp"

// Automorphisms of the rank-two free group <x, y>: application to words,
// inversion by bounded Nielsen search, powers, transition matrices and
// stretch bounds.

namespace snowflake {

struct NotInvertibleError : std::runtime_error {
  NotInvertibleError() : std::runtime_error("no inverse found by bounded Nielsen search") {}
};

/// An endomorphism of F = <x, y> given by the images of x and y. The factory
/// functions verify invertibility where stated.
class FreeAut {
 public:
  FreeAut();  // identity
  FreeAut(Word image_x, Word image_y);

  /// x -> xyx, y -> x; the fixed monotone palindromic automorphism.
  static FreeAut phi();

  const Word& image_x() const { return ix_; }
  const Word& image_y() const { return iy_; }

  bool is_identity() const;
  bool palindromic() const { return palindromic_; }
  bool monotone() const { return monotone_; }

  bool operator==(const FreeAut& o) const { return ix_ == o.ix_ && iy_ == o.iy_; }

  std::string str() const;

 private:
  Word ix_, iy_;
  bool palindromic_ = false;
  bool monotone_ = false;
};

/// Image of a word over {x, y}; freely reduced.
Word apply(const FreeAut& aut, const Word& w);

FreeAut compose(const FreeAut& f, const FreeAut& g);  // f after g

/// Inverse automorphism, found by a bounded search over Nielsen moves.
/// Throws NotInvertibleError if the images do not form a basis (or the
/// search budget is exhausted).
FreeAut inverse(const FreeAut& aut);

/// n-fold composition; negative n inverts first.
FreeAut power(const FreeAut& aut, long n);

/// Transition matrix together with its Perron-Frobenius eigen-data.
/// Columns: (|phi(x)|_x, |phi(x)|_y) and (|phi(y)|_x, |phi(y)|_y).
struct EigenData {
  IntMatrix2 matrix;
  PFEigenData pf;
};

struct NotMonotoneError : std::runtime_error {
  NotMonotoneError() : std::runtime_error("operation requires a monotone input") {}
};

/// Requires a monotone automorphism so letter counts are cancellation-free.
EigenData transition(const FreeAut& aut);

/// Letter-count column vector (#x letters, #y letters) of a word.
std::array<BigInt, 2> count_vector(const Word& w);

struct StretchCheck {
  QuadNum lhs;  // weighted length of reduce(aut(w))
  QuadNum rhs;  // lambda * weighted length of w
  bool ok;      // lhs <= rhs
};

struct NonExactEigenError : std::runtime_error {
  NonExactEigenError() : std::runtime_error("eigen-data not exact in Q(sqrt 2)") {}
};

/// Verifies the stretch bound ||aut(w)|| <= lambda ||w|| with the exact
/// eigen-weights of `aut`; equality holds for monotone w. Requires exact
/// eigen-data (throws NonExactEigenError otherwise).
StretchCheck stretch_check(const FreeAut& aut, const Word& w);

}  // namespace snowflake
