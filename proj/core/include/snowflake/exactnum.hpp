#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

// Exact arithmetic used everywhere lengths, weights and eigen-quantities
// appear. Weighted lengths enter strict inequalities, so all comparisons in
// Q(sqrt(2)) are decided without floating point.

namespace snowflake {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct NonPrimitiveError : std::runtime_error {
  NonPrimitiveError() : std::runtime_error("matrix is not primitive") {}
};

/// An element a + b*sqrt(2) of Q(sqrt(2)) with exact rational coefficients.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
  QuadNum(long v) : a_(v), b_(0) {}  // NOLINT(google-explicit-constructor)

  static QuadNum sqrt2() { return QuadNum(Rational(0), Rational(1)); }
  static QuadNum from_int(const BigInt& v) { return QuadNum(Rational(v), Rational(0)); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadNum operator-() const { return QuadNum(-a_, -b_); }
  QuadNum operator+(const QuadNum& o) const { return QuadNum(a_ + o.a_, b_ + o.b_); }
  QuadNum operator-(const QuadNum& o) const { return QuadNum(a_ - o.a_, b_ - o.b_); }
  QuadNum operator*(const QuadNum& o) const {
    // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s  with s^2 = 2
    return QuadNum(a_ * o.a_ + 2 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  QuadNum& operator+=(const QuadNum& o) { return *this = *this + o; }
  QuadNum& operator-=(const QuadNum& o) { return *this = *this - o; }
  QuadNum& operator*=(const QuadNum& o) { return *this = *this * o; }

  /// Galois conjugate a - b*sqrt(2).
  QuadNum conjugate() const { return QuadNum(a_, -b_); }

  /// Field norm a^2 - 2 b^2 (rational).
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

  QuadNum inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
    return QuadNum(a_ / n, -b_ / n);
  }
  QuadNum operator/(const QuadNum& o) const { return *this * o.inverse(); }

  bool operator==(const QuadNum& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool operator!=(const QuadNum& o) const { return !(*this == o); }

  /// Exact sign of a + b*sqrt(2).
  int sign() const;

  bool operator<(const QuadNum& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const QuadNum& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const QuadNum& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const QuadNum& o) const { return (*this - o).sign() >= 0; }

  QuadNum abs() const { return sign() >= 0 ? *this : -*this; }

  double to_double() const;
  std::string str() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

std::ostream& operator<<(std::ostream& os, const QuadNum& q);

/// 2x2 matrix with nonnegative BigInt entries, row-major:
/// [[m00, m01], [m10, m11]].
struct IntMatrix2 {
  BigInt m00{0}, m01{0}, m10{0}, m11{0};

  static IntMatrix2 identity() { return {1, 0, 0, 1}; }

  bool operator==(const IntMatrix2& o) const = default;
  IntMatrix2 operator*(const IntMatrix2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  BigInt trace() const { return m00 + m11; }
  BigInt det() const { return m00 * m11 - m01 * m10; }
  bool strictly_positive() const { return m00 > 0 && m01 > 0 && m10 > 0 && m11 > 0; }

  /// Column sums (c0, c1); column j holds the letter counts of the image of
  /// the j-th generator under a monotone automorphism.
  std::array<BigInt, 2> column_sums() const { return {m00 + m10, m01 + m11}; }

  std::string str() const;
};

IntMatrix2 mat_mul(const IntMatrix2& a, const IntMatrix2& b);

/// M^k by repeated squaring, k >= 0.
IntMatrix2 mat_pow(const IntMatrix2& m, unsigned long k);

/// Left action of a row vector: (v0, v1) * M.
std::array<BigInt, 2> vec_mat(const std::array<BigInt, 2>& v, const IntMatrix2& m);

/// Perron-Frobenius data of a primitive nonnegative 2x2 integer matrix.
///
/// When the dominant eigenvalue lies in Q(sqrt(2)) (discriminant of the
/// characteristic polynomial is a square or twice a square) the exact fields
/// are set and `exact` is true; `lambda_f`/`left_f` are always filled.
/// The left eigenvector satisfies d * M = lambda * d and is normalized so
/// that d2 = 1.
struct PFEigenData {
  bool exact = false;
  QuadNum lambda;        // valid iff exact
  QuadNum d1, d2;        // valid iff exact
  double lambda_f = 0.0;
  double d1_f = 0.0, d2_f = 1.0;
  double tol = 1e-12;     // certified residual bound for the float fields
};

bool is_primitive(const IntMatrix2& m);

/// Throws NonPrimitiveError if no power of M is strictly positive.
PFEigenData pf_eigendata(const IntMatrix2& m);

}  // namespace snowflake
