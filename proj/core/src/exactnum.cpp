#include "snowflake/exactnum.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace snowflake {

int QuadNum::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Mixed signs: compare a^2 with 2 b^2; the larger magnitude wins.
  Rational n = a_ * a_ - 2 * b_ * b_;
  if (sa > 0) return n.sign() >= 0 ? (n.sign() == 0 ? 0 : 1) : -1;
  return n.sign() > 0 ? -1 : (n.sign() == 0 ? 0 : 1);
}

double QuadNum::to_double() const {
  return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(2.0);
}

std::string QuadNum::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QuadNum& q) {
  if (q.b() == 0) return os << q.a();
  if (q.a() == 0) return os << q.b() << "*sqrt2";
  return os << q.a() << (q.b() > 0 ? "+" : "") << q.b() << "*sqrt2";
}

std::string IntMatrix2::str() const {
  std::ostringstream os;
  os << "[[" << m00 << "," << m01 << "],[" << m10 << "," << m11 << "]]";
  return os.str();
}

IntMatrix2 mat_mul(const IntMatrix2& a, const IntMatrix2& b) { return a * b; }

IntMatrix2 mat_pow(const IntMatrix2& m, unsigned long k) {
  IntMatrix2 result = IntMatrix2::identity();
  IntMatrix2 base = m;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    base = base * base;
    k >>= 1UL;
  }
  return result;
}

std::array<BigInt, 2> vec_mat(const std::array<BigInt, 2>& v, const IntMatrix2& m) {
  return {v[0] * m.m00 + v[1] * m.m10, v[0] * m.m01 + v[1] * m.m11};
}

bool is_primitive(const IntMatrix2& m) {
  if (m.m00 < 0 || m.m01 < 0 || m.m10 < 0 || m.m11 < 0) return false;
  // Wielandt: a nonnegative 2x2 matrix is primitive iff M^2 > 0.
  return (m * m).strictly_positive();
}

namespace {

// Exact integer square root test; returns true and sets r if v = r^2.
bool perfect_square(const BigInt& v, BigInt& r) {
  if (v < 0) return false;
  r = boost::multiprecision::sqrt(v);
  return r * r == v;
}

}  // namespace

PFEigenData pf_eigendata(const IntMatrix2& m) {
  if (!is_primitive(m)) throw NonPrimitiveError();

  PFEigenData out;
  BigInt tr = m.trace();
  BigInt det = m.det();
  BigInt disc = tr * tr - 4 * det;  // > 0 for primitive M (distinct real eigenvalues)

  // lambda = (tr + sqrt(disc)) / 2. Exact in Q(sqrt 2) iff disc = s^2 or 2 s^2.
  BigInt s;
  if (perfect_square(disc, s)) {
    out.exact = true;
    out.lambda = QuadNum(Rational(tr + s, 2), Rational(0));
  } else if (disc % 2 == 0 && perfect_square(disc / 2, s)) {
    out.exact = true;
    out.lambda = QuadNum(Rational(tr, 2), Rational(s, 2));
  }

  if (out.exact) {
    // Left eigenvector (d1, 1): from column 1, d1*m01 + m11 = lambda.
    out.d2 = QuadNum(1);
    out.d1 = (out.lambda - QuadNum::from_int(m.m11)) / QuadNum::from_int(m.m01);
    out.lambda_f = out.lambda.to_double();
    out.d1_f = out.d1.to_double();
    out.d2_f = 1.0;
    return out;
  }

  double trd = static_cast<double>(tr);
  double discd = static_cast<double>(disc);
  out.lambda_f = (trd + std::sqrt(discd)) / 2.0;
  out.d2_f = 1.0;
  out.d1_f = (out.lambda_f - static_cast<double>(m.m11)) / static_cast<double>(m.m01);
  // Closed-form 2x2 solution: a handful of rounding operations on exact
  // integers, so a generous multiple of machine epsilon certifies it.
  out.tol = 1e-12 * std::max(1.0, std::abs(out.lambda_f));
  return out;
}

}  // namespace snowflake
