#ifndef IDFORGE_QSQRT2_HPP
#define IDFORGE_QSQRT2_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "idforge/prime_field.hpp"

namespace idforge {

/// Element a + b*sqrt(2) of the quadratic field Q(sqrt(2)), with exact
/// rational coordinates.
struct QSqrt2 {
  mpq_class a;
  mpq_class b;

  QSqrt2() : a(0), b(0) {}
  QSqrt2(long v) : a(v), b(0) {}
  QSqrt2(mpq_class ra) : a(std::move(ra)), b(0) {}
  QSqrt2(mpq_class ra, mpq_class rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QSqrt2 sqrt2() { return QSqrt2(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  QSqrt2 operator-() const { return QSqrt2(-a, -b); }
  QSqrt2 operator+(const QSqrt2& o) const { return QSqrt2(a + o.a, b + o.b); }
  QSqrt2 operator-(const QSqrt2& o) const { return QSqrt2(a - o.a, b - o.b); }
  QSqrt2 operator*(const QSqrt2& o) const {
    return QSqrt2(a * o.a + 2 * b * o.b, a * o.b + b * o.a);
  }
  QSqrt2& operator+=(const QSqrt2& o) { a += o.a; b += o.b; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { a -= o.a; b -= o.b; return *this; }
  QSqrt2& operator*=(const QSqrt2& o) { *this = *this * o; return *this; }

  QSqrt2 inverse() const {
    mpq_class norm = a * a - 2 * b * b;
    if (norm == 0) throw std::domain_error("QSqrt2: inversion of zero");
    return QSqrt2(a / norm, -b / norm);
  }
  QSqrt2 operator/(const QSqrt2& o) const { return *this * o.inverse(); }

  bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QSqrt2& o) const { return !(*this == o); }

  /// Residue of a + b*sqrt(2) modulo p, using the given root of 2.
  std::uint64_t reduce_mod(const GfpField& f, std::uint64_t root) const {
    auto red = [&](const mpq_class& q) {
      mpz_class num = q.get_num() % static_cast<long>(f.modulus());
      mpz_class den = q.get_den() % static_cast<long>(f.modulus());
      long n = num.get_si(), d = den.get_si();
      if (d == 0) throw std::domain_error("QSqrt2: denominator divisible by p");
      return f.div(f.from_int(n), f.from_int(d));
    };
    return f.add(red(a), f.mul(red(b), root % f.modulus()));
  }

  double to_double() const { return a.get_d() + b.get_d() * 1.41421356237309515; }

  std::string str() const {
    if (b == 0) return a.get_str();
    return a.get_str() + "+" + b.get_str() + "*sqrt2";
  }
};

inline QSqrt2 operator*(long s, const QSqrt2& x) { return QSqrt2(mpq_class(s)) * x; }
inline QSqrt2 operator*(const mpq_class& s, const QSqrt2& x) { return QSqrt2(s) * x; }

/// Field-context wrapper so matrices can be templated uniformly over
/// GfpField and QSqrt2Field.
class QSqrt2Field {
public:
  using Elem = QSqrt2;

  Elem zero() const { return QSqrt2(); }
  Elem one() const { return QSqrt2(1); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem from_int(long long v) const { return QSqrt2(mpq_class(static_cast<long>(v))); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
};

} // namespace idforge

#endif
