#ifndef IDFORGE_PRIME_FIELD_HPP
#define IDFORGE_PRIME_FIELD_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace idforge {

/// Arithmetic context for the prime field GF(p), p an odd prime.
/// Elements are residues in [0, p) stored as uint64_t; all products of two
/// reduced residues fit in uint64_t for the primes used here (p < 2^31).
class GfpField {
public:
  using Elem = std::uint64_t;

  explicit GfpField(std::uint64_t p) : p_(p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p))
      throw std::invalid_argument("GfpField: modulus must be an odd prime");
    if (p >= (std::uint64_t(1) << 31))
      throw std::invalid_argument("GfpField: modulus too large");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }

  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Elem>(r);
  }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("GfpField: inversion of zero");
    return pow(a, p_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Symmetric representative in (-p/2, p/2].
  long long lift_signed(Elem a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_)
                      : static_cast<long long>(a);
  }

  /// Tonelli-Shanks square root; empty if a is a quadratic non-residue.
  std::optional<Elem> sqrt(Elem a) const {
    if (a == 0) return Elem(0);
    if (pow(a, (p_ - 1) / 2) != 1) return std::nullopt;
    if (p_ % 4 == 3) return pow(a, (p_ + 1) / 4);
    // write p-1 = q * 2^s with q odd
    std::uint64_t q = p_ - 1, s = 0;
    while (q % 2 == 0) { q /= 2; ++s; }
    // find a non-residue z (deterministic scan)
    Elem z = 2;
    while (pow(z, (p_ - 1) / 2) != p_ - 1) ++z;
    Elem m = s, c = pow(z, q), t = pow(a, q), r = pow(a, (q + 1) / 2);
    while (t != 1) {
      std::uint64_t i = 0;
      Elem t2 = t;
      while (t2 != 1) { t2 = mul(t2, t2); ++i; }
      Elem b = c;
      for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
    return r;
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
      if (n % d == 0) return n == d;
    // deterministic Miller-Rabin for 64-bit range
    auto mulmod = [](unsigned __int128 a, unsigned __int128 b, std::uint64_t m) {
      return static_cast<std::uint64_t>(a * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
      std::uint64_t r = 1;
      a %= m;
      while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
      }
      return r;
    };
    std::uint64_t d = n - 1, s = 0;
    while (d % 2 == 0) { d /= 2; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
      std::uint64_t x = powmod(a, d, n);
      if (x == 1 || x == n - 1) continue;
      bool composite = true;
      for (std::uint64_t i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) { composite = false; break; }
      }
      if (composite) return false;
    }
    return true;
  }

private:
  std::uint64_t p_;
};

enum class Sqrt2Root { smaller, larger };

/// Residue r with r^2 = 2 (mod p).  By default the smaller of the two
/// canonical representatives is returned; throws when 2 is a non-residue.
inline std::uint64_t sqrt2_residue(std::uint64_t p, Sqrt2Root which = Sqrt2Root::smaller) {
  GfpField f(p);
  auto r = f.sqrt(2 % p);
  if (!r)
    throw std::domain_error("sqrt2_residue: 2 is a quadratic non-residue mod " +
                            std::to_string(p) + "; choose another prime");
  std::uint64_t a = *r, b = p - *r;
  if (a > b) std::swap(a, b);
  return which == Sqrt2Root::smaller ? a : b;
}

/// Wang-style rational reconstruction: the unique a/b with b > 0,
/// gcd(a,b) = 1, a = r*b (mod p) and |a|, b <= floor(sqrt(p/2)),
/// when it exists.
struct ReconstructedRational {
  long long num;
  long long den;
};

inline std::optional<ReconstructedRational> rational_reconstruct(std::uint64_t r,
                                                                 std::uint64_t p) {
  if (r >= p) throw std::invalid_argument("rational_reconstruct: residue out of range");
  long long bound = 0;
  while (static_cast<std::uint64_t>(bound + 1) * static_cast<std::uint64_t>(bound + 1) * 2 <= p)
    ++bound;
  // half-extended Euclid on (p, r)
  long long r0 = static_cast<long long>(p), r1 = static_cast<long long>(r);
  long long t0 = 0, t1 = 1;
  while (r1 > bound) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  long long num = r1, den = t1;
  if (den < 0) { num = -num; den = -den; }
  if (den == 0 || den > bound || num < -bound || num > bound) return std::nullopt;
  long long a = num < 0 ? -num : num, b = den;
  while (b) { long long t = a % b; a = b; b = t; }
  if (a != 1) return std::nullopt;
  return ReconstructedRational{num, den};
}

} // namespace idforge

#endif
