#pragma once

// Exact arithmetic helpers: rationals, numbers of the form a + b*sqrt(r),
// and the small amount of elementary number theory the library needs.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chroma {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// a + b * sqrt(radicand), with rational a, b and integer radicand >= 0.
///
/// Every threshold of the form "n - q sqrt(n) - 1" or "n/2 - p sqrt(n)" is a
/// Surd, and comparisons against rationals are decided exactly by squaring.
struct Surd {
  Rational a{0};
  Rational b{0};
  std::int64_t radicand = 0;

  static Surd constant(Rational value) { return Surd{std::move(value), 0, 0}; }
  static Surd linear(Rational a, Rational b, std::int64_t radicand) {
    return Surd{std::move(a), std::move(b), radicand};
  }

  bool is_rational() const { return b == 0 || radicand == 0; }
  double to_double() const;
  std::string to_string() const;

  Surd operator-() const { return Surd{-a, -b, radicand}; }
  Surd scaled(const Rational& s) const { return Surd{a * s, b * s, radicand}; }
};

/// Sign of (x - s): -1, 0 or +1. Exact.
int compare(const Rational& x, const Surd& s);

/// Sign of s: -1, 0 or +1. Exact.
int sign(const Surd& s);

/// s + t, requiring matching radicands unless one side is rational.
Surd operator+(const Surd& s, const Surd& t);
Surd operator-(const Surd& s, const Surd& t);

inline bool leq(const Rational& x, const Surd& s) { return compare(x, s) <= 0; }
inline bool geq(const Rational& x, const Surd& s) { return compare(x, s) >= 0; }

/// Parses "3", "-7/8", "0.05", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
double to_double(const Rational& r);

std::int64_t floor_to_int(const Rational& r);
std::int64_t ceil_to_int(const Rational& r);

// --- integers -----------------------------------------------------------

std::int64_t isqrt(std::int64_t n);
bool is_prime(std::int64_t n);
/// Smallest prime strictly greater than n.
std::int64_t next_prime(std::int64_t n);
/// Representative in [0, n).
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}
inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(mod(a, n)) * mod(b, n) % n);
}
/// Inverse of a modulo n; throws std::domain_error when gcd(a, n) != 1.
std::int64_t modinv(std::int64_t a, std::int64_t n);

std::uint64_t binomial(int n, int k);

}  // namespace chroma
