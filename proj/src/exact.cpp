#include "chroma/exact.hpp"

#include "chroma/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace chroma {

namespace {

int sgn(const Rational& r) { return r.sign(); }

BigInt pow10(int e) {
  BigInt v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

double Surd::to_double() const {
  return chroma::to_double(a) + chroma::to_double(b) * std::sqrt(static_cast<double>(radicand));
}

std::string Surd::to_string() const {
  if (is_rational()) return chroma::to_string(a);
  std::ostringstream os;
  os << chroma::to_string(a) << (b.sign() < 0 ? " - " : " + ") << chroma::to_string(abs(b))
     << "*sqrt(" << radicand << ")";
  return os.str();
}

int compare(const Rational& x, const Surd& s) {
  const Rational d = x - s.a;
  if (s.is_rational()) return sgn(d);
  const Rational b2r = s.b * s.b * s.radicand;
  if (s.b.sign() > 0) {
    // d - b sqrt(r), with b sqrt(r) > 0
    if (d.sign() <= 0) return -1;
    const Rational d2 = d * d;
    return d2 > b2r ? 1 : (d2 < b2r ? -1 : 0);
  }
  // d + |b| sqrt(r)
  if (d.sign() >= 0) return 1;
  const Rational d2 = d * d;
  return b2r > d2 ? 1 : (b2r < d2 ? -1 : 0);
}

int sign(const Surd& s) { return -compare(Rational{0}, s); }

Surd operator+(const Surd& s, const Surd& t) {
  if (t.is_rational()) return Surd{s.a + t.a, s.b, s.radicand};
  if (s.is_rational()) return Surd{s.a + t.a, t.b, t.radicand};
  if (s.radicand != t.radicand) throw std::invalid_argument("Surd: mismatched radicands");
  return Surd{s.a + t.a, s.b + t.b, s.radicand};
}

Surd operator-(const Surd& s, const Surd& t) { return s + (-t); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return num / den;
  }

  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw ParseError("malformed rational literal '" + s + "'");
  int exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed rational literal '" + s + "'");
    try {
      std::size_t used = 0;
      exponent = std::stoi(s.substr(i + 1), &used);
      if (i + 1 + used != s.size()) throw ParseError("trailing characters in '" + s + "'");
    } catch (const std::logic_error&) {
      throw ParseError("malformed exponent in '" + s + "'");
    }
  }
  exponent -= frac_digits;
  Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                                 : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

std::int64_t floor_to_int(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);  // truncates toward zero
  if (r.sign() < 0 && q * denominator(r) != numerator(r)) q -= 1;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_to_int(const Rational& r) { return -floor_to_int(-r); }

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::int64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::int64_t next_prime(std::int64_t n) {
  std::int64_t c = n < 2 ? 2 : n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::int64_t modinv(std::int64_t a, std::int64_t n) {
  std::int64_t old_r = mod(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw std::domain_error("modinv: not invertible");
  return mod(old_s, n);
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > std::numeric_limits<std::uint64_t>::max()) throw CapExceeded("binomial overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace chroma
