#include "chroma/fourier.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace chroma {
namespace {

std::vector<Complex> random_function(std::size_t p, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> f(p);
  for (auto& v : f) v = {g(rng), g(rng)};
  return f;
}

// Test-side transform straight from the definition, with long double phases.
std::vector<Complex> oracle_dft(const std::vector<Complex>& f) {
  const auto p = static_cast<long double>(f.size());
  std::vector<Complex> out(f.size());
  for (std::size_t xi = 0; xi < f.size(); ++xi) {
    std::complex<long double> s = 0;
    for (std::size_t x = 0; x < f.size(); ++x) {
      const long double angle = -2.0L * M_PIl * static_cast<long double>((x * xi) % f.size()) / p;
      s += std::complex<long double>(f[x].real(), f[x].imag()) * std::polar(1.0L, angle);
    }
    s /= p;
    out[xi] = {static_cast<double>(s.real()), static_cast<double>(s.imag())};
  }
  return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

TEST(Dft, IndicatorOfWholeGroup) {
  const std::vector<Complex> ones(13, 1.0);
  const auto t = dft(ones);
  EXPECT_NEAR(std::abs(t[0] - Complex(1.0)), 0, 1e-14);
  for (std::size_t xi = 1; xi < t.size(); ++xi) EXPECT_NEAR(std::abs(t[xi]), 0, 1e-14);
}

TEST(Dft, IndicatorAtZeroIsDensity) {
  const auto a = ElementSet::from_indices(GroupSpec::cyclic(31), std::vector<Index>{1, 4, 9, 16});
  const auto t = indicator_transform(a);
  EXPECT_NEAR(t[0].real(), 4.0 / 31.0, 1e-15);
  EXPECT_NEAR(t[0].imag(), 0, 1e-15);
}

TEST(Dft, DirectAndFastMatchTheDefinition) {
  std::mt19937_64 rng(1);
  for (std::size_t p : {2u, 5u, 31u, 257u, 1009u}) {
    const auto f = random_function(p, rng);
    const auto ref = oracle_dft(f);
    EXPECT_LT(max_diff(dft_direct(f), ref), 1e-12);
    EXPECT_LT(max_diff(dft_fast(f), ref), 1e-12);
    EXPECT_LT(max_diff(inverse_dft_fast(dft_fast(f)), f), 1e-12);
    EXPECT_LT(max_diff(inverse_dft_direct(dft_direct(f)), f), 1e-12);
  }
}

TEST(Dft, ParsevalAndInversion) {
  std::mt19937_64 rng(2);
  for (std::size_t p : {7u, 101u, 2053u, 9973u}) {
    const auto f = random_function(p, rng);
    const auto t = dft(f);
    double lhs = 0, rhs = 0;
    for (const auto& v : f) lhs += std::norm(v);
    for (const auto& v : t) rhs += std::norm(v);
    rhs *= static_cast<double>(p);
    EXPECT_LT(std::abs(lhs - rhs) / lhs, 1e-9);
    const auto back = inverse_dft(t);
    double err = 0, scale = 0;
    for (std::size_t i = 0; i < p; ++i) {
      err += std::norm(back[i] - f[i]);
      scale += std::norm(f[i]);
    }
    EXPECT_LT(std::sqrt(err / scale), 1e-9);
  }
}

TEST(Dft, Character) {
  EXPECT_NEAR(std::abs(ep(3, 12) - Complex(0, 1)), 0, 1e-15);
  EXPECT_NEAR(std::abs(ep(-7, 7) - Complex(1, 0)), 0, 1e-15);
}

}  // namespace
}  // namespace chroma
