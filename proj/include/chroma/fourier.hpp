#pragma once

// Fourier analysis on F_p with the normalization
//   f^(xi) = (1/p) sum_x f(x) e_p(-x xi),    f(x) = sum_xi f^(xi) e_p(xi x),
// where e_p(t) = exp(2 pi i t / p).
//
// dft_direct is the O(p^2) definition; dft_fast computes the same table with
// FFTW in O(p log p). dft() dispatches on size; the choice never changes the
// result beyond rounding.

#include "chroma/group.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace chroma {

using Complex = std::complex<double>;

inline constexpr std::size_t kDirectDftCap = std::size_t{1} << 20;
inline constexpr std::size_t kDirectDftPreferred = 2048;

/// e_p(t) for integer t.
Complex ep(std::int64_t t, std::int64_t p);

std::vector<Complex> dft_direct(std::span<const Complex> f);
std::vector<Complex> dft_fast(std::span<const Complex> f);
std::vector<Complex> dft(std::span<const Complex> f);

std::vector<Complex> inverse_dft_direct(std::span<const Complex> fhat);
std::vector<Complex> inverse_dft_fast(std::span<const Complex> fhat);
std::vector<Complex> inverse_dft(std::span<const Complex> fhat);

/// Transform of the indicator of A (A must live in a cyclic group).
std::vector<Complex> indicator_transform(const ElementSet& a);

}  // namespace chroma
