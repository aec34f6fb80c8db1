#include "chroma/fourier.hpp"

#include "chroma/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

namespace chroma {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct BufferDeleter {
  void operator()(fftw_complex* b) const { fftw_free(b); }
};

// One complex-to-complex transform of length n with sign -1 (forward) or +1.
std::vector<Complex> fftw_transform(std::span<const Complex> in, int sign) {
  const auto n = in.size();
  if (n == 0) return {};
  std::unique_ptr<fftw_complex, BufferDeleter> buf(fftw_alloc_complex(n));
  if (!buf) throw std::bad_alloc();
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan(
      fftw_plan_dft_1d(static_cast<int>(n), buf.get(), buf.get(), sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                       FFTW_ESTIMATE));
  for (std::size_t i = 0; i < n; ++i) {
    buf.get()[i][0] = in[i].real();
    buf.get()[i][1] = in[i].imag();
  }
  fftw_execute(plan.get());
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Complex(buf.get()[i][0], buf.get()[i][1]);
  return out;
}

std::vector<Complex> unit_roots(std::size_t p, int sign) {
  std::vector<Complex> w(p);
  for (std::size_t t = 0; t < p; ++t) {
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(p);
    w[t] = Complex(std::cos(angle), std::sin(angle));
  }
  return w;
}

std::vector<Complex> direct_transform(std::span<const Complex> in, int sign, double scale) {
  const auto p = in.size();
  if (p > kDirectDftCap) throw CapExceeded("direct DFT limited to 2^20 points");
  const auto w = unit_roots(p, sign);
  std::vector<Complex> out(p);
  for (std::size_t xi = 0; xi < p; ++xi) {
    Complex acc = 0;
    std::size_t t = 0;  // x * xi mod p, updated incrementally
    for (std::size_t x = 0; x < p; ++x) {
      acc += in[x] * w[t];
      t += xi;
      if (t >= p) t -= p;
    }
    out[xi] = acc * scale;
  }
  return out;
}

}  // namespace

Complex ep(std::int64_t t, std::int64_t p) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(((t % p) + p) % p) / static_cast<double>(p);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> dft_direct(std::span<const Complex> f) {
  return direct_transform(f, -1, 1.0 / static_cast<double>(f.size()));
}

std::vector<Complex> dft_fast(std::span<const Complex> f) {
  auto out = fftw_transform(f, -1);
  const double scale = 1.0 / static_cast<double>(f.size());
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<Complex> dft(std::span<const Complex> f) {
  return f.size() <= kDirectDftPreferred ? dft_direct(f) : dft_fast(f);
}

std::vector<Complex> inverse_dft_direct(std::span<const Complex> fhat) {
  return direct_transform(fhat, +1, 1.0);
}

std::vector<Complex> inverse_dft_fast(std::span<const Complex> fhat) { return fftw_transform(fhat, +1); }

std::vector<Complex> inverse_dft(std::span<const Complex> fhat) {
  return fhat.size() <= kDirectDftPreferred ? inverse_dft_direct(fhat) : inverse_dft_fast(fhat);
}

std::vector<Complex> indicator_transform(const ElementSet& a) {
  if (!a.group().is_cyclic()) throw std::invalid_argument("indicator_transform needs a cyclic group");
  std::vector<Complex> f(a.universe(), Complex(0.0));
  a.for_each([&](Index i) { f[i] = 1.0; });
  return dft(f);
}

}  // namespace chroma
