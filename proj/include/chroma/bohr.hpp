#pragma once

// Fourier-analytic coloring of Cay(F_p, A).
//
// L = { xi : |1A^(xi)| >= nu } is the large spectrum, Gamma = c_s^{-1} L, and
// B = B(Gamma, rho) = { x : |xi x|_tau <= rho for all xi in Gamma }, where
// |x|_tau is the distance from x/p to the nearest integer. With M = ceil(2/rho)
// each u gets the phase signature kappa_xi(u) = floor(M (xi u mod p) / p); two
// vertices with equal signatures differ by an element of B, so inside a cell
// only differences in +-(A n B) produce edges. When |A n B| < k every cell has
// maximum degree at most 2(k-1) and greedy uses at most 2k - 1 colors per
// cell.

#include "chroma/equation.hpp"
#include "chroma/exact.hpp"
#include "chroma/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chroma {

struct SpectrumParams {
  Rational nu{1, 10};
  Rational rho{1, 10};
  /// Index s into the coefficient vector. Unset: the first index of the
  /// lexicographically first zero-sum subset of size >= 3 (or 0 if none).
  std::optional<int> s_index;

  int arcs() const;  // M = ceil(2 / rho)
  /// Throws InfeasibleParams unless 0 < nu <= 1, 0 < rho < 1/2 and M >= 4.
  void validate() const;

  /// nu = delta / 6 and rho = delta^3 / (216 pi D), with pi rounded down to
  /// 355/113 so that rho never exceeds the real formula.
  static SpectrumParams from_delta(const Rational& delta, std::int64_t d);
};

/// Frequencies with |1A^(xi)| >= nu, in increasing order. The comparison is
/// in double precision on the transform table.
std::vector<Index> large_spectrum(const ElementSet& a, double nu);

struct BohrSet {
  std::vector<Index> gamma;
  Rational rho;
  ElementSet members;
};

/// Exact membership: min(r, p - r) <= rho p for r = xi x mod p, every xi.
BohrSet bohr_set(std::vector<Index> gamma, const Rational& rho, std::int64_t p);

struct ClaimTest {
  bool passed = false;  // |A n B| < k
  std::size_t intersection = 0;
  std::vector<Index> witness;  // A n B when the test fails
};

ClaimTest claim_AB_test(const ElementSet& a, const ElementSet& b, int k);

struct PhasePartition {
  int arcs = 0;
  std::vector<std::uint32_t> cell_of;           // per vertex
  std::vector<std::vector<int>> signatures;     // per cell, kappa_xi for xi in gamma order
  std::size_t cell_count() const { return signatures.size(); }
};

/// Cells are numbered in order of their smallest vertex.
PhasePartition phase_partition(std::span<const Index> gamma, int arcs, std::int64_t p);

struct BohrColoringReport {
  std::int64_t p = 0;
  std::size_t a_size = 0;
  int k = 0;
  int s_index = 0;
  std::int64_t c_s = 0;
  bool theory_applies = false;  // the equation has a zero-sum subset of size >= 3
  std::string nu;
  std::string rho;
  int arcs = 0;
  std::size_t spectrum_size = 0;
  std::size_t gamma_size = 0;
  std::size_t bohr_size = 0;
  ClaimTest claim;
  std::size_t cells = 0;
  std::size_t max_cell_degree = 0;
  int colors_used = 0;
  std::string budget;  // (2k - 1) * M^|Gamma| as an exact integer
  bool within_budget = false;
  bool proper = false;  // validated against the full adjacency
};

struct BohrColoring {
  std::vector<int> colors;
  BohrColoringReport report;
};

/// Requires A over Z_p with p prime and c_s nonzero mod p.
BohrColoring bohr_color(const ElementSet& a, const Equation& eq, const SpectrumParams& params);

}  // namespace chroma
