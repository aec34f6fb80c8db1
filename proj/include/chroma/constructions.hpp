#pragma once

// Dense solution-free sets with large Cayley chromatic number, built in
// Z_m = Z_{p_1} x ... x Z_{p_n} and lifted to F_p.
//
// For y in Z_m with residues y_i = y mod p_i and a slope index j in [1, q-1],
//   |y|_j^(i) = min( q y_i / (j p_i), q (p_i - y_i) / ((q - j) p_i) ),
//   |y|_j     = sum_i |y|_j^(i).
// Then
//   E0 = { y : |y|_1 >= n - beta },             beta = q sqrt(n) + 1 by default,
//   F0 = { y : |c1 y|_C <= T and |-c1 y|_C <= T }, T = n/2 - q^2 D sqrt(n) by default,
// and the lift to F_p is E = E0 (as integers 0..m-1), F = { x in I_p : x mod m
// in F0 } with I_p = [ceil(p/(D+1)), floor(p/D)], and A = E u F.
//
// The default thresholds are negative at any tractable n, so both are
// configurable exact surds. Every asymptotic side condition is reported as a
// named predicate instead of being assumed.

#include "chroma/equation.hpp"
#include "chroma/exact.hpp"
#include "chroma/group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chroma {

/// Equation rewritten so that C >= 1 and c_1 + c_2 = 0.
struct Normalization {
  Equation eq;
  std::vector<int> perm;  // perm[i] = original position of normalized coefficient i
  bool negated = false;

  /// Reorders a tuple given in normalized variable order back to the original order.
  std::vector<std::int64_t> to_original(const std::vector<std::int64_t>& normalized_tuple) const;
};

/// Throws InfeasibleParams when C = 0, when some subset of size >= 3 sums to
/// zero, or when no pair of opposite coefficients exists (those regimes are
/// handled by other constructions).
Normalization normalize_equation(const Equation& eq);

class NormContext {
 public:
  /// Throws InfeasibleParams unless q is prime and the primes are distinct
  /// primes; throws CapExceeded when m overflows.
  NormContext(int q, std::vector<std::int64_t> primes);

  int q() const { return q_; }
  int n() const { return static_cast<int>(primes_.size()); }
  std::int64_t m() const { return m_; }
  std::span<const std::int64_t> primes() const { return primes_; }
  const CrtSplit& crt() const { return crt_; }
  /// Each p_i > q n.
  bool primes_large() const;

  /// |y|_j^(i) for residue y_i = r in Z_{p_i}.
  Rational coordinate_norm(std::size_t i, std::int64_t r, int j) const;
  /// |y|_j; throws std::invalid_argument for j outside [1, q-1].
  Rational norm(std::int64_t y, int j) const;

  /// floor(x_i p_i / q) per coordinate, x in Z_q^n, reassembled in Z_m.
  std::int64_t discretize(const GroupElement& x) const;

 private:
  int q_;
  std::vector<std::int64_t> primes_;
  std::int64_t m_;
  CrtSplit crt_;
};

struct ConstructionParams {
  Equation eq{std::vector<std::int64_t>{1, -1, 2}};
  int q = 3;
  std::vector<std::int64_t> primes;
  Surd e0_deficit;                  // beta
  Surd f0_threshold;                // T
  std::optional<std::int64_t> p;    // lift prime; nullopt picks next_prime(D^2 (D+1) m)

  /// beta = q sqrt(n) + 1 and T = n/2 - q^2 D sqrt(n) with D of the
  /// normalized equation.
  static ConstructionParams with_default_thresholds(Equation eq, int q, std::vector<std::int64_t> primes);
};

struct Predicate {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct SetSummary {
  std::size_t size = 0;
  double density = 0.0;
};

/// The sets in Z_m plus a report of which side conditions hold.
struct ProductConstruction {
  Normalization norm;
  NormContext ctx;
  Surd e0_threshold;  // n - beta
  Surd f0_threshold;  // T
  ElementSet e0;
  ElementSet f0;
  std::vector<Predicate> predicates;
};

ProductConstruction build_product_construction(const ConstructionParams& params);

/// Membership test against an exact threshold, independent of materialization.
bool in_E0(const NormContext& ctx, const Surd& e0_threshold, std::int64_t y);
bool in_F0(const NormContext& ctx, const Equation& normalized, const Surd& f0_threshold, std::int64_t y);

struct NormBoundCheck {
  Rational norm;  // |sum c_i x_i|_C
  Surd bound;     // n - (q - 1) D beta
  bool holds = false;
};

/// For a tuple of E0 elements (normalized variable order), evaluates the sum's
/// C-norm against the lower bound.
NormBoundCheck check_E0_norm_bound(const ProductConstruction& pc, const std::vector<std::int64_t>& tuple,
                                   const Surd& e0_deficit);

/// Existence search for sum c_i x_i = 0 (mod the group order) with x_i drawn
/// from sets[i]. One coordinate is solved for; the rest are enumerated.
struct PatternSearch {
  bool found = false;
  std::vector<std::int64_t> witness;
  double work = 0.0;  // enumerated tuples
};
PatternSearch find_pattern_solution(std::span<const std::int64_t> coeffs, std::span<const ElementSet* const> sets,
                                    bool injective, double max_work = 2e10);

/// (-c1 F - c2 F) n (c3 E + ... + ck E) is empty, checked by searching for a
/// tuple (f1, f2, e3, ..., ek) solving the equation.
PatternSearch find_extension_violation(const Equation& normalized, const ElementSet& e, const ElementSet& f);

struct Lift {
  std::int64_t p = 0;
  std::int64_t interval_lo = 0;  // ceil(p / (D+1))
  std::int64_t interval_hi = 0;  // floor(p / D)
  ElementSet e;
  ElementSet f;
  ElementSet a;
};

/// Throws InfeasibleParams when p is not prime, p <= D m, or I_p is empty.
Lift lift_to_Fp(const ProductConstruction& pc, std::int64_t p);
/// next_prime(D^2 (D+1) m): the smallest prime clearing every gap condition.
std::int64_t auto_lift_prime(const ProductConstruction& pc);

struct Certificate {
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::int64_t> witness;
};

struct LiftCertificates {
  Certificate e_solution_free;        // (i)
  Certificate induced_isomorphism;    // (ii)
  Certificate extension;              // (iii)
  Certificate no_mixed_solution;      // (iv)
  Certificate a_solution_free;        // every pattern, including all-F
  Certificate negative_control;       // F without the interval restriction
  /// (ii) split into its two containments, over differences d in (-m, m).
  std::int64_t fp_only_differences = 0;  // edge in F_p but not in Z_m
  std::int64_t zm_only_differences = 0;  // edge in Z_m but not in F_p
  std::int64_t mismatched_edges = 0;     // unordered pairs in {0..m-1} affected

  bool all_required_pass() const {
    return e_solution_free.passed && induced_isomorphism.passed && extension.passed && no_mixed_solution.passed;
  }
};

LiftCertificates certify_lift(const ProductConstruction& pc, const Lift& lift, bool run_negative_control = true);

/// Exact per-coordinate moments of (|c1 y|_C^(i), |-c1 y|_C^(i)) for uniform
/// y, summed over coordinates, compared with the Gaussian rectangle constant.
struct DensityAnalysis {
  double mean1 = 0.0;
  double mean2 = 0.0;
  double cov11 = 0.0;
  double cov12 = 0.0;
  double cov22 = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double t = 0.0;          // min(mean) - T
  double r = 0.0;          // t / sqrt(n)
  double c = 0.0;          // lambda_min / n
  double c_cov = 0.0;      // lambda_max / n
  double alpha = 0.0;      // gauss_alpha(r, c, c_cov) when defined
  bool lemma_applicable = false;  // r >= 1 and 0 < c <= c_cov
  double density = 0.0;    // |F0| / m
  bool density_at_least_half_alpha = false;
};

DensityAnalysis analyze_F0_density(const ProductConstruction& pc);

}  // namespace chroma
