#pragma once

// Homogeneous linear equations  c_1 x_1 + ... + c_k x_k = 0, their coefficient
// classification, and solution search / counting over cyclic groups.

#include "chroma/group.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chroma {

class Equation {
 public:
  /// Throws std::invalid_argument unless k >= 3 and every coefficient is nonzero.
  explicit Equation(std::vector<std::int64_t> coeffs);

  /// Accepts "[1,1,-1]" or "1*x1 + 1*x2 - 1*x3 = 0" (also "x1 + x2 - x3 = 0",
  /// "3x2", terms in any order; each of x1..xk must appear exactly once).
  static Equation parse(std::string_view text);

  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }
  int size() const { return static_cast<int>(coeffs_.size()); }

  /// C = sum c_i.
  std::int64_t sum() const;
  /// D = sum |c_i|.
  std::int64_t abs_sum() const;
  std::int64_t max_abs() const;

  std::string to_string() const;
  std::string to_array_string() const;

  friend bool operator==(const Equation&, const Equation&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

struct EquationClass {
  bool roth_degenerate = false;  // sum of all coefficients is zero
  bool rt_degenerate = false;    // some nonempty subset sums to zero
  bool chi_vanishing = false;    // some subset of size >= 3 sums to zero
  /// 0-based indices. The lexicographically first zero-sum subset of size >= 3
  /// when chi_vanishing, otherwise the first zero-sum subset, otherwise empty.
  std::vector<int> witness_subset;
};

inline constexpr int kMaxClassifyArity = 30;

/// Exact scan of all nonempty coefficient subsets. Throws CapExceeded for k > 30.
EquationClass classify(const Equation& eq);

/// Innermost of the nested classes: "roth", "chi_vanishing", "rt" or "none".
std::string region_name(const EquationClass& cls);

// --- solution search ------------------------------------------------------

struct SearchBudget {
  /// Plain k-fold enumeration is used while |A|^k stays below this.
  double plain_tuples = 2e7;
  /// Largest right-half table the meet-in-the-middle search may build.
  double table_entries = 6e7;
};

struct SolutionSearch {
  bool solution_free = true;
  /// Element indices (x_1, ..., x_k), pairwise distinct, when a solution exists.
  std::optional<std::vector<Index>> witness;
  std::string method;  // "plain", "meet-in-the-middle", or "cardinality" when |A| < k
};

/// Looks for a solution with pairwise distinct entries in A^k, where A lives
/// in a cyclic group Z_N and coefficients are reduced mod N.
SolutionSearch find_injective_solution(const Equation& eq, const ElementSet& a,
                                       const SearchBudget& budget = {});

/// As find_injective_solution, but over F_p: requires the group to be Z_p with
/// p prime and p > max |c_i| (InfeasibleParams otherwise).
SolutionSearch is_solution_free(const Equation& eq, const ElementSet& a,
                                const SearchBudget& budget = {});

// --- counting ------------------------------------------------------------------

struct CountLimits {
  Index max_group_order = Index{1} << 20;  // for injective counting
  double max_tuples = 5e8;                 // |A|^(k-1) enumeration work
};

/// Number of tuples in A^k with sum c_i x_i = y in the cyclic group of A,
/// optionally restricted to pairwise distinct coordinates.
std::uint64_t count_solutions_brute(const Equation& eq, const ElementSet& a, Index y, bool injective,
                                    const CountLimits& limits = {});

/// Injective count via Moebius inversion over set partitions of the k
/// coordinates (k <= 5).
std::uint64_t count_injective_by_partitions(const Equation& eq, const ElementSet& a, Index y,
                                            const CountLimits& limits = {});

/// Injective count by direct enumeration with a distinctness filter.
std::uint64_t count_injective_by_enumeration(const Equation& eq, const ElementSet& a, Index y,
                                             const CountLimits& limits = {});

/// Non-injective count for an arbitrary coefficient vector (zeros and k < 3
/// allowed). Building block for the partition formula.
std::uint64_t count_tuples(std::span<const std::int64_t> coeffs, const ElementSet& a, Index y,
                           const CountLimits& limits = {});

/// N(y) = p^(k-1) sum_xi prod_i 1A^(c_i xi) e_p(y xi), evaluated in double
/// precision and rounded. Throws NumericError when the value is farther than
/// 1e-6 * p^(k-1) from an integer.
std::uint64_t count_solutions_dft(const Equation& eq, const ElementSet& a, Index y);

/// All N(y), y in F_p, sharing one transform of 1_A.
std::vector<std::uint64_t> count_solutions_dft_all(const Equation& eq, const ElementSet& a);

}  // namespace chroma
