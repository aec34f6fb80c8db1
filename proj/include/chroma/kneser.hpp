#pragma once

// Generalized Kneser graphs KN(n, k, m) and their embedding into Cayley
// graphs on Z_p^n, p = m + 1.
//
// Vertices are ordered m-tuples (A_1, ..., A_m) of pairwise disjoint k-subsets
// of [n] = {1, ..., n}. Two tuples A, B are adjacent iff either
//   (A1) (A_1 u ... u A_i) n (B_i u ... u B_m) is empty for every i, or
//   (A2) the same holds with A and B exchanged.
// With m = 1 this is the classical Kneser graph.

#include "chroma/exact.hpp"
#include "chroma/graph.hpp"
#include "chroma/group.hpp"
#include "chroma/solvers.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace chroma {

struct KneserParams {
  int n = 0;
  int k = 0;
  int m = 0;

  /// m = 1 is accepted as the classical Kneser graph but flagged.
  bool classical() const { return m == 1; }
  /// Throws InfeasibleParams unless k, m >= 1 and n >= (m + 1) k.
  void validate() const;
  /// prod_{i<m} C(n - i k, k); throws CapExceeded on overflow.
  std::uint64_t vertex_count() const;
  std::string to_string() const;
};

struct KneserVertex {
  std::vector<std::vector<int>> parts;  // each sorted, elements in [1, n]

  /// labels[j - 1] = i if j is in A_i, else 0.
  std::vector<int> labels(int n) const;
  std::string to_string() const;
  friend bool operator==(const KneserVertex&, const KneserVertex&) = default;
};

/// True iff v has exactly m pairwise disjoint parts of size k inside [n].
bool is_valid_vertex(const KneserParams& params, const KneserVertex& v);

inline constexpr std::uint64_t kKneserEnumerationCap = 2'000'000;

/// Lexicographic order: A_1 varies slowest, each part in combination order.
std::vector<KneserVertex> kneser_vertices(const KneserParams& params,
                                          std::uint64_t cap = kKneserEnumerationCap);

/// Literal evaluation of (A1) or (A2) over unions of parts.
bool kneser_adjacent_reference(const KneserParams& params, const KneserVertex& a, const KneserVertex& b);

/// Label form: A, B are adjacent iff on the elements used by both, label_A -
/// label_B is nonzero with one constant sign (an empty overlap qualifies).
bool kneser_adjacent(const KneserParams& params, const KneserVertex& a, const KneserVertex& b);
bool labels_adjacent(std::span<const int> la, std::span<const int> lb);

struct KneserGraph {
  KneserParams params;
  std::vector<KneserVertex> vertices;
  DenseGraph graph;
};

KneserGraph build_kneser_graph(const KneserParams& params, std::size_t cap = kMaxMaterializedVertices);

/// Lower bound (n/p - k) / (p (p - 1)) on the chromatic number, p = m + 1.
/// Throws InfeasibleParams unless p is prime. May be <= 0 (vacuous).
Rational chi_lower_bound(const KneserParams& params);

/// One row of the lower-bound sweep. `required` is ceil(bound) when the bound
/// is positive, otherwise 0.
struct BoundSweepRow {
  KneserParams params;
  std::uint64_t vertices = 0;
  Rational bound;
  std::int64_t required = 0;
  int chi_lower = 0;
  int chi_upper = 0;  // 0 when no coloring was computed
  bool exact = false;
  std::string method;  // "clique", "search" or "vacuous"
  bool ok = false;     // chi_lower >= required
};

/// Every feasible (n, k, m) with m + 1 prime and at most `max_vertices`
/// vertices, ordered by m, then k, then n. A greedy clique certifies the
/// bound when it is large enough; otherwise the exact search runs under
/// `budget`.
std::vector<BoundSweepRow> chi_bound_sweep(std::uint64_t max_vertices, const SolverBudget& budget = {});

/// x_A = 1 * 1_{A_1} + ... + (p - 1) * 1_{A_{p-1}} in Z_p^n, p = m + 1.
GroupElement embed_vertex(const KneserParams& params, const KneserVertex& v);

/// Smallest integer k with p k >= n - sqrt(n), decided exactly.
int embedding_k(int p, int n);

/// Elements of Z_p^n within Hamming distance `radius` of the all-ones vector.
struct HammingBall {
  int p = 2;
  int n = 1;
  Surd radius;

  /// Default radius p * sqrt(n).
  static HammingBall standard(int p, int n);
  static HammingBall scaled(int p, int n, const Rational& lambda);

  bool contains(const GroupElement& x) const;
  bool contains_distance(int distance_to_ones) const;
  ElementSet materialize(Index cap = kMaterializationCap) const;
  GroupSpec group() const { return GroupSpec::power(p, n); }
};

/// Number of coordinates of x that differ from 1.
int distance_to_ones(const GroupElement& x);

struct EdgeCheck {
  bool adjacent = false;
  bool oriented_a_to_b = true;    // false when only (A2) holds and the pair was swapped
  std::vector<int> overlaps;      // |A_i n B_{i-1}| for i = 1..p-1, then |A_0 n B_{p-1}|
  int distance = 0;               // d(x_A - x_B, 1) after orientation
  int bound = 0;                  // p n - p^2 k
  bool claim_ok = false;          // |A_0 n B_{p-1}| = k and |A_i n B_{i-1}| >= (p+1) k - n
  bool hamming_ok = false;        // distance <= bound
  bool in_ball = false;           // oriented difference lies in the given ball
  bool ok() const { return adjacent && claim_ok && hamming_ok; }
};

/// Checks one edge of KN(n, k, p - 1) against the embedding inequalities.
EdgeCheck check_embedding_edge(const KneserParams& params, const KneserVertex& a, const KneserVertex& b,
                               const HammingBall& ball);

/// f(x) = sum over nonzero coordinates of (p - x_i) / (p - 1). For p = 2 this
/// is the Hamming weight.
Rational weight_f(const GroupElement& x, int p);

/// I = {x : f(x) <= T and f(-x) <= T}, T = n/2 - lambda sqrt(n). The standard
/// choice is lambda = p, matching a ball of radius p sqrt(n); any lambda > 0
/// paired with the ball of radius lambda sqrt(n) keeps I independent.
struct IndependentSetI {
  int p = 3;
  int n = 1;
  Surd threshold;

  static IndependentSetI standard(int p, int n);
  static IndependentSetI scaled(int p, int n, const Rational& lambda);

  /// Threshold negative: I is empty.
  bool degenerate() const { return sign(threshold) < 0; }
  bool contains(const GroupElement& x) const;
  ElementSet materialize(Index cap = kMaterializationCap) const;
  GroupSpec group() const { return GroupSpec::power(p, n); }
};

struct DensityEstimate {
  double density = 0.0;
  double ci_low = 0.0;   // 99.7% normal-approximation interval
  double ci_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  bool exact = false;
};

/// Exact when p^n <= cap, otherwise Monte-Carlo with `samples` draws.
DensityEstimate density_of_I(const IndependentSetI& set, std::uint64_t samples, std::uint64_t seed,
                             Index cap = kMaterializationCap);

}  // namespace chroma
