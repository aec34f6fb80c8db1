#include "chroma/kneser.hpp"

#include "chroma/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace chroma {

void KneserParams::validate() const {
  if (k < 1 || m < 1) throw InfeasibleParams("KN(n,k,m) needs k >= 1 and m >= 1");
  if (n < (m + 1) * k) {
    throw InfeasibleParams("KN(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(m) +
                           ") needs n >= (m+1)k");
  }
}

std::uint64_t KneserParams::vertex_count() const {
  validate();
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) {
    const std::uint64_t b = binomial(n - i * k, k);
    if (b != 0 && total > UINT64_MAX / b) throw CapExceeded("Kneser vertex count overflows");
    total *= b;
  }
  return total;
}

std::string KneserParams::to_string() const {
  return "KN(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(m) + ")";
}

std::vector<int> KneserVertex::labels(int n) const {
  std::vector<int> out(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j : parts[i]) out[static_cast<std::size_t>(j - 1)] = static_cast<int>(i + 1);
  }
  return out;
}

std::string KneserVertex::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    os << (i ? "," : "") << '{';
    for (std::size_t j = 0; j < parts[i].size(); ++j) os << (j ? "," : "") << parts[i][j];
    os << '}';
  }
  os << ')';
  return os.str();
}

bool is_valid_vertex(const KneserParams& params, const KneserVertex& v) {
  if (static_cast<int>(v.parts.size()) != params.m) return false;
  std::vector<char> seen(static_cast<std::size_t>(params.n) + 1, 0);
  for (const auto& part : v.parts) {
    if (static_cast<int>(part.size()) != params.k) return false;
    for (int j : part) {
      if (j < 1 || j > params.n || seen[static_cast<std::size_t>(j)]) return false;
      seen[static_cast<std::size_t>(j)] = 1;
    }
  }
  return true;
}

std::vector<KneserVertex> kneser_vertices(const KneserParams& params, std::uint64_t cap) {
  const auto count = params.vertex_count();
  if (count > cap) throw CapExceeded(params.to_string() + " has " + std::to_string(count) + " vertices");
  std::vector<KneserVertex> out;
  out.reserve(count);
  std::vector<char> used(static_cast<std::size_t>(params.n) + 1, 0);
  KneserVertex current;
  std::vector<int> part;

  std::function<void()> next_part;
  std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(part.size()) == params.k) {
      current.parts.push_back(part);
      next_part();
      current.parts.pop_back();
      return;
    }
    for (int j = from; j <= params.n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = 1;
      part.push_back(j);
      choose(j + 1);
      part.pop_back();
      used[static_cast<std::size_t>(j)] = 0;
    }
  };
  next_part = [&]() {
    if (static_cast<int>(current.parts.size()) == params.m) {
      out.push_back(current);
      return;
    }
    const auto saved = part;
    part.clear();
    choose(1);
    part = saved;
  };
  next_part();
  return out;
}

bool kneser_adjacent_reference(const KneserParams& params, const KneserVertex& a, const KneserVertex& b) {
  if (!is_valid_vertex(params, a) || !is_valid_vertex(params, b)) {
    throw std::invalid_argument("vertex does not belong to " + params.to_string());
  }
  auto condition = [&](const KneserVertex& x, const KneserVertex& y) {
    for (int i = 1; i <= params.m; ++i) {
      std::vector<char> prefix(static_cast<std::size_t>(params.n) + 1, 0);
      for (int l = 1; l <= i; ++l) {
        for (int j : x.parts[static_cast<std::size_t>(l - 1)]) prefix[static_cast<std::size_t>(j)] = 1;
      }
      for (int l = i; l <= params.m; ++l) {
        for (int j : y.parts[static_cast<std::size_t>(l - 1)]) {
          if (prefix[static_cast<std::size_t>(j)]) return false;
        }
      }
    }
    return true;
  };
  return condition(a, b) || condition(b, a);
}

bool labels_adjacent(std::span<const int> la, std::span<const int> lb) {
  int direction = 0;
  for (std::size_t j = 0; j < la.size(); ++j) {
    if (la[j] == 0 || lb[j] == 0) continue;
    const int d = la[j] > lb[j] ? 1 : (la[j] < lb[j] ? -1 : 0);
    if (d == 0 || (direction != 0 && d != direction)) return false;
    direction = d;
  }
  return true;
}

bool kneser_adjacent(const KneserParams& params, const KneserVertex& a, const KneserVertex& b) {
  if (!is_valid_vertex(params, a) || !is_valid_vertex(params, b)) {
    throw std::invalid_argument("vertex does not belong to " + params.to_string());
  }
  const auto la = a.labels(params.n);
  const auto lb = b.labels(params.n);
  return labels_adjacent(la, lb);
}

KneserGraph build_kneser_graph(const KneserParams& params, std::size_t cap) {
  KneserGraph kg{params, kneser_vertices(params, cap), DenseGraph{}};
  const std::size_t count = kg.vertices.size();
  kg.graph = DenseGraph(count);
  const auto n = static_cast<std::size_t>(params.n);
  std::vector<int> labels(count * n);
  std::vector<std::vector<int>> support(count);
  for (std::size_t v = 0; v < count; ++v) {
    const auto l = kg.vertices[v].labels(params.n);
    std::copy(l.begin(), l.end(), labels.begin() + static_cast<std::ptrdiff_t>(v * n));
    for (const auto& part : kg.vertices[v].parts) {
      for (int j : part) support[v].push_back(j - 1);
    }
  }
  // Only the support of one endpoint needs scanning.
  for (std::size_t u = 0; u < count; ++u) {
    const int* lu = labels.data() + u * n;
    for (std::size_t v = u + 1; v < count; ++v) {
      const int* lv = labels.data() + v * n;
      int direction = 0;
      bool adjacent = true;
      for (int j : support[u]) {
        const int b = lv[j];
        if (b == 0) continue;
        const int a = lu[j];
        const int d = a > b ? 1 : (a < b ? -1 : 0);
        if (d == 0 || (direction != 0 && d != direction)) {
          adjacent = false;
          break;
        }
        direction = d;
      }
      if (adjacent) kg.graph.add_edge(u, v);
    }
  }
  return kg;
}

Rational chi_lower_bound(const KneserParams& params) {
  const int p = params.m + 1;
  if (!is_prime(p)) throw InfeasibleParams("chi_lower_bound needs m + 1 prime, got " + std::to_string(p));
  return (Rational(params.n, p) - params.k) / Rational(p * (p - 1));
}

GroupElement embed_vertex(const KneserParams& params, const KneserVertex& v) {
  const int p = params.m + 1;
  if (!is_prime(p)) throw InfeasibleParams("embedding needs m + 1 prime");
  if (!is_valid_vertex(params, v)) throw std::invalid_argument("vertex does not belong to " + params.to_string());
  std::vector<std::int64_t> coords(static_cast<std::size_t>(params.n), 0);
  for (std::size_t i = 0; i < v.parts.size(); ++i) {
    for (int j : v.parts[i]) coords[static_cast<std::size_t>(j - 1)] = static_cast<std::int64_t>(i + 1);
  }
  return GroupElement(std::move(coords));
}

int embedding_k(int p, int n) {
  if (p < 2 || n < 1) throw std::invalid_argument("embedding_k needs p >= 2 and n >= 1");
  for (int k = 0;; ++k) {
    const std::int64_t gap = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(p) * k;
    if (gap <= 0 || gap * gap <= n) return k;
  }
}

HammingBall HammingBall::standard(int p, int n) { return scaled(p, n, Rational(p)); }

HammingBall HammingBall::scaled(int p, int n, const Rational& lambda) {
  if (!is_prime(p)) throw InfeasibleParams("Hamming ball needs p prime");
  if (n < 1) throw std::invalid_argument("Hamming ball needs n >= 1");
  return HammingBall{p, n, Surd::linear(0, lambda, n)};
}

bool HammingBall::contains_distance(int d) const { return leq(Rational(d), radius); }

int distance_to_ones(const GroupElement& x) {
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != 1 ? 1 : 0;
  return d;
}

bool HammingBall::contains(const GroupElement& x) const {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("element has the wrong length");
  return contains_distance(distance_to_ones(x));
}

namespace {

template <class F>
ElementSet materialize_power(int p, int n, Index cap, F&& member) {
  const auto group = GroupSpec::power(p, n);
  ElementSet out(group, cap);
  std::vector<std::int64_t> digits(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < group.order(); ++i) {
    if (member(GroupElement(digits))) out.insert(i);
    for (int j = n - 1; j >= 0; --j) {  // last coordinate is least significant
      if (++digits[static_cast<std::size_t>(j)] < p) break;
      digits[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

}  // namespace

ElementSet HammingBall::materialize(Index cap) const {
  return materialize_power(p, n, cap, [&](const GroupElement& x) { return contains(x); });
}

EdgeCheck check_embedding_edge(const KneserParams& params, const KneserVertex& a, const KneserVertex& b,
                               const HammingBall& ball) {
  const int p = params.m + 1;
  if (!is_prime(p)) throw InfeasibleParams("embedding needs m + 1 prime");
  EdgeCheck r;
  auto la = a.labels(params.n);
  auto lb = b.labels(params.n);
  // Orient so that every shared element has a larger label on the first side.
  bool a_first = true;
  bool b_first = true;
  for (int j = 0; j < params.n; ++j) {
    if (la[j] == 0 || lb[j] == 0) continue;
    a_first = a_first && la[j] > lb[j];
    b_first = b_first && lb[j] > la[j];
  }
  r.adjacent = a_first || b_first;
  r.oriented_a_to_b = a_first;
  if (!a_first && b_first) std::swap(la, lb);

  r.overlaps.assign(static_cast<std::size_t>(p), 0);
  for (int j = 0; j < params.n; ++j) {
    if (la[j] >= 1 && lb[j] == la[j] - 1) ++r.overlaps[static_cast<std::size_t>(la[j] - 1)];
    if (la[j] == 0 && lb[j] == p - 1) ++r.overlaps[static_cast<std::size_t>(p - 1)];
  }
  std::vector<std::int64_t> diff(static_cast<std::size_t>(params.n));
  for (int j = 0; j < params.n; ++j) diff[static_cast<std::size_t>(j)] = mod(la[j] - lb[j], p);
  const GroupElement z(std::move(diff));
  r.distance = distance_to_ones(z);
  r.bound = p * params.n - p * p * params.k;
  r.claim_ok = r.overlaps[static_cast<std::size_t>(p - 1)] == params.k;
  for (int i = 0; i + 1 < p; ++i) {
    r.claim_ok = r.claim_ok && r.overlaps[static_cast<std::size_t>(i)] >= (p + 1) * params.k - params.n;
  }
  r.hamming_ok = r.distance <= r.bound;
  r.in_ball = ball.p == p && ball.n == params.n && ball.contains(z);
  return r;
}

Rational weight_f(const GroupElement& x, int p) {
  std::int64_t numerator = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto v = mod(x[i], p);
    if (v != 0) numerator += p - v;
  }
  return Rational(numerator, p - 1);
}

IndependentSetI IndependentSetI::standard(int p, int n) { return scaled(p, n, Rational(p)); }

IndependentSetI IndependentSetI::scaled(int p, int n, const Rational& lambda) {
  if (!is_prime(p)) throw InfeasibleParams("independent set needs p prime");
  if (n < 1) throw std::invalid_argument("independent set needs n >= 1");
  return IndependentSetI{p, n, Surd::linear(Rational(n, 2), -lambda, n)};
}

bool IndependentSetI::contains(const GroupElement& x) const {
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("element has the wrong length");
  if (degenerate()) return false;
  std::vector<std::int64_t> neg(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) neg[i] = mod(-x[i], p);
  return leq(weight_f(x, p), threshold) && leq(weight_f(GroupElement(std::move(neg)), p), threshold);
}

ElementSet IndependentSetI::materialize(Index cap) const {
  return materialize_power(p, n, cap, [&](const GroupElement& x) { return contains(x); });
}

DensityEstimate density_of_I(const IndependentSetI& set, std::uint64_t samples, std::uint64_t seed, Index cap) {
  DensityEstimate est;
  // p^n may not fit an Index, so the exact branch is chosen before building the group.
  Index order = 1;
  bool small = true;
  for (int i = 0; i < set.n && small; ++i) {
    small = order <= cap / static_cast<Index>(set.p);
    order *= static_cast<Index>(set.p);
  }
  if (small) {
    const auto group = set.group();
    const auto members = set.materialize(cap);
    est.exact = true;
    est.samples = group.order();
    est.hits = members.size();
    est.density = static_cast<double>(est.hits) / static_cast<double>(est.samples);
    est.ci_low = est.ci_high = est.density;
    return est;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, set.p - 1);
  std::vector<std::int64_t> x(static_cast<std::size_t>(set.n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = coord(rng);
    if (set.contains(GroupElement(x))) ++est.hits;
  }
  est.samples = samples;
  est.density = samples ? static_cast<double>(est.hits) / static_cast<double>(samples) : 0.0;
  const double half = samples ? 3.0 * std::sqrt(est.density * (1.0 - est.density) / static_cast<double>(samples)) : 1.0;
  est.ci_low = std::max(0.0, est.density - half);
  est.ci_high = std::min(1.0, est.density + half);
  return est;
}

}  // namespace chroma

namespace chroma {

std::vector<BoundSweepRow> chi_bound_sweep(std::uint64_t max_vertices, const SolverBudget& budget) {
  std::vector<BoundSweepRow> rows;
  for (int m = 1;; ++m) {
    // The smallest graph for this m is KN(m+1, 1, m) with (m+1)! vertices.
    std::uint64_t factorial = 1;
    for (int i = 2; i <= m + 1 && factorial <= max_vertices; ++i) factorial *= static_cast<std::uint64_t>(i);
    if (factorial > max_vertices) break;
    if (!is_prime(m + 1)) continue;
    for (int k = 1;; ++k) {
      if (KneserParams{(m + 1) * k, k, m}.vertex_count() > max_vertices) break;
      for (int n = (m + 1) * k;; ++n) {
        const KneserParams params{n, k, m};
        const auto count = params.vertex_count();
        if (count > max_vertices) break;
        BoundSweepRow row;
        row.params = params;
        row.vertices = count;
        row.bound = chi_lower_bound(params);
        if (row.bound > 0) row.required = ceil_to_int(row.bound);
        if (row.required == 0) {
          row.method = "vacuous";
          row.chi_lower = count > 0 ? 1 : 0;
          row.ok = true;
          rows.push_back(std::move(row));
          continue;
        }
        const auto kg = build_kneser_graph(params, static_cast<std::size_t>(max_vertices));
        const auto clique = greedy_clique(kg.graph);
        row.chi_lower = static_cast<int>(clique.size());
        if (row.chi_lower >= row.required) {
          row.method = "clique";
        } else {
          const auto res = chromatic_number(kg.graph, budget);
          row.method = "search";
          row.chi_lower = res.lower;
          row.chi_upper = res.upper;
          row.exact = res.exact;
        }
        row.ok = row.chi_lower >= row.required;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace chroma
