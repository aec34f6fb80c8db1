#include "chroma/solvers.hpp"

#include <algorithm>
#include <bit>

namespace chroma {

namespace {

using Bits = std::vector<std::uint64_t>;

struct BudgetExhausted {};

class BudgetClock {
 public:
  explicit BudgetClock(const SolverBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

  void tick() {
    ++nodes_;
    if (budget_.max_nodes != 0 && nodes_ > budget_.max_nodes) throw BudgetExhausted{};
    if (budget_.time_limit.count() != 0 && (nodes_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.time_limit) {
      throw BudgetExhausted{};
    }
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  SolverBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
};

bool any(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t first_bit(const Bits& b) {
  for (std::size_t w = 0; w < b.size(); ++w) {
    if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
  }
  return b.size() * 64;
}

void clear_bit(Bits& b, std::size_t v) { b[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

// Branch-and-bound maximum clique with greedy-coloring bounds.
class CliqueSearch {
 public:
  CliqueSearch(const DenseGraph& g, BudgetClock& clock) : g_(g), clock_(clock) {}

  void run(std::vector<std::size_t> seed) {
    best_ = std::move(seed);
    Bits all(g_.words_per_row(), 0);
    for (std::size_t v = 0; v < g_.size(); ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
    std::vector<std::size_t> current;
    if (g_.size() > 0) expand(all, current);
  }
  const std::vector<std::size_t>& best() const { return best_; }

 private:
  void expand(Bits p, std::vector<std::size_t>& current) {
    clock_.tick();
    std::vector<std::size_t> order;
    std::vector<int> bound;
    // Greedy color classes give an upper bound on any clique inside p.
    Bits uncolored = p;
    int color = 0;
    while (any(uncolored)) {
      ++color;
      Bits q = uncolored;
      while (any(q)) {
        const std::size_t v = first_bit(q);
        clear_bit(q, v);
        clear_bit(uncolored, v);
        const auto nv = g_.row(v);
        for (std::size_t w = 0; w < q.size(); ++w) q[w] &= ~nv[w];
        order.push_back(v);
        bound.push_back(color);
      }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current.size() + static_cast<std::size_t>(bound[i]) <= best_.size()) return;
      const std::size_t v = order[i];
      current.push_back(v);
      Bits next(p.size());
      const auto nv = g_.row(v);
      for (std::size_t w = 0; w < p.size(); ++w) next[w] = p[w] & nv[w];
      if (any(next)) {
        expand(std::move(next), current);
      } else if (current.size() > best_.size()) {
        best_ = current;
      }
      current.pop_back();
      clear_bit(p, v);
    }
  }

  const DenseGraph& g_;
  BudgetClock& clock_;
  std::vector<std::size_t> best_;
};

// First-fit cliques: scan vertices cyclically from a few starting points and
// keep every vertex adjacent to all members so far. O(starts * n * n / 64).
std::vector<std::size_t> greedy_clique_impl(const DenseGraph& g) {
  const std::size_t n = g.size();
  constexpr std::size_t kStarts = 16;
  std::vector<std::size_t> best;
  for (std::size_t s = 0; s < std::min(n, kStarts); ++s) {
    const std::size_t start = s * n / std::min(n, kStarts);
    std::vector<std::size_t> clique;
    Bits common(g.words_per_row(), ~std::uint64_t{0});
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t v = (start + step) % n;
      if (!((common[v >> 6] >> (v & 63)) & 1U)) continue;
      clique.push_back(v);
      const auto nv = g.row(v);
      for (std::size_t w = 0; w < common.size(); ++w) common[w] &= nv[w];
    }
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

// Incremental saturation bookkeeping shared by the greedy and exact DSATUR.
class DsaturState {
 public:
  DsaturState(const DenseGraph& g, int max_colors)
      : g_(g),
        max_colors_(max_colors),
        color_(g.size(), -1),
        sat_(g.size(), 0),
        count_(g.size() * static_cast<std::size_t>(max_colors), 0),
        degree_(g.size()) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      degree_[v] = g.degree(v);
      neighbors_.push_back(g.neighbors(v));
    }
  }

  void assign(std::size_t v, int c) {
    color_[v] = c;
    for (std::size_t u : neighbors_[v]) {
      if (count_[u * max_colors_ + static_cast<std::size_t>(c)]++ == 0) ++sat_[u];
    }
  }
  void unassign(std::size_t v) {
    const int c = color_[v];
    color_[v] = -1;
    for (std::size_t u : neighbors_[v]) {
      if (--count_[u * max_colors_ + static_cast<std::size_t>(c)] == 0) --sat_[u];
    }
  }
  bool allowed(std::size_t v, int c) const { return count_[v * max_colors_ + static_cast<std::size_t>(c)] == 0; }

  std::size_t select() const {
    std::size_t best = g_.size();
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (color_[v] >= 0) continue;
      if (best == g_.size() || sat_[v] > sat_[best] || (sat_[v] == sat_[best] && degree_[v] > degree_[best])) {
        best = v;
      }
    }
    return best;
  }

  const std::vector<int>& colors() const { return color_; }

 private:
  const DenseGraph& g_;
  std::size_t max_colors_;
  std::vector<int> color_;
  std::vector<int> sat_;
  std::vector<int> count_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

class ColoringSearch {
 public:
  ColoringSearch(const DenseGraph& g, int lower, Coloring incumbent, BudgetClock& clock)
      : g_(g), state_(g, incumbent.num_colors), lower_(lower), best_(std::move(incumbent)), clock_(clock) {}

  // Throws BudgetExhausted when the clock runs out; best() stays valid.
  void run(const std::vector<std::size_t>& clique) {
    int used = 0;
    for (std::size_t v : clique) state_.assign(v, used++);
    search(clique.size(), used);
  }
  const Coloring& best() const { return best_; }

 private:
  bool search(std::size_t colored, int used) {
    clock_.tick();
    if (used >= best_.num_colors) return false;
    if (colored == g_.size()) {
      best_.colors = state_.colors();
      best_.num_colors = used;
      return used <= lower_;
    }
    const std::size_t v = state_.select();
    for (int c = 0; c < used; ++c) {
      if (!state_.allowed(v, c)) continue;
      state_.assign(v, c);
      const bool done = search(colored + 1, used);
      state_.unassign(v);
      if (done) return true;
      if (used >= best_.num_colors) return false;
    }
    if (used + 1 < best_.num_colors) {
      state_.assign(v, used);
      const bool done = search(colored + 1, used + 1);
      state_.unassign(v);
      if (done) return true;
    }
    return false;
  }

  const DenseGraph& g_;
  DsaturState state_;
  int lower_;
  Coloring best_;
  BudgetClock& clock_;
};

}  // namespace

Coloring dsatur_coloring(const DenseGraph& g) {
  const int max_colors = static_cast<int>(g.size()) + 1;
  DsaturState state(g, max_colors);
  Coloring out;
  for (std::size_t step = 0; step < g.size(); ++step) {
    const std::size_t v = state.select();
    int c = 0;
    while (!state.allowed(v, c)) ++c;
    state.assign(v, c);
    out.num_colors = std::max(out.num_colors, c + 1);
  }
  out.colors = state.colors();
  return out;
}

Coloring greedy_coloring(const DenseGraph& g) {
  Coloring out;
  out.colors.assign(g.size(), -1);
  std::vector<char> taken;
  for (std::size_t v = 0; v < g.size(); ++v) {
    taken.assign(static_cast<std::size_t>(out.num_colors) + 1, 0);
    for (std::size_t u : g.neighbors(v)) {
      if (u < v) taken[static_cast<std::size_t>(out.colors[u])] = 1;
    }
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    out.colors[v] = c;
    out.num_colors = std::max(out.num_colors, c + 1);
  }
  return out;
}

std::vector<std::size_t> greedy_clique(const DenseGraph& g) { return greedy_clique_impl(g); }

GreedyBounds greedy_bounds(const DenseGraph& g) {
  GreedyBounds b;
  b.clique = greedy_clique_impl(g);
  b.clique_lower = static_cast<int>(b.clique.size());
  b.coloring = dsatur_coloring(g);
  b.dsatur_upper = b.coloring.num_colors;
  return b;
}

CliqueResult max_clique(const DenseGraph& g, const SolverBudget& budget) {
  CliqueResult r;
  BudgetClock clock(budget);
  CliqueSearch search(g, clock);
  const auto seed = greedy_clique_impl(g);
  try {
    search.run(seed);
    r.exact = true;
  } catch (const BudgetExhausted&) {
    r.exact = false;
  }
  r.clique = search.best();
  if (r.clique.size() < seed.size()) r.clique = seed;
  r.upper = r.exact ? static_cast<int>(r.clique.size()) : dsatur_coloring(g).num_colors;
  r.nodes = clock.nodes();
  return r;
}

ChromaticResult chromatic_number(const DenseGraph& g, const SolverBudget& budget) {
  ChromaticResult r;
  const auto bounds = greedy_bounds(g);
  r.coloring = bounds.coloring;
  r.upper = bounds.dsatur_upper;
  r.clique = bounds.clique;
  r.lower = bounds.clique_lower;
  if (g.size() == 0) {
    r.exact = true;
    r.status = "exact";
    return r;
  }
  if (g.size() > budget.vertex_cap) {
    r.status = "vertex-cap";
    return r;
  }

  BudgetClock clock(budget);
  try {
    CliqueSearch cs(g, clock);
    cs.run(r.clique);
    r.clique = cs.best();
    r.lower = static_cast<int>(r.clique.size());
    if (r.lower < r.upper) {
      ColoringSearch search(g, r.lower, r.coloring, clock);
      try {
        search.run(r.clique);
      } catch (const BudgetExhausted&) {
        r.coloring = search.best();
        r.upper = r.coloring.num_colors;
        throw;
      }
      r.coloring = search.best();
      r.upper = r.coloring.num_colors;
      // An exhausted search proves that no (upper - 1)-coloring exists.
      r.lower = r.upper;
    }
    r.exact = true;
    r.status = "exact";
  } catch (const BudgetExhausted&) {
    r.exact = r.lower == r.upper;
    r.status = r.exact ? "exact" : "budget";
  }
  r.nodes = clock.nodes();
  return r;
}

IndependenceResult independence_number(const DenseGraph& g, const SolverBudget& budget) {
  IndependenceResult r;
  if (g.size() > budget.vertex_cap) {
    const auto c = greedy_clique_impl(g.complement());
    r.set = c;
    r.lower = static_cast<int>(c.size());
    r.upper = static_cast<int>(g.size());
    r.status = "vertex-cap";
    return r;
  }
  const auto comp = g.complement();
  const auto c = max_clique(comp, budget);
  r.set = c.clique;
  std::sort(r.set.begin(), r.set.end());
  r.lower = static_cast<int>(c.clique.size());
  r.upper = c.upper;
  r.exact = c.exact;
  r.status = c.exact ? "exact" : "budget";
  r.nodes = c.nodes;
  return r;
}

}  // namespace chroma
