#pragma once

// Materialized undirected graphs as bitset adjacency rows, colorings and
// vertex-set certificates, and the DIMACS / CNF interchange formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chroma {

/// Upper limit on the vertex count of a materialized graph.
inline constexpr std::size_t kMaxMaterializedVertices = std::size_t{1} << 16;

class DenseGraph {
 public:
  DenseGraph() = default;
  explicit DenseGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  /// Loops are ignored.
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(std::size_t v) const {
    return {rows_.data() + v * words_, words_};
  }

  std::size_t degree(std::size_t v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::size_t> neighbors(std::size_t v) const;

  DenseGraph complement() const;
  DenseGraph induced(std::span<const std::size_t> vertices) const;

  friend bool operator==(const DenseGraph&, const DenseGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

struct Coloring {
  std::vector<int> colors;  // colors[v] in [0, num_colors)
  int num_colors = 0;

  /// Recomputes num_colors as the number of distinct ids.
  void recount();
};

/// First monochromatic edge, if any.
std::optional<std::pair<std::size_t, std::size_t>> find_conflict(const DenseGraph& g, const Coloring& c);
inline bool is_proper(const DenseGraph& g, const Coloring& c) { return !find_conflict(g, c).has_value(); }

bool is_independent(const DenseGraph& g, std::span<const std::size_t> vertices);
bool is_clique(const DenseGraph& g, std::span<const std::size_t> vertices);

DenseGraph complete_graph(std::size_t n);
DenseGraph cycle_graph(std::size_t n);
DenseGraph petersen_graph();

/// DIMACS edge format ("p edge n m", "e u v", 1-based).
void write_dimacs(std::ostream& os, const DenseGraph& g, const std::string& comment = {});
DenseGraph read_dimacs(std::istream& is);

/// DIMACS CNF asserting that g is properly colorable with `colors` colors.
/// Variable x(v, c) = v * colors + c + 1.
void write_coloring_cnf(std::ostream& os, const DenseGraph& g, int colors);

}  // namespace chroma
