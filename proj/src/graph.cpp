#include "chroma/graph.hpp"

#include "chroma/errors.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace chroma {

DenseGraph::DenseGraph(std::size_t n) : n_(n), words_((n + 63) / 64) {
  if (n > kMaxMaterializedVertices) throw CapExceeded("graph exceeds the materialization cap of 2^16 vertices");
  rows_.assign(n_ * words_, 0);
}

void DenseGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("edge endpoint outside the graph");
  if (u == v) return;
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
}

std::size_t DenseGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (auto w : row(v)) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t DenseGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> DenseGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> DenseGraph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  const auto r = row(v);
  for (std::size_t w = 0; w < r.size(); ++w) {
    std::uint64_t bits = r[w];
    while (bits) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

DenseGraph DenseGraph::complement() const {
  DenseGraph c(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (!adjacent(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

DenseGraph DenseGraph::induced(std::span<const std::size_t> vertices) const {
  DenseGraph h(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) h.add_edge(i, j);
    }
  }
  return h;
}

void Coloring::recount() {
  std::set<int> ids(colors.begin(), colors.end());
  num_colors = static_cast<int>(ids.size());
}

std::optional<std::pair<std::size_t, std::size_t>> find_conflict(const DenseGraph& g, const Coloring& c) {
  if (c.colors.size() != g.size()) throw std::invalid_argument("coloring size does not match the graph");
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (c.colors[u] < 0) return std::make_pair(u, u);
    for (std::size_t v : g.neighbors(u)) {
      if (v > u && c.colors[u] == c.colors[v]) return std::make_pair(u, v);
    }
  }
  return std::nullopt;
}

bool is_independent(const DenseGraph& g, std::span<const std::size_t> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

bool is_clique(const DenseGraph& g, std::span<const std::size_t> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

DenseGraph complete_graph(std::size_t n) {
  DenseGraph g(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

DenseGraph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  DenseGraph g(n);
  for (std::size_t v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

DenseGraph petersen_graph() {
  DenseGraph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);
  }
  return g;
}

void write_dimacs(std::ostream& os, const DenseGraph& g, const std::string& comment) {
  if (!comment.empty()) {
    std::istringstream lines(comment);
    std::string line;
    while (std::getline(lines, line)) os << "c " << line << '\n';
  }
  const auto es = g.edges();
  os << "p edge " << g.size() << ' ' << es.size() << '\n';
  for (const auto& [u, v] : es) os << "e " << u + 1 << ' ' << v + 1 << '\n';
}

DenseGraph read_dimacs(std::istream& is) {
  std::string line;
  std::optional<DenseGraph> g;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    char tag = 0;
    ls >> tag;
    if (tag == 'p') {
      std::string kind;
      std::size_t n = 0, m = 0;
      if (!(ls >> kind >> n >> m) || (kind != "edge" && kind != "col")) {
        throw ParseError("bad DIMACS problem line " + std::to_string(line_no));
      }
      g.emplace(n);
    } else if (tag == 'e') {
      std::size_t u = 0, v = 0;
      if (!g || !(ls >> u >> v) || u == 0 || v == 0 || u > g->size() || v > g->size()) {
        throw ParseError("bad DIMACS edge line " + std::to_string(line_no));
      }
      g->add_edge(u - 1, v - 1);
    } else {
      throw ParseError("unknown DIMACS line " + std::to_string(line_no));
    }
  }
  if (!g) throw ParseError("DIMACS input has no problem line");
  return std::move(*g);
}

void write_coloring_cnf(std::ostream& os, const DenseGraph& g, int colors) {
  if (colors < 1) throw std::invalid_argument("CNF export needs at least one color");
  const auto es = g.edges();
  const std::size_t n = g.size();
  const std::size_t c = static_cast<std::size_t>(colors);
  const std::size_t at_least_one = n;
  const std::size_t at_most_one = n * c * (c - 1) / 2;
  const std::size_t edge_clauses = es.size() * c;
  auto var = [&](std::size_t v, std::size_t k) { return v * c + k + 1; };
  os << "c " << colors << "-colorability of a graph with " << n << " vertices\n";
  os << "p cnf " << n * c << ' ' << at_least_one + at_most_one + edge_clauses << '\n';
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < c; ++k) os << var(v, k) << ' ';
    os << "0\n";
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = a + 1; b < c; ++b) os << '-' << var(v, a) << " -" << var(v, b) << " 0\n";
    }
  }
  for (const auto& [u, v] : es) {
    for (std::size_t k = 0; k < c; ++k) os << '-' << var(u, k) << " -" << var(v, k) << " 0\n";
  }
}

}  // namespace chroma
