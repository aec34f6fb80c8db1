#include "chroma/cayley.hpp"

#include "chroma/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace chroma {

CayleyView::CayleyView(const ElementSet& connection) : group_(connection.group()), connection_(connection) {
  if (connection_->contains(Index{0})) {
    connection_->erase(0);
    stripped_zero_ = true;
  }
  symmetric_ = connection_->united(connection_->negated());
}

CayleyView::CayleyView(GroupSpec group, Predicate member) : group_(std::move(group)), member_(std::move(member)) {
  if (!member_) throw std::invalid_argument("implicit Cayley view needs a membership predicate");
  stripped_zero_ = member_(0);
}

const ElementSet& CayleyView::connection() const {
  if (!connection_) throw std::logic_error("connection set not materialized in implicit mode");
  return *connection_;
}

const ElementSet& CayleyView::symmetric_connection() const {
  if (!symmetric_) throw std::logic_error("connection set not materialized in implicit mode");
  return *symmetric_;
}

bool CayleyView::in_symmetric(Index d) const {
  if (d == 0) return false;
  if (symmetric_) return symmetric_->contains(d);
  return member_(d) || member_(group_.neg(d));
}

std::size_t CayleyView::degree() const { return symmetric_connection().size(); }

std::vector<Index> CayleyView::neighbors(Index u) const {
  std::vector<Index> out;
  if (symmetric_) {
    symmetric_->for_each([&](Index d) { out.push_back(group_.add(u, d)); });
    std::sort(out.begin(), out.end());
    return out;
  }
  for (Index v = 0; v < order(); ++v) {
    if (adjacent(u, v)) out.push_back(v);
  }
  return out;
}

DenseGraph CayleyView::materialize(std::size_t cap) const {
  if (order() > cap) throw CapExceeded("Cayley graph too large to materialize");
  DenseGraph g(static_cast<std::size_t>(order()));
  if (symmetric_) {
    const auto diffs = symmetric_->members();
    for (Index u = 0; u < order(); ++u) {
      for (Index d : diffs) g.add_edge(u, group_.add(u, d));
    }
    return g;
  }
  for (Index u = 0; u < order(); ++u) {
    for (Index v = u + 1; v < order(); ++v) {
      if (adjacent(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

DenseGraph CayleyView::induced(std::span<const Index> vertices) const {
  DenseGraph g(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) g.add_edge(i, j);
    }
  }
  return g;
}

CayleyView build_cayley(const ElementSet& a) { return CayleyView(a); }

bool validate_coloring(const CayleyView& g, std::span<const int> colors) {
  if (colors.size() != g.order()) return false;
  if (g.explicit_mode()) {
    const auto diffs = g.symmetric_connection().members();
    for (Index u = 0; u < g.order(); ++u) {
      for (Index d : diffs) {
        if (colors[u] == colors[g.group().add(u, d)]) return false;
      }
    }
    return true;
  }
  for (Index u = 0; u < g.order(); ++u) {
    for (Index v = u + 1; v < g.order(); ++v) {
      if (colors[u] == colors[v] && g.adjacent(u, v)) return false;
    }
  }
  return true;
}

bool validate_independent(const CayleyView& g, std::span<const Index> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace chroma
