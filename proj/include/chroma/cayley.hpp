#pragma once

// Undirected Cayley graphs Cay(G, A): vertices are the elements of G and u, v
// are adjacent iff v - u lies in A or -A. Zero is removed from the
// connection set, so there are no loops.
//
// A view can be explicit (the connection set is an ElementSet) or implicit
// (membership is a predicate, for groups too large to materialize).

#include "chroma/graph.hpp"
#include "chroma/group.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace chroma {

class CayleyView {
 public:
  using Predicate = std::function<bool(Index)>;

  /// Explicit mode. A zero in A is stripped and reported by stripped_zero().
  explicit CayleyView(const ElementSet& connection);
  /// Implicit mode over an arbitrary group; `member` decides membership in A.
  CayleyView(GroupSpec group, Predicate member);

  const GroupSpec& group() const { return group_; }
  Index order() const { return group_.order(); }
  bool explicit_mode() const { return symmetric_.has_value(); }
  bool stripped_zero() const { return stripped_zero_; }

  /// A with zero removed (explicit mode only).
  const ElementSet& connection() const;
  /// A u (-A) minus zero (explicit mode only).
  const ElementSet& symmetric_connection() const;

  /// Membership of d in A u (-A) minus zero.
  bool in_symmetric(Index d) const;
  bool adjacent(Index u, Index v) const { return u != v && in_symmetric(group_.sub(v, u)); }

  /// Common degree of every vertex (explicit mode only).
  std::size_t degree() const;
  std::vector<Index> neighbors(Index u) const;

  /// Bitset rows; throws CapExceeded above `cap` vertices.
  DenseGraph materialize(std::size_t cap = kMaxMaterializedVertices) const;
  /// Subgraph induced on the given vertices (in that order).
  DenseGraph induced(std::span<const Index> vertices) const;

 private:
  GroupSpec group_;
  std::optional<ElementSet> connection_;
  std::optional<ElementSet> symmetric_;
  Predicate member_;
  bool stripped_zero_ = false;
};

CayleyView build_cayley(const ElementSet& a);

/// Checks properness against the adjacency oracle directly (no materialized
/// graph is involved). colors[v] is indexed by group index.
bool validate_coloring(const CayleyView& g, std::span<const int> colors);

/// True iff no two listed vertices are adjacent (and none repeats).
bool validate_independent(const CayleyView& g, std::span<const Index> vertices);

}  // namespace chroma
