#pragma once

// Finite abelian groups Z_{n_1} x ... x Z_{n_r}, their elements, and dense
// membership bitmaps over them.
//
// Elements are indexed by mixed radix with the FIRST factor most significant:
//   index(x) = x_0 * (n_1 ... n_{r-1}) + ... + x_{r-2} * n_{r-1} + x_{r-1}.
// Index order therefore coincides with lexicographic order on coordinate
// vectors, and bitmaps written by one run can be read by any other.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chroma {

using Index = std::uint64_t;

/// Largest group for which an ElementSet bitmap may be allocated.
inline constexpr Index kMaterializationCap = Index{1} << 26;

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return coords_; }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& x);

class GroupSpec {
 public:
  GroupSpec() = default;
  /// Throws std::invalid_argument for an empty list or a modulus < 2 and
  /// CapExceeded when the order does not fit in an Index.
  explicit GroupSpec(std::vector<std::int64_t> moduli);

  static GroupSpec cyclic(std::int64_t n) { return GroupSpec({n}); }
  static GroupSpec power(std::int64_t n, int exponent);

  std::span<const std::int64_t> moduli() const { return moduli_; }
  std::int64_t modulus(std::size_t i) const { return moduli_[i]; }
  std::size_t rank() const { return moduli_.size(); }
  Index order() const { return order_; }
  bool is_cyclic() const { return moduli_.size() == 1; }

  /// Reduces every coordinate into range; throws on a length mismatch.
  GroupElement element(std::vector<std::int64_t> coords) const;
  GroupElement zero() const { return GroupElement(std::vector<std::int64_t>(rank(), 0)); }
  bool owns(const GroupElement& x) const;

  Index index_of(const GroupElement& x) const;
  GroupElement element_at(Index i) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  /// c * a with c an arbitrary integer, reduced per factor first.
  GroupElement scale(std::int64_t c, const GroupElement& a) const;

  Index add(Index a, Index b) const;
  Index neg(Index a) const;
  Index sub(Index a, Index b) const;
  Index scale(std::int64_t c, Index a) const;

  /// "Z(7)", "Z(3)^4", or "Z(2)xZ(3)xZ(5)".
  std::string literal() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.moduli_ == b.moduli_; }

 private:
  void check_owned(const GroupElement& x) const;

  std::vector<std::int64_t> moduli_;
  std::vector<Index> strides_;
  Index order_ = 0;
};

GroupSpec make_group(std::vector<std::int64_t> moduli);

/// Parsed group literal. "Zm(15015)[3,5,7,11,13]" yields the cyclic group
/// Z_15015 together with its prime list; the list may also be supplied out of
/// band and validated later by crt_split.
struct GroupLiteral {
  GroupSpec group;
  std::vector<std::int64_t> primes;
};

GroupLiteral parse_group_literal(std::string_view text);

/// CRT isomorphism Z_m -> Z_{p_1} x ... x Z_{p_n} for squarefree m.
class CrtSplit {
 public:
  CrtSplit(std::int64_t m, std::vector<std::int64_t> primes);

  std::int64_t m() const { return m_; }
  std::span<const std::int64_t> primes() const { return primes_; }
  const GroupSpec& cyclic() const { return cyclic_; }
  const GroupSpec& product() const { return product_; }

  GroupElement to_product(std::int64_t y) const;
  std::int64_t to_cyclic(const GroupElement& v) const;
  Index to_product_index(Index y) const;
  Index to_cyclic_index(Index v) const;

 private:
  std::int64_t m_;
  std::vector<std::int64_t> primes_;
  std::vector<std::int64_t> basis_;  // basis_[i] = 1 mod p_i, 0 mod p_j (j != i)
  GroupSpec cyclic_;
  GroupSpec product_;
};

CrtSplit crt_split(std::int64_t m, std::vector<std::int64_t> primes);

/// Dense membership bitmap over a group.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(GroupSpec group, Index cap = kMaterializationCap);

  static ElementSet from_indices(GroupSpec group, std::span<const Index> members);
  static ElementSet from_elements(GroupSpec group, std::span<const GroupElement> members);

  const GroupSpec& group() const { return group_; }
  Index universe() const { return group_.order(); }

  bool contains(Index i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool contains(const GroupElement& x) const { return contains(group_.index_of(x)); }
  void insert(Index i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void insert(const GroupElement& x) { insert(group_.index_of(x)); }
  void erase(Index i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<Index> members() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(static_cast<Index>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  /// { -a : a in this }.
  ElementSet negated() const;
  /// { c * a : a in this }.
  ElementSet scaled(std::int64_t c) const;
  ElementSet united(const ElementSet& other) const;
  ElementSet intersected(const ElementSet& other) const;
  std::size_t intersection_size(const ElementSet& other) const;
  bool disjoint(const ElementSet& other) const { return intersection_size(other) == 0; }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.group_ == b.group_ && a.words_ == b.words_;
  }

 private:
  void check_same_group(const ElementSet& other) const;

  GroupSpec group_;
  std::vector<std::uint64_t> words_;
};

/// Sumset A + B (materialized; cost |A| * |B|).
ElementSet sumset(const ElementSet& a, const ElementSet& b);

// Run-length encoded text form:
//   chroma-set 1
//   group Z(101)
//   size <members>
//   rle <zeros> <ones> <zeros> ...
// Runs alternate starting with a (possibly empty) run of non-members and sum
// to the group order.
void write_rle(std::ostream& os, const ElementSet& set);
ElementSet read_rle(std::istream& is);
void save_set(const std::string& path, const ElementSet& set);
ElementSet load_set(const std::string& path);

}  // namespace chroma
