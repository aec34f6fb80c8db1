#include "chroma/group.hpp"

#include "chroma/errors.hpp"
#include "chroma/exact.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace chroma {

std::ostream& operator<<(std::ostream& os, const GroupElement& x) {
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os << ')';
}

// --- GroupSpec ------------------------------------------------------------

GroupSpec::GroupSpec(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw std::invalid_argument("group needs at least one factor");
  unsigned __int128 order = 1;
  for (auto n : moduli_) {
    if (n < 2) throw std::invalid_argument("group modulus must be >= 2, got " + std::to_string(n));
    order *= static_cast<unsigned>(n);
    if (order > std::numeric_limits<Index>::max() / 2) {
      throw CapExceeded("group order overflows the index type");
    }
  }
  order_ = static_cast<Index>(order);
  strides_.assign(moduli_.size(), 1);
  for (std::size_t i = moduli_.size() - 1; i-- > 0;) {
    strides_[i] = strides_[i + 1] * static_cast<Index>(moduli_[i + 1]);
  }
}

GroupSpec GroupSpec::power(std::int64_t n, int exponent) {
  if (exponent < 1) throw std::invalid_argument("group power exponent must be >= 1");
  return GroupSpec(std::vector<std::int64_t>(static_cast<std::size_t>(exponent), n));
}

GroupSpec make_group(std::vector<std::int64_t> moduli) { return GroupSpec(std::move(moduli)); }

GroupElement GroupSpec::element(std::vector<std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw std::invalid_argument("element has " + std::to_string(coords.size()) +
                                " coordinates, group has rank " + std::to_string(rank()));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod(coords[i], moduli_[i]);
  return GroupElement(std::move(coords));
}

bool GroupSpec::owns(const GroupElement& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] < 0 || x[i] >= moduli_[i]) return false;
  }
  return true;
}

void GroupSpec::check_owned(const GroupElement& x) const {
  if (x.size() != rank()) throw std::invalid_argument("element dimension does not match group rank");
}

Index GroupSpec::index_of(const GroupElement& x) const {
  check_owned(x);
  Index idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx += static_cast<Index>(mod(x[i], moduli_[i])) * strides_[i];
  }
  return idx;
}

GroupElement GroupSpec::element_at(Index idx) const {
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    const auto n = static_cast<Index>(moduli_[i]);
    c[i] = static_cast<std::int64_t>(idx % n);
    idx /= n;
  }
  return GroupElement(std::move(c));
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
  check_owned(a);
  check_owned(b);
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < rank(); ++i) c[i] = mod(a[i] + b[i], moduli_[i]);
  return GroupElement(std::move(c));
}

GroupElement GroupSpec::neg(const GroupElement& a) const {
  check_owned(a);
  std::vector<std::int64_t> c(rank());
  for (std::size_t i = 0; i < rank(); ++i) c[i] = mod(-a[i], moduli_[i]);
  return GroupElement(std::move(c));
}

GroupElement GroupSpec::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, neg(b));
}

GroupElement GroupSpec::scale(std::int64_t c, const GroupElement& a) const {
  check_owned(a);
  std::vector<std::int64_t> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) out[i] = mulmod(mod(c, moduli_[i]), a[i], moduli_[i]);
  return GroupElement(std::move(out));
}

Index GroupSpec::add(Index a, Index b) const {
  if (is_cyclic()) {
    const Index s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  Index out = 0;
  for (std::size_t i = rank(); i-- > 0;) {
    const auto n = static_cast<Index>(moduli_[i]);
    Index d = a % n + b % n;
    if (d >= n) d -= n;
    out += d * strides_[i];
    a /= n;
    b /= n;
  }
  return out;
}

Index GroupSpec::neg(Index a) const {
  if (is_cyclic()) return a == 0 ? 0 : order_ - a;
  Index out = 0;
  for (std::size_t i = rank(); i-- > 0;) {
    const auto n = static_cast<Index>(moduli_[i]);
    const Index d = a % n;
    out += (d == 0 ? 0 : n - d) * strides_[i];
    a /= n;
  }
  return out;
}

Index GroupSpec::sub(Index a, Index b) const { return add(a, neg(b)); }

Index GroupSpec::scale(std::int64_t c, Index a) const {
  if (is_cyclic()) {
    const auto n = static_cast<std::int64_t>(order_);
    return static_cast<Index>(mulmod(c, static_cast<std::int64_t>(a), n));
  }
  Index out = 0;
  for (std::size_t i = rank(); i-- > 0;) {
    const auto n = moduli_[i];
    const auto d = static_cast<std::int64_t>(a % static_cast<Index>(n));
    out += static_cast<Index>(mulmod(c, d, n)) * strides_[i];
    a /= static_cast<Index>(n);
  }
  return out;
}

std::string GroupSpec::literal() const {
  if (moduli_.empty()) return "Z()";
  if (std::all_of(moduli_.begin(), moduli_.end(), [&](auto n) { return n == moduli_[0]; })) {
    std::string s = "Z(" + std::to_string(moduli_[0]) + ")";
    if (rank() > 1) s += "^" + std::to_string(rank());
    return s;
  }
  std::string s;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) s += "x";
    s += "Z(" + std::to_string(moduli_[i]) + ")";
  }
  return s;
}

// --- literals ---------------------------------------------------------------

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view context) {
  if (s.empty()) throw ParseError("missing integer in '" + std::string(context) + "'");
  std::int64_t v = 0;
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw ParseError("missing digits in '" + std::string(context) + "'");
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError("bad integer '" + std::string(s) + "' in '" + std::string(context) + "'");
    }
    if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw ParseError("integer overflow");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

std::vector<std::int64_t> parse_int_list(std::string_view body, std::string_view context) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const auto piece = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    out.push_back(parse_int(piece, context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

GroupLiteral parse_group_literal(std::string_view text) {
  const std::string s = strip(text);
  GroupLiteral lit;

  if (s.rfind("Zm(", 0) == 0) {
    const auto close = s.find(')');
    if (close == std::string::npos) throw ParseError("unterminated group literal '" + s + "'");
    const std::int64_t m = parse_int(std::string_view(s).substr(3, close - 3), s);
    lit.group = GroupSpec::cyclic(m);
    std::string rest = s.substr(close + 1);
    if (!rest.empty()) {
      if (rest.front() != '[' || rest.back() != ']') throw ParseError("expected [primes] after '" + s.substr(0, close + 1) + "'");
      lit.primes = parse_int_list(std::string_view(rest).substr(1, rest.size() - 2), s);
    }
    return lit;
  }

  std::vector<std::int64_t> moduli;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s.compare(pos, 2, "Z(") != 0) throw ParseError("expected 'Z(' in group literal '" + s + "'");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw ParseError("unterminated group literal '" + s + "'");
    const std::int64_t n = parse_int(std::string_view(s).substr(pos + 2, close - pos - 2), s);
    pos = close + 1;
    std::int64_t reps = 1;
    if (pos < s.size() && s[pos] == '^') {
      std::size_t end = pos + 1;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      reps = parse_int(std::string_view(s).substr(pos + 1, end - pos - 1), s);
      if (reps < 1 || reps > 64) throw ParseError("group exponent out of range in '" + s + "'");
      pos = end;
    }
    for (std::int64_t r = 0; r < reps; ++r) moduli.push_back(n);
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != '*') throw ParseError("expected 'x' between factors in '" + s + "'");
      ++pos;
    }
  }
  if (moduli.empty()) throw ParseError("empty group literal");
  lit.group = GroupSpec(std::move(moduli));
  return lit;
}

// --- CRT ----------------------------------------------------------------------

CrtSplit::CrtSplit(std::int64_t m, std::vector<std::int64_t> primes)
    : m_(m), primes_(std::move(primes)) {
  if (primes_.empty()) throw std::invalid_argument("crt_split: empty prime list");
  std::vector<std::int64_t> sorted = primes_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("crt_split: primes are not distinct");
  }
  __int128 product = 1;
  for (auto p : primes_) {
    if (!is_prime(p)) throw std::invalid_argument("crt_split: " + std::to_string(p) + " is not prime");
    product *= p;
    if (product > m) break;
  }
  if (product != m) throw std::invalid_argument("crt_split: product of primes differs from m");
  cyclic_ = GroupSpec::cyclic(m);
  product_ = GroupSpec(primes_);
  basis_.resize(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::int64_t rest = m / primes_[i];
    basis_[i] = mulmod(rest, modinv(rest % primes_[i], primes_[i]), m);
  }
}

CrtSplit crt_split(std::int64_t m, std::vector<std::int64_t> primes) {
  return CrtSplit(m, std::move(primes));
}

GroupElement CrtSplit::to_product(std::int64_t y) const {
  std::vector<std::int64_t> c(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) c[i] = mod(y, primes_[i]);
  return GroupElement(std::move(c));
}

std::int64_t CrtSplit::to_cyclic(const GroupElement& v) const {
  if (v.size() != primes_.size()) throw std::invalid_argument("crt: dimension mismatch");
  std::int64_t y = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    y = mod(y + mulmod(basis_[i], v[i], m_), m_);
  }
  return y;
}

Index CrtSplit::to_product_index(Index y) const {
  return product_.index_of(to_product(static_cast<std::int64_t>(y)));
}

Index CrtSplit::to_cyclic_index(Index v) const {
  return static_cast<Index>(to_cyclic(product_.element_at(v)));
}

// --- ElementSet ------------------------------------------------------------------

ElementSet::ElementSet(GroupSpec group, Index cap) : group_(std::move(group)) {
  if (group_.order() > cap) {
    throw CapExceeded("group " + group_.literal() + " of order " + std::to_string(group_.order()) +
                      " exceeds the materialization cap " + std::to_string(cap));
  }
  words_.assign((group_.order() + 63) / 64, 0);
}

ElementSet ElementSet::from_indices(GroupSpec group, std::span<const Index> members) {
  ElementSet s(std::move(group));
  for (Index i : members) {
    if (i >= s.universe()) throw std::out_of_range("element index outside the group");
    s.insert(i);
  }
  return s;
}

ElementSet ElementSet::from_elements(GroupSpec group, std::span<const GroupElement> members) {
  ElementSet s(std::move(group));
  for (const auto& x : members) s.insert(s.group().index_of(x));
  return s;
}

std::size_t ElementSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Index> ElementSet::members() const {
  std::vector<Index> out;
  out.reserve(size());
  for_each([&](Index i) { out.push_back(i); });
  return out;
}

ElementSet ElementSet::negated() const {
  ElementSet out(group_);
  for_each([&](Index i) { out.insert(group_.neg(i)); });
  return out;
}

ElementSet ElementSet::scaled(std::int64_t c) const {
  ElementSet out(group_);
  for_each([&](Index i) { out.insert(group_.scale(c, i)); });
  return out;
}

void ElementSet::check_same_group(const ElementSet& other) const {
  if (!(group_ == other.group_)) throw std::invalid_argument("element sets live in different groups");
}

ElementSet ElementSet::united(const ElementSet& other) const {
  check_same_group(other);
  ElementSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] |= other.words_[w];
  return out;
}

ElementSet ElementSet::intersected(const ElementSet& other) const {
  check_same_group(other);
  ElementSet out = *this;
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= other.words_[w];
  return out;
}

std::size_t ElementSet::intersection_size(const ElementSet& other) const {
  check_same_group(other);
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    n += static_cast<std::size_t>(std::popcount(words_[w] & other.words_[w]));
  }
  return n;
}

ElementSet sumset(const ElementSet& a, const ElementSet& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("sumset of sets in different groups");
  const GroupSpec& g = a.group();
  ElementSet out(g);
  const auto bm = b.members();
  a.for_each([&](Index x) {
    for (Index y : bm) out.insert(g.add(x, y));
  });
  return out;
}

// --- serialization -------------------------------------------------------------

void write_rle(std::ostream& os, const ElementSet& set) {
  os << "chroma-set 1\n";
  os << "group " << set.group().literal() << "\n";
  os << "size " << set.size() << "\n";
  os << "rle";
  bool current = false;
  Index run = 0;
  for (Index i = 0; i < set.universe(); ++i) {
    if (set.contains(i) != current) {
      os << ' ' << run;
      run = 0;
      current = !current;
    }
    ++run;
  }
  os << ' ' << run << "\n";
}

ElementSet read_rle(std::istream& is) {
  std::string tag;
  int version = 0;
  if (!(is >> tag >> version) || tag != "chroma-set" || version != 1) {
    throw ParseError("not a chroma-set v1 stream");
  }
  std::string key, literal;
  if (!(is >> key >> literal) || key != "group") throw ParseError("chroma-set: missing group header");
  std::size_t declared = 0;
  if (!(is >> key >> declared) || key != "size") throw ParseError("chroma-set: missing size header");
  if (!(is >> key) || key != "rle") throw ParseError("chroma-set: missing rle line");
  ElementSet set(parse_group_literal(literal).group);
  Index pos = 0;
  bool ones = false;
  Index run = 0;
  while (is >> run) {
    if (run > set.universe() - pos) throw ParseError("chroma-set: runs overflow the group order");
    if (ones) {
      for (Index i = 0; i < run; ++i) set.insert(pos + i);
    }
    pos += run;
    ones = !ones;
  }
  if (pos != set.universe()) throw ParseError("chroma-set: runs do not cover the group");
  if (set.size() != declared) throw ParseError("chroma-set: size header does not match the bitmap");
  return set;
}

void save_set(const std::string& path, const ElementSet& set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_rle(out, set);
}

ElementSet load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_rle(in);
}

}  // namespace chroma
