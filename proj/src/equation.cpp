#include "chroma/equation.hpp"

#include "chroma/errors.hpp"
#include "chroma/exact.hpp"
#include "chroma/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace chroma {

// --- Equation -----------------------------------------------------------------

Equation::Equation(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 3) throw std::invalid_argument("equation needs k >= 3 coefficients");
  for (auto c : coeffs_) {
    if (c == 0) throw std::invalid_argument("equation coefficients must be nonzero");
  }
}

std::int64_t Equation::sum() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), std::int64_t{0}); }

std::int64_t Equation::abs_sum() const {
  std::int64_t d = 0;
  for (auto c : coeffs_) d += c < 0 ? -c : c;
  return d;
}

std::int64_t Equation::max_abs() const {
  std::int64_t m = 0;
  for (auto c : coeffs_) m = std::max(m, c < 0 ? -c : c);
  return m;
}

std::string Equation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto c = coeffs_[i];
    const auto a = c < 0 ? -c : c;
    if (i == 0) {
      os << (c < 0 ? "-" : "");
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os << a << '*';
    os << 'x' << (i + 1);
  }
  os << " = 0";
  return os.str();
}

std::string Equation::to_array_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) os << (i ? "," : "") << coeffs_[i];
  os << ']';
  return os.str();
}

Equation Equation::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty equation literal");

  auto read_int = [&](std::size_t& i) {
    std::int64_t v = 0;
    const std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (v > 1'000'000'000'000LL) throw ParseError("coefficient too large in '" + s + "'");
      v = v * 10 + (s[i++] - '0');
    }
    if (i == start) throw ParseError("expected digits at position " + std::to_string(start) + " in '" + s + "'");
    return v;
  };

  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated coefficient array '" + s + "'");
    std::vector<std::int64_t> coeffs;
    std::size_t i = 1;
    while (i < s.size() - 1) {
      bool neg = false;
      if (s[i] == '-' || s[i] == '+') neg = s[i++] == '-';
      const auto v = read_int(i);
      coeffs.push_back(neg ? -v : v);
      if (i < s.size() - 1) {
        if (s[i] != ',') throw ParseError("expected ',' in '" + s + "'");
        ++i;
      }
    }
    return Equation(std::move(coeffs));
  }

  const auto eq_pos = s.find('=');
  if (eq_pos == std::string::npos || s.substr(eq_pos + 1) != "0") {
    throw ParseError("equation literal must end with '= 0': '" + s + "'");
  }
  std::map<int, std::int64_t> by_var;
  std::size_t i = 0;
  const std::size_t end = eq_pos;
  while (i < end) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw ParseError("expected '+' or '-' between terms in '" + s + "'");
    }
    std::int64_t coeff = 1;
    if (i < end && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coeff = read_int(i);
      if (i < end && s[i] == '*') ++i;
    }
    if (i >= end || s[i] != 'x') throw ParseError("expected variable 'x<i>' in '" + s + "'");
    ++i;
    const auto var = read_int(i);
    if (var < 1 || var > kMaxClassifyArity * 4) throw ParseError("variable index out of range in '" + s + "'");
    if (!by_var.emplace(static_cast<int>(var), neg ? -coeff : coeff).second) {
      throw ParseError("variable x" + std::to_string(var) + " appears twice in '" + s + "'");
    }
  }
  std::vector<std::int64_t> coeffs;
  int expected = 1;
  for (const auto& [var, c] : by_var) {
    if (var != expected++) throw ParseError("variables must be x1..xk without gaps in '" + s + "'");
    coeffs.push_back(c);
  }
  return Equation(std::move(coeffs));
}

// --- classification -----------------------------------------------------------------

std::string region_name(const EquationClass& cls) {
  if (cls.roth_degenerate) return "roth";
  if (cls.chi_vanishing) return "chi_vanishing";
  if (cls.rt_degenerate) return "rt";
  return "none";
}

EquationClass classify(const Equation& eq) {
  const int k = eq.size();
  if (k > kMaxClassifyArity) throw CapExceeded("classify refuses k > 30 (exponential subset scan)");
  EquationClass cls;
  cls.roth_degenerate = eq.sum() == 0;

  std::vector<int> chosen;
  std::vector<int> first_any;
  bool found_big = false;
  // Preorder DFS over sorted index lists visits subsets in lexicographic order.
  std::function<void(int, std::int64_t)> dfs = [&](int start, std::int64_t partial) {
    for (int i = start; i < k && !found_big; ++i) {
      chosen.push_back(i);
      const std::int64_t s = partial + eq[i];
      if (s == 0) {
        if (first_any.empty()) first_any = chosen;
        if (chosen.size() >= 3) {
          found_big = true;
          cls.witness_subset = chosen;
        }
      }
      if (!found_big) dfs(i + 1, s);
      chosen.pop_back();
    }
  };
  dfs(0, 0);
  cls.chi_vanishing = found_big;
  cls.rt_degenerate = !first_any.empty();
  if (!found_big) cls.witness_subset = first_any;
  return cls;
}

// --- solution search --------------------------------------------------------------------

namespace {

void require_cyclic(const ElementSet& a) {
  if (!a.group().is_cyclic()) throw std::invalid_argument("solution search needs a cyclic group");
}

std::vector<std::int64_t> reduced_coeffs(std::span<const std::int64_t> coeffs, std::int64_t n) {
  std::vector<std::int64_t> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = mod(coeffs[i], n);
  return out;
}

bool contains_index(std::span<const Index> xs, Index v) {
  return std::find(xs.begin(), xs.end(), v) != xs.end();
}

// Enumerates ordered tuples of pairwise distinct members. visit returns true to stop.
bool for_each_injective(std::span<const Index> members, std::size_t len, std::vector<Index>& tuple,
                        const std::function<bool(std::span<const Index>)>& visit) {
  if (tuple.size() == len) return visit(tuple);
  for (Index x : members) {
    if (contains_index(tuple, x)) continue;
    tuple.push_back(x);
    const bool stop = for_each_injective(members, len, tuple, visit);
    tuple.pop_back();
    if (stop) return true;
  }
  return false;
}

std::int64_t linear_value(std::span<const std::int64_t> c, std::span<const Index> xs, std::size_t offset,
                          std::int64_t n) {
  std::int64_t v = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v = mod(v + mulmod(c[offset + i], static_cast<std::int64_t>(xs[i]), n), n);
  }
  return v;
}

}  // namespace

SolutionSearch find_injective_solution(const Equation& eq, const ElementSet& a, const SearchBudget& budget) {
  require_cyclic(a);
  const auto n = static_cast<std::int64_t>(a.universe());
  const auto c = reduced_coeffs(eq.coeffs(), n);
  const auto members = a.members();
  const std::size_t k = c.size();
  SolutionSearch result;
  if (members.size() < k) {
    result.method = "cardinality";
    return result;
  }

  const double size = static_cast<double>(members.size());
  std::vector<Index> tuple;
  if (std::pow(size, static_cast<double>(k)) <= budget.plain_tuples) {
    result.method = "plain";
    for_each_injective(members, k, tuple, [&](std::span<const Index> xs) {
      if (linear_value(c, xs, 0, n) != 0) return false;
      result.solution_free = false;
      result.witness = std::vector<Index>(xs.begin(), xs.end());
      return true;
    });
    return result;
  }

  result.method = "meet-in-the-middle";
  const std::size_t left = (k + 1) / 2;
  const std::size_t right = k - left;
  if (std::pow(size, static_cast<double>(right)) > budget.table_entries) {
    throw CapExceeded("meet-in-the-middle table would exceed the search budget");
  }
  // (value of the right half, offset of its tuple in `flat`)
  std::vector<std::pair<std::int64_t, std::size_t>> table;
  std::vector<Index> flat;
  for_each_injective(members, right, tuple, [&](std::span<const Index> xs) {
    table.emplace_back(linear_value(c, xs, left, n), flat.size());
    flat.insert(flat.end(), xs.begin(), xs.end());
    return false;
  });
  std::sort(table.begin(), table.end());

  for_each_injective(members, left, tuple, [&](std::span<const Index> xs) {
    const std::int64_t target = mod(-linear_value(c, xs, 0, n), n);
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(target, std::size_t{0}));
    for (; it != table.end() && it->first == target; ++it) {
      std::span<const Index> rhs(flat.data() + it->second, right);
      bool clash = false;
      for (Index x : rhs) clash = clash || contains_index(xs, x);
      if (clash) continue;
      std::vector<Index> w(xs.begin(), xs.end());
      w.insert(w.end(), rhs.begin(), rhs.end());
      result.solution_free = false;
      result.witness = std::move(w);
      return true;
    }
    return false;
  });
  return result;
}

SolutionSearch is_solution_free(const Equation& eq, const ElementSet& a, const SearchBudget& budget) {
  require_cyclic(a);
  const auto p = static_cast<std::int64_t>(a.universe());
  if (!is_prime(p)) throw InfeasibleParams("is_solution_free: modulus " + std::to_string(p) + " is not prime");
  if (p <= eq.max_abs()) {
    throw InfeasibleParams("is_solution_free: need p > max|c_i| (p = " + std::to_string(p) + ")");
  }
  return find_injective_solution(eq, a, budget);
}

// --- counting --------------------------------------------------------------------------

namespace {

void check_work(double members, std::size_t free_coords, const CountLimits& limits) {
  if (std::pow(members, static_cast<double>(free_coords)) > limits.max_tuples) {
    throw CapExceeded("solution count would enumerate more than the configured tuple budget");
  }
}

}  // namespace

std::uint64_t count_tuples(std::span<const std::int64_t> coeffs, const ElementSet& a, Index y,
                           const CountLimits& limits) {
  require_cyclic(a);
  const auto n = static_cast<std::int64_t>(a.universe());
  const auto target = mod(static_cast<std::int64_t>(y), n);
  if (coeffs.empty()) return target == 0 ? 1 : 0;
  const auto c = reduced_coeffs(coeffs, n);
  const auto members = a.members();
  const std::size_t k = c.size();
  check_work(static_cast<double>(members.size()), k - 1, limits);

  // count_last[v] = #{x in A : c_k x = v}
  std::vector<std::uint32_t> count_last(static_cast<std::size_t>(n), 0);
  for (Index x : members) ++count_last[static_cast<std::size_t>(mulmod(c[k - 1], static_cast<std::int64_t>(x), n))];

  std::uint64_t total = 0;
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t partial) {
    if (i == k - 1) {
      total += count_last[static_cast<std::size_t>(mod(target - partial, n))];
      return;
    }
    for (Index x : members) rec(i + 1, mod(partial + mulmod(c[i], static_cast<std::int64_t>(x), n), n));
  };
  rec(0, 0);
  return total;
}

std::uint64_t count_injective_by_enumeration(const Equation& eq, const ElementSet& a, Index y,
                                             const CountLimits& limits) {
  require_cyclic(a);
  if (a.universe() > limits.max_group_order) throw CapExceeded("injective counting: group exceeds brute-force cap");
  const auto n = static_cast<std::int64_t>(a.universe());
  const auto target = mod(static_cast<std::int64_t>(y), n);
  const auto c = reduced_coeffs(eq.coeffs(), n);
  const auto members = a.members();
  const std::size_t k = c.size();
  check_work(static_cast<double>(members.size()), k - 1, limits);

  std::vector<std::vector<Index>> bucket(static_cast<std::size_t>(n));
  for (Index x : members) bucket[static_cast<std::size_t>(mulmod(c[k - 1], static_cast<std::int64_t>(x), n))].push_back(x);

  std::uint64_t total = 0;
  std::vector<Index> tuple;
  for_each_injective(members, k - 1, tuple, [&](std::span<const Index> xs) {
    const auto need = mod(target - linear_value(c, xs, 0, n), n);
    for (Index x : bucket[static_cast<std::size_t>(need)]) {
      if (!contains_index(xs, x)) ++total;
    }
    return false;
  });
  return total;
}

std::uint64_t count_injective_by_partitions(const Equation& eq, const ElementSet& a, Index y,
                                            const CountLimits& limits) {
  require_cyclic(a);
  if (a.universe() > limits.max_group_order) throw CapExceeded("injective counting: group exceeds brute-force cap");
  const int k = eq.size();
  if (k > 5) throw CapExceeded("partition formula is limited to k <= 5");
  const auto n = static_cast<std::int64_t>(a.universe());
  const auto size_a = static_cast<std::int64_t>(a.size());

  // Restricted growth strings enumerate set partitions of {0..k-1}.
  std::vector<int> block(static_cast<std::size_t>(k), 0);
  __int128 total = 0;
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == k) {
      std::vector<std::int64_t> merged(static_cast<std::size_t>(blocks), 0);
      std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
      for (int j = 0; j < k; ++j) {
        merged[static_cast<std::size_t>(block[j])] += eq[static_cast<std::size_t>(j)];
        ++sizes[static_cast<std::size_t>(block[j])];
      }
      __int128 mu = 1;
      for (int s : sizes) {
        __int128 f = 1;
        for (int t = 2; t < s; ++t) f *= t;
        mu *= (s % 2 == 1 ? 1 : -1) * f;  // (-1)^(s-1) (s-1)!
      }
      std::vector<std::int64_t> live;
      __int128 free_factor = 1;
      for (auto d : merged) {
        if (mod(d, n) == 0) {
          free_factor *= size_a;
        } else {
          live.push_back(d);
        }
      }
      const __int128 tuples = free_factor * count_tuples(live, a, y, limits);
      total += mu * tuples;
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      block[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  if (total < 0) throw NumericError("partition formula produced a negative count");
  return static_cast<std::uint64_t>(total);
}

std::uint64_t count_solutions_brute(const Equation& eq, const ElementSet& a, Index y, bool injective,
                                    const CountLimits& limits) {
  if (!injective) return count_tuples(eq.coeffs(), a, y, limits);
  return eq.size() <= 5 ? count_injective_by_partitions(eq, a, y, limits)
                        : count_injective_by_enumeration(eq, a, y, limits);
}

std::vector<std::uint64_t> count_solutions_dft_all(const Equation& eq, const ElementSet& a) {
  require_cyclic(a);
  const auto p = static_cast<std::int64_t>(a.universe());
  if (!is_prime(p)) throw InfeasibleParams("count_solutions_dft needs a prime modulus");
  const auto t = indicator_transform(a);
  const auto c = reduced_coeffs(eq.coeffs(), p);
  std::vector<Complex> g(static_cast<std::size_t>(p));
  for (std::int64_t xi = 0; xi < p; ++xi) {
    Complex prod = 1.0;
    for (auto ci : c) prod *= t[static_cast<std::size_t>(mulmod(ci, xi, p))];
    g[static_cast<std::size_t>(xi)] = prod;
  }
  // sum_xi g(xi) e_p(y xi) is the inverse transform of g at y.
  const auto s = inverse_dft(g);
  const double scale = std::pow(static_cast<double>(p), eq.size() - 1);
  const double tolerance = 1e-6 * scale;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(p));
  for (std::size_t y = 0; y < out.size(); ++y) {
    const Complex v = s[y] * scale;
    const double rounded = std::nearbyint(v.real());
    const double residue = std::hypot(v.real() - rounded, v.imag());
    if (residue > tolerance || rounded < 0) {
      throw NumericError("DFT solution count not within tolerance of an integer at y = " + std::to_string(y));
    }
    out[y] = static_cast<std::uint64_t>(rounded);
  }
  return out;
}

std::uint64_t count_solutions_dft(const Equation& eq, const ElementSet& a, Index y) {
  const auto all = count_solutions_dft_all(eq, a);
  if (y >= all.size()) throw std::out_of_range("y outside the group");
  return all[y];
}

}  // namespace chroma
