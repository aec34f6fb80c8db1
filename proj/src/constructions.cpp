#include "chroma/constructions.hpp"

#include "chroma/errors.hpp"
#include "chroma/gauss.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace chroma {

// --- normalization ---------------------------------------------------------------

std::vector<std::int64_t> Normalization::to_original(const std::vector<std::int64_t>& normalized_tuple) const {
  std::vector<std::int64_t> out(normalized_tuple.size());
  for (std::size_t i = 0; i < normalized_tuple.size(); ++i) out[static_cast<std::size_t>(perm[i])] = normalized_tuple[i];
  return out;
}

Normalization normalize_equation(const Equation& eq) {
  const auto cls = classify(eq);
  if (cls.chi_vanishing) {
    throw InfeasibleParams("equation " + eq.to_array_string() +
                           " has a zero-sum subset of size >= 3; dense solution-free sets have bounded chromatic number");
  }
  std::vector<std::int64_t> c(eq.coeffs().begin(), eq.coeffs().end());
  const bool negated = eq.sum() < 0;
  if (negated) {
    for (auto& v : c) v = -v;
  }
  const int k = eq.size();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (c[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(j)] != 0) continue;
      std::vector<int> perm{i, j};
      for (int t = 0; t < k; ++t) {
        if (t != i && t != j) perm.push_back(t);
      }
      std::vector<std::int64_t> out;
      for (int t : perm) out.push_back(c[static_cast<std::size_t>(t)]);
      return Normalization{Equation(std::move(out)), std::move(perm), negated};
    }
  }
  throw InfeasibleParams("equation " + eq.to_array_string() +
                         " has no pair of opposite coefficients; this construction does not apply");
}

// --- norms ------------------------------------------------------------------------

namespace {

std::int64_t checked_product(std::span<const std::int64_t> primes) {
  __int128 m = 1;
  for (auto p : primes) {
    m *= p;
    if (m > static_cast<__int128>(INT64_MAX / 64)) throw CapExceeded("product of primes overflows");
  }
  return static_cast<std::int64_t>(m);
}

}  // namespace

NormContext::NormContext(int q, std::vector<std::int64_t> primes)
    : q_(q), primes_(std::move(primes)), m_(checked_product(primes_)), crt_(m_, primes_) {
  if (!is_prime(q_)) throw InfeasibleParams("q must be prime, got " + std::to_string(q_));
}

bool NormContext::primes_large() const {
  return std::all_of(primes_.begin(), primes_.end(),
                     [&](std::int64_t p) { return p > static_cast<std::int64_t>(q_) * n(); });
}

Rational NormContext::coordinate_norm(std::size_t i, std::int64_t r, int j) const {
  const std::int64_t p = primes_[i];
  const std::int64_t y = mod(r, p);
  const Rational rising(static_cast<std::int64_t>(q_) * y, static_cast<std::int64_t>(j) * p);
  const Rational falling(static_cast<std::int64_t>(q_) * (p - y), static_cast<std::int64_t>(q_ - j) * p);
  return std::min(rising, falling);
}

Rational NormContext::norm(std::int64_t y, int j) const {
  if (j < 1 || j > q_ - 1) throw std::invalid_argument("norm index must lie in [1, q-1]");
  // Common denominator j (q - j) m keeps the sum in integer arithmetic.
  const std::int64_t ym = mod(y, m_);
  __int128 numerator = 0;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::int64_t p = primes_[i];
    const std::int64_t r = ym % p;
    const std::int64_t v = std::min(static_cast<std::int64_t>(q_ - j) * r, static_cast<std::int64_t>(j) * (p - r));
    numerator += static_cast<__int128>(q_) * v * (m_ / p);
  }
  const BigInt den = BigInt(static_cast<std::int64_t>(j) * (q_ - j)) * m_;
  // numerator <= q^2 m, well inside int64 for any m that passes checked_product.
  return Rational(BigInt(static_cast<std::int64_t>(numerator)), den);
}

std::int64_t NormContext::discretize(const GroupElement& x) const {
  if (static_cast<int>(x.size()) != n()) throw std::invalid_argument("discretize needs an element of Z_q^n");
  std::vector<std::int64_t> coords(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const std::int64_t xi = mod(x[i], q_);
    coords[i] = xi * primes_[i] / q_;
  }
  return crt_.to_cyclic(crt_.product().element(std::move(coords)));
}

// --- Z_m sets -----------------------------------------------------------------------

ConstructionParams ConstructionParams::with_default_thresholds(Equation eq, int q, std::vector<std::int64_t> primes) {
  ConstructionParams params;
  const auto norm = normalize_equation(eq);
  const auto n = static_cast<std::int64_t>(primes.size());
  const std::int64_t d = norm.eq.abs_sum();
  params.eq = std::move(eq);
  params.q = q;
  params.primes = std::move(primes);
  params.e0_deficit = Surd::linear(1, q, n);
  params.f0_threshold = Surd::linear(Rational(n, 2), -Rational(static_cast<std::int64_t>(q) * q * d), n);
  return params;
}

bool in_E0(const NormContext& ctx, const Surd& e0_threshold, std::int64_t y) {
  return geq(ctx.norm(y, 1), e0_threshold);
}

bool in_F0(const NormContext& ctx, const Equation& normalized, const Surd& f0_threshold, std::int64_t y) {
  const auto c = static_cast<int>(normalized.sum());
  const std::int64_t c1 = normalized[0];
  const std::int64_t u = mulmod(c1, y, ctx.m());
  return leq(ctx.norm(u, c), f0_threshold) && leq(ctx.norm(mod(-u, ctx.m()), c), f0_threshold);
}

namespace {

Predicate predicate(std::string name, bool holds, std::string detail = {}) {
  return Predicate{std::move(name), holds, std::move(detail)};
}

Surd norm_bound_surd(const NormContext& ctx, std::int64_t d, const Surd& beta) {
  const Rational scale(static_cast<std::int64_t>(ctx.q() - 1) * d);
  return Surd{Rational(ctx.n()) - scale * beta.a, -scale * beta.b, beta.radicand};
}

}  // namespace

ProductConstruction build_product_construction(const ConstructionParams& params) {
  auto normalization = normalize_equation(params.eq);
  NormContext ctx(params.q, params.primes);
  const auto& eq = normalization.eq;
  const std::int64_t c_sum = eq.sum();
  const std::int64_t d = eq.abs_sum();
  const int q = params.q;
  const int n = ctx.n();
  if (c_sum > q - 1) {
    throw InfeasibleParams("the norm index C = " + std::to_string(c_sum) + " needs q > C (q = " + std::to_string(q) + ")");
  }
  const Surd e0_threshold = Surd::constant(Rational(n)) - params.e0_deficit;

  const GroupSpec zm = ctx.crt().cyclic();
  ElementSet e0(zm);
  ElementSet f0(zm);
  for (std::int64_t y = 0; y < ctx.m(); ++y) {
    if (in_E0(ctx, e0_threshold, y)) e0.insert(static_cast<Index>(y));
    if (in_F0(ctx, eq, params.f0_threshold, y)) f0.insert(static_cast<Index>(y));
  }

  std::vector<Predicate> preds;
  const auto qn = static_cast<std::int64_t>(q) * n;
  preds.push_back(predicate("q > D", q > d, "q = " + std::to_string(q) + ", D = " + std::to_string(d)));
  preds.push_back(predicate("D > C", d > c_sum, "C = " + std::to_string(c_sum)));
  preds.push_back(predicate("C >= 1", c_sum >= 1));
  preds.push_back(predicate("q > C", q > c_sum));
  preds.push_back(predicate("C/q < 1/3", 3 * c_sum < q));
  preds.push_back(predicate("p_i > q n", ctx.primes_large(), "q n = " + std::to_string(qn)));
  preds.push_back(predicate("p_i > max|c_i|",
                            std::all_of(ctx.primes().begin(), ctx.primes().end(),
                                        [&](std::int64_t p) { return p > eq.max_abs(); })));
  const __int128 q4d2 = static_cast<__int128>(q) * q * q * q * d * d;
  preds.push_back(predicate("n > q^4 D^2", static_cast<__int128>(n) > q4d2,
                            "q^4 D^2 = " + std::to_string(static_cast<std::int64_t>(q4d2))));
  const Surd standard_e0 = Surd::linear(Rational(n - 1), -Rational(q), n);
  const Surd standard_f0 = Surd::linear(Rational(n, 2), -Rational(static_cast<std::int64_t>(q) * q * d), n);
  preds.push_back(predicate("n - q sqrt(n) - 1 > 0", sign(standard_e0) > 0, standard_e0.to_string()));
  preds.push_back(predicate("n/2 - q^2 D sqrt(n) > 0", sign(standard_f0) > 0, standard_f0.to_string()));
  const Surd bound = norm_bound_surd(ctx, d, params.e0_deficit);
  preds.push_back(predicate("n - (q-1) D beta > 0", sign(bound) > 0, bound.to_string()));
  const Surd margin = bound - params.f0_threshold.scaled(2);
  preds.push_back(predicate("2T < n - (q-1) D beta", sign(margin) > 0, margin.to_string()));
  preds.push_back(predicate("E0 nonempty", !e0.empty(), std::to_string(e0.size())));
  preds.push_back(predicate("F0 nonempty", !f0.empty(), std::to_string(f0.size())));

  return ProductConstruction{std::move(normalization), std::move(ctx), e0_threshold, params.f0_threshold,
                             std::move(e0), std::move(f0), std::move(preds)};
}

NormBoundCheck check_E0_norm_bound(const ProductConstruction& pc, const std::vector<std::int64_t>& tuple,
                                   const Surd& e0_deficit) {
  const auto& eq = pc.norm.eq;
  if (static_cast<int>(tuple.size()) != eq.size()) throw std::invalid_argument("tuple length differs from k");
  const std::int64_t m = pc.ctx.m();
  std::int64_t s = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (!pc.e0.contains(static_cast<Index>(mod(tuple[i], m)))) throw std::invalid_argument("tuple entry not in E0");
    s = mod(s + mulmod(eq[i], tuple[i], m), m);
  }
  NormBoundCheck r;
  r.norm = pc.ctx.norm(s, static_cast<int>(eq.sum()));
  r.bound = norm_bound_surd(pc.ctx, eq.abs_sum(), e0_deficit);
  r.holds = geq(r.norm, r.bound);
  return r;
}

// --- pattern search ---------------------------------------------------------------------

PatternSearch find_pattern_solution(std::span<const std::int64_t> coeffs, std::span<const ElementSet* const> sets,
                                    bool injective, double max_work) {
  if (coeffs.size() != sets.size() || coeffs.empty()) throw std::invalid_argument("one set per coefficient needed");
  const GroupSpec& group = sets[0]->group();
  if (!group.is_cyclic()) throw std::invalid_argument("pattern search needs a cyclic group");
  for (const auto* s : sets) {
    if (!(s->group() == group)) throw std::invalid_argument("pattern sets live in different groups");
  }
  const auto n = static_cast<std::int64_t>(group.order());
  const std::size_t k = coeffs.size();

  // Solve for the largest set whose coefficient is a unit.
  std::optional<std::size_t> solve;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::gcd(mod(coeffs[i], n), n) != 1) continue;
    if (!solve || sets[i]->size() > sets[*solve]->size()) solve = i;
  }
  PatternSearch result;
  result.work = 1.0;
  std::vector<std::vector<Index>> members(k);
  for (std::size_t i = 0; i < k; ++i) {
    members[i] = sets[i]->members();
    if (!solve || i != *solve) result.work *= static_cast<double>(members[i].size());
  }
  if (result.work > max_work) throw CapExceeded("pattern search exceeds its work budget");
  for (const auto& m : members) {
    if (m.empty()) return result;
  }

  std::vector<std::int64_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = mod(coeffs[i], n);
  const std::int64_t inv = solve ? modinv(c[*solve], n) : 0;
  std::vector<std::int64_t> x(k, 0);

  std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t partial) -> bool {
    if (i == k) {
      if (solve) {
        const std::int64_t xs = mulmod(mod(-partial, n), inv, n);
        if (!sets[*solve]->contains(static_cast<Index>(xs))) return false;
        x[*solve] = xs;
      } else if (partial != 0) {
        return false;
      }
      if (injective) {
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = a + 1; b < k; ++b) {
            if (x[a] == x[b]) return false;
          }
        }
      }
      return true;
    }
    if (solve && i == *solve) return rec(i + 1, partial);
    for (Index v : members[i]) {
      x[i] = static_cast<std::int64_t>(v);
      if (rec(i + 1, mod(partial + mulmod(c[i], x[i], n), n))) return true;
    }
    return false;
  };
  if (rec(0, 0)) {
    result.found = true;
    result.witness = x;
  }
  return result;
}

PatternSearch find_extension_violation(const Equation& normalized, const ElementSet& e, const ElementSet& f) {
  std::vector<const ElementSet*> sets{&f, &f};
  for (int i = 2; i < normalized.size(); ++i) sets.push_back(&e);
  return find_pattern_solution(normalized.coeffs(), sets, /*injective=*/false);
}

// --- lift -------------------------------------------------------------------------------

std::int64_t auto_lift_prime(const ProductConstruction& pc) {
  const std::int64_t d = pc.norm.eq.abs_sum();
  return next_prime(d * d * (d + 1) * pc.ctx.m());
}

Lift lift_to_Fp(const ProductConstruction& pc, std::int64_t p) {
  const std::int64_t d = pc.norm.eq.abs_sum();
  const std::int64_t m = pc.ctx.m();
  if (!is_prime(p)) throw InfeasibleParams("lift modulus " + std::to_string(p) + " is not prime");
  if (p <= d * m) throw InfeasibleParams("lift needs p > D m = " + std::to_string(d * m));
  Lift lift;
  lift.p = p;
  lift.interval_lo = (p + d) / (d + 1);  // ceil(p / (D+1))
  lift.interval_hi = p / d;
  if (lift.interval_lo > lift.interval_hi) throw InfeasibleParams("interval I_p is empty");
  const auto fp = GroupSpec::cyclic(p);
  lift.e = ElementSet(fp);
  lift.f = ElementSet(fp);
  pc.e0.for_each([&](Index y) { lift.e.insert(y); });
  for (std::int64_t x = lift.interval_lo; x <= lift.interval_hi; ++x) {
    if (pc.f0.contains(static_cast<Index>(x % m))) lift.f.insert(static_cast<Index>(x));
  }
  lift.a = lift.e.united(lift.f);
  return lift;
}

namespace {

std::string join(const std::vector<std::int64_t>& xs) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ')';
  return os.str();
}

// Searches every E/F assignment selected by `want(mask)`; bit i of the mask
// puts coordinate i in F.
PatternSearch search_patterns(const Equation& eq, const ElementSet& e, const ElementSet& f,
                              const std::function<bool(unsigned)>& want, unsigned* hit_mask) {
  const unsigned k = static_cast<unsigned>(eq.size());
  PatternSearch total;
  for (unsigned mask = 0; mask < (1U << k); ++mask) {
    if (!want(mask)) continue;
    std::vector<const ElementSet*> sets;
    for (unsigned i = 0; i < k; ++i) sets.push_back(((mask >> i) & 1U) ? &f : &e);
    auto r = find_pattern_solution(eq.coeffs(), sets, /*injective=*/true);
    total.work += r.work;
    if (r.found) {
      total.found = true;
      total.witness = std::move(r.witness);
      if (hit_mask) *hit_mask = mask;
      return total;
    }
  }
  return total;
}

}  // namespace

LiftCertificates certify_lift(const ProductConstruction& pc, const Lift& lift, bool run_negative_control) {
  LiftCertificates out;
  const auto& eq = pc.norm.eq;
  const unsigned k = static_cast<unsigned>(eq.size());
  const unsigned full = (1U << k) - 1;
  const std::int64_t m = pc.ctx.m();
  const std::int64_t p = lift.p;

  {
    auto r = search_patterns(eq, lift.e, lift.f, [](unsigned mask) { return mask == 0; }, nullptr);
    out.e_solution_free = {"E solution-free in F_p", !r.found,
                           r.found ? "injective solution " + join(r.witness) : "no injective solution in E^k",
                           r.witness};
  }

  {
    // u, v in {0..m-1} with d = v - u: adjacent in Cay(F_p, E) iff d mod p is
    // in +-E, and in Cay(Z_m, E0) iff d mod m is in +-E0.
    std::int64_t first = 0;
    for (std::int64_t d = 1; d < m; ++d) {
      const bool in_fp = lift.e.contains(static_cast<Index>(mod(d, p))) || lift.e.contains(static_cast<Index>(mod(-d, p)));
      const bool in_zm = pc.e0.contains(static_cast<Index>(mod(d, m))) || pc.e0.contains(static_cast<Index>(mod(-d, m)));
      if (in_fp == in_zm) continue;
      if (first == 0) first = d;
      (in_fp ? out.fp_only_differences : out.zm_only_differences) += 1;
      out.mismatched_edges += m - d;
    }
    std::ostringstream detail;
    detail << "differences d in [1, m): F_p-only " << out.fp_only_differences << ", Z_m-only "
           << out.zm_only_differences << ", affected vertex pairs " << out.mismatched_edges;
    if (first != 0) detail << "; first mismatch d = " << first << " (pair 0, " << first << ")";
    out.induced_isomorphism = {"Cay(F_p,E)[M] equals Cay(Z_m,E0) on M", first == 0, detail.str(),
                               first ? std::vector<std::int64_t>{0, first} : std::vector<std::int64_t>{}};
  }

  {
    auto r = find_extension_violation(eq, lift.e, lift.f);
    out.extension = {"F extends E in F_p", !r.found,
                     r.found ? "(f1, f2, e3, ...) = " + join(r.witness) : "(-c1 F - c2 F) n (c3 E + ... + ck E) empty",
                     r.witness};
  }

  {
    unsigned mask = 0;
    auto r = search_patterns(eq, lift.e, lift.f, [&](unsigned mk) { return mk != 0 && mk != full; }, &mask);
    out.no_mixed_solution = {"no mixed injective solution in E u F", !r.found,
                             r.found ? "solution " + join(r.witness) + " with F-mask " + std::to_string(mask)
                                     : "all " + std::to_string(full - 1) + " mixed patterns scanned",
                             r.witness};
  }

  {
    unsigned mask = 0;
    auto r = search_patterns(eq, lift.e, lift.f, [](unsigned) { return true; }, &mask);
    out.a_solution_free = {"A = E u F solution-free", !r.found,
                           r.found ? "solution " + join(r.witness) + " with F-mask " + std::to_string(mask)
                                   : "no injective solution in A^k",
                           r.witness};
  }

  if (run_negative_control) {
    // Same residue condition, no interval restriction.
    ElementSet wide(GroupSpec::cyclic(p));
    for (std::int64_t x = 0; x < p; ++x) {
      if (pc.f0.contains(static_cast<Index>(x % m)) && !lift.e.contains(static_cast<Index>(x))) {
        wide.insert(static_cast<Index>(x));
      }
    }
    unsigned mask = 0;
    auto r = search_patterns(eq, lift.e, wide, [](unsigned mk) { return mk != 0; }, &mask);
    out.negative_control = {"unrestricted F admits a solution", r.found,
                            r.found ? "solution " + join(r.witness) + " with F-mask " + std::to_string(mask) +
                                          " (|F unrestricted| = " + std::to_string(wide.size()) + ")"
                                    : "vacuous: no solution found without the interval restriction",
                            r.witness};
  } else {
    out.negative_control = {"unrestricted F admits a solution", false, "not run", {}};
  }
  return out;
}

// --- density -----------------------------------------------------------------------------

DensityAnalysis analyze_F0_density(const ProductConstruction& pc) {
  DensityAnalysis out;
  const auto& ctx = pc.ctx;
  const int c_index = static_cast<int>(pc.norm.eq.sum());
  for (std::size_t i = 0; i < ctx.primes().size(); ++i) {
    const std::int64_t p = ctx.primes()[i];
    double s1 = 0, s2 = 0, s11 = 0, s12 = 0, s22 = 0;
    for (std::int64_t r = 0; r < p; ++r) {
      // c1 y is uniform when y is, so r stands for c1 y directly.
      const double u = to_double(ctx.coordinate_norm(i, r, c_index));
      const double v = to_double(ctx.coordinate_norm(i, mod(-r, p), c_index));
      s1 += u;
      s2 += v;
      s11 += u * u;
      s12 += u * v;
      s22 += v * v;
    }
    const double inv = 1.0 / static_cast<double>(p);
    const double m1 = s1 * inv, m2 = s2 * inv;
    out.mean1 += m1;
    out.mean2 += m2;
    out.cov11 += s11 * inv - m1 * m1;
    out.cov12 += s12 * inv - m1 * m2;
    out.cov22 += s22 * inv - m2 * m2;
  }
  const double half_trace = 0.5 * (out.cov11 + out.cov22);
  const double spread = std::sqrt(0.25 * (out.cov11 - out.cov22) * (out.cov11 - out.cov22) + out.cov12 * out.cov12);
  out.lambda_min = half_trace - spread;
  out.lambda_max = half_trace + spread;
  const double n = ctx.n();
  out.t = std::min(out.mean1, out.mean2) - pc.f0_threshold.to_double();
  out.r = out.t / std::sqrt(n);
  out.c = out.lambda_min / n;
  out.c_cov = out.lambda_max / n;
  if (out.r > 0 && out.c > 0) out.alpha = gauss_alpha(out.r, out.c, out.c_cov);
  out.lemma_applicable = out.r >= 1.0 && out.c > 0;
  out.density = static_cast<double>(pc.f0.size()) / static_cast<double>(ctx.m());
  out.density_at_least_half_alpha = out.density >= out.alpha / 2.0;
  return out;
}

}  // namespace chroma
