#include "chroma/bohr.hpp"

#include "chroma/cayley.hpp"
#include "chroma/errors.hpp"
#include "chroma/fourier.hpp"

#include <algorithm>
#include <map>

namespace chroma {

int SpectrumParams::arcs() const { return static_cast<int>(ceil_to_int(Rational(2) / rho)); }

void SpectrumParams::validate() const {
  if (!(nu > 0 && nu <= 1)) throw InfeasibleParams("nu must lie in (0, 1]");
  if (!(rho > 0 && rho < Rational(1, 2))) throw InfeasibleParams("rho must lie in (0, 1/2)");
  if (arcs() < 4) throw InfeasibleParams("M = ceil(2/rho) must be at least 4");
}

SpectrumParams SpectrumParams::from_delta(const Rational& delta, std::int64_t d) {
  if (!(delta > 0 && delta <= 1)) throw InfeasibleParams("delta must lie in (0, 1]");
  SpectrumParams params;
  params.nu = delta / 6;
  params.rho = delta * delta * delta / (Rational(216 * d) * Rational(355, 113));
  return params;
}

std::vector<Index> large_spectrum(const ElementSet& a, double nu) {
  const auto t = indicator_transform(a);
  std::vector<Index> out;
  for (std::size_t xi = 0; xi < t.size(); ++xi) {
    if (std::abs(t[xi]) >= nu) out.push_back(xi);
  }
  return out;
}

BohrSet bohr_set(std::vector<Index> gamma, const Rational& rho, std::int64_t p) {
  if (gamma.empty()) throw std::invalid_argument("bohr_set needs a nonempty frequency set");
  const auto group = GroupSpec::cyclic(p);
  BohrSet b{std::move(gamma), rho, ElementSet(group)};
  // min(r, p - r) <= rho p  <=>  min(r, p - r) * den <= num * p
  const BigInt num = numerator(rho);
  const BigInt den = denominator(rho);
  const BigInt limit = num * p;
  for (std::int64_t x = 0; x < p; ++x) {
    bool inside = true;
    for (Index xi : b.gamma) {
      const std::int64_t r = mulmod(static_cast<std::int64_t>(xi), x, p);
      if (BigInt(std::min(r, p - r)) * den > limit) {
        inside = false;
        break;
      }
    }
    if (inside) b.members.insert(static_cast<Index>(x));
  }
  return b;
}

ClaimTest claim_AB_test(const ElementSet& a, const ElementSet& b, int k) {
  ClaimTest t;
  t.intersection = a.intersection_size(b);
  t.passed = t.intersection < static_cast<std::size_t>(k);
  if (!t.passed) t.witness = a.intersected(b).members();
  return t;
}

PhasePartition phase_partition(std::span<const Index> gamma, int arcs, std::int64_t p) {
  if (arcs < 1) throw std::invalid_argument("phase partition needs M >= 1");
  PhasePartition part;
  part.arcs = arcs;
  part.cell_of.assign(static_cast<std::size_t>(p), 0);
  std::map<std::vector<int>, std::uint32_t> ids;
  std::vector<int> sig(gamma.size());
  for (std::int64_t u = 0; u < p; ++u) {
    for (std::size_t g = 0; g < gamma.size(); ++g) {
      const std::int64_t r = mulmod(static_cast<std::int64_t>(gamma[g]), u, p);
      sig[g] = static_cast<int>(static_cast<__int128>(arcs) * r / p);
    }
    auto [it, inserted] = ids.try_emplace(sig, static_cast<std::uint32_t>(part.signatures.size()));
    if (inserted) part.signatures.push_back(sig);
    part.cell_of[static_cast<std::size_t>(u)] = it->second;
  }
  return part;
}

BohrColoring bohr_color(const ElementSet& a, const Equation& eq, const SpectrumParams& params) {
  params.validate();
  if (!a.group().is_cyclic()) throw std::invalid_argument("bohr_color needs A inside a cyclic group");
  const auto p = static_cast<std::int64_t>(a.universe());
  if (!is_prime(p)) throw InfeasibleParams("bohr_color needs a prime modulus");

  BohrColoring out;
  auto& rep = out.report;
  rep.p = p;
  rep.a_size = a.size();
  rep.k = eq.size();
  const auto cls = classify(eq);
  rep.theory_applies = cls.chi_vanishing;
  rep.s_index = params.s_index.value_or(cls.chi_vanishing ? cls.witness_subset.front() : 0);
  if (rep.s_index < 0 || rep.s_index >= eq.size()) throw std::invalid_argument("s_index outside the equation");
  rep.c_s = mod(eq[static_cast<std::size_t>(rep.s_index)], p);
  if (rep.c_s == 0) throw InfeasibleParams("c_s vanishes modulo p");
  rep.nu = to_string(params.nu);
  rep.rho = to_string(params.rho);
  rep.arcs = params.arcs();

  const auto spectrum = large_spectrum(a, to_double(params.nu));
  rep.spectrum_size = spectrum.size();
  const std::int64_t inv = modinv(rep.c_s, p);
  std::vector<Index> gamma;
  for (Index xi : spectrum) gamma.push_back(static_cast<Index>(mulmod(inv, static_cast<std::int64_t>(xi), p)));
  std::sort(gamma.begin(), gamma.end());
  rep.gamma_size = gamma.size();

  // An empty Gamma imposes no condition: B is all of F_p.
  ElementSet b(a.group());
  if (gamma.empty()) {
    for (std::int64_t x = 0; x < p; ++x) b.insert(static_cast<Index>(x));
  } else {
    b = bohr_set(gamma, params.rho, p).members;
  }
  rep.bohr_size = b.size();
  rep.claim = claim_AB_test(a, b, rep.k);

  const auto partition = phase_partition(gamma, rep.arcs, p);
  rep.cells = partition.cell_count();

  // Same-cell neighbours differ by an element of +-(A n B); 0 is never an edge.
  const auto ab = a.intersected(b);
  std::vector<std::int64_t> diffs;
  ab.for_each([&](Index d) {
    if (d == 0) return;
    diffs.push_back(static_cast<std::int64_t>(d));
    diffs.push_back(p - static_cast<std::int64_t>(d));
  });
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());

  std::vector<int> local(static_cast<std::size_t>(p), -1);
  std::vector<int> used_in_cell(rep.cells, 0);
  std::vector<char> taken;
  for (std::int64_t u = 0; u < p; ++u) {
    const auto cell = partition.cell_of[static_cast<std::size_t>(u)];
    taken.assign(diffs.size() + 2, 0);
    std::size_t degree = 0;
    for (std::int64_t d : diffs) {
      const std::int64_t v = u >= d ? u - d : u - d + p;
      if (partition.cell_of[static_cast<std::size_t>(v)] != cell) continue;
      ++degree;
      const int c = local[static_cast<std::size_t>(v)];
      if (c >= 0 && static_cast<std::size_t>(c) < taken.size()) taken[static_cast<std::size_t>(c)] = 1;
    }
    rep.max_cell_degree = std::max(rep.max_cell_degree, degree);
    int c = 0;
    while (taken[static_cast<std::size_t>(c)]) ++c;
    local[static_cast<std::size_t>(u)] = c;
    used_in_cell[cell] = std::max(used_in_cell[cell], c + 1);
  }

  std::vector<int> offset(rep.cells, 0);
  int total = 0;
  for (std::size_t cell = 0; cell < rep.cells; ++cell) {
    offset[cell] = total;
    total += used_in_cell[cell];
  }
  out.colors.resize(static_cast<std::size_t>(p));
  for (std::int64_t u = 0; u < p; ++u) {
    out.colors[static_cast<std::size_t>(u)] =
        offset[partition.cell_of[static_cast<std::size_t>(u)]] + local[static_cast<std::size_t>(u)];
  }
  rep.colors_used = total;

  BigInt budget = 2 * rep.k - 1;
  for (std::size_t g = 0; g < gamma.size(); ++g) budget *= rep.arcs;
  rep.budget = budget.str();
  rep.within_budget = BigInt(total) <= budget;
  rep.proper = validate_coloring(CayleyView(a), out.colors);
  return out;
}

}  // namespace chroma
