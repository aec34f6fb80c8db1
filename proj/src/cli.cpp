#include "chroma/cli.hpp"

#include "chroma/bohr.hpp"
#include "chroma/cayley.hpp"
#include "chroma/constructions.hpp"
#include "chroma/equation.hpp"
#include "chroma/errors.hpp"
#include "chroma/exact.hpp"
#include "chroma/graph.hpp"
#include "chroma/group.hpp"
#include "chroma/kneser.hpp"
#include "chroma/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace chroma::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Outcome {
  json report;
  int code = kExitOk;
  std::string cache = "off";
};

// --- small parsers ------------------------------------------------------------

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw ParseError("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + item + "'");
    }
  }
  return out;
}

json int_array(std::span<const std::int64_t> xs) { return json(std::vector<std::int64_t>(xs.begin(), xs.end())); }

/// Explicit set from --set (RLE file) or --elements over --group / Z(p).
ElementSet load_connection(const std::string& set_path, const std::string& elements,
                           const std::optional<GroupSpec>& group) {
  if (!set_path.empty()) {
    auto set = load_set(set_path);
    if (group && !(set.group() == *group)) {
      throw ParseError("set file group " + set.group().literal() + " differs from " + group->literal());
    }
    return set;
  }
  if (!group) throw ParseError("a group (--group or --p) is required with --elements");
  ElementSet set(*group);
  if (!group->is_cyclic()) throw ParseError("--elements needs a cyclic group");
  const auto n = static_cast<std::int64_t>(group->order());
  for (auto x : parse_int_list(elements)) set.insert(static_cast<Index>(mod(x, n)));
  return set;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

SolverBudget make_budget(const std::string& budget, std::uint64_t max_nodes) {
  SolverBudget b;
  if (!budget.empty()) b.time_limit = parse_duration(budget);
  b.max_nodes = max_nodes;
  return b;
}

json predicate_json(const Predicate& p) {
  json j{{"name", p.name}, {"holds", p.holds}};
  if (!p.detail.empty()) j["detail"] = p.detail;
  return j;
}

json certificate_json(const Certificate& c) {
  json j{{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

// --- construction shared by construct / certify-lift -------------------------------

struct ConstructFlags {
  std::string eq = "[1,-1,2]";
  int q = 3;
  std::string primes = "13,17,19,23";
  std::string p = "auto";
  std::string beta = "default";
  std::string t = "default";
  std::string save_dir;
  bool negative_control = true;
};

ConstructionParams construction_params(const ConstructFlags& f) {
  auto params =
      ConstructionParams::with_default_thresholds(Equation::parse(f.eq), f.q, parse_int_list(f.primes));
  if (f.beta != "default") params.e0_deficit = Surd::constant(parse_rational(f.beta));
  if (f.t != "default") params.f0_threshold = Surd::constant(parse_rational(f.t));
  if (f.p != "auto") {
    const auto p = parse_int_list(f.p);
    if (p.size() != 1) throw ParseError("--p takes 'auto' or one integer");
    params.p = p.front();
  }
  return params;
}

/// Cache file for a certificate bundle, empty when CHROMA_CACHE_DIR is unset.
std::string certificate_cache_path(const std::string& key) {
  const auto dir = cache_dir();
  if (dir.empty()) return {};
  std::ostringstream name;
  name << "certify-" << std::hex << fnv1a(key) << ".json";
  return (std::filesystem::path(dir) / name.str()).string();
}

json construction_report(const ConstructFlags& f, const ConstructionParams& params, const ProductConstruction& pc,
                         const Lift& lift) {
  json r;
  r["equation"] = Equation::parse(f.eq).to_array_string();
  r["normalized"] = {{"coefficients", int_array(pc.norm.eq.coeffs())},
                     {"permutation", pc.norm.perm},
                     {"negated", pc.norm.negated}};
  r["q"] = pc.ctx.q();
  r["primes"] = int_array(pc.ctx.primes());
  r["n"] = pc.ctx.n();
  r["m"] = pc.ctx.m();
  r["beta"] = params.e0_deficit.to_string();
  r["T"] = params.f0_threshold.to_string();
  r["e0_threshold"] = pc.e0_threshold.to_string();
  r["sizes"] = {{"E0", pc.e0.size()}, {"F0", pc.f0.size()}};
  json preds = json::array();
  for (const auto& p : pc.predicates) preds.push_back(predicate_json(p));
  r["predicates"] = preds;
  r["lift"] = {{"p", lift.p},
               {"interval", {lift.interval_lo, lift.interval_hi}},
               {"E", lift.e.size()},
               {"F", lift.f.size()},
               {"A", lift.a.size()}};
  const auto d = analyze_F0_density(pc);
  r["density"] = {{"F0_density", d.density},
                  {"mean", {d.mean1, d.mean2}},
                  {"covariance", {{d.cov11, d.cov12}, {d.cov12, d.cov22}}},
                  {"eigenvalues", {d.lambda_min, d.lambda_max}},
                  {"t", d.t},
                  {"r", d.r},
                  {"c", d.c},
                  {"C", d.c_cov},
                  {"alpha", d.alpha},
                  {"lemma_applicable", d.lemma_applicable},
                  {"density_at_least_half_alpha", d.density_at_least_half_alpha}};
  return r;
}

void save_construction(const std::string& dir, const ProductConstruction& pc, const Lift& lift) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  save_set((base / "E0.set").string(), pc.e0);
  save_set((base / "F0.set").string(), pc.f0);
  save_set((base / "E.set").string(), lift.e);
  save_set((base / "F.set").string(), lift.f);
  save_set((base / "A.set").string(), lift.a);
}

std::string construction_key(const ConstructFlags& f) {
  return f.eq + "|" + std::to_string(f.q) + "|" + f.primes + "|" + f.beta + "|" + f.t;
}

// --- config handling --------------------------------------------------------------

/// Leading words up to the first flag.
// Subcommand words, skipping global options (and their values) around them.
std::vector<std::string> command_words(const std::vector<std::string>& args) {
  static const std::vector<std::string> globals{"--config", "--out", "--seed", "--budget", "--max-nodes"};
  std::vector<std::string> words;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a.rfind("-", 0) != 0) {
      words.push_back(a);
      continue;
    }
    const auto name = a.substr(0, a.find('='));
    if (std::find(globals.begin(), globals.end(), name) == globals.end()) break;
    if (name.size() == a.size()) ++i;
  }
  return words;
}

std::string config_value(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number()) {
    std::ostringstream os;
    os << v.get<double>();
    return os.str();
  }
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) {
      if (!joined.empty()) joined += ",";
      joined += config_value(item, key);
    }
    return joined;
  }
  throw ParseError("config field '" + key + "' has an unsupported type");
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ParseError("--config needs a path");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

bool flag_given(const std::vector<std::string>& args, const std::string& name) {
  const std::string flag = "--" + name;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

}  // namespace

std::chrono::milliseconds parse_duration(std::string_view text) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(s, &used);
  } catch (const std::logic_error&) {
    throw ParseError("bad duration '" + s + "'");
  }
  const auto unit = s.substr(used);
  double ms = 0;
  if (unit.empty() || unit == "s") {
    ms = value * 1000;
  } else if (unit == "ms") {
    ms = value;
  } else if (unit == "m") {
    ms = value * 60'000;
  } else if (unit == "h") {
    ms = value * 3'600'000;
  } else {
    throw ParseError("bad duration unit in '" + s + "'");
  }
  if (!(ms >= 0)) throw ParseError("negative duration '" + s + "'");
  return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

std::string cache_dir() {
  const char* dir = std::getenv("CHROMA_CACHE_DIR");
  return dir ? std::string(dir) : std::string();
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  std::string out_path;
  std::string csv_path;
  std::uint64_t seed = 1;
  std::string budget;
  std::uint64_t max_nodes = 0;

  CLI::App app{"chroma: Cayley graph coloring and solution-free set toolkit", "chroma"};
  app.require_subcommand(1);
  app.add_option("--config", "JSON config file");
  app.fallthrough();
  app.add_option("--out", out_path, "write the JSON report here instead of stdout");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--budget", budget, "wall-clock limit for exact solvers, e.g. 60s");
  app.add_option("--max-nodes", max_nodes, "search-node limit for exact solvers");

  std::function<Outcome()> action;
  auto bind = [&](CLI::App* sub, std::function<Outcome()> fn) {
    sub->callback([&action, fn] { action = fn; });
  };

  // classify
  std::string eq_text;
  auto* classify_cmd = app.add_subcommand("classify", "zero-sum classification of an equation");
  classify_cmd->add_option("--eq", eq_text, "coefficients, e.g. [1,1,-1]")->required();
  bind(classify_cmd, [&] {
    const auto eq = Equation::parse(eq_text);
    const auto cls = classify(eq);
    json r{{"equation", eq.to_array_string()},
           {"k", eq.size()},
           {"C", eq.sum()},
           {"D", eq.abs_sum()},
           {"roth_degenerate", cls.roth_degenerate},
           {"rt_degenerate", cls.rt_degenerate},
           {"chi_vanishing", cls.chi_vanishing},
           {"witness_subset", cls.witness_subset},
           {"region", region_name(cls)}};
    return Outcome{r};
  });

  // kneser
  auto* kneser_cmd = app.add_subcommand("kneser", "generalized Kneser graphs");
  kneser_cmd->require_subcommand(1);
  int kn_n = 0, kn_k = 0, kn_m = 0, kn_p = 0;
  std::size_t kn_limit = 20;
  std::string dimacs_out;
  auto kneser_params = [&] {
    KneserParams params{kn_n, kn_k, kn_m};
    if (kn_p != 0) {
      if (kn_m != 0 && kn_m != kn_p - 1) throw ParseError("--p and --m disagree");
      params.m = kn_p - 1;
    }
    params.validate();
    return params;
  };
  auto add_nkm = [&](CLI::App* sub) {
    sub->add_option("--n", kn_n)->required();
    sub->add_option("--k", kn_k)->required();
    sub->add_option("--m", kn_m);
    sub->add_option("--p", kn_p, "shorthand for m = p - 1");
  };

  auto* enumerate_cmd = kneser_cmd->add_subcommand("enumerate", "count and list vertices");
  add_nkm(enumerate_cmd);
  enumerate_cmd->add_option("--limit", kn_limit, "vertices to list");
  bind(enumerate_cmd, [&] {
    const auto params = kneser_params();
    json r{{"graph", params.to_string()}, {"classical", params.classical()}, {"vertices", params.vertex_count()}};
    json listed = json::array();
    if (kn_limit > 0) {
      const auto vs = kneser_vertices(params);
      for (std::size_t i = 0; i < vs.size() && i < kn_limit; ++i) listed.push_back(vs[i].to_string());
    }
    r["listed"] = listed;
    return Outcome{r};
  });

  auto* adjacency_cmd = kneser_cmd->add_subcommand("adjacency", "build the graph, optionally export DIMACS");
  add_nkm(adjacency_cmd);
  adjacency_cmd->add_option("--dimacs-out", dimacs_out);
  bind(adjacency_cmd, [&] {
    const auto params = kneser_params();
    const auto kg = build_kneser_graph(params);
    std::size_t min_deg = kg.graph.size() ? kg.graph.size() : 0, max_deg = 0;
    for (std::size_t v = 0; v < kg.graph.size(); ++v) {
      min_deg = std::min(min_deg, kg.graph.degree(v));
      max_deg = std::max(max_deg, kg.graph.degree(v));
    }
    json r{{"graph", params.to_string()},
           {"classical", params.classical()},
           {"vertices", kg.graph.size()},
           {"edges", kg.graph.edge_count()},
           {"min_degree", min_deg},
           {"max_degree", max_deg}};
    if (!dimacs_out.empty()) {
      std::ofstream os(dimacs_out);
      if (!os) throw ParseError("cannot write " + dimacs_out);
      write_dimacs(os, kg.graph, params.to_string());
      r["dimacs"] = dimacs_out;
    }
    return Outcome{r};
  });

  auto* bound_cmd = kneser_cmd->add_subcommand("chi-bound", "lower bound (n/p - k) / (p (p - 1))");
  add_nkm(bound_cmd);
  bool bound_solve = false;
  bound_cmd->add_flag("--solve", bound_solve, "also bracket the chromatic number");
  bind(bound_cmd, [&] {
    const auto params = kneser_params();
    const auto bound = chi_lower_bound(params);
    json r{{"graph", params.to_string()},
           {"p", params.m + 1},
           {"bound", to_string(bound)},
           {"positive", bound > 0},
           {"required_colors", bound > 0 ? ceil_to_int(bound) : 0}};
    int code = kExitOk;
    if (bound_solve) {
      const auto kg = build_kneser_graph(params);
      const auto res = chromatic_number(kg.graph, make_budget(budget, max_nodes));
      r["chi"] = {{"lower", res.lower}, {"upper", res.upper}, {"exact", res.exact}, {"status", res.status}};
      if (bound > 0 && res.exact && res.lower < ceil_to_int(bound)) code = kExitFinding;
    }
    return Outcome{r, code};
  });

  auto* embed_cmd = kneser_cmd->add_subcommand("embed-check", "check every edge against the Hamming ball");
  int emb_p = 0, emb_n = 0, emb_k = 0;
  std::string emb_lambda;
  embed_cmd->add_option("--p", emb_p)->required();
  embed_cmd->add_option("--n", emb_n)->required();
  embed_cmd->add_option("--k", emb_k, "defaults to the smallest k with p k >= n - sqrt(n)");
  embed_cmd->add_option("--lambda", emb_lambda, "ball radius lambda sqrt(n); default p");
  bind(embed_cmd, [&] {
    const int k = emb_k > 0 ? emb_k : embedding_k(emb_p, emb_n);
    const KneserParams params{emb_n, k, emb_p - 1};
    params.validate();
    const auto ball = emb_lambda.empty() ? HammingBall::standard(emb_p, emb_n)
                                         : HammingBall::scaled(emb_p, emb_n, parse_rational(emb_lambda));
    const auto vs = kneser_vertices(params);
    std::uint64_t edges = 0, claim_bad = 0, hamming_bad = 0, outside = 0;
    json first_violation;
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        if (!kneser_adjacent(params, vs[a], vs[b])) continue;
        ++edges;
        const auto check = check_embedding_edge(params, vs[a], vs[b], ball);
        if (!check.claim_ok) ++claim_bad;
        if (!check.hamming_ok) ++hamming_bad;
        if (!check.in_ball) ++outside;
        if ((!check.ok() || !check.in_ball) && first_violation.is_null()) {
          first_violation = {{"a", vs[a].to_string()}, {"b", vs[b].to_string()}, {"distance", check.distance}};
        }
      }
    }
    const int bound = emb_p * emb_n - emb_p * emb_p * k;
    json r{{"graph", params.to_string()},
           {"p", emb_p},
           {"n", emb_n},
           {"k", k},
           {"radius", ball.radius.to_string()},
           {"distance_bound", bound},
           {"vertices", vs.size()},
           {"edges", edges},
           {"claim_violations", claim_bad},
           {"hamming_violations", hamming_bad},
           {"outside_ball", outside}};
    if (!first_violation.is_null()) r["first_violation"] = first_violation;
    const bool clean = claim_bad == 0 && hamming_bad == 0 && outside == 0;
    return Outcome{r, clean ? kExitOk : kExitFinding};
  });

  auto* sweep_cmd = kneser_cmd->add_subcommand("sweep", "check the lower bound on every small feasible graph");
  std::uint64_t sweep_max = 2000;
  sweep_cmd->add_option("--max-vertices", sweep_max);
  sweep_cmd->add_option("--csv", csv_path, "write one row per graph");
  bind(sweep_cmd, [&] {
    const auto rows = chi_bound_sweep(sweep_max, make_budget(budget, max_nodes));
    std::size_t failed = 0, vacuous = 0, classical = 0;
    json failures = json::array();
    for (const auto& row : rows) {
      if (row.method == "vacuous") ++vacuous;
      if (row.params.classical()) ++classical;
      if (!row.ok) {
        ++failed;
        failures.push_back(row.params.to_string());
      }
    }
    if (!csv_path.empty()) {
      std::ofstream os(csv_path);
      if (!os) throw ParseError("cannot write " + csv_path);
      os << "n,k,m,p,vertices,bound,required,chi_lower,chi_upper,exact,method,ok\n";
      for (const auto& row : rows) {
        os << row.params.n << ',' << row.params.k << ',' << row.params.m << ',' << row.params.m + 1 << ','
           << row.vertices << ',' << to_string(row.bound) << ',' << row.required << ',' << row.chi_lower << ','
           << row.chi_upper << ',' << (row.exact ? 1 : 0) << ',' << row.method << ',' << (row.ok ? 1 : 0) << '\n';
      }
    }
    json r{{"max_vertices", sweep_max},
           {"graphs", rows.size()},
           {"classical_graphs", classical},
           {"vacuous", vacuous},
           {"failed", failed},
           {"failures", failures}};
    return Outcome{r, failed == 0 ? kExitOk : kExitFinding};
  });

  // cayley
  auto* cayley_cmd = app.add_subcommand("cayley", "Cayley graphs of explicit connection sets");
  cayley_cmd->require_subcommand(1);
  std::string group_text, set_path, elements, dimacs_in, cnf_out;
  int cnf_colors = 0;
  bool witness = false;
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--group", group_text, "group literal, e.g. Z(101) or Z(3)^2");
    sub->add_option("--set", set_path, "connection set file");
    sub->add_option("--elements", elements, "connection set as a comma list (cyclic groups)");
    sub->add_option("--dimacs", dimacs_in, "read a DIMACS graph instead");
    sub->add_flag("--witness", witness, "include the certificate in the report");
  };
  struct Source {
    std::optional<CayleyView> view;
    DenseGraph graph;
    std::string label;
  };
  auto load_source = [&] {
    Source s;
    if (!dimacs_in.empty()) {
      std::ifstream is(dimacs_in);
      if (!is) throw ParseError("cannot read " + dimacs_in);
      s.graph = read_dimacs(is);
      s.label = dimacs_in;
      return s;
    }
    std::optional<GroupSpec> group;
    if (!group_text.empty()) group = parse_group_literal(group_text).group;
    s.view.emplace(load_connection(set_path, elements, group));
    s.graph = s.view->materialize();
    s.label = "Cay(" + s.view->group().literal() + ")";
    return s;
  };

  auto* chi_cmd = cayley_cmd->add_subcommand("chi", "exact chromatic number");
  add_source(chi_cmd);
  bind(chi_cmd, [&] {
    const auto s = load_source();
    const auto res = chromatic_number(s.graph, make_budget(budget, max_nodes));
    bool proper = is_proper(s.graph, res.coloring);
    if (s.view) proper = proper && validate_coloring(*s.view, res.coloring.colors);
    json r{{"graph", s.label},
           {"vertices", s.graph.size()},
           {"edges", s.graph.edge_count()},
           {"lower", res.lower},
           {"upper", res.upper},
           {"exact", res.exact},
           {"status", res.status},
           {"proper", proper},
           {"nodes", res.nodes}};
    if (res.exact) r["chi"] = res.upper;
    if (witness) {
      r["coloring"] = res.coloring.colors;
      r["clique"] = res.clique;
    }
    return Outcome{r, proper ? kExitOk : kExitFinding};
  });

  auto* alpha_cmd = cayley_cmd->add_subcommand("alpha", "exact independence number");
  add_source(alpha_cmd);
  bind(alpha_cmd, [&] {
    const auto s = load_source();
    const auto res = independence_number(s.graph, make_budget(budget, max_nodes));
    bool valid = is_independent(s.graph, res.set);
    if (s.view) {
      std::vector<Index> members(res.set.begin(), res.set.end());
      valid = valid && validate_independent(*s.view, members);
    }
    json r{{"graph", s.label},
           {"vertices", s.graph.size()},
           {"edges", s.graph.edge_count()},
           {"lower", res.lower},
           {"upper", res.upper},
           {"exact", res.exact},
           {"status", res.status},
           {"independent", valid},
           {"nodes", res.nodes}};
    if (res.exact) r["alpha"] = res.lower;
    if (witness) r["set"] = res.set;
    return Outcome{r, valid ? kExitOk : kExitFinding};
  });

  auto* export_cmd = cayley_cmd->add_subcommand("export", "write DIMACS and k-coloring CNF");
  add_source(export_cmd);
  export_cmd->add_option("--dimacs-out", dimacs_out);
  export_cmd->add_option("--cnf-out", cnf_out);
  export_cmd->add_option("--colors", cnf_colors, "color count for the CNF");
  bind(export_cmd, [&] {
    const auto s = load_source();
    json r{{"graph", s.label}, {"vertices", s.graph.size()}, {"edges", s.graph.edge_count()}};
    if (!dimacs_out.empty()) {
      std::ofstream os(dimacs_out);
      if (!os) throw ParseError("cannot write " + dimacs_out);
      write_dimacs(os, s.graph, s.label);
      r["dimacs"] = dimacs_out;
    }
    if (!cnf_out.empty()) {
      if (cnf_colors < 1) throw ParseError("--cnf-out needs --colors >= 1");
      std::ofstream os(cnf_out);
      if (!os) throw ParseError("cannot write " + cnf_out);
      write_coloring_cnf(os, s.graph, cnf_colors);
      r["cnf"] = cnf_out;
      r["colors"] = cnf_colors;
    }
    return Outcome{r};
  });

  // construct / certify-lift
  ConstructFlags cf;
  auto add_construct = [&](CLI::App* sub) {
    sub->add_option("--eq", cf.eq, "equation with a pair of opposite coefficients");
    sub->add_option("--q", cf.q);
    sub->add_option("--primes", cf.primes, "comma list p_1,...,p_n");
    sub->add_option("--p", cf.p, "lift prime or 'auto'");
    sub->add_option("--beta", cf.beta, "E0 deficit, rational or 'default'");
    sub->add_option("--T", cf.t, "F0 threshold, rational or 'default'");
    sub->add_option("--save-dir", cf.save_dir, "write E0, F0, E, F, A set files");
  };
  auto* construct_cmd = app.add_subcommand("construct", "build E0, F0 and the lift to F_p");
  add_construct(construct_cmd);
  bind(construct_cmd, [&] {
    const auto params = construction_params(cf);
    const auto pc = build_product_construction(params);
    const auto lift = lift_to_Fp(pc, params.p.value_or(auto_lift_prime(pc)));
    save_construction(cf.save_dir, pc, lift);
    return Outcome{construction_report(cf, params, pc, lift)};
  });

  auto* certify_cmd = app.add_subcommand("certify-lift", "construct, lift and run every certificate");
  add_construct(certify_cmd);
  certify_cmd->add_flag("!--no-negative-control", cf.negative_control, "skip the unrestricted-F control");
  bind(certify_cmd, [&] {
    const auto params = construction_params(cf);
    const auto pc = build_product_construction(params);
    Outcome o;
    const auto lift = lift_to_Fp(pc, params.p.value_or(auto_lift_prime(pc)));
    save_construction(cf.save_dir, pc, lift);
    o.report = construction_report(cf, params, pc, lift);
    const auto key = construction_key(cf) + "|p=" + std::to_string(lift.p) + "|control=" +
                     std::to_string(cf.negative_control);
    const auto cache_path = certificate_cache_path(key);
    json bundle;
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
      std::ifstream is(cache_path);
      bundle = json::parse(is, nullptr, false);
      if (!bundle.is_discarded() && bundle.value("key", "") == key) o.cache = "hit";
    }
    if (o.cache != "hit") {
      const auto certs = certify_lift(pc, lift, cf.negative_control);
      json list = json::array();
      for (const auto* c : {&certs.e_solution_free, &certs.induced_isomorphism, &certs.extension,
                            &certs.no_mixed_solution, &certs.a_solution_free}) {
        list.push_back(certificate_json(*c));
      }
      if (cf.negative_control) list.push_back(certificate_json(certs.negative_control));
      bundle = {{"key", key},
                {"certificates", list},
                {"induced_mismatch",
                 {{"fp_only_differences", certs.fp_only_differences},
                  {"zm_only_differences", certs.zm_only_differences},
                  {"mismatched_edges", certs.mismatched_edges}}},
                {"all_required_pass", certs.all_required_pass()},
                {"a_solution_free", certs.a_solution_free.passed}};
      if (!cache_path.empty()) {
        o.cache = "miss";
        std::filesystem::create_directories(cache_dir());
        std::ofstream(cache_path) << bundle.dump() << '\n';
      }
    }
    o.report["certificates"] = bundle["certificates"];
    o.report["induced_mismatch"] = bundle["induced_mismatch"];
    o.report["all_required_pass"] = bundle["all_required_pass"];
    const bool pass = bundle["all_required_pass"].get<bool>() && bundle["a_solution_free"].get<bool>();
    o.code = pass ? kExitOk : kExitFinding;
    return o;
  });

  // bohr-color
  auto* bohr_cmd = app.add_subcommand("bohr-color", "Bohr-set coloring of Cay(F_p, A)");
  std::int64_t bohr_p = 0;
  std::string bohr_eq, nu_text, rho_text, delta_text, colors_out;
  int s_index = -1;
  bohr_cmd->add_option("--p", bohr_p);
  bohr_cmd->add_option("--set", set_path);
  bohr_cmd->add_option("--elements", elements);
  bohr_cmd->add_option("--eq", bohr_eq)->required();
  bohr_cmd->add_option("--nu", nu_text, "default 1/10");
  bohr_cmd->add_option("--rho", rho_text, "default 1/10");
  bohr_cmd->add_option("--delta", delta_text, "derive nu and rho from delta");
  bohr_cmd->add_option("--s", s_index, "coefficient index s (0-based)");
  bohr_cmd->add_option("--colors-out", colors_out, "write one color per line");
  bind(bohr_cmd, [&] {
    std::optional<GroupSpec> group;
    if (bohr_p > 0) group = GroupSpec::cyclic(bohr_p);
    const auto a = load_connection(set_path, elements, group);
    const auto eq = Equation::parse(bohr_eq);
    SpectrumParams params;
    if (!delta_text.empty()) params = SpectrumParams::from_delta(parse_rational(delta_text), eq.abs_sum());
    if (!nu_text.empty()) params.nu = parse_rational(nu_text);
    if (!rho_text.empty()) params.rho = parse_rational(rho_text);
    if (s_index >= 0) params.s_index = s_index;
    const auto res = bohr_color(a, eq, params);
    const auto& rep = res.report;
    json r{{"p", rep.p},
           {"equation", eq.to_array_string()},
           {"A", rep.a_size},
           {"k", rep.k},
           {"s", rep.s_index},
           {"c_s", rep.c_s},
           {"theory_applies", rep.theory_applies},
           {"nu", rep.nu},
           {"rho", rep.rho},
           {"M", rep.arcs},
           {"L", rep.spectrum_size},
           {"Gamma", rep.gamma_size},
           {"B", rep.bohr_size},
           {"A_cap_B", rep.claim.intersection},
           {"claim_passed", rep.claim.passed},
           {"cells", rep.cells},
           {"max_cell_degree", rep.max_cell_degree},
           {"colors_used", rep.colors_used},
           {"budget", rep.budget},
           {"within_budget", rep.within_budget},
           {"proper", rep.proper}};
    if (!colors_out.empty()) {
      std::ofstream os(colors_out);
      if (!os) throw ParseError("cannot write " + colors_out);
      for (int c : res.colors) os << c << '\n';
    }
    const bool finding = !rep.proper || (rep.claim.passed && !rep.within_budget);
    return Outcome{r, finding ? kExitFinding : kExitOk};
  });

  // indep-set
  auto* indep_cmd = app.add_subcommand("indep-set", "the set I in Z_p^n and its independence");
  int ind_p = 3, ind_n = 6;
  std::string ind_lambda;
  std::uint64_t ind_samples = 100000;
  std::size_t ind_check_cap = 20000;
  indep_cmd->add_option("--p", ind_p);
  indep_cmd->add_option("--n", ind_n);
  indep_cmd->add_option("--lambda", ind_lambda, "threshold n/2 - lambda sqrt(n); default p");
  indep_cmd->add_option("--samples", ind_samples, "Monte-Carlo draws when p^n is large");
  indep_cmd->add_option("--check-cap", ind_check_cap, "largest |I| checked pairwise");
  bind(indep_cmd, [&] {
    const Rational lambda = ind_lambda.empty() ? Rational(ind_p) : parse_rational(ind_lambda);
    const auto set = IndependentSetI::scaled(ind_p, ind_n, lambda);
    const auto ball = HammingBall::scaled(ind_p, ind_n, lambda);
    const auto est = density_of_I(set, ind_samples, seed);
    json r{{"p", ind_p},
           {"n", ind_n},
           {"lambda", to_string(lambda)},
           {"threshold", set.threshold.to_string()},
           {"radius", ball.radius.to_string()},
           {"degenerate", set.degenerate()},
           {"density", {{"value", est.density},
                        {"ci", {est.ci_low, est.ci_high}},
                        {"samples", est.samples},
                        {"hits", est.hits},
                        {"exact", est.exact}}}};
    int code = kExitOk;
    if (est.exact) {
      const auto members = set.materialize();
      r["size"] = members.size();
      if (members.size() <= ind_check_cap) {
        const CayleyView view(ball.group(), [&](Index d) { return ball.contains(ball.group().element_at(d)); });
        const bool independent = validate_independent(view, members.members());
        r["independent"] = independent;
        if (!independent) code = kExitFinding;
      }
    }
    return Outcome{r, code};
  });

  // Merge config fields into the argument list.
  const auto config_path = find_config_path(args);
  try {
    if (config_path) {
      std::ifstream is(*config_path);
      if (!is) throw ParseError("cannot read config " + *config_path);
      json cfg;
      try {
        cfg = json::parse(is);
      } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!cfg.is_object()) throw ParseError("config must be a JSON object");
      auto words = command_words(args);
      std::vector<std::string> cfg_words;
      if (cfg.contains("command")) {
        std::istringstream ws(cfg["command"].get<std::string>());
        for (std::string w; ws >> w;) cfg_words.push_back(w);
      }
      if (!words.empty() && !cfg_words.empty() && words != cfg_words) {
        throw ParseError("config command does not match the command line");
      }
      if (words.empty()) {
        if (cfg_words.empty()) throw ParseError("config has no command");
        args.insert(args.begin(), cfg_words.begin(), cfg_words.end());
        words = cfg_words;
      }
      CLI::App* sub = &app;
      for (const auto& w : words) sub = sub->get_subcommand(w);
      for (const auto& [key, value] : cfg.items()) {
        if (key == "command") continue;
        const bool global = app.get_option_no_throw("--" + key) != nullptr && key != "config";
        if (!global && sub->get_option_no_throw("--" + key) == nullptr) {
          throw ParseError("unknown config field '" + key + "'");
        }
        if (flag_given(raw_args, key)) continue;
        std::vector<std::string> extra;
        if (value.is_boolean()) {
          if (value.get<bool>()) extra.push_back("--" + key);
        } else {
          extra = {"--" + key, config_value(value, key)};
        }
        // Globals go first so they are parsed by the top-level app.
        if (global) {
          args.insert(args.begin(), extra.begin(), extra.end());
        } else {
          args.insert(args.end(), extra.begin(), extra.end());
        }
      }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      err << "error: invalid arguments: " << e.what() << '\n';
      return kExitError;
    }

    const auto start = Clock::now();
    Outcome o = action();
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    json report;
    std::string command;
    for (const auto& w : command_words(args)) command += (command.empty() ? "" : " ") + w;
    report["command"] = command;
    report["seed"] = seed;
    for (auto& [k, v] : o.report.items()) report[k] = v;
    report["exit_code"] = o.code;
    report["timing"] = {{"seconds", seconds}, {"cache", o.cache}};
    const auto text = report.dump(2) + "\n";
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream os(out_path);
      if (!os) throw ParseError("cannot write " + out_path);
      os << text;
    }
    return o.code;
  } catch (const ParseError& e) {
    err << "error: schema: " << e.what() << '\n';
  } catch (const CapExceeded& e) {
    err << "error: cap exceeded: " << e.what() << '\n';
  } catch (const InfeasibleParams& e) {
    err << "error: infeasible parameters: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace chroma::cli
