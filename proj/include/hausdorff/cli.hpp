#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hausdorff/hardy.hpp"
#include "hausdorff/io.hpp"
#include "hausdorff/registry.hpp"

namespace hausdorff::cli {

using json = nlohmann::json;

/// Every option of every subcommand; the resolved subset is echoed into the
/// report.
struct RunConfig {
  std::string subcommand;
  std::string op;
  std::string params = "{}";
  double p = 2.0;
  std::optional<double> q;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t depth = 8;
  double l_re = 1.0;
  double l_im = 0.0;
  std::string function = "lorentzian";
  int power = 1;
  double from = -2.0;
  double to = 2.0;
  std::size_t count = 5;
  std::string domain = "real_line";
  std::string family;
  double u = 2.0;
  std::size_t atoms = 4;
  int dim = 1;
  double nodes_per_unit = 200.0;
  std::size_t samples = 20;
  std::string catalog_action;
  std::string catalog_name;
  std::optional<long> n;
  std::string format = "json";
  std::string out;
};

namespace detail {

inline std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

inline json parse_params(const RunConfig& c) {
  json p;
  try {
    p = json::parse(c.params);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InvalidArgument, std::string("--params is not valid JSON: ") + e.what());
  }
  if (c.n) p["n"] = *c.n;
  return p;
}

/// Finite double for JSON: p = inf is accepted on the command line as "inf".
inline double parse_real(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  require(used == s.size(), ErrorCode::InvalidArgument, "not a number: " + s);
  return v;
}

inline bool is_assertion(ErrorCode c) { return c == ErrorCode::ViolatedBound || c == ErrorCode::NotAnAtom; }

// Subcommand bodies. Each returns the "result" object and sets `failed`
// when a checked property does not hold.

inline json run_apply(const RunConfig& c, const json& params, std::vector<registry::ApplyRow>& rows) {
  const auto& e = registry::find(c.op);
  require(static_cast<bool>(e.apply), ErrorCode::InvalidArgument, c.op + " does not support apply");
  registry::ApplyRequest r{c.function, c.power, c.from, c.to, c.count};
  rows = e.apply(registry::resolve(e, params), r);
  json pts = json::array();
  for (const auto& row : rows)
    pts.push_back({{"point", row.point}, {"re", row.value.real()}, {"im", row.value.imag()}});
  return json{{"operator", c.op}, {"values", pts}};
}

inline json run_doubling(const RunConfig& c, bool& failed) {
  require(c.dim == 1 || c.dim == 2, ErrorCode::InvalidArgument, "doubling supports --dim 1 or 2");
  require(c.nodes_per_unit > 0 && c.samples > 0, ErrorCode::InvalidArgument, "resolution and samples must be positive");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> center(-0.1, 0.1), radius(0.05, 0.1);
  const double expected = std::pow(2.0, c.dim);
  json checks = json::array();
  DoublingProfile profile;
  double worst_extended = 0.0;
  auto run = [&](const auto& dom, auto make_point) {
    using P = std::decay_t<decltype(make_point(0.0, 0.0))>;
    std::vector<Ball<P>> balls;
    for (std::size_t i = 0; i < c.samples; ++i) {
      const double a = center(rng), b = center(rng);
      balls.push_back(Ball<P>{make_point(a, b), radius(rng)});
    }
    profile = estimate_doubling(*dom, std::span<const Ball<P>>(balls));
    for (const auto& b : balls)
      for (double k : {2.0, 4.0, 8.0}) {
        const double big = ball_measure(*dom, Ball<P>{b.center, k * b.radius});
        const double small = ball_measure(*dom, b);
        worst_extended = std::max(worst_extended, big / (profile.C_nu * std::pow(k, profile.s) * small));
      }
  };
  if (c.dim == 1)
    run(real_line(-1.0, 1.0, c.nodes_per_unit), [](double a, double) { return a; });
  else
    run(real_space<2>(-1.0, 1.0, c.nodes_per_unit), [](double a, double b) { return RealPoint<2>{a, b}; });
  const bool within = std::abs(profile.C_nu - expected) <= 0.05 * expected;
  const bool extended = worst_extended <= 1.02;
  failed = !(within && extended);
  return json{{"dim", c.dim},
              {"C_nu", profile.C_nu},
              {"s", profile.s},
              {"expected", expected},
              {"within_5_percent", within},
              {"extended_ratio_max", worst_extended},
              {"extended_holds", extended}};
}

template <class P, class Fam>
json atom_batch(DomainPtr<P> dom, const RunConfig& c, const AtomOptions& opt, const Fam* fam,
                std::optional<typename Fam::first_type> u, bool& failed) {
  json list = json::array();
  std::size_t passed = 0;
  for (std::size_t i = 0; i < c.atoms; ++i) {
    auto rng = trial_engine(c.seed, i);
    const auto q = c.q.value_or(2.0);
    auto a = random_atom(dom, q, rng, opt);
    const auto check = verify_atom(a);
    json item{{"atom", i}, {"support_radius", a.support.radius}, {"check", io::check_json(check)}};
    bool ok = check.pass();
    if constexpr (!std::is_same_v<typename Fam::second_type, int>) {
      if (fam && u) try {
        const auto t = transform_atom(a, *u, fam->second, *dom->analytic_doubling);
        item["transformed"] = io::check_json(verify_atom(t));
      } catch (const Error& err) {
        item["transformed_error"] = err.what();
        ok = false;
      }
    }
    passed += ok ? 1 : 0;
    list.push_back(item);
  }
  failed = passed != c.atoms;
  return json{{"domain", c.domain}, {"atoms", list}, {"passed", passed}, {"count", c.atoms}};
}

inline json run_atoms(const RunConfig& c, bool& failed) {
  require(!c.q || *c.q > 1.0, ErrorCode::InvalidArgument, "q must exceed 1");
  if (c.domain == "real_line") {
    using Pair = std::pair<double, AutomorphismFamily<double, double>>;
    std::optional<Pair> fam;
    if (c.family == "translation") fam = Pair{c.u, translations()};
    else if (c.family == "dilation") fam = Pair{c.u, dilations()};
    else require(c.family.empty(), ErrorCode::InvalidArgument, "real_line families: translation|dilation");
    return atom_batch(real_line(-8.0, 8.0, 100.0), c, AtomOptions{}, fam ? &*fam : nullptr,
                      fam ? std::optional<double>(c.u) : std::nullopt, failed);
  }
  require(c.family.empty(), ErrorCode::InvalidArgument, "--family is available on real_line only");
  using NoFam = std::pair<int, int>;
  if (c.domain == "integers")
    return atom_batch<long, NoFam>(integers(-100, 100), c, {20.0, 2.0, 8.0, 0.5}, nullptr, std::nullopt, failed);
  if (c.domain == "torus")
    return atom_batch<ComplexPoint<1>, NoFam>(torus<1>(256), c, {std::numbers::pi, 0.3, 1.0, 0.5}, nullptr,
                                              std::nullopt, failed);
  if (c.domain == "real_plane")
    return atom_batch<RealPoint<2>, NoFam>(real_space<2>(-3.0, 3.0, 30.0), c, AtomOptions{}, nullptr, std::nullopt,
                                           failed);
  fail(ErrorCode::InvalidArgument, "unknown domain '" + c.domain + "' (real_line|integers|torus|real_plane)");
}

inline json run_catalog(const RunConfig& c, const json& params, bool& failed) {
  if (c.catalog_action == "list") {
    json list = json::array();
    for (const auto& e : registry::catalog()) {
      json facts = json::array();
      for (const auto& f : e.reference_facts)
        facts.push_back({{"input", f.input}, {"expected", f.expected}, {"provenance", f.provenance}});
      list.push_back({{"name", e.name}, {"summary", e.summary}, {"defaults", e.defaults}, {"reference_facts", facts}});
    }
    return json{{"operators", list}};
  }
  require(!c.catalog_name.empty(), ErrorCode::InvalidArgument, "catalog " + c.catalog_action + " needs a name");
  const auto& e = registry::find(c.catalog_name);
  const auto resolved = registry::resolve(e, params);
  if (c.catalog_action == "build") return json{{"name", e.name}, {"params", resolved}, {"operator", e.build(resolved)}};
  if (c.catalog_action == "selftest") {
    const auto r = e.selftest(resolved, c.seed);
    failed = r.passed != r.checks;
    json out{{"name", e.name}, {"params", resolved}, {"checks", r.checks}, {"passed", r.passed}, {"details", r.details}};
    // The determinant test reports its sample matches at top level.
    for (const auto& d : r.details)
      if (d.contains("matches")) {
        out["matches"] = d["matches"];
        out["samples"] = d["samples"];
      }
    return out;
  }
  fail(ErrorCode::InvalidArgument, "catalog actions: list | build <name> | selftest <name>");
}

inline json config_json(const RunConfig& c, const json& params) {
  json out{{"subcommand", c.subcommand}, {"seed", c.seed}, {"format", c.format}};
  const auto& s = c.subcommand;
  if (s == "apply" || s == "bounds" || s == "contraction" || s == "regularity" || s == "h1") {
    out["operator"] = c.op;
    out["params"] = registry::resolve(registry::find(c.op), params);
  }
  if (s == "apply") {
    out["function"] = c.function;
    out["power"] = c.power;
    out["from"] = c.from;
    out["to"] = c.to;
    out["count"] = c.count;
  }
  if (s == "bounds" || s == "contraction") out["p"] = io::real(c.p);
  if (s == "bounds" && c.q) out["q"] = io::real(*c.q);
  if (s == "contraction") out["trials"] = c.trials;
  if (s == "regularity") {
    out["depth"] = c.depth;
    out["l"] = io::complex_json(Complex(c.l_re, c.l_im));
  }
  if (s == "h1" || s == "atoms") {
    out["q"] = io::real(c.q.value_or(2.0));
    out["atoms"] = c.atoms;
  }
  if (s == "atoms") {
    out["domain"] = c.domain;
    out["family"] = c.family;
    out["u"] = c.u;
  }
  if (s == "doubling") {
    out["dim"] = c.dim;
    out["nodes_per_unit"] = c.nodes_per_unit;
    out["samples"] = c.samples;
  }
  if (s == "catalog") {
    out["action"] = c.catalog_action;
    out["name"] = c.catalog_name;
    if (!c.catalog_name.empty()) out["params"] = registry::resolve(registry::find(c.catalog_name), params);
  }
  return out;
}

inline std::string csv(const std::vector<registry::ApplyRow>& rows) {
  std::ostringstream s;
  s.precision(17);
  s << "x,re,im\n";
  for (const auto& r : rows) s << r.coordinate << ',' << r.value.real() << ',' << r.value.imag() << '\n';
  return s.str();
}

}  // namespace detail

/// Runs one command. Exit codes: 0 success, 1 a checked property failed,
/// 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Hausdorff-type operator toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  std::string p_text = "2", q_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "random seed (always echoed in the report)");
    sub->add_option("--format", c.format, "json | csv (csv for grid outputs of apply)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", c.out, "write the report here instead of stdout");
  };
  auto add_op = [&](CLI::App* sub) {
    sub->add_option("--op", c.op, "catalog operator name")->required();
    sub->add_option("--params", c.params, "operator parameters as a JSON object");
  };

  auto* apply_cmd = app.add_subcommand("apply", "evaluate Hf on a sweep of points");
  add_op(apply_cmd);
  apply_cmd->add_option("--f", c.function, "test function name");
  apply_cmd->add_option("--power", c.power, "exponent for the monomial function");
  apply_cmd->add_option("--from", c.from);
  apply_cmd->add_option("--to", c.to);
  apply_cmd->add_option("--count", c.count);
  add_common(apply_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "phi_norm_Ap and (with --q) the H^1 constant");
  add_op(bounds_cmd);
  bounds_cmd->add_option("--p", p_text, "p in [1, inf]");
  bounds_cmd->add_option("--q", q_text, "q in (1, inf]");
  add_common(bounds_cmd);

  auto* contraction_cmd = app.add_subcommand("contraction", "sample ||Hf||_p/||f||_p against the bound");
  add_op(contraction_cmd);
  contraction_cmd->add_option("--p", p_text, "p in [1, inf]");
  contraction_cmd->add_option("--trials", c.trials);
  add_common(contraction_cmd);

  auto* regularity_cmd = app.add_subcommand("regularity", "limit of H(l + exp(-x^2)) along |x| -> inf");
  add_op(regularity_cmd);
  regularity_cmd->add_option("--depth", c.depth);
  regularity_cmd->add_option("--l", c.l_re, "real part of the limit");
  regularity_cmd->add_option("--l-im", c.l_im, "imaginary part of the limit");
  add_common(regularity_cmd);

  auto* atoms_cmd = app.add_subcommand("atoms", "generate and verify random atoms");
  atoms_cmd->add_option("--domain", c.domain, "real_line | integers | torus | real_plane");
  atoms_cmd->add_option("--q", q_text, "q in (1, inf]");
  atoms_cmd->add_option("--count", c.atoms);
  atoms_cmd->add_option("--family", c.family, "transform under translation | dilation (real_line)");
  atoms_cmd->add_option("--u", c.u, "family parameter for the transform");
  add_common(atoms_cmd);

  auto* h1_cmd = app.add_subcommand("h1", "H^1 coefficient bookkeeping on a random decomposition");
  add_op(h1_cmd);
  h1_cmd->add_option("--q", q_text, "q in (1, inf]");
  h1_cmd->add_option("--atoms", c.atoms);
  add_common(h1_cmd);

  auto* doubling_cmd = app.add_subcommand("doubling", "estimate the doubling constant of R^d");
  doubling_cmd->add_option("--dim", c.dim);
  doubling_cmd->add_option("--nodes-per-unit", c.nodes_per_unit);
  doubling_cmd->add_option("--samples", c.samples);
  add_common(doubling_cmd);

  auto* catalog_cmd = app.add_subcommand("catalog", "list | build <name> | selftest <name>");
  catalog_cmd->add_option("action", c.catalog_action)->required()->check(CLI::IsMember({"list", "build", "selftest"}));
  catalog_cmd->add_option("name", c.catalog_name);
  catalog_cmd->add_option("--params", c.params, "operator parameters as a JSON object");
  catalog_cmd->add_option("--n", c.n, "shorthand for params.n");
  add_common(catalog_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();

  bool failed = false;
  json result, config;
  std::vector<registry::ApplyRow> rows;
  try {
    c.p = detail::parse_real(p_text);
    if (!q_text.empty()) c.q = detail::parse_real(q_text);
    require(c.p >= 1.0, ErrorCode::InvalidArgument, "p must be >= 1");
    const json params = detail::parse_params(c);
    config = detail::config_json(c, params);
    const Complex l(c.l_re, c.l_im);
    const auto& s = c.subcommand;
    auto entry = [&]() -> const registry::CatalogEntry& { return registry::find(c.op); };
    auto need = [&](const auto& handler) {
      require(static_cast<bool>(handler), ErrorCode::InvalidArgument, c.op + " does not support " + s);
    };
    if (s == "apply") {
      result = detail::run_apply(c, params, rows);
    } else if (s == "bounds") {
      need(entry().bounds);
      result = entry().bounds(registry::resolve(entry(), params), c.p, c.q);
    } else if (s == "contraction") {
      need(entry().contraction);
      result = entry().contraction(registry::resolve(entry(), params), c.p, c.trials, c.seed);
    } else if (s == "regularity") {
      need(entry().regularity);
      result = entry().regularity(registry::resolve(entry(), params), l, c.depth);
    } else if (s == "h1") {
      need(entry().h1);
      result = entry().h1(registry::resolve(entry(), params), c.q.value_or(2.0), c.atoms, c.seed);
    } else if (s == "atoms") {
      result = detail::run_atoms(c, failed);
    } else if (s == "doubling") {
      result = detail::run_doubling(c, failed);
    } else {
      result = detail::run_catalog(c, params, failed);
    }
  } catch (const Error& e) {
    if (!detail::is_assertion(e.code())) {
      err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
      return 2;
    }
    failed = true;
    result = json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
  } catch (const json::exception& e) {
    err << "error: malformed parameters: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  std::string text;
  if (c.format == "csv") {
    if (c.subcommand != "apply") {
      err << "error: csv output is available for apply only\n";
      return 2;
    }
    text = detail::csv(rows);
  } else {
    json report{{"command", c.subcommand},
                {"config", config},
                {"result", result},
                {"status", failed ? "fail" : "ok"},
                {"timestamp", detail::utc_now()}};
    text = report.dump(2) + "\n";
  }
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << c.out << '\n';
      return 2;
    }
    file << text;
  }
  return failed ? 1 : 0;
}

}  // namespace hausdorff::cli
