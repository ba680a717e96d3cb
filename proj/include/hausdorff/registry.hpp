#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hausdorff/catalog.hpp"
#include "hausdorff/hardy.hpp"
#include "hausdorff/io.hpp"
#include "hausdorff/operator.hpp"

namespace hausdorff::registry {

using json = nlohmann::json;

struct ReferenceFact {
  std::string input;
  std::string expected;
  std::string provenance;
};

struct ApplyRequest {
  std::string function = "lorentzian";
  int power = 1;
  double from = -2.0;
  double to = 2.0;
  std::size_t count = 5;
};

/// One row of an apply result: point, Re Hf, Im Hf.
struct ApplyRow {
  json point;
  double coordinate = 0.0;
  Complex value{};
};

struct SelftestResult {
  std::size_t checks = 0;
  std::size_t passed = 0;
  json details = json::array();
};

/// A catalog operator behind a JSON-parameterized, type-erased interface.
/// Handlers that do not apply to the entry are left empty.
struct CatalogEntry {
  std::string name;
  std::string summary;
  json defaults = json::object();
  std::vector<ReferenceFact> reference_facts;
  std::function<json(const json&)> build;
  std::function<json(const json&, double p, std::optional<double> q)> bounds;
  std::function<json(const json&, double p, std::size_t trials, std::uint64_t seed)> contraction;
  std::function<std::vector<ApplyRow>(const json&, const ApplyRequest&)> apply;
  std::function<json(const json&, Complex l, std::size_t depth)> regularity;
  std::function<json(const json&, double q, std::size_t atoms, std::uint64_t seed)> h1;
  std::function<SelftestResult(const json&, std::uint64_t seed)> selftest;
};

/// defaults overlaid with the caller's parameters.
inline json resolve(const CatalogEntry& e, const json& params) {
  json out = e.defaults;
  if (!params.is_null()) {
    require(params.is_object(), ErrorCode::InvalidArgument, "operator parameters must be a JSON object");
    for (auto it = params.begin(); it != params.end(); ++it) {
      require(out.contains(it.key()), ErrorCode::InvalidArgument,
              "unknown parameter '" + it.key() + "' for " + e.name);
      out[it.key()] = it.value();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact determinant oracle

/// Fraction-free (Bareiss) elimination; exact for integer matrices whose
/// minors fit in 64 bits.
inline std::int64_t bareiss_determinant(SquareMatrix<std::int64_t> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 v = static_cast<__int128>(m(i, j)) * m(k, k) - static_cast<__int128>(m(i, k)) * m(k, j);
        m(i, j) = static_cast<std::int64_t>(v / prev);
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline SquareMatrix<std::int64_t> random_integer_matrix(std::size_t n, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> d(-bound, bound);
  SquareMatrix<std::int64_t> m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = d(rng);
  return m;
}

// ---------------------------------------------------------------------------
// Per-point-type plumbing for the generic handlers

namespace detail {

inline double lorentzian(double t) { return 1.0 / (1.0 + t * t); }

template <class P>
struct PointTraits;

template <>
struct PointTraits<double> {
  static PointFunction<double> function(const ApplyRequest& r) {
    if (r.function == "lorentzian") return [](double t) { return Complex(lorentzian(t)); };
    if (r.function == "gaussian") return [](double t) { return Complex(std::exp(-t * t)); };
    if (r.function == "one") return [](double) { return Complex(1.0); };
    if (r.function == "sine") return [](double t) { return Complex(std::sin(t)); };
    fail(ErrorCode::InvalidArgument, "unknown function '" + r.function + "' (lorentzian|gaussian|one|sine)");
  }
  static double point(const Domain<double>&, double t) { return t; }
};

template <>
struct PointTraits<long> {
  static PointFunction<long> function(const ApplyRequest& r) {
    if (r.function == "delta0") return [](long k) { return Complex(k == 0 ? 1.0 : 0.0); };
    if (r.function == "one") return [](long) { return Complex(1.0); };
    if (r.function == "lorentzian") return [](long k) { return Complex(lorentzian(double(k))); };
    fail(ErrorCode::InvalidArgument, "unknown function '" + r.function + "' (delta0|one|lorentzian)");
  }
  static long point(const Domain<long>&, double t) { return std::lround(t); }
};

template <>
struct PointTraits<RealPoint<2>> {
  static PointFunction<RealPoint<2>> function(const ApplyRequest& r) {
    if (r.function == "lorentzian") return [](const RealPoint<2>& x) { return Complex(lorentzian(x[0])); };
    if (r.function == "gaussian")
      return [](const RealPoint<2>& x) { return Complex(std::exp(-x[0] * x[0] - x[1] * x[1])); };
    if (r.function == "one") return [](const RealPoint<2>&) { return Complex(1.0); };
    fail(ErrorCode::InvalidArgument, "unknown function '" + r.function + "' (lorentzian|gaussian|one)");
  }
  static RealPoint<2> point(const Domain<RealPoint<2>>&, double t) { return {t, 0.3}; }
};

template <std::size_t N>
struct ComplexPointTraits {
  static PointFunction<ComplexPoint<N>> function(const ApplyRequest& r) {
    const int m = r.power;
    if (r.function == "monomial")
      return [m](const ComplexPoint<N>& z) {
        Complex v(1.0);
        for (const auto& c : z) v *= std::pow(c, m);
        return v;
      };
    if (r.function == "identity") return [](const ComplexPoint<N>& z) { return z[0]; };
    if (r.function == "one") return [](const ComplexPoint<N>&) { return Complex(1.0); };
    fail(ErrorCode::InvalidArgument, "unknown function '" + r.function + "' (monomial|identity|one)");
  }
  /// On the torus t is an angle; elsewhere the point t + i in every coordinate.
  static ComplexPoint<N> point(const Domain<ComplexPoint<N>>& dom, double t) {
    ComplexPoint<N> z;
    for (std::size_t j = 0; j < N; ++j) {
      const double tj = t * (1.0 - 0.3 * double(j)) + 0.2 * double(j);
      z[j] = dom.kind == PointKind::TorusAngles ? std::polar(1.0, tj) : Complex(tj, 1.0);
    }
    return z;
  }
};

template <>
struct PointTraits<ComplexPoint<1>> : ComplexPointTraits<1> {};
template <>
struct PointTraits<ComplexPoint<2>> : ComplexPointTraits<2> {};

template <>
struct PointTraits<Complex> {
  static PointFunction<Complex> function(const ApplyRequest& r) {
    if (r.function == "one") return [](Complex) { return Complex(1.0); };
    if (r.function == "identity") return [](Complex z) { return z; };
    if (r.function == "square") return [](Complex z) { return z * z; };
    fail(ErrorCode::InvalidArgument, "unknown function '" + r.function + "' (one|identity|square)");
  }
  static Complex point(const Domain<Complex>&, double t) {
    require(std::abs(t) < 1.0, ErrorCode::InvalidArgument, "disc points need |t| < 1");
    return Complex(t, 0.0);
  }
};

template <class P>
AtomOptions atom_options(const Domain<P>& dom) {
  switch (dom.kind) {
    case PointKind::Integer: return {20.0, 2.0, 8.0, 0.5};
    case PointKind::TorusAngles: return {std::numbers::pi, 0.3, 1.0, 0.5};
    default: return {};
  }
}

template <class P>
std::vector<double> sweep(const ApplyRequest& r) {
  require(r.count >= 1, ErrorCode::InvalidArgument, "need at least one point");
  std::vector<double> t(r.count, r.from);
  for (std::size_t i = 1; i < r.count; ++i)
    t[i] = r.from + (r.to - r.from) * double(i) / double(r.count - 1);
  return t;
}

}  // namespace detail

/// Fills build/bounds/contraction/apply/h1 (and regularity on R and Z)
/// from a typed builder.
template <class U, class P>
CatalogEntry make_entry(std::string name, std::string summary, json defaults,
                        std::function<HausdorffOperator<U, P>(const json&)> builder) {
  CatalogEntry e;
  e.name = std::move(name);
  e.summary = std::move(summary);
  e.defaults = std::move(defaults);
  e.build = [builder](const json& p) { return io::describe(builder(p)); };
  e.bounds = [builder](const json& params, double p, std::optional<double> q) {
    const auto op = builder(params);
    json out{{"operator", op.name}, {"p", io::real(p)}, {"bound", io::real(phi_norm_Ap(op, p))}};
    if (q) {
      require(op.domain->analytic_doubling.has_value(), ErrorCode::InvalidArgument, "domain has no doubling profile");
      out["q"] = io::real(*q);
      out["n_bound"] = io::real(n_bound(op, *q, *op.domain->analytic_doubling));
    }
    return out;
  };
  e.contraction = [builder](const json& params, double p, std::size_t trials, std::uint64_t seed) {
    const auto op = builder(params);
    auto report = io::bound_json(check_lp_contraction(op, p, trials, seed));
    report["operator"] = op.name;
    report["p"] = io::real(p);
    report["trials"] = trials;
    report["seed"] = seed;
    return report;
  };
  if constexpr (requires { detail::PointTraits<P>::function(ApplyRequest{}); }) {
    e.apply = [builder](const json& params, const ApplyRequest& r) {
      const auto op = builder(params);
      const auto f = detail::PointTraits<P>::function(r);
      std::vector<P> pts;
      const auto ts = detail::sweep<P>(r);
      for (double t : ts) pts.push_back(detail::PointTraits<P>::point(*op.domain, t));
      const auto samples = apply_grid(op, f, pts);
      std::vector<ApplyRow> rows;
      for (std::size_t i = 0; i < pts.size(); ++i)
        rows.push_back(ApplyRow{io::point_json(samples.points[i]), ts[i], samples.values[i]});
      return rows;
    };
  }
  if constexpr (std::is_same_v<P, double> || std::is_same_v<P, long>) {
    e.regularity = [builder](const json& params, Complex l, std::size_t depth) {
      const auto op = builder(params);
      auto f = [l](const P& x) { return l + std::exp(-double(x) * double(x)); };
      FilterBase<P> base;
      if constexpr (std::is_same_v<P, double>)
        base = complements_of_compacta();
      else
        base = integer_complements();
      const auto r = check_regularity(op, base, f, l, depth);
      const Complex one_response = apply(op, [](const P&) { return Complex(1.0); }, P{});
      return json{{"operator", op.name},
                  {"defect", r.defect},
                  {"limit_spread", r.limit_spread},
                  {"estimate", io::complex_json(r.estimate)},
                  {"constant_response", io::complex_json(one_response)},
                  {"depth", depth},
                  {"l", io::complex_json(l)}};
    };
  }
  e.h1 = [builder](const json& params, double q, std::size_t atoms, std::uint64_t seed) {
    const auto op = builder(params);
    require(op.domain->analytic_doubling.has_value(), ErrorCode::InvalidArgument, "domain has no doubling profile");
    auto rng = trial_engine(seed, 0);
    const auto dec = random_decomposition(op.domain, q, atoms, rng, detail::atom_options(*op.domain));
    const auto r = check_h1_bound(op, dec, *op.domain->analytic_doubling);
    return json{{"operator", op.name},       {"q", io::real(q)},        {"atoms", atoms},
                {"seed", seed},              {"lhs_upper", r.lhs_upper}, {"rhs", r.rhs},
                {"transformed", r.transformed}, {"h1q_norm_upper", h1q_norm_upper(dec)}};
  };
  e.selftest = [builder](const json& params, std::uint64_t) {
    SelftestResult r;
    const auto op = builder(params);
    validate(op);
    r.checks = r.passed = 1;
    r.details.push_back({{"check", "structural invariants"}, {"pass", true}});
    return r;
  };
  return e;
}

namespace detail {

inline void record(SelftestResult& r, const std::string& what, bool pass, json extra = json::object()) {
  ++r.checks;
  if (pass) ++r.passed;
  extra["check"] = what;
  extra["pass"] = pass;
  r.details.push_back(std::move(extra));
}

inline std::vector<Complex> complex_list(const json& j) {
  std::vector<Complex> out;
  for (const auto& v : j) out.push_back(io::complex_from(v));
  return out;
}

inline ContinuumWindow window_from(const json& p) {
  return ContinuumWindow{p.at("half_width").get<double>(), p.at("nodes_per_unit").get<double>()};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The shipped entries

inline CatalogEntry determinant_entry() {
  CatalogEntry e;
  e.name = "determinant";
  e.summary = "Leibniz determinant: signed sum over column permutations of the diagonal product";
  e.defaults = {{"n", 3}, {"samples", 20}};
  e.reference_facts = {{"M = I_3", "1", "determinant of the identity"},
                       {"M = [[1,2],[3,4]]", "-2", "cofactor expansion"},
                       {"20 random integer n x n matrices", "fraction-free elimination", "exact integer comparison"}};
  auto size = [](const json& p) {
    const auto n = p.at("n").get<long>();
    require(n >= 1, ErrorCode::InvalidArgument, "n must be >= 1");
    return std::size_t(n);
  };
  e.build = [size](const json& p) { return io::describe(determinant_operator<std::int64_t>(size(p))); };
  e.selftest = [size](const json& p, std::uint64_t seed) {
    SelftestResult r;
    const std::size_t n = size(p);
    const auto op = determinant_operator<std::int64_t>(n);
    auto f0 = [](const SquareMatrix<std::int64_t>& m) { return diagonal_product(m); };
    const auto id = SquareMatrix<std::int64_t>::identity(n);
    detail::record(r, "identity", apply_exact<std::int64_t>(op, f0, id) == 1);
    const std::size_t samples = p.at("samples").get<std::size_t>();
    std::size_t matches = 0;
    for (std::size_t t = 0; t < samples; ++t) {
      auto rng = trial_engine(seed, t);
      const auto m = random_integer_matrix(n, rng);
      if (apply_exact<std::int64_t>(op, f0, m) == bareiss_determinant(m)) ++matches;
    }
    detail::record(r, "random matrices vs elimination", matches == samples,
                   {{"matches", matches}, {"samples", samples}});
    return r;
  };
  return e;
}

inline CatalogEntry discrete_hilbert_entry() {
  auto builder = [](const json& p) {
    return discrete_hilbert(p.at("K").get<long>(), {}, p.at("window").get<long>());
  };
  auto e = make_entry<long, long>("discrete_hilbert", "sum over odd u in [-K,K] of 2/(pi u) f(k - u) on Z",
                                  {{"K", 200}, {"window", 600}}, builder);
  e.reference_facts = {{"f = delta_0, k odd", "2/(pi k)", "single surviving term"},
                       {"f = delta_0, k even", "0", "symbol vanishes on even u"},
                       {"f = delta_0, k = 1", "2/pi", "direct formula"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    const auto op = builder(p);
    auto delta = [](long k) { return Complex(k == 0 ? 1.0 : 0.0); };
    double worst = 0.0;
    for (long k = -9; k <= 9; ++k) {
      const double expect = (k % 2 != 0) ? 2.0 / (std::numbers::pi * double(k)) : 0.0;
      worst = std::max(worst, std::abs(apply(op, delta, k) - expect));
    }
    detail::record(r, "delta response", worst < 1e-14, {{"max_error", worst}});
    return r;
  };
  return e;
}

inline CatalogEntry hilbert_entry() {
  auto builder = [](const json& p) {
    return hilbert_transform(p.at("R").get<double>(), p.at("N").get<std::size_t>(), detail::window_from(p));
  };
  auto e = make_entry<double, double>("hilbert", "p.v. integral of f(x - u)/(pi u) over [-R, R]",
                                      {{"R", 200.0}, {"N", 16384}, {"half_width", 8.0}, {"nodes_per_unit", 50.0}},
                                      builder);
  e.reference_facts = {{"f = 1/(1+t^2), x in [-2,2]", "x/(1+x^2) within 1e-3", "closed form"},
                       {"f = 0", "0", "linearity"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    const auto op = builder(p);
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double x = -2.0 + 0.1 * i;
      worst = std::max(worst, std::abs(apply(op, [](double t) { return Complex(detail::lorentzian(t)); }, x) -
                                       x / (1 + x * x)));
    }
    detail::record(r, "lorentzian response", worst <= 1e-3, {{"max_error", worst}});
    return r;
  };
  return e;
}

inline CatalogEntry hilbert_curve_entry() {
  auto builder = [](const json& p) {
    MonomialCurve<2> curve;
    const auto powers = p.at("powers").get<std::vector<int>>();
    require(powers.size() == 2, ErrorCode::InvalidArgument, "the curve entry is planar: two powers");
    for (std::size_t j = 0; j < 2; ++j) {
      curve.coefficients[j] = 1.0;
      curve.powers[j] = powers[j];
    }
    return hilbert_along_curve<2>(curve, {}, p.at("R").get<double>(), p.at("N").get<std::size_t>(),
                                  detail::window_from(p));
  };
  auto e = make_entry<double, RealPoint<2>>(
      "hilbert_curve", "p.v. integral of f(x - gamma(u))/(pi u), gamma(u) = (u^a, u^b)",
      {{"powers", {1, 2}}, {"R", 200.0}, {"N", 16384}, {"half_width", 4.0}, {"nodes_per_unit", 10.0}}, builder);
  e.reference_facts = {{"f(x) = g(x_1), gamma = (u, u^2)", "Hilbert transform of g in x_1", "separation of variables"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    const auto op = builder(p);
    double worst = 0.0;
    for (int i = 0; i <= 8; ++i) {
      const double x = -2.0 + 0.5 * i;
      const auto v = apply(op, [](const RealPoint<2>& y) { return Complex(detail::lorentzian(y[0])); },
                           RealPoint<2>{x, 0.7});
      worst = std::max(worst, std::abs(v - x / (1 + x * x)));
    }
    detail::record(r, "first coordinate acts as Hilbert transform", worst <= 1e-3, {{"max_error", worst}});
    return r;
  };
  return e;
}

inline CatalogEntry cauchy_torus_entry() {
  CatalogEntry e;
  e.name = "cauchy_torus";
  e.summary = "p.v. Cauchy integral over the torus T^n (n = 1, 2)";
  e.defaults = {{"dim", 1}, {"N", 4096}, {"domain_nodes", 64}};
  e.reference_facts = {{"f = z^m, m >= 0", "z^m / 2", "half residue"},
                       {"f = z^-1", "-z^-1 / 2", "partial fractions"},
                       {"n = 2, f = z1 z2", "z1 z2 / 4", "product kernel"}};
  auto dim = [](const json& p) {
    const int d = p.at("dim").get<int>();
    require(d == 1 || d == 2, ErrorCode::InvalidArgument, "cauchy_torus ships dim 1 and 2");
    return d;
  };
  auto b1 = [](const json& p) {
    return cauchy_torus<1>(p.at("N").get<std::size_t>(), p.at("domain_nodes").get<std::size_t>());
  };
  auto b2 = [](const json& p) {
    return cauchy_torus<2>(p.at("N").get<std::size_t>(), p.at("domain_nodes").get<std::size_t>());
  };
  auto e1 = make_entry<TorusPoint<1>, ComplexPoint<1>>(e.name, e.summary, e.defaults, b1);
  auto e2 = make_entry<TorusPoint<2>, ComplexPoint<2>>(e.name, e.summary, e.defaults, b2);
  e.build = [=](const json& p) { return dim(p) == 1 ? e1.build(p) : e2.build(p); };
  e.bounds = [=](const json& p, double pp, std::optional<double> q) {
    return dim(p) == 1 ? e1.bounds(p, pp, q) : e2.bounds(p, pp, q);
  };
  e.contraction = [=](const json& p, double pp, std::size_t t, std::uint64_t s) {
    return dim(p) == 1 ? e1.contraction(p, pp, t, s) : e2.contraction(p, pp, t, s);
  };
  e.apply = [=](const json& p, const ApplyRequest& r) { return dim(p) == 1 ? e1.apply(p, r) : e2.apply(p, r); };
  e.selftest = [=](const json& p, std::uint64_t) {
    SelftestResult r;
    if (dim(p) == 1) {
      const auto op = b1(p);
      double worst = 0.0;
      for (int m = -3; m <= 3; ++m)
        for (int k = 0; k < 32; ++k) {
          const ComplexPoint<1> z{std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.37) / 32.0)};
          const Complex expect = (m >= 0 ? 0.5 : -0.5) * std::pow(z[0], m);
          worst = std::max(worst, std::abs(apply(op, [m](const ComplexPoint<1>& u) { return std::pow(u[0], m); }, z) -
                                           expect));
        }
      detail::record(r, "monomials m = -3..3", worst <= 1e-6, {{"max_error", worst}});
      detail::record(r, "defect 1/2", std::abs(regularity_defect(op) - 0.5) < 1e-9);
    } else {
      const auto op = b2(p);
      const ComplexPoint<2> z{std::polar(1.0, 0.4), std::polar(1.0, -1.1)};
      const auto v = apply(op, [](const ComplexPoint<2>& u) { return u[0] * u[1]; }, z);
      const double err = std::abs(v - z[0] * z[1] / 4.0);
      detail::record(r, "z1 z2 -> z1 z2 / 4", err <= 1e-6, {{"error", err}});
    }
    return r;
  };
  return e;
}

inline CatalogEntry convolution_entry() {
  CatalogEntry e;
  e.name = "convolution";
  e.summary = "f -> f * mu: Gaussian mu on R, or a finite weighted mu on Z";
  e.defaults = {{"group", "R"},        {"sigma", 0.5},   {"R", 6.0},           {"n", 601},
                {"half_width", 8.0},   {"nodes_per_unit", 50.0},               {"points", {-1, 1}},
                {"weights", {0.5, 0.5}}, {"window", 200}};
  e.reference_facts = {{"mu = delta_0", "identity", "trivial"},
                       {"mu = (delta_-1 + delta_1)/2 on Z, f = delta_0", "(delta_-1 + delta_1)/2", "two-term sum"},
                       {"Gaussian mu, Gaussian f", "Gaussian with summed variances", "closed form"}};
  auto real_builder = [](const json& p) {
    return convolution_operator(
        gaussian_measure(p.at("sigma").get<double>(), p.at("R").get<double>(), p.at("n").get<std::size_t>()),
        real_line(-p.at("half_width").get<double>(), p.at("half_width").get<double>(),
                  p.at("nodes_per_unit").get<double>()));
  };
  auto int_builder = [](const json& p) {
    const long w = p.at("window").get<long>();
    return convolution_operator(
        discrete_measure(p.at("points").get<std::vector<long>>(), p.at("weights").get<std::vector<double>>()),
        integers(-w, w));
  };
  auto er = make_entry<double, double>(e.name, e.summary, e.defaults, real_builder);
  auto ez = make_entry<long, long>(e.name, e.summary, e.defaults, int_builder);
  auto on_r = [](const json& p) {
    const auto g = p.at("group").get<std::string>();
    require(g == "R" || g == "Z", ErrorCode::InvalidArgument, "group must be R or Z");
    return g == "R";
  };
  e.build = [=](const json& p) { return on_r(p) ? er.build(p) : ez.build(p); };
  e.bounds = [=](const json& p, double pp, std::optional<double> q) {
    return on_r(p) ? er.bounds(p, pp, q) : ez.bounds(p, pp, q);
  };
  e.contraction = [=](const json& p, double pp, std::size_t t, std::uint64_t s) {
    return on_r(p) ? er.contraction(p, pp, t, s) : ez.contraction(p, pp, t, s);
  };
  e.apply = [=](const json& p, const ApplyRequest& r) { return on_r(p) ? er.apply(p, r) : ez.apply(p, r); };
  e.regularity = [=](const json& p, Complex l, std::size_t d) {
    return on_r(p) ? er.regularity(p, l, d) : ez.regularity(p, l, d);
  };
  e.h1 = [=](const json& p, double q, std::size_t a, std::uint64_t s) {
    return on_r(p) ? er.h1(p, q, a, s) : ez.h1(p, q, a, s);
  };
  e.selftest = [=](const json& p, std::uint64_t) {
    SelftestResult r;
    if (on_r(p)) {
      const auto op = real_builder(p);
      const double s2 = std::pow(p.at("sigma").get<double>(), 2);
      double worst = 0.0;
      for (int i = 0; i <= 20; ++i) {
        const double x = -3.0 + 0.3 * i;
        const double expect = std::exp(-x * x / (1 + 2 * s2)) / std::sqrt(1 + 2 * s2);
        worst = std::max(worst, std::abs(apply(op, [](double t) { return Complex(std::exp(-t * t)); }, x) - expect));
      }
      detail::record(r, "Gaussian * Gaussian", worst <= 1e-4, {{"max_error", worst}});
    } else {
      const auto op = int_builder(p);
      auto delta = [](long k) { return Complex(k == 0 ? 1.0 : 0.0); };
      const auto pts = p.at("points").get<std::vector<long>>();
      const auto w = p.at("weights").get<std::vector<double>>();
      double worst = 0.0;
      for (long k = -5; k <= 5; ++k) {
        double expect = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
          if (pts[i] == k) expect += w[i];
        worst = std::max(worst, std::abs(apply(op, delta, k) - expect));
      }
      detail::record(r, "delta response equals mu", worst < 1e-15, {{"max_error", worst}});
    }
    return r;
  };
  return e;
}

inline CatalogEntry discrete_hausdorff_rd_entry() {
  auto builder = [](const json& p) {
    const auto factors = p.at("factors").get<std::vector<double>>();
    const auto phi = detail::complex_list(p.at("phi"));
    const double hw = p.at("half_width").get<double>();
    return discrete_hausdorff_rd<2>(scalar_dilations<2>(factors), phi,
                                    real_space<2>(-hw, hw, p.at("nodes_per_unit").get<double>()));
  };
  auto e = make_entry<std::size_t, RealPoint<2>>(
      "discrete_hausdorff_rd", "sum_k phi_k f(a_k x) on R^2 (scalar dilation matrices)",
      {{"factors", {0.5, 1.0, 2.0}}, {"phi", {0.3, 0.4, 0.3}}, {"half_width", 4.0}, {"nodes_per_unit", 25.0}},
      builder);
  e.reference_facts = {{"single matrix 2I", "m = 4, k = 1/2", "determinant and inverse norm"},
                       {"phi = {1}, A = {I}", "identity", "trivial"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    json q = p;
    q["factors"] = {2.0};
    q["phi"] = {1.0};
    const auto op = builder(q);
    detail::record(r, "m(2I) = 4", std::abs(op.family.m(0) - 4.0) < 1e-12);
    detail::record(r, "k(2I) = 1/2", std::abs(op.family.k(0) - 0.5) < 1e-12);
    return r;
  };
  return e;
}

inline CatalogEntry discrete_dilations_entry() {
  auto builder = [](const json& p) {
    const double hw = p.at("half_width").get<double>();
    return discrete_dilations(p.at("factors").get<std::vector<double>>(), detail::complex_list(p.at("phi")),
                              real_line(-hw, hw, p.at("nodes_per_unit").get<double>()));
  };
  auto e = make_entry<double, double>(
      "discrete_dilations", "sum_k phi_k f(x / u_k) on R",
      {{"factors", {2.0, 0.5}}, {"phi", {0.5, 0.5}}, {"half_width", 8.0}, {"nodes_per_unit", 50.0}}, builder);
  e.reference_facts = {{"u = 2, phi = 1, p = 2", "phi_norm = sqrt 2", "single-term formula"},
                       {"u = 2, phi = 1, q = 2", "N = 2^{3/2}", "declared constants"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    json q = p;
    q["factors"] = {2.0};
    q["phi"] = {1.0};
    const auto op = builder(q);
    detail::record(r, "phi_norm_Ap(2) = sqrt 2", std::abs(phi_norm_Ap(op, 2.0) - std::sqrt(2.0)) < 1e-12);
    detail::record(r, "n_bound(2) = 2^{3/2}",
                   std::abs(n_bound(op, 2.0, DoublingProfile::from_constant(2.0)) - std::pow(2.0, 1.5)) < 1e-12);
    return r;
  };
  return e;
}

inline CatalogEntry discrete_translations_entry() {
  auto builder = [](const json& p) {
    const double hw = p.at("half_width").get<double>();
    return discrete_translations(p.at("shifts").get<std::vector<double>>(), detail::complex_list(p.at("phi")),
                                 real_line(-hw, hw, p.at("nodes_per_unit").get<double>()));
  };
  auto e = make_entry<double, double>(
      "discrete_translations", "sum_k phi_k f(x - t_k) on R",
      {{"shifts", {0.0}}, {"phi", {1.0}}, {"half_width", 8.0}, {"nodes_per_unit", 50.0}}, builder);
  e.reference_facts = {{"shift 0, phi = 1", "identity, ratios 1", "isometry"}};
  return e;
}

inline CatalogEntry hausdorff_zhu_entry() {
  auto builder = [](const json& p) {
    const auto kind = p.at("phi").get<std::string>();
    std::function<Complex(Complex)> phi;
    if (kind == "one")
      phi = [](Complex) { return Complex(1.0 / std::numbers::pi); };
    else if (kind == "zero")
      phi = [](Complex) { return Complex{}; };
    else
      fail(ErrorCode::InvalidArgument, "phi must be 'one' (normalized area) or 'zero'");
    return hausdorff_zhu(phi, p.at("radial").get<std::size_t>(), p.at("angular").get<std::size_t>(),
                         p.at("margin").get<double>());
  };
  CatalogEntry e;
  e.name = "hausdorff_zhu";
  e.summary = "integral over the disc of phi(u) f((u - z)/(1 - conj(u) z)) dA(u)";
  e.defaults = {{"phi", "one"}, {"radial", 40}, {"angular", 64}, {"margin", 0.02}};
  e.reference_facts = {{"A(u)(0), A(u)(u)", "u, 0", "involution anchors"},
                       {"A(u) o A(u)", "identity within 1e-12", "composition"},
                       {"phi = 0", "zero operator", "trivial"}};
  e.build = [builder](const json& p) { return io::describe(builder(p)); };
  e.bounds = [builder](const json& p, double pp, std::optional<double> q) {
    const auto op = builder(p);
    json out{{"operator", op.name}, {"p", io::real(pp)}};
    out["bound"] = io::real(phi_norm_Ap(op, pp));
    if (q) out["n_bound"] = io::real(n_bound(op, *q, DoublingProfile{}));
    return out;
  };
  e.apply = [builder](const json& p, const ApplyRequest& r) {
    const auto op = builder(p);
    const auto f = detail::PointTraits<Complex>::function(r);
    std::vector<ApplyRow> rows;
    for (double t : detail::sweep<Complex>(r)) {
      const Complex z = detail::PointTraits<Complex>::point(*op.domain, t);
      rows.push_back(ApplyRow{io::point_json(z), t, apply(op, f, z)});
    }
    return rows;
  };
  e.selftest = [builder](const json& p, std::uint64_t seed) {
    SelftestResult r;
    const auto op = builder(p);
    auto rng = trial_engine(seed, 0);
    std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2 * std::numbers::pi);
    double anchors = 0.0, compose = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex u = std::polar(rad(rng), ang(rng)), z = std::polar(rad(rng), ang(rng));
      anchors = std::max({anchors, std::abs(op.family.apply(u, 0.0) - u), std::abs(op.family.apply(u, u))});
      compose = std::max(compose, std::abs(op.family.apply(u, op.family.apply(u, z)) - z));
    }
    detail::record(r, "involution anchors", anchors < 1e-12, {{"max_error", anchors}});
    detail::record(r, "involution", compose < 1e-12, {{"max_error", compose}});
    return r;
  };
  return e;
}

inline CatalogEntry halfplane_entry() {
  auto builder = [](const json& p) {
    // phi(u) = u e^{-u}: integral of phi(u)/u du over (0, inf) is 1.
    return halfplane_hausdorff<1>([](const RealPoint<1>& u) { return Complex(u[0] * std::exp(-u[0])); },
                                  positive_orthant_grid<1>(p.at("lo").get<double>(), p.at("hi").get<double>(),
                                                           p.at("n").get<std::size_t>()));
  };
  auto e = make_entry<RealPoint<1>, ComplexPoint<1>>(
      "halfplane", "integral over (0, inf) of u e^{-u} f(z/u) du on the upper half-plane",
      {{"lo", 1e-4}, {"hi", 40.0}, {"n", 4001}}, builder);
  e.reference_facts = {{"f(z) = z", "z * integral of phi(u)/u du", "linearity in z"}};
  e.selftest = [builder](const json& p, std::uint64_t) {
    SelftestResult r;
    const auto op = builder(p);
    const double scale = integrate(op.omega, [](const RealPoint<1>& u) { return Complex(std::exp(-u[0])); })
                             .value.real();
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      const ComplexPoint<1> z{Complex(-1.0 + 0.5 * i, 0.5 + 0.25 * i)};
      worst = std::max(worst, std::abs(apply(op, [](const ComplexPoint<1>& w) { return w[0]; }, z) - scale * z[0]));
    }
    detail::record(r, "f(z) = z", worst < 1e-10, {{"max_error", worst}});
    return r;
  };
  return e;
}

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      determinant_entry(),        discrete_hilbert_entry(),      hilbert_entry(),
      hilbert_curve_entry(),      cauchy_torus_entry(),          convolution_entry(),
      discrete_hausdorff_rd_entry(), discrete_dilations_entry(), discrete_translations_entry(),
      hausdorff_zhu_entry(),      halfplane_entry()};
  return entries;
}

inline const CatalogEntry& find(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  fail(ErrorCode::InvalidArgument, "unknown operator '" + name + "'");
}

}  // namespace hausdorff::registry
