#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hausdorff/automorphism.hpp"
#include "hausdorff/detail/parallel.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/random_functions.hpp"

namespace hausdorff {

/// (H f)(x) = integral over omega of phi(u) f(A(u) x) dmu(u).
template <class U, class P>
struct HausdorffOperator {
  std::string name;
  MeasureSpace<U> omega;
  std::function<Complex(const U&)> phi;
  AutomorphismFamily<U, P> family;
  DomainPtr<P> domain;
  /// Integer-valued symbol for exact evaluation, when one exists.
  std::function<std::int64_t(const U&)> integer_symbol;
  /// Named numbers reported alongside the operator (condition numbers, ...).
  std::vector<std::pair<std::string, double>> diagnostics;

  bool principal_value() const { return omega.kind() == MeasureKind::PrincipalValueContinuum; }
};

/// Checks the structural invariants: every node is an admissible parameter
/// and the symbol is finite on the nodes.
template <class U, class P>
void validate(const HausdorffOperator<U, P>& op) {
  require(static_cast<bool>(op.phi), ErrorCode::InvalidArgument, op.name + ": missing symbol");
  require(op.domain != nullptr, ErrorCode::InvalidArgument, op.name + ": missing domain");
  for (const auto& u : op.omega.nodes()) {
    require(op.family.admits(u), ErrorCode::InvalidArgument, op.name + ": node is not an admissible parameter");
    const Complex v = op.phi(u);
    require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::NonFiniteSample,
            op.name + ": symbol is not finite at a node");
  }
}

/// Same operator with the symbol multiplied by c.
template <class U, class P>
HausdorffOperator<U, P> scaled(HausdorffOperator<U, P> op, Complex c) {
  op.phi = [phi = op.phi, c](const U& u) { return c * phi(u); };
  op.integer_symbol = {};
  return op;
}

template <class U, class P, class F>
Complex apply(const HausdorffOperator<U, P>& op, const F& f, const P& x) {
  return integrate(op.omega, [&](const U& u) { return op.phi(u) * Complex(f(op.family.apply(u, x))); }).value;
}

template <class P>
struct PointSamples {
  std::vector<P> points;
  std::vector<Complex> values;
};

/// Element-wise apply over an explicit point list, in list order.
template <class U, class P, class F>
PointSamples<P> apply_grid(const HausdorffOperator<U, P>& op, const F& f, std::vector<P> points) {
  PointSamples<P> out;
  out.values.resize(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) { out.values[i] = apply(op, f, points[i]); }, 8);
  out.points = std::move(points);
  return out;
}

/// H f at every node of the operator's domain.
template <class U, class P, class F>
GridFunction<P> apply_on_nodes(const HausdorffOperator<U, P>& op, const F& f) {
  const auto nodes = op.domain->measure().nodes();
  std::vector<Complex> values(nodes.size());
  detail::parallel_for(nodes.size(), [&](std::size_t i) { values[i] = apply(op, f, nodes[i]); }, 64);
  return GridFunction<P>(op.domain, std::move(values));
}

/// Exact evaluation for a discrete omega with unit weights and an integer
/// symbol, accumulating in the caller's exact type I.
template <class I, class U, class P, class F>
I apply_exact(const HausdorffOperator<U, P>& op, const F& f, const P& x) {
  require(static_cast<bool>(op.integer_symbol), ErrorCode::InvalidArgument, op.name + ": no integer symbol");
  require(op.omega.kind() == MeasureKind::DiscreteWeighted, ErrorCode::InvalidArgument,
          "exact evaluation needs a discrete parameter space");
  const auto nodes = op.omega.nodes();
  const auto w = op.omega.weights();
  I acc{0};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(w[i] == 1.0, ErrorCode::InvalidArgument, "exact evaluation needs unit weights");
    acc += I(op.integer_symbol(nodes[i])) * I(f(op.family.apply(nodes[i], x)));
  }
  return acc;
}

/// integral of |phi| m^{-1/p}; p = inf gives the L1 norm of phi. Layered
/// (p.v.) spaces use the finest layer, |phi| does not cancel.
template <class U, class P>
double phi_norm_Ap(const HausdorffOperator<U, P>& op, double p) {
  require(p >= 1.0, ErrorCode::InvalidArgument, "need p >= 1");
  const bool finite = std::isfinite(p);
  return integrate(
             op.omega,
             [&](const U& u) {
               const double a = std::abs(op.phi(u));
               return Complex(finite ? a * std::pow(op.family.m(u), -1.0 / p) : a);
             },
             {.decay = std::nullopt, .combination = Combination::FinestLayer})
      .value.real();
}

struct BoundReport {
  double bound_value = 0.0;
  double empirical_lower = 0.0;
  std::size_t witnesses = 0;
  double slack = 0.0;
  /// Descriptor of the test function attaining empirical_lower.
  std::string worst;
};

struct ContractionOptions {
  std::optional<double> slack;
  std::optional<TestFunctionOptions> functions;
};

/// L^p norm of node values (p = inf: max modulus over nodes).
template <class P>
double lp_norm(const Domain<P>& dom, std::span<const Complex> values, double p) {
  const auto w = dom.measure().weights();
  if (!std::isfinite(p)) {
    double m = 0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  const double s = detail::pairwise_sum<double>(0, values.size(),
                                                [&](std::size_t i) { return w[i] * std::pow(std::abs(values[i]), p); });
  return std::pow(s, 1.0 / p);
}

template <class U, class P>
double default_slack(const HausdorffOperator<U, P>& op) {
  const bool discrete = op.omega.kind() == MeasureKind::DiscreteWeighted && op.domain->kind == PointKind::Integer;
  return discrete ? 1e-12 : 0.01;
}

/// Samples ||Hf||_p / ||f||_p over random test functions; throws
/// ViolatedBound when a ratio exceeds phi_norm_Ap (1 + slack).
template <class U, class P>
BoundReport check_lp_contraction(const HausdorffOperator<U, P>& op, double p, std::size_t trials, std::uint64_t seed,
                                 const ContractionOptions& options = {}) {
  const auto& dom = *op.domain;
  dom.measure();
  BoundReport report;
  report.bound_value = phi_norm_Ap(op, p);
  report.slack = options.slack.value_or(default_slack(op));
  const auto shape = options.functions.value_or(default_test_function_options(dom.kind));
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = trial_engine(seed, t);
    const auto test = random_test_function(op.domain, rng, shape);
    const auto f = GridFunction<P>::sample(op.domain, test.f);
    const double fn = lp_norm(dom, f.values(), p);
    if (!(fn > 0)) continue;
    const auto hf = apply_on_nodes(op, test.f);
    const double ratio = lp_norm(dom, hf.values(), p) / fn;
    ++report.witnesses;
    if (ratio > report.empirical_lower) {
      report.empirical_lower = ratio;
      report.worst = "trial " + std::to_string(t) + ": " + test.descriptor;
    }
    if (ratio > report.bound_value * (1 + report.slack))
      fail(ErrorCode::ViolatedBound, op.name + ": ||Hf||/||f|| = " + std::to_string(ratio) + " exceeds bound " +
                                         std::to_string(report.bound_value) + " at trial " + std::to_string(t) +
                                         " (seed " + std::to_string(seed) + "): " + test.descriptor);
  }
  return report;
}

/// |integral of phi - 1|.
template <class U, class P>
double regularity_defect(const HausdorffOperator<U, P>& op) {
  return std::abs(integrate(op.omega, op.phi).value - 1.0);
}

struct RegularityReport {
  double defect = 0.0;
  /// max |Hf - l| over the sampled points of the filter level.
  double limit_spread = 0.0;
  Complex estimate{};
};

template <class U, class P, class F>
RegularityReport check_regularity(const HausdorffOperator<U, P>& op, const FilterBase<P>& base, const F& f, Complex l,
                                  std::size_t depth) {
  const double l1 = phi_norm_Ap(op, std::numeric_limits<double>::infinity());
  require(std::isfinite(l1), ErrorCode::InvalidArgument, "regularity needs an integrable symbol");
  const auto points = base.sample(depth);
  if (points.empty()) fail(ErrorCode::EmptyLevel, "filter level " + std::to_string(depth) + " has no points");
  RegularityReport out;
  out.defect = regularity_defect(op);
  out.estimate = limit_along_filter([&](const P& x) { return apply(op, f, x); }, base, depth).estimate;
  for (const auto& x : points) out.limit_spread = std::max(out.limit_spread, std::abs(apply(op, f, x) - l));
  return out;
}

}  // namespace hausdorff
