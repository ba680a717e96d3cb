#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hausdorff/automorphism.hpp"
#include "hausdorff/detail/parallel.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/operator.hpp"
#include "hausdorff/random_functions.hpp"

namespace hausdorff {

/// A (1,q)-atom sampled on a domain. `constant_unit` marks the constant atom
/// of a finite (normalized) space, whose support is the whole space.
template <class P>
struct Atom {
  GridFunction<P> values;
  Ball<P> support;
  double q = 2.0;
  bool constant_unit = false;
  /// Amplitude of the odd bump profile when the atom came from random_atom.
  std::optional<double> bump_scale;
};

/// Per-condition margins of verify_atom.
struct AtomCheck {
  bool inside_window = true;
  /// Largest |a| on nodes outside the closed support ball; must be 0.
  double support_leak = 0.0;
  double size_norm = 0.0;
  double size_bound = 0.0;
  double mean_abs = 0.0;
  double cancellation_tolerance = 0.0;

  bool support_ok() const { return inside_window && support_leak == 0.0; }
  bool size_ok() const { return size_norm <= size_bound * 1.01; }
  bool cancellation_ok() const { return mean_abs <= cancellation_tolerance; }
  bool pass() const { return support_ok() && size_ok() && cancellation_ok(); }
};

namespace detail {
inline double inv_q(double q) { return std::isfinite(q) ? 1.0 / q : 0.0; }
}  // namespace detail

template <class P>
AtomCheck verify_atom(const Atom<P>& a) {
  const auto& dom = a.values.domain();
  const auto& nu = dom.measure();
  const auto nodes = nu.nodes();
  const auto w = nu.weights();
  const auto v = a.values.values();
  AtomCheck out;

  if (a.constant_unit) {
    // Constant atom: whole finite space, measure normalized to mass one.
    out.inside_window = dom.whole_space;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& x : v) {
      lo = std::min(lo, std::abs(x));
      hi = std::max(hi, std::abs(x));
    }
    out.support_leak = (hi - lo > 1e-12 * std::max(hi, 1.0)) ? hi - lo : 0.0;
    out.size_norm = hi;
    out.size_bound = 1.0;
    out.cancellation_tolerance = std::numeric_limits<double>::infinity();
    return out;
  }

  out.inside_window = dom.inside_window(a.support);
  const auto& rho = dom.metric();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (rho.distance(a.support.center, nodes[i]) > a.support.radius * (1 + 1e-9))
      out.support_leak = std::max(out.support_leak, std::abs(v[i]));

  const double ball = ball_measure(dom, a.support);
  out.size_norm = lp_norm(dom, v, a.q);
  out.size_bound = ball > 0 ? std::pow(ball, detail::inv_q(a.q) - 1.0) : 0.0;
  out.mean_abs = std::abs(detail::pairwise_sum<Complex>(0, v.size(), [&](std::size_t i) { return w[i] * v[i]; }));
  out.cancellation_tolerance = 1e-8 * lp_norm(dom, v, 1.0);
  return out;
}

template <class P>
struct AtomTerm {
  Complex alpha{};
  Atom<P> atom;
};

/// Finite partial sum of an atomic series; `discarded_tail` is the l1 mass
/// of the coefficients left out.
template <class P>
struct AtomicDecomposition {
  double q = 2.0;
  std::vector<AtomTerm<P>> terms;
  double discarded_tail = 0.0;
};

/// Sum |alpha_j| (+ discarded tail): an upper bound for the H^{1,q} norm.
template <class P>
double h1q_norm_upper(const AtomicDecomposition<P>& dec) {
  return detail::pairwise_sum<double>(0, dec.terms.size(), [&](std::size_t j) { return std::abs(dec.terms[j].alpha); }) +
         dec.discarded_tail;
}

/// Node values of sum alpha_j a_j.
template <class P>
std::vector<Complex> synthesize(const AtomicDecomposition<P>& dec, std::size_t nodes) {
  std::vector<Complex> out(nodes);
  for (const auto& t : dec.terms) {
    const auto v = t.atom.values.values();
    for (std::size_t i = 0; i < nodes; ++i) out[i] += t.alpha * v[i];
  }
  return out;
}

/// The constant atom 1 of a whole finite space.
template <class P>
Atom<P> constant_atom(DomainPtr<P> dom, double q) {
  auto values = GridFunction<P>::sample(dom, [](const P&) { return Complex(1.0); });
  return Atom<P>{std::move(values), Ball<P>{dom->origin, std::numeric_limits<double>::infinity()}, q, true, {}};
}

/// (1 - t^2)^12 on |t| < 1: eleven derivatives vanish at the edge, so
/// trapezoid means of shifted and rescaled copies stay accurate on coarse
/// grids, which the cancellation check needs.
inline double atom_profile(double t) {
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::pow(s, 12) : 0.0;
}

struct AtomOptions {
  double center_spread = 1.0;
  double min_radius = 0.3;
  double max_radius = 1.0;
  /// The size condition is met with ratio drawn from [min_fill, 1].
  double min_fill = 0.5;
};

/// a(x) = c (d_0/r) beta(|d|/r) - correction, beta = atom_profile, d the chart displacement from
/// the center: odd in the first coordinate, with the even correction
/// removing any discrete mean; c sets ||a||_q to fill * nu(B)^{1/q-1}.
template <class P>
Atom<P> random_atom(DomainPtr<P> dom, double q, std::mt19937_64& rng, const AtomOptions& opt = {}) {
  require(q > 1.0, ErrorCode::InvalidArgument, "atoms need q > 1");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> rad(opt.min_radius, opt.max_radius);
  std::uniform_real_distribution<double> fill(opt.min_fill, 1.0);
  std::vector<double> offset(dom->dimension);
  for (auto& o : offset) o = opt.center_spread * unit(rng);
  const Ball<P> ball{dom->shift(dom->origin, offset), rad(rng)};
  const double target_fill = fill(rng);
  require(dom->inside_window(ball), ErrorCode::WindowEscape, "atom support leaves the window");

  auto odd = [dom, ball](const P& x) {
    const auto d = dom->displacement(ball.center, x);
    return (d[0] / ball.radius) * atom_profile(detail::norm2(d) / ball.radius);
  };
  auto even = [dom, ball](const P& x) {
    const auto d = dom->displacement(ball.center, x);
    return atom_profile(detail::norm2(d) / ball.radius);
  };
  const auto& nu = dom->measure();
  const auto nodes = nu.nodes();
  const auto w = nu.weights();
  const double odd_mean = detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) { return w[i] * odd(nodes[i]); });
  const double even_mean = detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) { return w[i] * even(nodes[i]); });
  require(even_mean > 0, ErrorCode::EmptyBall, "atom ball holds no nodes");
  const double shift = odd_mean / even_mean;
  PointFunction<P> shape = [odd, even, shift](const P& x) { return Complex(odd(x) - shift * even(x)); };

  auto raw = GridFunction<P>::sample(dom, shape);
  const double norm = lp_norm(*dom, raw.values(), q);
  require(norm > 0, ErrorCode::EmptyBall, "atom profile vanishes on the nodes");
  const double scale = target_fill * std::pow(ball_measure(*dom, ball), detail::inv_q(q) - 1.0) / norm;
  PointFunction<P> scaled_shape = [shape, scale](const P& x) { return scale * shape(x); };
  return Atom<P>{GridFunction<P>::sample(dom, scaled_shape, ball), ball, q, false, scale};
}

template <class P>
AtomicDecomposition<P> random_decomposition(DomainPtr<P> dom, double q, std::size_t count, std::mt19937_64& rng,
                                            const AtomOptions& opt = {}) {
  AtomicDecomposition<P> dec;
  dec.q = q;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t j = 0; j < count; ++j) {
    const Complex alpha(unit(rng), unit(rng));
    dec.terms.push_back(AtomTerm<P>{alpha, random_atom(dom, q, rng, opt)});
  }
  return dec;
}

/// C^{1/q-1} k^{s(1/q-1)} m^{1/q}, the factor turning a o A(u) into an atom.
template <class U, class P>
double atom_rescaling(const AutomorphismFamily<U, P>& fam, const U& u, double q, const DoublingProfile& profile) {
  const double e = detail::inv_q(q) - 1.0;
  const double k = fam.k(u);
  const double m = fam.m(u);
  return std::pow(profile.C_nu, e) * std::pow(k, profile.s * e) * std::pow(m, detail::inv_q(q));
}

/// a'(x) = C^{1/q-1} k^{s(1/q-1)} m^{1/q} a(A(u) x), supported in
/// B(x', k(u) r) with x' the covering center of the preimage of the support.
template <class U, class P>
Atom<P> transform_atom(const Atom<P>& a, const U& u, const AutomorphismFamily<U, P>& fam,
                       const DoublingProfile& profile) {
  const auto& dom_ptr = a.values.domain_ptr();
  const auto& dom = *dom_ptr;
  const double factor = atom_rescaling(fam, u, a.q, profile);
  const auto& src = a.values;

  Atom<P> out{src, a.support, a.q, a.constant_unit, {}};
  if (a.constant_unit) {
    out.values = GridFunction<P>::sample(dom_ptr, [src, factor, fam, u](const P& x) {
      return factor * src(fam.apply(u, x));
    });
  } else {
    const double k = fam.k(u);
    const Ball<P> cover = preimage_cover(fam, dom, u, a.support);
    const Ball<P> support{cover.center, k * a.support.radius};
    if (!dom.inside_window(support)) fail(ErrorCode::WindowEscape, "transformed atom support leaves the window");
    if (cover.radius > support.radius * (1 + 1e-9))
      fail(ErrorCode::NotAnAtom, fam.name + ": preimage of the support exceeds k(u) r");
    out.support = support;
    out.values = GridFunction<P>::sample(
        dom_ptr, [src, factor, fam, u](const P& x) { return factor * src(fam.apply(u, x)); }, support);
    if (a.bump_scale) out.bump_scale = *a.bump_scale * factor;
  }
  const auto check = verify_atom(out);
  if (!check.pass())
    fail(ErrorCode::NotAnAtom, fam.name + ": transformed function fails the atom conditions (support leak " +
                                   std::to_string(check.support_leak) + ", size " + std::to_string(check.size_norm) +
                                   "/" + std::to_string(check.size_bound) + ", mean " +
                                   std::to_string(check.mean_abs) + ")");
  return out;
}

namespace detail {

/// Node index range of the finest layer of a (possibly layered) space.
template <class U>
std::pair<std::size_t, std::size_t> finest_nodes(const MeasureSpace<U>& omega) {
  const auto& layer = omega.layers().back();
  if (layer.group_end == layer.group_begin) return {0, 0};
  return {omega.group(layer.group_begin).first, omega.group(layer.group_end - 1).second};
}

}  // namespace detail

/// C^{1-1/q} integral of |phi| k^{s(1-1/q)} m^{-1/q}.
template <class U, class P>
double n_bound(const HausdorffOperator<U, P>& op, double q, const DoublingProfile& profile) {
  require(q > 1.0, ErrorCode::InvalidArgument, "need q > 1");
  if (!op.family.declares_metric_factor())
    fail(ErrorCode::MissingMetricFactor, op.name + ": family declares no metric factor");
  const double e = 1.0 - detail::inv_q(q);
  const bool finite = std::isfinite(q);
  const double integral =
      integrate(
          op.omega,
          [&](const U& u) {
            double v = std::abs(op.phi(u)) * std::pow(op.family.k(u), profile.s * e);
            if (finite) v *= std::pow(op.family.m(u), -1.0 / q);
            return Complex(v);
          },
          {.decay = std::nullopt, .combination = Combination::FinestLayer})
          .value.real();
  return std::pow(profile.C_nu, e) * integral;
}

struct H1Options {
  /// Build and verify every transformed atom a'_{j,u}.
  bool construct_atoms = true;
  bool keep_image = false;
  double slack = 1e-12;
};

template <class P>
struct H1Report {
  double lhs_upper = 0.0;
  double rhs = 0.0;
  std::size_t transformed = 0;
  /// Decomposition of Hf (kept on request).
  std::optional<AtomicDecomposition<P>> image;
};

/// Builds the decomposition Hf = sum_{u,j} c_{j,u} a'_{j,u} over the finest
/// omega layer and compares sum |c_{j,u}| with n_bound * sum |alpha_j|.
template <class U, class P>
H1Report<P> check_h1_bound(const HausdorffOperator<U, P>& op, const AtomicDecomposition<P>& dec,
                           const DoublingProfile& profile, const H1Options& options = {}) {
  const double q = dec.q;
  const double N = n_bound(op, q, profile);
  const double e = 1.0 - detail::inv_q(q);
  const auto [lo, hi] = detail::finest_nodes(op.omega);
  const auto nodes = op.omega.nodes();
  const auto w = op.omega.weights();
  const std::size_t atoms = dec.terms.size();
  const std::size_t pairs = (hi - lo) * atoms;

  std::vector<Complex> coeff(pairs);
  std::vector<std::optional<Atom<P>>> built(options.construct_atoms ? pairs : 0);
  detail::parallel_for(pairs, [&](std::size_t idx) {
    const std::size_t i = lo + idx / atoms, j = idx % atoms;
    const U& u = nodes[i];
    double factor = std::pow(profile.C_nu, e) * std::pow(op.family.k(u), profile.s * e);
    if (std::isfinite(q)) factor *= std::pow(op.family.m(u), -1.0 / q);
    coeff[idx] = dec.terms[j].alpha * op.phi(u) * w[i] * factor;
    if (options.construct_atoms) built[idx] = transform_atom(dec.terms[j].atom, u, op.family, profile);
  });

  H1Report<P> report;
  report.transformed = options.construct_atoms ? pairs : 0;
  report.lhs_upper = detail::pairwise_sum<double>(0, pairs, [&](std::size_t i) { return std::abs(coeff[i]); }) +
                     N * dec.discarded_tail;
  report.rhs = N * h1q_norm_upper(dec);
  if (options.keep_image && options.construct_atoms) {
    AtomicDecomposition<P> image;
    image.q = q;
    image.discarded_tail = N * dec.discarded_tail;
    for (std::size_t idx = 0; idx < pairs; ++idx) image.terms.push_back(AtomTerm<P>{coeff[idx], std::move(*built[idx])});
    report.image = std::move(image);
  }
  if (report.lhs_upper > report.rhs * (1 + options.slack) + 1e-300)
    fail(ErrorCode::ViolatedBound, op.name + ": H1 coefficient sum " + std::to_string(report.lhs_upper) +
                                       " exceeds " + std::to_string(report.rhs));
  return report;
}

}  // namespace hausdorff
