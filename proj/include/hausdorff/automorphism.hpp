#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hausdorff/domain.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff {

/// A family u -> A(u) of bijections of the space, with the declared modulus
/// m(A(u)) (nu(A(u)^-1 E) = m^-1 nu(E)) and metric factor k(u)
/// (A(u)^-1 B(x,r) inside some B(x', k(u) r)). Undeclared data is an empty
/// function. All shipped families are closed-form continuous in u, which is
/// what stands in for mu-nu measurability.
template <class U, class P>
struct AutomorphismFamily {
  std::string name;
  std::function<P(const U&, const P&)> apply;
  std::function<P(const U&, const P&)> apply_inverse;
  std::function<double(const U&)> modulus;
  std::function<double(const U&)> metric_factor;
  /// False for parameters where the family degenerates.
  std::function<bool(const U&)> admits = [](const U&) { return true; };

  bool declares_modulus() const { return static_cast<bool>(modulus); }
  bool declares_metric_factor() const { return static_cast<bool>(metric_factor); }

  double m(const U& u) const {
    if (!modulus) fail(ErrorCode::MissingModulus, name + " declares no modulus m(A(u))");
    return modulus(u);
  }
  double k(const U& u) const {
    if (!metric_factor) fail(ErrorCode::MissingMetricFactor, name + " declares no metric factor k(u)");
    return metric_factor(u);
  }
};

// ---------------------------------------------------------------------------
// Shipped families

/// x -> x - u on R.
inline AutomorphismFamily<double, double> translations() {
  return {"translation",
          [](double u, double x) { return x - u; },
          [](double u, double y) { return y + u; },
          [](double) { return 1.0; },
          [](double) { return 1.0; }};
}

/// x -> x / u on R, u != 0. Preimage of B(x, r) is B(u x, |u| r).
inline AutomorphismFamily<double, double> dilations() {
  return {"dilation",
          [](double u, double x) { return x / u; },
          [](double u, double y) { return y * u; },
          [](double u) { return 1.0 / std::abs(u); },
          [](double u) { return std::abs(u); },
          [](double u) { return u != 0.0 && std::isfinite(u); }};
}

/// k -> k - u on Z.
inline AutomorphismFamily<long, long> integer_translations() {
  return {"integer_translation",
          [](long u, long k) { return k - u; },
          [](long u, long k) { return k + u; },
          [](long) { return 1.0; },
          [](long) { return 1.0; }};
}

/// x -> x - u on R^D.
template <std::size_t D>
AutomorphismFamily<RealPoint<D>, RealPoint<D>> translations_rd() {
  return {"translation_rd",
          [](const RealPoint<D>& u, const RealPoint<D>& x) {
            RealPoint<D> y;
            for (std::size_t j = 0; j < D; ++j) y[j] = x[j] - u[j];
            return y;
          },
          [](const RealPoint<D>& u, const RealPoint<D>& y) {
            RealPoint<D> x;
            for (std::size_t j = 0; j < D; ++j) x[j] = y[j] + u[j];
            return x;
          },
          [](const RealPoint<D>&) { return 1.0; },
          [](const RealPoint<D>&) { return 1.0; }};
}

/// gamma(u) = (c_1 u^{p_1}, ..., c_D u^{p_D}) with integer powers.
template <std::size_t D>
struct MonomialCurve {
  std::array<double, D> coefficients{};
  std::array<int, D> powers{};

  RealPoint<D> operator()(double u) const {
    RealPoint<D> g;
    for (std::size_t j = 0; j < D; ++j) g[j] = coefficients[j] * std::pow(u, powers[j]);
    return g;
  }
};

/// gamma(u) = (u, u^2, ..., u^D).
template <std::size_t D>
MonomialCurve<D> moment_curve() {
  MonomialCurve<D> c;
  for (std::size_t j = 0; j < D; ++j) {
    c.coefficients[j] = 1.0;
    c.powers[j] = static_cast<int>(j + 1);
  }
  return c;
}

/// x -> x - gamma(u) on R^D; gamma(0) must be 0.
template <std::size_t D>
AutomorphismFamily<double, RealPoint<D>> curve_translations(const MonomialCurve<D>& curve) {
  for (std::size_t j = 0; j < D; ++j) {
    if (curve.powers[j] < 0)
      fail(ErrorCode::InvalidArgument, "curve powers must be nonnegative");
    if (curve.powers[j] == 0 && curve.coefficients[j] != 0.0)
      fail(ErrorCode::CurveOriginViolation, "gamma(0) != 0 in coordinate " + std::to_string(j));
  }
  return {"curve_translation",
          [curve](double u, const RealPoint<D>& x) {
            const auto g = curve(u);
            RealPoint<D> y;
            for (std::size_t j = 0; j < D; ++j) y[j] = x[j] - g[j];
            return y;
          },
          [curve](double u, const RealPoint<D>& y) {
            const auto g = curve(u);
            RealPoint<D> x;
            for (std::size_t j = 0; j < D; ++j) x[j] = y[j] + g[j];
            return x;
          },
          [](double) { return 1.0; },
          [](double) { return 1.0; }};
}

template <std::size_t D>
using RealMatrix = std::array<std::array<double, D>, D>;

template <std::size_t D>
struct LinearMapData {
  Eigen::Matrix<double, int(D), int(D)> forward;
  Eigen::Matrix<double, int(D), int(D)> inverse;
  double abs_det = 0.0;
  double inverse_norm = 0.0;
  double condition = 0.0;
};

template <std::size_t D>
LinearMapData<D> analyze_linear_map(const RealMatrix<D>& m) {
  LinearMapData<D> out;
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < D; ++c) out.forward(int(r), int(c)) = m[r][c];
  Eigen::JacobiSVD<Eigen::Matrix<double, int(D), int(D)>> svd(out.forward);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(int(D) - 1);
  if (!(smin > 1e-12 * std::max(smax, 1.0))) fail(ErrorCode::SingularMatrix, "matrix is singular");
  out.inverse = out.forward.inverse();
  out.abs_det = std::abs(out.forward.determinant());
  out.inverse_norm = 1.0 / smin;
  out.condition = smax / smin;
  return out;
}

/// x -> M_k x on R^D for a finite list of invertible matrices indexed by k.
/// m(A(k)) = |det M_k| and k(k) = ||M_k^{-1}||_2.
template <std::size_t D>
AutomorphismFamily<std::size_t, RealPoint<D>> linear_maps(const std::vector<RealMatrix<D>>& matrices) {
  std::vector<LinearMapData<D>> data;
  for (const auto& m : matrices) data.push_back(analyze_linear_map<D>(m));
  auto mul = [](const Eigen::Matrix<double, int(D), int(D)>& a, const RealPoint<D>& x) {
    Eigen::Matrix<double, int(D), 1> v;
    for (std::size_t j = 0; j < D; ++j) v(int(j)) = x[j];
    const Eigen::Matrix<double, int(D), 1> y = a * v;
    RealPoint<D> out;
    for (std::size_t j = 0; j < D; ++j) out[j] = y(int(j));
    return out;
  };
  return {"linear",
          [data, mul](std::size_t k, const RealPoint<D>& x) { return mul(data.at(k).forward, x); },
          [data, mul](std::size_t k, const RealPoint<D>& y) { return mul(data.at(k).inverse, y); },
          [data](std::size_t k) { return data.at(k).abs_det; },
          [data](std::size_t k) { return data.at(k).inverse_norm; },
          [n = data.size()](std::size_t k) { return k < n; }};
}

/// z -> (u_1 z_1, ..., u_N z_N) with u on the torus.
template <std::size_t N>
AutomorphismFamily<TorusPoint<N>, ComplexPoint<N>> torus_rotations() {
  return {"torus_rotation",
          [](const TorusPoint<N>& u, const ComplexPoint<N>& z) {
            ComplexPoint<N> w;
            for (std::size_t j = 0; j < N; ++j) w[j] = std::polar(1.0, u.angle[j]) * z[j];
            return w;
          },
          [](const TorusPoint<N>& u, const ComplexPoint<N>& w) {
            ComplexPoint<N> z;
            for (std::size_t j = 0; j < N; ++j) z[j] = std::polar(1.0, -u.angle[j]) * w[j];
            return z;
          },
          [](const TorusPoint<N>&) { return 1.0; },
          [](const TorusPoint<N>&) { return 1.0; }};
}

/// M -> (m_sigma(1), ..., m_sigma(n)), a bijection of the set Mat_n.
template <class T>
AutomorphismFamily<Permutation, SquareMatrix<T>> column_permutations() {
  return {"column_permutation",
          [](const Permutation& s, const SquareMatrix<T>& m) { return m.permute_columns(s); },
          [](const Permutation& s, const SquareMatrix<T>& m) {
            Permutation inv{std::vector<int>(s.size())};
            for (std::size_t i = 0; i < s.size(); ++i) inv.image[static_cast<std::size_t>(s.image[i])] = static_cast<int>(i);
            return m.permute_columns(inv);
          },
          {},
          {}};
}

/// z -> (u - z) / (1 - conj(u) z), the involutive Moebius maps of the disc.
inline AutomorphismFamily<Complex, Complex> mobius_involutions() {
  auto map = [](Complex u, Complex z) { return (u - z) / (1.0 - std::conj(u) * z); };
  return {"mobius_involution", map, map, {}, {}, [](Complex u) { return std::abs(u) < 1.0; }};
}

/// z -> (z_1/u_1, ..., z_N/u_N) with u in (0, inf)^N. On the boundary R^N
/// the preimage of B(x, r) is contained in B(u x, max_j u_j r) and has
/// measure prod u_j times nu(E).
template <std::size_t N>
AutomorphismFamily<RealPoint<N>, ComplexPoint<N>> coordinate_dilations() {
  return {"coordinate_dilation",
          [](const RealPoint<N>& u, const ComplexPoint<N>& z) {
            ComplexPoint<N> w;
            for (std::size_t j = 0; j < N; ++j) w[j] = z[j] / u[j];
            return w;
          },
          [](const RealPoint<N>& u, const ComplexPoint<N>& w) {
            ComplexPoint<N> z;
            for (std::size_t j = 0; j < N; ++j) z[j] = w[j] * u[j];
            return z;
          },
          [](const RealPoint<N>& u) {
            double m = 1.0;
            for (double c : u) m /= c;
            return m;
          },
          [](const RealPoint<N>& u) { return *std::max_element(u.begin(), u.end()); },
          [](const RealPoint<N>& u) {
            return std::all_of(u.begin(), u.end(), [](double c) { return c > 0.0 && std::isfinite(c); });
          }};
}

// ---------------------------------------------------------------------------
// Agreement checks

namespace detail {

template <class U, class P>
void require_preimage_inside(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u,
                             const Ball<P>& b) {
  const P center = fam.apply_inverse(u, b.center);
  const double radius = fam.declares_metric_factor() ? fam.k(u) * b.radius : 0.0;
  if (!dom.inside_window(Ball<P>{center, radius}))
    fail(ErrorCode::WindowEscape, "preimage under " + fam.name + " leaves the computational window");
}

}  // namespace detail

/// Smallest ball (over a candidate set) covering the nodes that A(u) maps
/// into b. Candidates: A(u)^-1 of the center plus an even subsample of the
/// preimage nodes, so the center is an approximate Chebyshev center.
template <class U, class P>
Ball<P> preimage_cover(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u, const Ball<P>& b) {
  const auto& rho = dom.metric();
  const auto nodes = dom.measure().nodes();
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (rho.distance(b.center, fam.apply(u, nodes[i])) < b.radius) members.push_back(i);
  if (members.empty()) fail(ErrorCode::EmptyPreimage, "no node maps into the ball");

  std::vector<P> candidates{fam.apply_inverse(u, b.center)};
  const std::size_t stride = std::max<std::size_t>(1, members.size() / 32);
  for (std::size_t i = 0; i < members.size(); i += stride) candidates.push_back(nodes[members[i]]);

  Ball<P> best{candidates.front(), std::numeric_limits<double>::infinity()};
  for (const auto& c : candidates) {
    double reach = 0.0;
    for (std::size_t i : members) {
      reach = std::max(reach, rho.distance(c, nodes[i]));
      if (reach >= best.radius) break;
    }
    if (reach < best.radius) best = Ball<P>{c, reach};
  }
  return best;
}

/// Worst relative gap between nu(A(u)^-1 E), counted on nodes, and
/// m(A(u))^-1 nu(E) over the test balls.
template <class U, class P>
double check_measure_agreement(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u,
                               std::span<const Ball<P>> test_sets) {
  const auto& rho = dom.metric();
  const auto& nu = dom.measure();
  const auto nodes = nu.nodes();
  const auto w = nu.weights();
  const double m = fam.m(u);
  double worst = 0.0;
  for (const auto& e : test_sets) {
    detail::require_preimage_inside(fam, dom, u, e);
    const double preimage = detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) {
      return rho.distance(e.center, fam.apply(u, nodes[i])) < e.radius ? w[i] : 0.0;
    });
    const double expected = ball_measure(dom, e) / m;
    require(expected > 0, ErrorCode::EmptyBall, "test set has zero measure");
    worst = std::max(worst, std::abs(preimage - expected) / expected);
  }
  return worst;
}

/// Largest ratio (covering radius of A(u)^-1 B) / r over the test balls.
/// The family agrees with the metric at u when this stays below k(u).
template <class U, class P>
double check_metric_agreement(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u,
                              std::span<const Ball<P>> test_balls) {
  double worst = 0.0;
  for (const auto& b : test_balls) worst = std::max(worst, preimage_cover(fam, dom, u, b).radius / b.radius);
  return worst;
}

struct NormIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = integral of |f(A(u)x)|^p dnu(x), rhs = m(A(u))^-1 integral of |f|^p.
template <class U, class P>
NormIdentity pushforward_norm_identity(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u,
                                       const GridFunction<P>& f, double p) {
  require(p >= 1.0 && std::isfinite(p), ErrorCode::InvalidArgument, "need 1 <= p < inf");
  if (f.support()) detail::require_preimage_inside(fam, dom, u, *f.support());
  const auto& nu = dom.measure();
  const auto nodes = nu.nodes();
  const auto w = nu.weights();
  const auto values = f.values();
  NormIdentity out;
  out.lhs = detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) {
    return w[i] * std::pow(std::abs(f(fam.apply(u, nodes[i]))), p);
  });
  out.rhs = detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) {
              return w[i] * std::pow(std::abs(values[i]), p);
            }) /
            fam.m(u);
  return out;
}

/// Largest distance between x and A(u)^-1(A(u) x) over the nodes; zero up to
/// rounding means A(u) is injective on the node set.
template <class U, class P>
double roundtrip_defect(const AutomorphismFamily<U, P>& fam, const Domain<P>& dom, const U& u) {
  const auto& rho = dom.metric();
  double worst = 0.0;
  for (const auto& x : dom.measure().nodes())
    worst = std::max(worst, rho.distance(x, fam.apply_inverse(u, fam.apply(u, x))));
  return worst;
}

}  // namespace hausdorff
