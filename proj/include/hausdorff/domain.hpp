#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hausdorff/detail/parallel.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff {

enum class PointKind { Integer, RealVector, TorusAngles, SquareMatrix, UnitDisc, HalfPlanePower };

constexpr std::string_view to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Integer: return "Integer";
    case PointKind::RealVector: return "RealVector";
    case PointKind::TorusAngles: return "TorusAngles";
    case PointKind::SquareMatrix: return "SquareMatrix";
    case PointKind::UnitDisc: return "UnitDisc";
    case PointKind::HalfPlanePower: return "HalfPlanePower";
  }
  return "Unknown";
}

template <class P>
struct Ball {
  P center{};
  double radius = 1.0;
};

/// Doubling constant estimate and the dimension s = log2(C_nu).
struct DoublingProfile {
  double C_nu = 1.0;
  double s = 0.0;

  static DoublingProfile from_constant(double c) {
    require(c >= 1.0, ErrorCode::InvalidArgument, "doubling constant must be >= 1");
    return DoublingProfile{c, std::log2(c)};
  }
};

template <class P>
struct QuasiMetric {
  std::function<double(const P&, const P&)> distance;
  double kappa = 1.0;
};

/// The underlying space with its reference measure restricted to a finite
/// window. Ball quantities are trusted only for balls passing
/// `fits_window`.
template <class P>
struct Domain {
  PointKind kind = PointKind::RealVector;
  std::size_t dimension = 1;
  std::optional<MeasureSpace<P>> nu;
  std::optional<QuasiMetric<P>> rho;
  /// True when the ball (center, radius) lies inside the computational window.
  std::function<bool(const P&, double)> fits_window;
  /// Off-node evaluation of node values; throws InterpolationOutOfRange.
  std::function<Complex(std::span<const Complex>, const P&)> interpolate;
  /// Local coordinates of `to` seen from `from`, and the inverse chart.
  std::function<std::vector<double>(const P& from, const P& to)> displacement;
  std::function<P(const P& from, std::span<const double> offset)> shift;
  std::optional<DoublingProfile> analytic_doubling;
  /// nu covers the whole space (finite total mass) rather than a window of it.
  bool whole_space = false;
  /// Reference point used to place random test functions and atoms.
  P origin{};
  std::string label;

  const MeasureSpace<P>& measure() const {
    if (!nu) fail(ErrorCode::NoMeasure, label + " carries no reference measure");
    return *nu;
  }
  const QuasiMetric<P>& metric() const {
    if (!rho) fail(ErrorCode::NoMetric, label + " carries no quasi-metric");
    return *rho;
  }
  bool inside_window(const Ball<P>& b) const { return whole_space || (fits_window && fits_window(b.center, b.radius)); }
};

template <class P>
using DomainPtr = std::shared_ptr<const Domain<P>>;

namespace detail {

/// Uniform tensor grid: axis j has n[j] nodes lo[j] + h[j] * i.
template <std::size_t D>
struct UniformAxes {
  std::array<double, D> lo{};
  std::array<double, D> h{};
  std::array<std::size_t, D> n{};
  bool periodic = false;

  std::size_t total() const {
    std::size_t t = 1;
    for (std::size_t j = 0; j < D; ++j) t *= n[j];
    return t;
  }
  std::array<double, D> coordinates(std::size_t index) const {
    std::array<double, D> x{};
    for (std::size_t j = 0; j < D; ++j) {
      x[j] = lo[j] + h[j] * static_cast<double>(index % n[j]);
      index /= n[j];
    }
    return x;
  }
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(total(), 1.0);
    for (std::size_t idx = 0; idx < w.size(); ++idx) {
      std::size_t rest = idx;
      for (std::size_t j = 0; j < D; ++j) {
        const std::size_t i = rest % n[j];
        rest /= n[j];
        w[idx] *= (!periodic && (i == 0 || i + 1 == n[j])) ? h[j] / 2 : h[j];
      }
    }
    return w;
  }

  /// Multilinear interpolation of node values at coordinates x.
  Complex interpolate(std::span<const Complex> values, const std::array<double, D>& x) const {
    std::array<std::size_t, D> base{};
    std::array<double, D> frac{};
    for (std::size_t j = 0; j < D; ++j) {
      double t = (x[j] - lo[j]) / h[j];
      if (periodic) {
        const double span = static_cast<double>(n[j]);
        t = std::fmod(t, span);
        if (t < 0) t += span;
      } else {
        const double top = static_cast<double>(n[j] - 1);
        if (!(t >= -1e-9 && t <= top + 1e-9))
          fail(ErrorCode::InterpolationOutOfRange, "grid function probed outside its window");
        t = std::clamp(t, 0.0, top);
      }
      double cell = std::floor(t);
      if (!periodic && cell >= static_cast<double>(n[j] - 1)) cell = static_cast<double>(n[j] - 2);
      base[j] = static_cast<std::size_t>(cell);
      frac[j] = t - cell;
    }
    Complex acc{};
    for (std::size_t corner = 0; corner < (std::size_t{1} << D); ++corner) {
      double weight = 1.0;
      std::size_t index = 0, stride = 1;
      for (std::size_t j = 0; j < D; ++j) {
        const bool up = (corner >> j) & 1u;
        weight *= up ? frac[j] : 1.0 - frac[j];
        std::size_t i = base[j] + (up ? 1 : 0);
        if (periodic) i %= n[j];
        index += i * stride;
        stride *= n[j];
      }
      if (weight != 0.0) acc += weight * values[index];
    }
    return acc;
  }
};

inline std::size_t nodes_for(double length, double nodes_per_unit) {
  require(length > 0 && nodes_per_unit > 0, ErrorCode::InvalidArgument, "window and resolution must be positive");
  return static_cast<std::size_t>(std::lround(length * nodes_per_unit)) + 1;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Shipped domains

/// R with Lebesgue measure on the window [a, b] (trapezoid weights) and the
/// Euclidean metric.
inline DomainPtr<double> real_line(double a, double b, double nodes_per_unit) {
  const std::size_t n = detail::nodes_for(b - a, nodes_per_unit);
  detail::UniformAxes<1> axes{{a}, {(b - a) / static_cast<double>(n - 1)}, {n}, false};
  auto dom = std::make_shared<Domain<double>>();
  dom->kind = PointKind::RealVector;
  dom->dimension = 1;
  dom->nu = trapezoid(a, b, n);
  dom->rho = QuasiMetric<double>{[](double x, double y) { return std::abs(x - y); }, 1.0};
  dom->fits_window = [a, b](double c, double r) { return c - r >= a - 1e-12 && c + r <= b + 1e-12; };
  dom->interpolate = [axes](std::span<const Complex> v, double x) { return axes.interpolate(v, {x}); };
  dom->displacement = [](double from, double to) { return std::vector<double>{to - from}; };
  dom->shift = [](double from, std::span<const double> d) { return from + d[0]; };
  dom->analytic_doubling = DoublingProfile::from_constant(2.0);
  dom->label = "R[" + std::to_string(a) + "," + std::to_string(b) + "]";
  return dom;
}

/// R^D with Lebesgue measure on the cube [lo, hi]^D and the Euclidean metric.
template <std::size_t D>
DomainPtr<RealPoint<D>> real_space(double lo, double hi, double nodes_per_unit) {
  const std::size_t n = detail::nodes_for(hi - lo, nodes_per_unit);
  detail::UniformAxes<D> axes;
  axes.lo.fill(lo);
  axes.h.fill((hi - lo) / static_cast<double>(n - 1));
  axes.n.fill(n);
  std::vector<RealPoint<D>> x(axes.total());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = axes.coordinates(i);
  auto dom = std::make_shared<Domain<RealPoint<D>>>();
  dom->kind = PointKind::RealVector;
  dom->dimension = D;
  dom->nu = MeasureSpace<RealPoint<D>>(MeasureKind::QuadratureContinuum, std::move(x), axes.trapezoid_weights());
  dom->rho = QuasiMetric<RealPoint<D>>{[](const RealPoint<D>& p, const RealPoint<D>& q) {
                                         double s = 0;
                                         for (std::size_t j = 0; j < D; ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
                                         return std::sqrt(s);
                                       },
                                       1.0};
  dom->fits_window = [lo, hi](const RealPoint<D>& c, double r) {
    for (std::size_t j = 0; j < D; ++j)
      if (c[j] - r < lo - 1e-12 || c[j] + r > hi + 1e-12) return false;
    return true;
  };
  dom->interpolate = [axes](std::span<const Complex> v, const RealPoint<D>& p) { return axes.interpolate(v, p); };
  dom->displacement = [](const RealPoint<D>& from, const RealPoint<D>& to) {
    std::vector<double> d(D);
    for (std::size_t j = 0; j < D; ++j) d[j] = to[j] - from[j];
    return d;
  };
  dom->shift = [](const RealPoint<D>& from, std::span<const double> d) {
    RealPoint<D> p = from;
    for (std::size_t j = 0; j < D; ++j) p[j] += d[j];
    return p;
  };
  dom->analytic_doubling = DoublingProfile::from_constant(std::pow(2.0, static_cast<double>(D)));
  dom->label = "R^" + std::to_string(D) + "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  return dom;
}

/// Z with counting measure on [lo, hi] and the metric |m - n|.
inline DomainPtr<long> integers(long lo, long hi) {
  require(hi > lo, ErrorCode::InvalidArgument, "integer window needs lo < hi");
  std::vector<long> pts;
  for (long k = lo; k <= hi; ++k) pts.push_back(k);
  auto dom = std::make_shared<Domain<long>>();
  dom->kind = PointKind::Integer;
  dom->dimension = 1;
  dom->nu = counting_measure(std::move(pts));
  dom->rho = QuasiMetric<long>{[](long a, long b) { return static_cast<double>(std::labs(a - b)); }, 1.0};
  dom->fits_window = [lo, hi](long c, double r) {
    return static_cast<double>(c) - r >= static_cast<double>(lo) && static_cast<double>(c) + r <= static_cast<double>(hi);
  };
  dom->interpolate = [lo, hi](std::span<const Complex> v, long k) {
    if (k < lo || k > hi) fail(ErrorCode::InterpolationOutOfRange, "integer point outside the window");
    return v[static_cast<std::size_t>(k - lo)];
  };
  dom->displacement = [](long from, long to) { return std::vector<double>{static_cast<double>(to - from)}; };
  dom->shift = [](long from, std::span<const double> d) { return from + std::lround(d[0]); };
  // |B(x,2r)| / |B(x,r)| peaks at 3 (r just below or at 1, strict balls).
  dom->analytic_doubling = DoublingProfile::from_constant(3.0);
  dom->label = "Z[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
  return dom;
}

/// The torus T^N inside C^N with angle (Haar, unnormalized) measure, n nodes
/// per circle, and the geodesic max-coordinate metric.
template <std::size_t N>
DomainPtr<ComplexPoint<N>> torus(std::size_t n) {
  require(n >= 4, ErrorCode::InvalidArgument, "torus needs at least 4 nodes per circle");
  detail::UniformAxes<N> axes;
  axes.lo.fill(0.0);
  axes.h.fill(2.0 * std::numbers::pi / static_cast<double>(n));
  axes.n.fill(n);
  axes.periodic = true;
  std::vector<ComplexPoint<N>> z(axes.total());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto theta = axes.coordinates(i);
    for (std::size_t j = 0; j < N; ++j) z[i][j] = std::polar(1.0, theta[j]);
  }
  auto angles = [](const ComplexPoint<N>& p) {
    std::array<double, N> a{};
    for (std::size_t j = 0; j < N; ++j) {
      if (std::abs(std::abs(p[j]) - 1.0) > 1e-9)
        fail(ErrorCode::InterpolationOutOfRange, "point is off the torus");
      a[j] = std::arg(p[j]);
    }
    return a;
  };
  auto dom = std::make_shared<Domain<ComplexPoint<N>>>();
  dom->kind = PointKind::TorusAngles;
  dom->dimension = N;
  dom->nu = MeasureSpace<ComplexPoint<N>>(MeasureKind::QuadratureContinuum, std::move(z), axes.trapezoid_weights());
  dom->rho = QuasiMetric<ComplexPoint<N>>{[](const ComplexPoint<N>& p, const ComplexPoint<N>& q) {
                                            double d = 0;
                                            for (std::size_t j = 0; j < N; ++j)
                                              d = std::max(d, std::abs(std::arg(q[j] / p[j])));
                                            return d;
                                          },
                                          1.0};
  dom->fits_window = [](const ComplexPoint<N>&, double) { return true; };
  dom->interpolate = [axes, angles](std::span<const Complex> v, const ComplexPoint<N>& p) {
    return axes.interpolate(v, angles(p));
  };
  dom->displacement = [](const ComplexPoint<N>& from, const ComplexPoint<N>& to) {
    std::vector<double> d(N);
    for (std::size_t j = 0; j < N; ++j) d[j] = std::arg(to[j] / from[j]);
    return d;
  };
  dom->shift = [](const ComplexPoint<N>& from, std::span<const double> d) {
    ComplexPoint<N> p = from;
    for (std::size_t j = 0; j < N; ++j) p[j] *= std::polar(1.0, d[j]);
    return p;
  };
  dom->analytic_doubling = DoublingProfile::from_constant(std::pow(2.0, static_cast<double>(N)));
  dom->whole_space = true;
  dom->origin.fill(Complex(1.0, 0.0));
  dom->label = "T^" + std::to_string(N);
  return dom;
}

/// The distinguished boundary R^N of (C+)^N, embedded in C^N (imaginary parts
/// zero), with Lebesgue measure on [lo, hi]^N and the Euclidean metric.
template <std::size_t N>
DomainPtr<ComplexPoint<N>> half_plane_boundary(double lo, double hi, double nodes_per_unit) {
  auto flat = real_space<N>(lo, hi, nodes_per_unit);
  auto embed = [](const RealPoint<N>& x) {
    ComplexPoint<N> z;
    for (std::size_t j = 0; j < N; ++j) z[j] = Complex(x[j], 0.0);
    return z;
  };
  auto project = [](const ComplexPoint<N>& z) {
    RealPoint<N> x;
    for (std::size_t j = 0; j < N; ++j) {
      if (std::abs(z[j].imag()) > 1e-12) fail(ErrorCode::InterpolationOutOfRange, "point is off the boundary");
      x[j] = z[j].real();
    }
    return x;
  };
  const auto& flat_nu = flat->measure();
  std::vector<ComplexPoint<N>> z;
  z.reserve(flat_nu.size());
  for (const auto& x : flat_nu.nodes()) z.push_back(embed(x));
  auto dom = std::make_shared<Domain<ComplexPoint<N>>>();
  dom->kind = PointKind::HalfPlanePower;
  dom->dimension = N;
  dom->nu = MeasureSpace<ComplexPoint<N>>(MeasureKind::QuadratureContinuum, std::move(z),
                                          std::vector<double>(flat_nu.weights().begin(), flat_nu.weights().end()));
  dom->rho = QuasiMetric<ComplexPoint<N>>{[](const ComplexPoint<N>& p, const ComplexPoint<N>& q) {
                                            double s = 0;
                                            for (std::size_t j = 0; j < N; ++j) s += std::norm(p[j] - q[j]);
                                            return std::sqrt(s);
                                          },
                                          1.0};
  dom->fits_window = [flat, project](const ComplexPoint<N>& c, double r) { return flat->fits_window(project(c), r); };
  dom->interpolate = [flat, project](std::span<const Complex> v, const ComplexPoint<N>& p) {
    return flat->interpolate(v, project(p));
  };
  dom->displacement = [](const ComplexPoint<N>& from, const ComplexPoint<N>& to) {
    std::vector<double> d(N);
    for (std::size_t j = 0; j < N; ++j) d[j] = (to[j] - from[j]).real();
    return d;
  };
  dom->shift = [](const ComplexPoint<N>& from, std::span<const double> d) {
    ComplexPoint<N> p = from;
    for (std::size_t j = 0; j < N; ++j) p[j] += d[j];
    return p;
  };
  dom->analytic_doubling = DoublingProfile::from_constant(std::pow(2.0, static_cast<double>(N)));
  dom->label = "dC+^" + std::to_string(N);
  return dom;
}

/// Mat_n as a bare set: no measure and no metric.
template <class T>
DomainPtr<SquareMatrix<T>> square_matrices(std::size_t n) {
  auto dom = std::make_shared<Domain<SquareMatrix<T>>>();
  dom->kind = PointKind::SquareMatrix;
  dom->dimension = n;
  dom->label = "Mat_" + std::to_string(n);
  return dom;
}

/// The unit disc with the Euclidean metric and no reference measure.
inline DomainPtr<Complex> unit_disc() {
  auto dom = std::make_shared<Domain<Complex>>();
  dom->kind = PointKind::UnitDisc;
  dom->dimension = 1;
  dom->rho = QuasiMetric<Complex>{[](Complex a, Complex b) { return std::abs(a - b); }, 1.0};
  dom->label = "D";
  return dom;
}

/// (C+)^N as a set of evaluation points; no reference measure.
template <std::size_t N>
DomainPtr<ComplexPoint<N>> half_plane() {
  auto dom = std::make_shared<Domain<ComplexPoint<N>>>();
  dom->kind = PointKind::HalfPlanePower;
  dom->dimension = N;
  dom->label = "C+^" + std::to_string(N);
  return dom;
}

// ---------------------------------------------------------------------------
// Grid functions

/// Node values of a function on a domain, optionally backed by a closed form
/// used for off-node evaluation and by a known support ball.
template <class P>
class GridFunction {
 public:
  GridFunction(DomainPtr<P> domain, std::vector<Complex> values, PointFunction<P> closed_form = {},
               std::optional<Ball<P>> support = {})
      : domain_(std::move(domain)),
        values_(std::move(values)),
        closed_form_(std::move(closed_form)),
        support_(std::move(support)) {
    require(domain_ != nullptr, ErrorCode::InvalidArgument, "grid function needs a domain");
    require(values_.size() == domain_->measure().size(), ErrorCode::InvalidArgument,
            "value array length must equal the node count");
  }

  /// Samples f at every node and keeps f for off-node evaluation.
  static GridFunction sample(DomainPtr<P> domain, PointFunction<P> f, std::optional<Ball<P>> support = {}) {
    const auto nodes = domain->measure().nodes();
    std::vector<Complex> values(nodes.size());
    detail::parallel_for(nodes.size(), [&](std::size_t i) { values[i] = f(nodes[i]); }, 4096);
    return GridFunction(std::move(domain), std::move(values), std::move(f), std::move(support));
  }

  const Domain<P>& domain() const { return *domain_; }
  const DomainPtr<P>& domain_ptr() const { return domain_; }
  std::span<const Complex> values() const { return values_; }
  bool has_closed_form() const { return static_cast<bool>(closed_form_); }
  const PointFunction<P>& closed_form() const { return closed_form_; }
  const std::optional<Ball<P>>& support() const { return support_; }

  /// Closed form when present; otherwise zero outside a known support ball
  /// and interpolation inside the window.
  Complex operator()(const P& x) const {
    if (closed_form_) return closed_form_(x);
    if (support_ && domain_->rho && domain_->rho->distance(support_->center, x) > support_->radius * (1 + 1e-12))
      return Complex{};
    require(static_cast<bool>(domain_->interpolate), ErrorCode::InterpolationOutOfRange,
            "domain has no interpolation rule");
    return domain_->interpolate(values_, x);
  }

 private:
  DomainPtr<P> domain_;
  std::vector<Complex> values_;
  PointFunction<P> closed_form_;
  std::optional<Ball<P>> support_;
};

// ---------------------------------------------------------------------------
// Ball geometry

/// nu-mass of the nodes strictly inside the ball.
template <class P>
double ball_measure(const Domain<P>& dom, const Ball<P>& b) {
  const auto& rho = dom.metric();
  const auto& nu = dom.measure();
  require(b.radius > 0, ErrorCode::InvalidArgument, "ball radius must be positive");
  const auto nodes = nu.nodes();
  const auto w = nu.weights();
  return detail::pairwise_sum<double>(0, nodes.size(), [&](std::size_t i) {
    return rho.distance(b.center, nodes[i]) < b.radius ? w[i] : 0.0;
  });
}

/// Empirical doubling constant: the largest nu(B(x,2r)) / nu(B(x,r)) over the
/// sample balls, and s = log2 of it.
template <class P>
DoublingProfile estimate_doubling(const Domain<P>& dom, std::span<const Ball<P>> sample_balls) {
  require(!sample_balls.empty(), ErrorCode::InvalidArgument, "need at least one sample ball");
  double worst = 1.0;
  for (const auto& b : sample_balls) {
    require(dom.inside_window(Ball<P>{b.center, 2 * b.radius}), ErrorCode::WindowEscape,
            "doubled sample ball leaves the window");
    const double inner = ball_measure(dom, b);
    if (!(inner > 0)) fail(ErrorCode::EmptyBall, "sample ball has zero measure");
    worst = std::max(worst, ball_measure(dom, Ball<P>{b.center, 2 * b.radius}) / inner);
  }
  return DoublingProfile::from_constant(worst);
}

// ---------------------------------------------------------------------------
// Filter bases

/// A countable descending family B_0 ⊇ B_1 ⊇ ... given by membership and a
/// sampler of points of each level.
template <class P>
struct FilterBase {
  std::function<bool(std::size_t level, const P&)> contains;
  std::function<std::vector<P>(std::size_t level)> sample;
};

struct FilterLimit {
  Complex estimate{};
  double spread = 0.0;
};

/// Mean of f over the sampled points of B_depth and the largest deviation
/// from that mean. Spread near zero signals an existing limit.
template <class P, class F>
FilterLimit limit_along_filter(const F& f, const FilterBase<P>& base, std::size_t depth) {
  const auto points = base.sample(depth);
  if (points.empty()) fail(ErrorCode::EmptyLevel, "filter level " + std::to_string(depth) + " has no points");
  std::vector<Complex> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = f(points[i]);
  FilterLimit out;
  out.estimate = detail::pairwise_sum<Complex>(0, values.size(), [&](std::size_t i) { return values[i]; }) /
                 static_cast<double>(values.size());
  for (const auto& v : values) out.spread = std::max(out.spread, std::abs(v - out.estimate));
  return out;
}

/// True when every sampled point of levels 1..depth passes the predicate of
/// the level above.
template <class P>
bool filter_is_nested(const FilterBase<P>& base, std::size_t depth) {
  for (std::size_t k = 1; k <= depth; ++k)
    for (const auto& p : base.sample(k))
      if (!base.contains(k - 1, p)) return false;
  return true;
}

namespace detail {
inline std::vector<double> escape_offsets(std::size_t level) {
  std::vector<double> out;
  for (std::size_t j = 0; j < 24; ++j) out.push_back(static_cast<double>(level) + 0.25 + 0.731 * static_cast<double>(j));
  return out;
}
}  // namespace detail

/// B_k = {|x| > k} on R (complements of compacta).
inline FilterBase<double> complements_of_compacta() {
  return {[](std::size_t k, double x) { return std::abs(x) > static_cast<double>(k); },
          [](std::size_t k) {
            std::vector<double> pts;
            for (double t : detail::escape_offsets(k)) {
              pts.push_back(t);
              pts.push_back(-t);
            }
            return pts;
          }};
}

/// B_k = {|n| > k} on Z.
inline FilterBase<long> integer_complements() {
  return {[](std::size_t k, long n) { return std::labs(n) > static_cast<long>(k); },
          [](std::size_t k) {
            std::vector<long> pts;
            for (long j = 1; j <= 24; ++j) {
              pts.push_back(static_cast<long>(k) + j);
              pts.push_back(-static_cast<long>(k) - j);
            }
            return pts;
          }};
}

/// B_k = {|x| > k} on R^D, sampled along a fixed fan of directions.
template <std::size_t D>
FilterBase<RealPoint<D>> complements_of_compacta_rd() {
  return {[](std::size_t k, const RealPoint<D>& x) {
            double s = 0;
            for (double c : x) s += c * c;
            return std::sqrt(s) > static_cast<double>(k);
          },
          [](std::size_t k) {
            std::vector<RealPoint<D>> pts;
            const auto radii = detail::escape_offsets(k);
            for (std::size_t j = 0; j < radii.size(); ++j) {
              RealPoint<D> dir{};
              double norm = 0;
              for (std::size_t c = 0; c < D; ++c) {
                dir[c] = std::cos(1.3 * static_cast<double>(j) + 0.9 * static_cast<double>(c));
                norm += dir[c] * dir[c];
              }
              for (auto& c : dir) c *= radii[j] / std::sqrt(norm);
              pts.push_back(dir);
            }
            return pts;
          }};
}

/// B_k = {0 < |z - center| < 1/(k+1)} in C^N (punctured shrinking balls,
/// level 0 is the unit ball).
template <std::size_t N>
FilterBase<ComplexPoint<N>> shrinking_balls(ComplexPoint<N> center) {
  auto dist = [center](const ComplexPoint<N>& z) {
    double s = 0;
    for (std::size_t j = 0; j < N; ++j) s += std::norm(z[j] - center[j]);
    return std::sqrt(s);
  };
  return {[dist](std::size_t k, const ComplexPoint<N>& z) { return dist(z) < 1.0 / static_cast<double>(k + 1); },
          [center](std::size_t k) {
            std::vector<ComplexPoint<N>> pts;
            const double r_max = 1.0 / static_cast<double>(k + 1);
            for (std::size_t j = 0; j < 24; ++j) {
              const double r = r_max * (0.05 + 0.9 * static_cast<double>(j) / 23.0) / std::sqrt(static_cast<double>(N));
              ComplexPoint<N> z = center;
              for (std::size_t c = 0; c < N; ++c) z[c] += std::polar(r, 0.7 * static_cast<double>(j) + 1.9 * static_cast<double>(c));
              pts.push_back(z);
            }
            return pts;
          }};
}

}  // namespace hausdorff
