#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hausdorff/automorphism.hpp"
#include "hausdorff/domain.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/operator.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff {

// ---------------------------------------------------------------------------
// Leibniz determinant

/// sum over sigma of sgn(sigma) f(M with columns permuted by sigma); with
/// f = diagonal_product this is det(M).
template <class T>
HausdorffOperator<Permutation, SquareMatrix<T>> determinant_operator(std::size_t n, std::uint64_t budget = 40320) {
  require(n >= 1, ErrorCode::InvalidArgument, "determinant needs n >= 1");
  if (n > 20 || factorial(n) > budget)
    fail(ErrorCode::BudgetExceeded, std::to_string(n) + "! exceeds the node budget " + std::to_string(budget));
  HausdorffOperator<Permutation, SquareMatrix<T>> op;
  op.name = "determinant";
  op.omega = counting_measure(all_permutations(n));
  op.phi = [](const Permutation& s) { return Complex(s.sign()); };
  op.integer_symbol = [](const Permutation& s) { return std::int64_t{s.sign()}; };
  op.family = column_permutations<T>();
  op.domain = square_matrices<T>(n);
  return op;
}

/// f0(M) = m_11 m_22 ... m_nn.
template <class T>
T diagonal_product(const SquareMatrix<T>& m) {
  T p{1};
  for (std::size_t i = 0; i < m.size(); ++i) p *= m(i, i);
  return p;
}

// ---------------------------------------------------------------------------
// Discrete Hilbert transform on Z

/// Phi(u) = 2/(pi u) for odd u, 0 for even u, on [-K, K] with weights p_u
/// (empty weights mean p = 1), acting on Z[-window, window] by k -> k - u.
inline HausdorffOperator<long, long> discrete_hilbert(long K, std::function<double(long)> weights = {},
                                                       long window = 0) {
  require(K >= 1, ErrorCode::InvalidArgument, "discrete Hilbert needs K >= 1");
  std::vector<long> u;
  std::vector<double> w;
  for (long k = -K; k <= K; ++k) {
    u.push_back(k);
    w.push_back(weights ? weights(k) : 1.0);
  }
  HausdorffOperator<long, long> op;
  op.name = "discrete_hilbert";
  op.omega = discrete_measure(std::move(u), std::move(w), Truncation{double(K), 2, {}});
  op.phi = [](long u) { return (u % 2 != 0) ? Complex(2.0 / (std::numbers::pi * double(u))) : Complex{}; };
  op.family = integer_translations();
  const long half = window > 0 ? window : 3 * K;
  op.domain = integers(-half, half);
  return op;
}

// ---------------------------------------------------------------------------
// Hilbert transform on R and along curves

struct ContinuumWindow {
  double half_width = 8.0;
  double nodes_per_unit = 50.0;
};

inline MeasureSpace<double> principal_value_window(double R, std::size_t N) {
  require(R > 0, ErrorCode::InvalidArgument, "truncation radius must be positive");
  require(N >= 4 && N % 2 == 0, ErrorCode::InvalidArgument, "p.v. node count must be even");
  PrincipalValueLayout layout;
  layout.richardson = true;
  layout.truncation = Truncation{R, 2, {}};
  return principal_value_line(-R, R, {0.0}, N, layout);
}

/// p.v. integral of f(x - u) / (pi u) over [-R, R].
inline HausdorffOperator<double, double> hilbert_transform(double R, std::size_t N, ContinuumWindow window = {}) {
  HausdorffOperator<double, double> op;
  op.name = "hilbert";
  op.omega = principal_value_window(R, N);
  op.phi = [](double u) { return Complex(1.0 / (std::numbers::pi * u)); };
  op.family = translations();
  op.domain = real_line(-window.half_width, window.half_width, window.nodes_per_unit);
  return op;
}

/// p.v. integral of phi(u) f(x - gamma(u)) over [-R, R].
template <std::size_t D>
HausdorffOperator<double, RealPoint<D>> hilbert_along_curve(const MonomialCurve<D>& curve,
                                                             std::function<Complex(double)> phi, double R,
                                                             std::size_t N, ContinuumWindow window = {4.0, 20.0}) {
  HausdorffOperator<double, RealPoint<D>> op;
  op.name = "hilbert_curve";
  op.family = curve_translations<D>(curve);
  op.omega = principal_value_window(R, N);
  op.phi = phi ? std::move(phi) : [](double u) { return Complex(1.0 / (std::numbers::pi * u)); };
  op.domain = real_space<D>(-window.half_width, window.half_width, window.nodes_per_unit);
  return op;
}

// ---------------------------------------------------------------------------
// Cauchy transform on the torus

/// (Cf)(z) = p.v. (2 pi i)^{-N} integral of f(u z) prod du_j / (u_j - 1).
/// In the angle variable du = i u dtheta, so the symbol against dtheta is
/// prod u_j / (2 pi (u_j - 1)).
template <std::size_t N>
HausdorffOperator<TorusPoint<N>, ComplexPoint<N>> cauchy_torus(std::size_t nodes_per_circle,
                                                                std::size_t domain_nodes = 64) {
  HausdorffOperator<TorusPoint<N>, ComplexPoint<N>> op;
  op.name = "cauchy_torus";
  op.omega = principal_value_torus<N>(nodes_per_circle);
  op.phi = [](const TorusPoint<N>& t) {
    Complex v(1.0);
    for (std::size_t j = 0; j < N; ++j) {
      const Complex u = std::polar(1.0, t.angle[j]);
      v *= u / (2.0 * std::numbers::pi * (u - 1.0));
    }
    return v;
  };
  op.family = torus_rotations<N>();
  op.domain = torus<N>(domain_nodes);
  return op;
}

// ---------------------------------------------------------------------------
// Convolution with a measure

/// f -> f * mu on R (Phi = 1, A(u) x = x - u).
inline HausdorffOperator<double, double> convolution_operator(MeasureSpace<double> mu, DomainPtr<double> domain) {
  HausdorffOperator<double, double> op;
  op.name = "convolution";
  op.omega = std::move(mu);
  op.phi = [](double) { return Complex(1.0); };
  op.family = translations();
  op.domain = std::move(domain);
  return op;
}

/// f -> f * mu on Z.
inline HausdorffOperator<long, long> convolution_operator(MeasureSpace<long> mu, DomainPtr<long> domain) {
  HausdorffOperator<long, long> op;
  op.name = "convolution";
  op.omega = std::move(mu);
  op.phi = [](long) { return Complex(1.0); };
  op.family = integer_translations();
  op.domain = std::move(domain);
  return op;
}

/// Centered normal distribution with deviation sigma, trapezoid on
/// [-R, R] with n nodes.
inline MeasureSpace<double> gaussian_measure(double sigma, double R, std::size_t n) {
  require(sigma > 0, ErrorCode::InvalidArgument, "sigma must be positive");
  const double c = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  return weighted_trapezoid(-R, R, n, [=](double u) { return c * std::exp(-u * u / (2 * sigma * sigma)); },
                            Truncation{R, 2, {}});
}

// ---------------------------------------------------------------------------
// Discrete Hausdorff operators

/// sum_k phi_k f(M_k x) on R^D.
template <std::size_t D>
HausdorffOperator<std::size_t, RealPoint<D>> discrete_hausdorff_rd(const std::vector<RealMatrix<D>>& matrices,
                                                                   const std::vector<Complex>& phi,
                                                                   DomainPtr<RealPoint<D>> domain) {
  require(!matrices.empty() && matrices.size() == phi.size(), ErrorCode::InvalidArgument,
          "one symbol value per matrix required");
  HausdorffOperator<std::size_t, RealPoint<D>> op;
  op.name = "discrete_hausdorff_rd";
  for (std::size_t k = 0; k < matrices.size(); ++k)
    op.diagnostics.emplace_back("condition_" + std::to_string(k), analyze_linear_map<D>(matrices[k]).condition);
  op.family = linear_maps<D>(matrices);
  std::vector<std::size_t> idx(matrices.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  op.omega = counting_measure(std::move(idx));
  op.phi = [phi](std::size_t k) { return phi.at(k); };
  op.domain = std::move(domain);
  return op;
}

/// Scalar multiples of the identity in R^D.
template <std::size_t D>
std::vector<RealMatrix<D>> scalar_dilations(const std::vector<double>& factors) {
  std::vector<RealMatrix<D>> out;
  for (double a : factors) {
    RealMatrix<D> m{};
    for (std::size_t j = 0; j < D; ++j) m[j][j] = a;
    out.push_back(m);
  }
  return out;
}

/// sum_k phi_k f(x / u_k) on R, using the dilation family.
inline HausdorffOperator<double, double> discrete_dilations(std::vector<double> factors, std::vector<Complex> phi,
                                                            DomainPtr<double> domain) {
  require(!factors.empty() && factors.size() == phi.size(), ErrorCode::InvalidArgument,
          "one symbol value per dilation required");
  std::vector<std::pair<double, Complex>> table;
  for (std::size_t k = 0; k < factors.size(); ++k) table.emplace_back(factors[k], phi[k]);
  HausdorffOperator<double, double> op;
  op.name = "discrete_dilations";
  op.omega = counting_measure(std::move(factors));
  op.phi = [table](double u) {
    for (const auto& [f, v] : table)
      if (f == u) return v;
    return Complex{};
  };
  op.family = dilations();
  op.domain = std::move(domain);
  validate(op);
  return op;
}

/// sum_k phi_k f(x - t_k) on R.
inline HausdorffOperator<double, double> discrete_translations(std::vector<double> shifts, std::vector<Complex> phi,
                                                               DomainPtr<double> domain) {
  require(!shifts.empty() && shifts.size() == phi.size(), ErrorCode::InvalidArgument,
          "one symbol value per shift required");
  std::vector<std::pair<double, Complex>> table;
  for (std::size_t k = 0; k < shifts.size(); ++k) table.emplace_back(shifts[k], phi[k]);
  HausdorffOperator<double, double> op;
  op.name = "discrete_translations";
  op.omega = counting_measure(std::move(shifts));
  op.phi = [table](double u) {
    for (const auto& [t, v] : table)
      if (t == u) return v;
    return Complex{};
  };
  op.family = translations();
  op.domain = std::move(domain);
  return op;
}

// ---------------------------------------------------------------------------
// Hausdorff-Zhu operator on the disc

/// Polar midpoint rule on {|u| < 1 - margin}: weights r dr dtheta.
inline MeasureSpace<Complex> disc_area_quadrature(std::size_t radial, std::size_t angular, double margin) {
  require(radial >= 1 && angular >= 1 && margin > 0 && margin < 1, ErrorCode::InvalidArgument,
          "disc quadrature needs positive node counts and margin in (0, 1)");
  const double dr = (1.0 - margin) / double(radial);
  const double dt = 2.0 * std::numbers::pi / double(angular);
  std::vector<Complex> u;
  std::vector<double> w;
  for (std::size_t i = 0; i < radial; ++i) {
    const double r = (double(i) + 0.5) * dr;
    for (std::size_t j = 0; j < angular; ++j) {
      u.push_back(std::polar(r, (double(j) + 0.5) * dt));
      w.push_back(r * dr * dt);
    }
  }
  return MeasureSpace<Complex>(MeasureKind::QuadratureContinuum, std::move(u), std::move(w));
}

/// integral over the disc of phi(u) f((u - z)/(1 - conj(u) z)) dA(u).
inline HausdorffOperator<Complex, Complex> hausdorff_zhu(std::function<Complex(Complex)> phi,
                                                         MeasureSpace<Complex> omega, double margin = 1e-3) {
  for (const auto& u : omega.nodes())
    if (std::abs(u) >= 1.0 - margin) fail(ErrorCode::BoundaryNode, "parameter node too close to the unit circle");
  HausdorffOperator<Complex, Complex> op;
  op.name = "hausdorff_zhu";
  op.omega = std::move(omega);
  op.phi = std::move(phi);
  op.family = mobius_involutions();
  op.domain = unit_disc();
  return op;
}

inline HausdorffOperator<Complex, Complex> hausdorff_zhu(std::function<Complex(Complex)> phi, std::size_t radial,
                                                         std::size_t angular, double margin = 0.02) {
  return hausdorff_zhu(std::move(phi), disc_area_quadrature(radial, angular, margin), margin / 2);
}

// ---------------------------------------------------------------------------
// Hausdorff operator over a power of the upper half-plane

/// Tensor trapezoid rule on [lo, hi]^N inside (0, inf)^N.
template <std::size_t N>
MeasureSpace<RealPoint<N>> positive_orthant_grid(double lo, double hi, std::size_t n) {
  require(lo > 0 && hi > lo && n >= 2, ErrorCode::InvalidArgument, "orthant grid needs 0 < lo < hi and n >= 2");
  const double h = (hi - lo) / double(n - 1);
  std::size_t total = 1;
  for (std::size_t j = 0; j < N; ++j) total *= n;
  std::vector<RealPoint<N>> u(total);
  std::vector<double> w(total, 1.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t i = rest % n;
      rest /= n;
      u[idx][j] = lo + h * double(i);
      w[idx] *= (i == 0 || i + 1 == n) ? h / 2 : h;
    }
  }
  return MeasureSpace<RealPoint<N>>(MeasureKind::QuadratureContinuum, std::move(u), std::move(w),
                                    Truncation{hi, N, {}});
}

/// integral of phi(u) f(z_1/u_1, ..., z_N/u_N) du. The domain is the
/// boundary R^N, where the declared m and k are checkable.
template <std::size_t N>
HausdorffOperator<RealPoint<N>, ComplexPoint<N>> halfplane_hausdorff(std::function<Complex(const RealPoint<N>&)> phi,
                                                                      MeasureSpace<RealPoint<N>> omega,
                                                                      ContinuumWindow window = {8.0, 10.0}) {
  HausdorffOperator<RealPoint<N>, ComplexPoint<N>> op;
  op.name = "halfplane";
  op.omega = std::move(omega);
  op.phi = std::move(phi);
  op.family = coordinate_dilations<N>();
  op.domain = half_plane_boundary<N>(-window.half_width, window.half_width, window.nodes_per_unit);
  validate(op);
  return op;
}

}  // namespace hausdorff
