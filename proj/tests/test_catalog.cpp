#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "hausdorff/hausdorff.hpp"
#include "oracles.hpp"

using namespace hausdorff;

namespace {

const double inf = std::numeric_limits<double>::infinity();

double lorentzian(double t) { return 1.0 / (1.0 + t * t); }

SquareMatrix<long> to_matrix(const oracle::IntMatrix& m) {
  SquareMatrix<long> out(m.size());
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out(r, c) = m[r][c];
  return out;
}

/// Measure and metric agreement at up to `count` parameter nodes u whose
/// preimages of the test balls stay inside the window.
template <class U, class P>
void expect_agreement(const HausdorffOperator<U, P>& op, std::vector<Ball<P>> balls, std::size_t count,
                      double measure_tol, double metric_slack = 0.02) {
  const auto& dom = *op.domain;
  const auto nodes = op.omega.nodes();
  std::size_t checked = 0;
  const std::size_t stride = std::max<std::size_t>(1, nodes.size() / (4 * count));
  for (std::size_t i = 0; i < nodes.size() && checked < count; i += stride) {
    const U& u = nodes[i];
    bool fits = true;
    for (const auto& b : balls)
      fits = fits && dom.inside_window(Ball<P>{op.family.apply_inverse(u, b.center), op.family.k(u) * b.radius});
    if (!fits) continue;
    ++checked;
    EXPECT_LE(check_measure_agreement(op.family, dom, u, std::span<const Ball<P>>(balls)), measure_tol) << op.name;
    EXPECT_LE(check_metric_agreement(op.family, dom, u, std::span<const Ball<P>>(balls)),
              op.family.k(u) * (1 + metric_slack))
        << op.name;
  }
  EXPECT_GE(checked, std::min<std::size_t>(count, nodes.size())) << op.name;
}

}  // namespace

// Determinant

TEST(Determinant, SmallExamples) {
  const auto op3 = determinant_operator<long>(3);
  EXPECT_EQ(apply_exact<long>(op3, diagonal_product<long>, SquareMatrix<long>::identity(3)), 1);
  const auto op2 = determinant_operator<long>(2);
  const oracle::IntMatrix m{{1, 2}, {3, 4}};
  EXPECT_EQ(oracle::cofactor(m), -2);
  EXPECT_EQ(apply_exact<long>(op2, diagonal_product<long>, to_matrix(m)), -2);
  EXPECT_EQ(apply(op2, diagonal_product<long>, to_matrix(m)), Complex(-2.0));
}

TEST(Determinant, MatchesEliminationOracle) {
  std::mt19937_64 rng(4);
  const auto op4 = determinant_operator<long>(4);
  for (int t = 0; t < 20; ++t) {
    const auto m = oracle::random_matrix(4, rng);
    EXPECT_EQ(apply_exact<long>(op4, diagonal_product<long>, to_matrix(m)), oracle::bareiss(m));
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto op = determinant_operator<long>(n);
    for (int t = 0; t < 5; ++t) {
      const auto m = oracle::random_matrix(n, rng);
      EXPECT_EQ(oracle::bareiss(m), oracle::cofactor(m));
      EXPECT_EQ(apply_exact<long>(op, diagonal_product<long>, to_matrix(m)), oracle::bareiss(m));
    }
  }
}

TEST(Determinant, BudgetIsEnforced) {
  try {
    determinant_operator<long>(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_NO_THROW(determinant_operator<long>(9, 362880));
}

// Discrete Hilbert

TEST(DiscreteHilbert, DeltaResponse) {
  const auto op = discrete_hilbert(200);
  auto delta = [](long k) { return Complex(k == 0); };
  for (long k = -20; k <= 20; ++k) {
    const Complex v = apply(op, delta, k);
    if (k % 2 != 0)
      EXPECT_NEAR(v.real(), 2.0 / (std::numbers::pi * double(k)), 1e-15);
    else
      EXPECT_EQ(v, Complex(0.0));
  }
  EXPECT_NEAR(apply(op, delta, 1L).real(), 0.6366, 1e-4);
}

TEST(DiscreteHilbert, ParitySplitIsExact) {
  const auto op = discrete_hilbert(60);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1, 1);
  std::vector<Complex> vals(61);
  for (auto& v : vals) v = Complex(d(rng), d(rng));
  auto even_only = [&](long n) { return (n % 2 == 0 && std::labs(n) <= 60) ? vals[std::size_t(n + 60) / 2] : Complex{}; };
  auto odd_only = [&](long n) { return (n % 2 != 0 && std::labs(n) <= 60) ? vals[std::size_t(n + 61) / 2] : Complex{}; };
  for (long k = -30; k <= 30; ++k) {
    if (k % 2 == 0) {
      EXPECT_EQ(apply(op, even_only, k), Complex(0.0));
    } else {
      EXPECT_EQ(apply(op, odd_only, k), Complex(0.0));
    }
  }
}

// Hilbert transform on R

TEST(Hilbert, LorentzianAgainstSpectralOracle) {
  const auto op = hilbert_transform(200, 1u << 14);
  double worst = 0;
  for (int i = 0; i <= 80; ++i) {
    const double x = -2.0 + 0.05 * i;
    const double spectral = oracle::hilbert_of_lorentzian_spectral(x);
    EXPECT_NEAR(spectral, x / (1 + x * x), 1e-9);
    worst = std::max(worst, std::abs(apply(op, [](double t) { return Complex(lorentzian(t)); }, x) - spectral));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(Hilbert, RampOnUnitWindow) {
  const auto op = hilbert_transform(200, 1u << 14);
  for (double x : {-0.6, 0.0, 1.3}) {
    auto f = [x](double t) { return Complex(std::abs(t - x) <= 1.0 ? t : 0.0); };
    const double ref = oracle::hilbert_of_ramp_window(x);
    EXPECT_NEAR(ref, -2.0 / std::numbers::pi, 1e-8);
    EXPECT_NEAR(apply(op, f, x).real(), ref, 2e-2);
  }
}

TEST(Hilbert, ZeroAndConstantInputs) {
  const auto op = hilbert_transform(50, 2048);
  EXPECT_EQ(apply(op, [](double) { return Complex(0.0); }, 0.3), Complex(0.0));
  EXPECT_LT(std::abs(apply(op, [](double) { return Complex(1.0); }, 0.3)), 1e-12);
}

TEST(HilbertCurve, LineCaseReducesToHilbert) {
  const auto flat = hilbert_transform(100, 4096);
  const auto curved = hilbert_along_curve<1>(moment_curve<1>(), {}, 100, 4096);
  for (double x : {-1.0, 0.2, 1.7}) {
    const Complex a = apply(flat, [](double t) { return Complex(lorentzian(t)); }, x);
    const Complex b = apply(curved, [](const RealPoint<1>& p) { return Complex(lorentzian(p[0])); }, RealPoint<1>{x});
    EXPECT_LT(std::abs(a - b), 1e-14);
  }
}

TEST(HilbertCurve, ParabolaSeparatesVariables) {
  const auto flat = hilbert_transform(100, 4096);
  const auto curved = hilbert_along_curve<2>(moment_curve<2>(), {}, 100, 4096);
  for (double x : {-1.0, 0.5}) {
    const Complex a = apply(flat, [](double t) { return Complex(lorentzian(t)); }, x);
    const Complex b =
        apply(curved, [](const RealPoint<2>& p) { return Complex(lorentzian(p[0])); }, RealPoint<2>{x, 0.7});
    EXPECT_LT(std::abs(a - b), 1e-12);
  }
  EXPECT_LT(std::abs(apply(curved, [](const RealPoint<2>&) { return Complex(2.0); }, RealPoint<2>{0.1, 0.2})), 1e-12);
}

// Cauchy transform on the torus

TEST(Cauchy, MonomialTableMatchesHalfResidues) {
  const auto op = cauchy_torus<1>(4096, 16);
  for (int m = -3; m <= 3; ++m) {
    double worst = 0;
    for (int s = 0; s < 32; ++s) {
      const Complex z = std::polar(1.0, 0.37 + 2 * std::numbers::pi * s / 32);
      const Complex got = apply(op, [m](const ComplexPoint<1>& w) { return std::pow(w[0], m); }, ComplexPoint<1>{z});
      worst = std::max(worst, std::abs(got - oracle::half_residue(m) * std::pow(z, m)));
    }
    EXPECT_LE(worst, 1e-6) << "m = " << m;
  }
}

TEST(Cauchy, ProductOfHalfResidues) {
  const auto op = cauchy_torus<2>(256, 8);
  for (int s = 0; s < 8; ++s) {
    const ComplexPoint<2> z{std::polar(1.0, 0.3 * s), std::polar(1.0, -0.7 * s + 1)};
    const Complex got = apply(op, [](const ComplexPoint<2>& w) { return w[0] * w[1]; }, z);
    EXPECT_LT(std::abs(got - z[0] * z[1] * oracle::half_residue(1) * oracle::half_residue(1)), 1e-6);
  }
}

// Convolution

TEST(Convolution, DiracIsIdentity) {
  const auto op = convolution_operator(counting_measure<double>({0.0}), real_line(-3, 3, 10));
  EXPECT_EQ(apply(op, [](double t) { return Complex(std::sin(t)); }, 0.7), Complex(std::sin(0.7)));
}

TEST(Convolution, TwoPointAverageOnLattice) {
  const auto op = convolution_operator(discrete_measure<long>({-1, 1}, {0.5, 0.5}), integers(-10, 10));
  auto delta = [](long n) { return Complex(n == 0); };
  for (long k = -4; k <= 4; ++k) EXPECT_EQ(apply(op, delta, k).real(), std::labs(k) == 1 ? 0.5 : 0.0);
}

TEST(Convolution, GaussianVariancesAdd) {
  const double s1 = 0.8, s2 = 1.3;
  const auto op = convolution_operator(gaussian_measure(s1, 10.0, 2001), real_line(-3, 3, 10));
  for (double x : {-2.0, 0.0, 0.5, 2.5}) {
    const Complex got = apply(op, [s2](double t) { return Complex(oracle::gaussian_pdf(t, s2)); }, x);
    EXPECT_NEAR(got.real(), oracle::gaussian_pdf(x, std::hypot(s1, s2)), 1e-4);
  }
}

// Discrete Hausdorff operators on R^d

TEST(DiscreteRd, ScaledIdentityConstants) {
  const auto op = discrete_hausdorff_rd<2>(scalar_dilations<2>({2.0}), {1.0}, real_space<2>(-2, 2, 10));
  EXPECT_NEAR(op.family.m(0), 4.0, 1e-14);
  EXPECT_NEAR(op.family.k(0), 0.5, 1e-14);
  ASSERT_EQ(op.diagnostics.size(), 1u);
  EXPECT_NEAR(op.diagnostics[0].second, 1.0, 1e-14);
}

TEST(DiscreteRd, IdentityMatrixIsIdentityOperator) {
  const auto op = discrete_hausdorff_rd<2>(scalar_dilations<2>({1.0}), {1.0}, real_space<2>(-2, 2, 10));
  auto f = [](const RealPoint<2>& p) { return Complex(p[0] * p[1], p[0]); };
  EXPECT_EQ(apply(op, f, RealPoint<2>{0.3, -1.1}), f(RealPoint<2>{0.3, -1.1}));
}

TEST(DiscreteRd, RotationsAreMeasurePreserving) {
  const double a = 0.4, b = 2.2;
  const std::vector<RealMatrix<2>> rot{RealMatrix<2>{{{std::cos(a), -std::sin(a)}, {std::sin(a), std::cos(a)}}},
                                       RealMatrix<2>{{{std::cos(b), -std::sin(b)}, {std::sin(b), std::cos(b)}}}};
  const auto op = discrete_hausdorff_rd<2>(rot, {0.7, Complex(0, -0.2)}, real_space<2>(-2, 2, 10));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(op.family.m(k), 1.0, 1e-14);
    EXPECT_NEAR(op.family.k(k), 1.0, 1e-14);
  }
  for (double p : {1.0, 2.0, 3.0, inf}) EXPECT_NEAR(phi_norm_Ap(op, p), 0.9, 1e-14);
}

// Hausdorff-Zhu on the disc

TEST(HausdorffZhu, InvolutionAnchors) {
  const auto op = hausdorff_zhu([](Complex) { return Complex(1.0); }, 8, 16);
  const Complex u(0.2, -0.5);
  EXPECT_LT(std::abs(op.family.apply(u, Complex(0.0)) - u), 1e-15);
  EXPECT_LT(std::abs(op.family.apply(u, u)), 1e-15);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> r(0, 0.99), t(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const Complex v = std::polar(r(rng), t(rng)), z = std::polar(r(rng), t(rng));
    EXPECT_LT(std::abs(op.family.apply(v, op.family.apply(v, z)) - z), 1e-12);
  }
}

TEST(HausdorffZhu, ZeroSymbolAndArea) {
  const auto zero = hausdorff_zhu([](Complex) { return Complex(0.0); }, 8, 16);
  EXPECT_EQ(apply(zero, [](Complex z) { return z + 1.0; }, Complex(0.1, 0.2)), Complex(0.0));
  const double margin = 0.02;
  const auto one = hausdorff_zhu([](Complex) { return Complex(1.0); }, 200, 64, margin);
  EXPECT_NEAR(apply(one, [](Complex) { return Complex(1.0); }, Complex(0.3)).real(),
              std::numbers::pi * (1 - margin) * (1 - margin), 1e-10);
}

TEST(HausdorffZhu, BoundaryNodesAreRejected) {
  try {
    hausdorff_zhu([](Complex) { return Complex(1.0); }, counting_measure<Complex>({Complex(0.9999, 0)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryNode);
  }
}

// Hausdorff operator over the upper half-plane

TEST(HalfPlane, UnitMassAtOneIsIdentity) {
  const auto op = halfplane_hausdorff<1>([](const RealPoint<1>&) { return Complex(1.0); },
                                         counting_measure<RealPoint<1>>({RealPoint<1>{1.0}}));
  const ComplexPoint<1> z{Complex(0.4, 2.0)};
  EXPECT_LT(std::abs(apply(op, [](const ComplexPoint<1>& w) { return std::exp(w[0]); }, z) - std::exp(z[0])), 1e-15);
}

TEST(HalfPlane, LinearInputScalesByFirstMoment) {
  auto phi = [](const RealPoint<1>& u) { return Complex(u[0] * std::exp(-u[0])); };
  const double lo = 0.01, hi = 30;
  const auto op = halfplane_hausdorff<1>(phi, positive_orthant_grid<1>(lo, hi, 30001));
  const double moment = oracle::gauss_legendre([](double u) { return std::exp(-u); }, lo, hi, 300);
  for (const Complex z : {Complex(1.0, 1.0), Complex(-2.0, 0.5)}) {
    const Complex got = apply(op, [](const ComplexPoint<1>& w) { return w[0]; }, ComplexPoint<1>{z});
    EXPECT_LT(std::abs(got - z * moment), 1e-6);
  }
}

TEST(HalfPlane, BoundedByMassTimesSup) {
  auto phi = [](const RealPoint<2>& u) { return Complex(std::exp(-u[0] - u[1])); };
  const auto op = halfplane_hausdorff<2>(phi, positive_orthant_grid<2>(0.05, 8, 120));
  const double mass = integrate(op.omega, phi).value.real();
  // exp(i z1) exp(i z2) is bounded by 1 on the closed upper half-plane.
  auto f = [](const ComplexPoint<2>& w) { return std::exp(Complex(0, 1) * (w[0] + w[1])); };
  for (const ComplexPoint<2> z : {ComplexPoint<2>{Complex(0.3, 0.1), Complex(-1, 2)}, ComplexPoint<2>{Complex(2, 0.01), Complex(0, 0.5)}})
    EXPECT_LE(std::abs(apply(op, f, z)), mass * (1 + 1e-12));
}

// Agreement of declared modulus and metric factor

TEST(Agreement, CatalogEntries) {
  const auto h = 1.0 / 50;
  expect_agreement(discrete_hilbert(50, {}, 200), std::vector<Ball<long>>{{0, 3.0}, {4, 10.0}}, 10, 0.0);
  expect_agreement(hilbert_transform(4, 400), std::vector<Ball<double>>{{0.0, 1.0}, {0.5, 0.5}}, 10, 4 * h / 1.0);
  expect_agreement(convolution_operator(gaussian_measure(1.0, 3.0, 61), real_line(-8, 8, 50)),
                   std::vector<Ball<double>>{{0.0, 1.0}}, 10, 4 * h);
  expect_agreement(cauchy_torus<1>(64, 256), std::vector<Ball<ComplexPoint<1>>>{{{Complex(1)}, 0.5}}, 10,
                   4 * (2 * std::numbers::pi / 256) / 1.0);
  expect_agreement(discrete_dilations({2.0, 0.5}, {0.5, 0.5}, real_line(-8, 8, 50)),
                   std::vector<Ball<double>>{{0.0, 1.0}, {1.0, 0.5}}, 2, 4 * h / 0.5);
  expect_agreement(discrete_hausdorff_rd<2>(scalar_dilations<2>({0.5, 1.0, 2.0}), {0.3, 0.4, 0.3},
                                            real_space<2>(-4, 4, 25)),
                   std::vector<Ball<RealPoint<2>>>{{{0, 0}, 1.0}}, 3, 0.05);
  expect_agreement(hilbert_along_curve<2>(moment_curve<2>(), {}, 1.0, 40, ContinuumWindow{4, 20}),
                   std::vector<Ball<RealPoint<2>>>{{{0, 0}, 1.0}}, 10, 0.05);
  expect_agreement(halfplane_hausdorff<1>([](const RealPoint<1>& u) { return Complex(std::exp(-u[0])); },
                                          positive_orthant_grid<1>(0.5, 3, 26), ContinuumWindow{8, 50}),
                   std::vector<Ball<ComplexPoint<1>>>{{{Complex(0.5)}, 1.0}}, 10, 4 * h);
}
