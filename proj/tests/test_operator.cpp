#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "hausdorff/catalog.hpp"
#include "hausdorff/operator.hpp"
#include "oracles.hpp"

using namespace hausdorff;

namespace {

const double inf = std::numeric_limits<double>::infinity();

double lorentzian(double t) { return 1.0 / (1.0 + t * t); }

HausdorffOperator<double, double> gaussian_smoother(DomainPtr<double> dom) {
  return convolution_operator(gaussian_measure(1.0, 8.0, 801), std::move(dom));
}

}  // namespace

TEST(Apply, ConstantIsPreservedByNormalizedSymbol) {
  const auto op = discrete_translations({-0.3, 1.1, 2.0}, {0.25, 0.5, 0.25}, real_line(-5, 5, 20));
  EXPECT_NEAR(std::abs(apply(op, [](double) { return Complex(2.0, -1.0); }, 0.4) - Complex(2.0, -1.0)), 0.0, 1e-15);
}

TEST(Apply, DeterminantOfIdentity) {
  const auto op = determinant_operator<long>(3);
  EXPECT_EQ(apply(op, diagonal_product<long>, SquareMatrix<long>::identity(3)), Complex(1.0));
  EXPECT_EQ(apply_exact<long>(op, diagonal_product<long>, SquareMatrix<long>::identity(3)), 1);
}

TEST(Apply, DiscreteHilbertOfDelta) {
  const auto op = discrete_hilbert(200);
  auto delta = [](long k) { return Complex(k == 0 ? 1.0 : 0.0); };
  EXPECT_NEAR(apply(op, delta, 3L).real(), 2.0 / (3.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(apply(op, delta, 3L).real(), 0.2122, 1e-4);
}

TEST(ApplyGrid, EmptyAndSingleton) {
  const auto op = hilbert_transform(50, 1024);
  auto f = [](double t) { return Complex(lorentzian(t)); };
  EXPECT_TRUE(apply_grid(op, f, {}).values.empty());
  const auto one = apply_grid(op, f, {0.3});
  ASSERT_EQ(one.values.size(), 1u);
  EXPECT_EQ(one.values[0], apply(op, f, 0.3));
  EXPECT_EQ(one.points[0], 0.3);
}

TEST(ApplyGrid, HilbertOfLorentzian) {
  const auto op = hilbert_transform(200, 1u << 14);
  std::vector<double> xs;
  for (int i = 0; i <= 400; ++i) xs.push_back(-2.0 + 0.01 * i);
  const auto out = apply_grid(op, [](double t) { return Complex(lorentzian(t)); }, xs);
  double worst = 0, worst_ref = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(out.values[i] - xs[i] / (1 + xs[i] * xs[i])));
    if (i % 40 == 0)
      worst_ref = std::max(worst_ref, std::abs(out.values[i].real() - oracle::hilbert_pv(lorentzian, xs[i], 200)));
  }
  EXPECT_LE(worst, 1e-3);
  EXPECT_LE(worst_ref, 1e-3);
}

TEST(PhiNorm, TranslationsIgnoreP) {
  const auto op = discrete_translations({-1.0, 0.5, 2.0}, {Complex(0.5, 0.5), -0.25, 1.0}, real_line(-5, 5, 10));
  const double l1 = std::sqrt(0.5) + 0.25 + 1.0;
  for (double p : {1.0, 2.0, 7.5, inf}) EXPECT_NEAR(phi_norm_Ap(op, p), l1, 1e-15);
}

TEST(PhiNorm, SingleDilation) {
  const auto op = discrete_dilations({2.0}, {1.0}, real_line(-5, 5, 10));
  EXPECT_NEAR(phi_norm_Ap(op, 2.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(phi_norm_Ap(op, 1.0), 2.0, 1e-15);
  EXPECT_NEAR(phi_norm_Ap(op, inf), 1.0, 1e-15);
}

TEST(PhiNorm, CauchyDensityAgainstLebesgue) {
  HausdorffOperator<double, double> op;
  op.name = "lorentzian_average";
  op.omega = trapezoid(-1e5, 1e5, 4000001, Truncation{1e5, 2, {}});
  op.phi = [](double u) { return Complex(lorentzian(u)); };
  op.family = translations();
  op.domain = real_line(-1, 1, 10);
  // integral of 1/(1+u^2) over R with u = tan(theta).
  const double ref = oracle::gauss_legendre([](double) { return 1.0; }, -std::numbers::pi / 2, std::numbers::pi / 2, 1);
  EXPECT_NEAR(phi_norm_Ap(op, inf), ref, 1e-4);
}

TEST(PhiNorm, MissingModulusIsReported) {
  const auto op = determinant_operator<long>(3);
  EXPECT_EQ(phi_norm_Ap(op, inf), 6.0);
  try {
    phi_norm_Ap(op, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingModulus);
  }
}

TEST(Contraction, TranslationIsAnIsometry) {
  const auto op = discrete_translations({0.5}, {1.0}, real_line(-8, 8, 100));
  for (double p : {1.0, 2.0, inf}) {
    const auto r = check_lp_contraction(op, p, 10, 42);
    EXPECT_EQ(r.bound_value, 1.0);
    EXPECT_NEAR(r.empirical_lower, 1.0, 1e-12);
    EXPECT_EQ(r.witnesses, 10u);
  }
}

TEST(Contraction, TwoDilations) {
  const auto op = discrete_dilations({2.0, 0.5}, {0.5, 0.5}, real_line(-8, 8, 100));
  const auto r = check_lp_contraction(op, 2.0, 30, 7);
  EXPECT_LE(r.empirical_lower, r.bound_value * 1.01);
  EXPECT_GT(r.empirical_lower, 0.5);
  EXPECT_FALSE(r.worst.empty());
}

TEST(Contraction, HomogeneousInSymbol) {
  const auto op = discrete_dilations({2.0, 0.5}, {0.5, Complex(0, 0.5)}, real_line(-8, 8, 50));
  const auto big = scaled(op, 3.0);
  for (double p : {1.0, 4.0}) {
    const auto a = check_lp_contraction(op, p, 8, 3);
    const auto b = check_lp_contraction(big, p, 8, 3);
    EXPECT_NEAR(b.bound_value, 3 * a.bound_value, 1e-12);
    EXPECT_NEAR(b.empirical_lower, 3 * a.empirical_lower, 1e-12);
  }
}

TEST(Contraction, WrongModulusIsCaught) {
  auto op = discrete_dilations({4.0}, {1.0}, real_line(-12, 12, 50));
  op.family.modulus = [](double) { return 1.0; };
  try {
    check_lp_contraction(op, 1.0, 5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ViolatedBound);
    EXPECT_NE(std::string(e.what()).find("seed 1"), std::string::npos);
  }
}

TEST(Contraction, SameSeedSameReport) {
  const auto op = discrete_hilbert(50, {}, 150);
  const auto a = check_lp_contraction(op, 2.0, 10, 99);
  const auto b = check_lp_contraction(op, 2.0, 10, 99);
  EXPECT_EQ(a.empirical_lower, b.empirical_lower);
  EXPECT_EQ(a.worst, b.worst);
}

TEST(Regularity, DefectExamples) {
  const auto line = real_line(-5, 5, 10);
  EXPECT_NEAR(regularity_defect(discrete_translations({0.0, 1.0, 2.0, 3.0}, {0.25, 0.25, 0.25, 0.25}, line)), 0.0,
              1e-15);
  EXPECT_EQ(regularity_defect(discrete_translations({0.0, 1.0}, {0.0, 0.0}, line)), 1.0);
  const auto cauchy = cauchy_torus<1>(4096, 16);
  EXPECT_NEAR(regularity_defect(cauchy), std::abs(oracle::half_residue(0) - 1.0), 1e-12);
  EXPECT_NEAR(regularity_defect(cauchy), 0.5, 1e-12);
}

TEST(Regularity, ConstantInputHasNoSpread) {
  const auto op = gaussian_smoother(real_line(-4, 4, 10));
  const auto r = check_regularity(op, complements_of_compacta(), [](double) { return Complex(1.5); }, 1.5, 3);
  EXPECT_LE(r.limit_spread, 1e-14);
  EXPECT_LE(r.defect, 1e-14);
}

TEST(Regularity, GaussianBumpOnConstant) {
  const auto op = gaussian_smoother(real_line(-4, 4, 10));
  const Complex l(0.7, -0.2);
  auto f = [l](double x) { return l + std::exp(-x * x); };
  const auto r = check_regularity(op, complements_of_compacta(), f, l, 8);
  EXPECT_LE(r.limit_spread, 1e-6);
  EXPECT_NEAR(std::abs(apply(op, f, 1.3) - l), oracle::gaussian_smoothed(1.3, 1.0), 1e-10);
  double prev = inf;
  for (std::size_t depth : {0u, 2u, 4u}) {
    const double s = check_regularity(op, complements_of_compacta(), f, l, depth).limit_spread;
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(Regularity, DoubledSymbolIsNecessityWitness) {
  const auto op = scaled(gaussian_smoother(real_line(-4, 4, 10)), 2.0);
  const Complex l(0.7, -0.2);
  const auto r = check_regularity(op, complements_of_compacta(), [l](double x) { return l + std::exp(-x * x); }, l, 8);
  EXPECT_NEAR(r.defect, 1.0, 1e-12);
  EXPECT_GE(r.limit_spread, 0.5 * std::abs(l));
  EXPECT_NEAR(std::abs(r.estimate - 2.0 * l), 0.0, 1e-6);
  for (double x : {-9.0, 0.0, 3.3, 50.0}) EXPECT_NEAR(std::abs(apply(op, [](double) { return Complex(1.0); }, x) - 2.0), 0.0, 1e-12);
}

TEST(Regularity, DichotomyOnLattice) {
  std::vector<double> w(11, 1.0 / 11.0);
  std::vector<long> u;
  for (long k = -5; k <= 5; ++k) u.push_back(k);
  const auto normalized = convolution_operator(discrete_measure(u, w), integers(-10, 10));
  auto f = [](long n) { return Complex(3.0 + 1.0 / (1.0 + double(n * n))); };
  const auto good = check_regularity(normalized, integer_complements(), f, 3.0, 200);
  EXPECT_LE(good.limit_spread, 1e-4);
  const auto off = scaled(normalized, 1.25);
  const double delta = regularity_defect(off);
  EXPECT_NEAR(delta, 0.25, 1e-14);
  EXPECT_NEAR(std::abs(apply(off, [](long) { return Complex(1.0); }, 7L) - 1.0), delta, 1e-14);
}

TEST(Properties, LinearityOfApply) {
  const auto op = hilbert_transform(100, 4096);
  auto f = [](double t) { return Complex(lorentzian(t)); };
  auto g = [](double t) { return Complex(std::exp(-t * t), t * std::exp(-t * t)); };
  const Complex a(0.3, -1.2), b(-2.0, 0.5);
  for (double x : {-1.5, 0.0, 0.4, 1.9}) {
    const Complex lhs = apply(op, [&](double t) { return a * f(t) + b * g(t); }, x);
    EXPECT_LT(std::abs(lhs - (a * apply(op, f, x) + b * apply(op, g, x))), 1e-12);
  }
}

TEST(Properties, SymbolHomogeneity) {
  const auto op = discrete_translations({-1.0, 0.5}, {0.3, 0.4}, real_line(-5, 5, 20));
  const Complex c(2.0, -1.0);
  const auto big = scaled(op, c);
  auto f = [](double t) { return Complex(std::cos(t)); };
  EXPECT_LT(std::abs(apply(big, f, 0.7) - c * apply(op, f, 0.7)), 1e-14);
  EXPECT_NEAR(phi_norm_Ap(big, 3.0), std::abs(c) * phi_norm_Ap(op, 3.0), 1e-14);
  EXPECT_NEAR(regularity_defect(big), std::abs(c * Complex(0.7) - 1.0), 1e-14);
}

TEST(Validate, RejectsInadmissibleNodes) {
  EXPECT_THROW(discrete_dilations({0.0, 2.0}, {0.5, 0.5}, real_line(-5, 5, 10)), Error);
  EXPECT_THROW(discrete_dilations({2.0}, {std::numeric_limits<double>::quiet_NaN()}, real_line(-5, 5, 10)), Error);
}
