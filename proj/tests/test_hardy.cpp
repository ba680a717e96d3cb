#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hausdorff/hausdorff.hpp"
#include "scenarios.hpp"

using namespace hausdorff;

namespace {

const double inf = std::numeric_limits<double>::infinity();

/// (1/(2r)) (chi_(0,r] - chi_[-r,0)) around x0, zero at x0 itself.
Atom<double> step_atom(const DomainPtr<double>& line, double x0, double r) {
  auto f = [x0, r](double x) {
    const double d = x - x0;
    if (std::abs(d) < 1e-12 || std::abs(d) > r * (1 + 1e-12)) return Complex{};
    return Complex((d > 0 ? 1.0 : -1.0) / (2 * r));
  };
  return Atom<double>{GridFunction<double>::sample(line, f, Ball<double>{x0, r}), Ball<double>{x0, r}, inf, false, {}};
}

Atom<double> smooth_atom(const DomainPtr<double>& line, double q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_atom(line, q, rng);
}

DoublingProfile line_profile() { return DoublingProfile::from_constant(2.0); }

}  // namespace

TEST(VerifyAtom, StepFunction) {
  const auto line = real_line(-2, 2, 100);
  const auto check = verify_atom(step_atom(line, 0.0, 0.5));
  EXPECT_TRUE(check.pass());
  EXPECT_NEAR(check.size_norm, 1.0, 1e-15);
  EXPECT_GE(check.size_bound, 1.0);
  EXPECT_EQ(check.mean_abs, 0.0);
}

TEST(VerifyAtom, ConstantOnFiniteSpace) {
  const auto t = torus<1>(64);
  EXPECT_TRUE(verify_atom(constant_atom(t, 2.0)).pass());
  EXPECT_TRUE(verify_atom(constant_atom(t, inf)).pass());
  // The special rule needs a finite whole space.
  EXPECT_FALSE(verify_atom(constant_atom(real_line(-1, 1, 10), 2.0)).pass());
}

TEST(VerifyAtom, NonzeroMeanFails) {
  const auto line = real_line(-2, 2, 100);
  auto a = step_atom(line, 0.0, 0.5);
  std::vector<Complex> v(a.values.values().begin(), a.values.values().end());
  const auto nodes = line->measure().nodes();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::abs(nodes[i]) < 0.5) v[i] += 0.1;
  const Atom<double> b{GridFunction<double>(line, v), a.support, inf, false, {}};
  const auto check = verify_atom(b);
  EXPECT_FALSE(check.cancellation_ok());
  EXPECT_NEAR(check.mean_abs, 0.1 * 0.99, 1e-12);
}

TEST(VerifyAtom, SupportLeakAndOversizeFail) {
  const auto line = real_line(-2, 2, 100);
  const auto a = step_atom(line, 0.0, 0.5);
  const Atom<double> narrow{a.values, Ball<double>{0.0, 0.3}, inf, false, {}};
  EXPECT_FALSE(verify_atom(narrow).support_ok());
  const Atom<double> loud{GridFunction<double>(line, [&] {
                            std::vector<Complex> v(a.values.values().begin(), a.values.values().end());
                            for (auto& x : v) x *= 3.0;
                            return v;
                          }()),
                          a.support, inf, false, {}};
  EXPECT_FALSE(verify_atom(loud).size_ok());
  const Atom<double> escaping{a.values, Ball<double>{1.8, 0.5}, inf, false, {}};
  EXPECT_FALSE(verify_atom(escaping).pass());
}

TEST(RandomAtom, PassesOnEveryDomain) {
  std::mt19937_64 rng(1);
  for (double q : {1.5, 2.0, inf}) {
    EXPECT_TRUE(verify_atom(random_atom(real_line(-4, 4, 60), q, rng)).pass());
    EXPECT_TRUE(verify_atom(random_atom(integers(-40, 40), q, rng, AtomOptions{10, 3, 12, 0.5})).pass());
    EXPECT_TRUE(verify_atom(random_atom(torus<1>(256), q, rng, AtomOptions{3, 0.3, 1.5, 0.5})).pass());
    EXPECT_TRUE(verify_atom(random_atom(real_space<2>(-3, 3, 20), q, rng, AtomOptions{0.5, 0.6, 1, 0.5})).pass());
  }
}

TEST(Decomposition, NormUpperExamples) {
  const auto line = real_line(-4, 4, 60);
  AtomicDecomposition<double> dec;
  EXPECT_EQ(h1q_norm_upper(dec), 0.0);
  dec.terms.push_back({1.0, smooth_atom(line, 2.0, 1)});
  EXPECT_EQ(h1q_norm_upper(dec), 1.0);
  dec.terms = {{0.5, smooth_atom(line, 2.0, 1)}, {-0.5, smooth_atom(line, 2.0, 2)}};
  EXPECT_EQ(h1q_norm_upper(dec), 1.0);
  dec.discarded_tail = 0.25;
  EXPECT_EQ(h1q_norm_upper(dec), 1.25);
}

TEST(Decomposition, L1NormIsDominated) {
  const auto line = real_line(-4, 4, 60);
  for (std::uint64_t s = 0; s < 10; ++s) {
    std::mt19937_64 rng(s);
    const auto dec = random_decomposition(line, s % 2 ? 2.0 : inf, 6, rng);
    const auto f = synthesize(dec, line->measure().size());
    EXPECT_LE(lp_norm(*line, f, 1.0), h1q_norm_upper(dec));
  }
}

TEST(TransformAtom, IdentityScalesByDoublingFactor) {
  const auto line = real_line(-4, 4, 100);
  for (double q : {2.0, 4.0, inf}) {
    const auto a = smooth_atom(line, q, 3);
    const auto b = transform_atom(a, 0.0, translations(), line_profile());
    const double c = std::pow(2.0, (std::isfinite(q) ? 1 / q : 0) - 1);
    for (std::size_t i = 0; i < a.values.values().size(); ++i)
      EXPECT_NEAR(std::abs(b.values.values()[i] - c * a.values.values()[i]), 0.0, 1e-15);
    EXPECT_TRUE(verify_atom(b).pass());
  }
}

TEST(TransformAtom, TranslationShiftsSupport) {
  const auto line = real_line(-6, 6, 100);
  const double q = 2.0;
  const auto a = smooth_atom(line, q, 4);
  const double u = 0.73;
  const auto b = transform_atom(a, u, translations(), line_profile());
  EXPECT_NEAR(b.support.center, a.support.center + u, 0.011);
  EXPECT_NEAR(b.support.radius, a.support.radius, 1e-15);
  const auto ca = verify_atom(a), cb = verify_atom(b);
  EXPECT_TRUE(cb.pass());
  const double c = std::pow(2.0, 1 / q - 1);
  EXPECT_NEAR(cb.size_norm / cb.size_bound, c * ca.size_norm / ca.size_bound, 0.02);
}

TEST(TransformAtom, DilationNormChain) {
  const auto line = real_line(-8, 8, 100);
  const double q = 2.0, u = 2.0;
  const auto a = smooth_atom(line, q, 5);
  const auto b = transform_atom(a, u, dilations(), line_profile());
  EXPECT_TRUE(verify_atom(b).pass());
  const double lhs = lp_norm(*line, b.values.values(), q);
  const double rhs = std::pow(2.0, -0.5) * std::pow(u, -0.5) * lp_norm(*line, a.values.values(), q);
  EXPECT_NEAR(lhs / rhs, 1.0, 1e-6);
  EXPECT_NEAR(b.support.radius, u * a.support.radius, 1e-15);
}

TEST(TransformAtom, ReportsWindowEscapeAndMissingFactor) {
  const auto line = real_line(-3, 3, 100);
  const auto a = smooth_atom(line, 2.0, 6);
  try {
    transform_atom(a, 5.0, dilations(), line_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowEscape);
  }
  auto fam = translations();
  fam.metric_factor = {};
  try {
    transform_atom(a, 0.1, fam, line_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingMetricFactor);
  }
}

TEST(TransformAtom, UnderstatedMetricFactorIsCaught) {
  const auto line = real_line(-8, 8, 100);
  auto fam = dilations();
  fam.metric_factor = [](double) { return 1.0; };
  try {
    transform_atom(smooth_atom(line, 2.0, 7), 2.5, fam, line_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAnAtom);
  }
}

TEST(TransformAtom, ClosureOnEveryShippedFamily) {
  std::size_t families = 0;
  scenario::closure_suite(4, 3, 11, [&](const std::string& name, const scenario::ClosureStats& s) {
    ++families;
    EXPECT_EQ(s.passed, s.total) << name << ": " << s.first_failure;
    EXPECT_LE(s.worst_chain, 1e-6) << name;
  });
  EXPECT_EQ(families, 9u);
}

TEST(NBound, Examples) {
  const auto line = real_line(-5, 5, 10);
  const auto tr = discrete_translations({-1.0, 0.5}, {0.3, Complex(0, -0.6)}, line);
  for (double q : {1.5, 2.0, 4.0, inf})
    EXPECT_NEAR(n_bound(tr, q, line_profile()), std::pow(2.0, 1 - (std::isfinite(q) ? 1 / q : 0)) * 0.9, 1e-14);
  EXPECT_NEAR(n_bound(discrete_dilations({2.0}, {1.0}, line), 2.0, line_profile()), std::pow(2.0, 1.5), 1e-14);
  EXPECT_EQ(n_bound(discrete_translations({0.0}, {0.0}, line), 2.0, line_profile()), 0.0);
}

TEST(NBound, MonotoneInEachIngredient) {
  const auto line = real_line(-5, 5, 10);
  const auto op = discrete_dilations({2.0, 0.5}, {0.5, 0.5}, line);
  const double base = n_bound(op, 2.0, line_profile());
  EXPECT_GT(n_bound(op, 2.0, DoublingProfile::from_constant(3.0)), base);
  auto wider = op;
  wider.family.metric_factor = [](double u) { return 1.5 * std::abs(u); };
  EXPECT_GT(n_bound(wider, 2.0, line_profile()), base);
  EXPECT_GT(n_bound(discrete_dilations({2.0, 0.5}, {0.5, Complex(0.6, 0)}, line), 2.0, line_profile()), base);
}

TEST(H1Bound, SingleTranslationSingleAtom) {
  const auto line = real_line(-4, 4, 100);
  const auto op = discrete_translations({0.5}, {1.0}, line);
  for (double q : {2.0, inf}) {
    AtomicDecomposition<double> dec;
    dec.q = q;
    dec.terms.push_back({Complex(0.6, 0.8), smooth_atom(line, q, 8)});
    const auto r = check_h1_bound(op, dec, line_profile());
    const double expect = std::pow(2.0, 1 - (std::isfinite(q) ? 1 / q : 0));
    EXPECT_DOUBLE_EQ(r.lhs_upper, expect);
    EXPECT_DOUBLE_EQ(r.rhs, expect);
    EXPECT_EQ(r.transformed, 1u);
  }
}

TEST(H1Bound, ZeroSymbol) {
  const auto line = real_line(-4, 4, 100);
  std::mt19937_64 rng(2);
  const auto dec = random_decomposition(line, 2.0, 3, rng);
  const auto r = check_h1_bound(discrete_translations({0.0, 1.0}, {0.0, 0.0}, line), dec, line_profile());
  EXPECT_EQ(r.lhs_upper, 0.0);
  EXPECT_EQ(r.rhs, 0.0);
}

TEST(H1Bound, TwoDilationsTwoAtomsIndependentSums) {
  const auto line = real_line(-8, 8, 200);
  const auto op = discrete_dilations({2.0, 0.5}, {Complex(0.3, 0.4), -0.5}, line);
  std::mt19937_64 rng(3);
  const auto dec = random_decomposition(line, 2.0, 2, rng);
  H1Options opt;
  opt.keep_image = true;
  const auto r = check_h1_bound(op, dec, line_profile(), opt);
  // C^{1/2} k^{1/2} m^{-1/2} |phi| |alpha| with k = u, m = 1/u.
  double lhs = 0, l1 = 0;
  for (const auto& t : dec.terms) {
    lhs += std::sqrt(2.0) * 2.0 * 0.5 * std::abs(t.alpha) + std::sqrt(2.0) * 0.5 * 0.5 * std::abs(t.alpha);
    l1 += std::abs(t.alpha);
  }
  EXPECT_NEAR(r.lhs_upper, lhs, 1e-14);
  EXPECT_NEAR(r.rhs, std::sqrt(2.0) * (2.0 * 0.5 + 0.5 * 0.5) * l1, 1e-14);
  EXPECT_LE(r.lhs_upper, r.rhs * (1 + 1e-12));
  ASSERT_TRUE(r.image.has_value());
  EXPECT_EQ(r.image->terms.size(), 4u);
  for (const auto& t : r.image->terms) EXPECT_TRUE(verify_atom(t.atom).pass());
  // The image decomposition synthesizes Hf.
  const auto f = synthesize(dec, line->measure().size());
  const GridFunction<double> fg(line, f);
  const auto nodes = line->measure().nodes();
  const auto hf = synthesize(*r.image, nodes.size());
  for (std::size_t i = 0; i < nodes.size(); i += 97) {
    const double x = nodes[i];
    Complex direct{};
    for (const auto& t : dec.terms)
      direct += t.alpha * (Complex(0.3, 0.4) * t.atom.values(x / 2.0) + Complex(-0.5) * t.atom.values(x / 0.5));
    EXPECT_NEAR(std::abs(hf[i] - direct), 0.0, 1e-12);
  }
}

TEST(H1Bound, MissingMetricFactorIsReported) {
  const auto line = real_line(-4, 4, 50);
  auto op = discrete_translations({0.5}, {1.0}, line);
  op.family.metric_factor = {};
  std::mt19937_64 rng(4);
  try {
    check_h1_bound(op, random_decomposition(line, 2.0, 1, rng), line_profile());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingMetricFactor);
  }
}
