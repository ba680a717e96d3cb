#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hausdorff/domain.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff {

/// Engine for trial t of a run seeded with `seed`; independent of scheduling.
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

/// exp(1 - 1/(1 - t^2)) for |t| < 1, else 0. Smooth, equals 1 at t = 0.
inline double smooth_bump(double t) {
  const double s = 1.0 - t * t;
  return s > 0.0 ? std::exp(1.0 - 1.0 / s) : 0.0;
}

/// Placement of random test functions: centers at origin + offsets drawn
/// from [-center_spread, center_spread]^d, bump radii in [min_radius, max_radius].
struct TestFunctionOptions {
  double center_spread = 1.0;
  double min_radius = 0.3;
  double max_radius = 1.0;
  std::size_t bumps = 3;
  double max_frequency = 3.0;
};

inline TestFunctionOptions default_test_function_options(PointKind kind) {
  switch (kind) {
    case PointKind::Integer: return {20.0, 2.0, 12.0, 3, 1.5};
    case PointKind::TorusAngles: return {std::numbers::pi, 0.3, 1.5, 3, 3.0};
    default: return {};
  }
}

template <class P>
struct RandomFunction {
  PointFunction<P> f;
  /// Ball containing the support.
  Ball<P> support;
  std::string descriptor;
};

namespace detail {

inline double norm2(const std::vector<double>& d) {
  double s = 0;
  for (double c : d) s += c * c;
  return std::sqrt(s);
}

}  // namespace detail

/// Sum of modulated smooth bumps c_b beta(|x - x_b| / r_b) exp(i xi_b . (x - x_b)),
/// in local coordinates of the domain chart. On integer domains every other
/// draw instead uses independent random node values on a window.
template <class P>
RandomFunction<P> random_test_function(DomainPtr<P> dom, std::mt19937_64& rng, const TestFunctionOptions& opt) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(opt.min_radius, opt.max_radius);
  const std::size_t d = dom->dimension;
  const auto& rho = dom->metric();

  struct Bump {
    P center;
    double r;
    Complex amp;
    std::vector<double> xi;
  };

  std::ostringstream desc;
  desc.precision(17);

  if (dom->kind == PointKind::Integer && (rng() & 1u)) {
    if constexpr (std::is_integral_v<P>) {
      const P c = dom->origin + static_cast<P>(std::lround(opt.center_spread * unit(rng)));
      const P r = static_cast<P>(std::lround(radius(rng)));
      auto vals = std::make_shared<std::vector<Complex>>();
      for (P k = -r; k <= r; ++k) vals->emplace_back(unit(rng), unit(rng));
      desc << "node_values center=" << c << " radius=" << r;
      RandomFunction<P> out;
      out.f = [c, r, vals](const P& k) {
        const P off = k - c;
        return (off < -r || off > r) ? Complex{} : (*vals)[static_cast<std::size_t>(off + r)];
      };
      out.support = Ball<P>{c, static_cast<double>(r) + 0.5};
      out.descriptor = desc.str();
      return out;
    }
  }

  std::vector<Bump> bumps;
  double reach = 0.0;
  std::vector<double> offset(d);
  for (std::size_t b = 0; b < opt.bumps; ++b) {
    for (auto& o : offset) o = opt.center_spread * unit(rng);
    Bump bump{dom->shift(dom->origin, offset), radius(rng), Complex(unit(rng), unit(rng)), std::vector<double>(d)};
    for (auto& x : bump.xi) x = opt.max_frequency * unit(rng);
    reach = std::max(reach, rho.distance(dom->origin, bump.center) + bump.r);
    desc << "bump(offset=[";
    for (std::size_t j = 0; j < d; ++j) desc << (j ? "," : "") << offset[j];
    desc << "] r=" << bump.r << " amp=" << bump.amp.real() << "+" << bump.amp.imag() << "i) ";
    bumps.push_back(std::move(bump));
  }
  RandomFunction<P> out;
  out.f = [dom, bumps](const P& x) {
    Complex acc{};
    for (const auto& b : bumps) {
      const auto disp = dom->displacement(b.center, x);
      const double t = detail::norm2(disp) / b.r;
      if (t >= 1.0) continue;
      double phase = 0;
      for (std::size_t j = 0; j < disp.size(); ++j) phase += b.xi[j] * disp[j];
      acc += b.amp * smooth_bump(t) * std::polar(1.0, phase);
    }
    return acc;
  };
  out.support = Ball<P>{dom->origin, reach};
  out.descriptor = desc.str();
  return out;
}

}  // namespace hausdorff
