#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hausdorff/detail/parallel.hpp"
#include "hausdorff/error.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff {

enum class MeasureKind { DiscreteWeighted, QuadratureContinuum, PrincipalValueContinuum };

constexpr std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::DiscreteWeighted: return "DiscreteWeighted";
    case MeasureKind::QuadratureContinuum: return "QuadratureContinuum";
    case MeasureKind::PrincipalValueContinuum: return "PrincipalValueContinuum";
  }
  return "Unknown";
}

/// Describes which part of an unbounded parameter space was cut away.
/// `radius` is R (or the term budget K of a discrete sum); `unbounded_ends`
/// counts the ends cut at that radius. `exclusion` is the p.v. half-width of
/// the coarsest layer.
struct Truncation {
  std::optional<double> radius;
  std::size_t unbounded_ends = 0;
  std::optional<double> exclusion;
};

/// Caller-supplied bound |g(u)| <= constant * |u|^(-exponent) outside the
/// represented region; exponent must exceed 1.
struct DecayHypothesis {
  double constant = 0.0;
  double exponent = 2.0;
};

/// A contiguous run of node groups entering the result with `coefficient`.
/// Several layers realize extrapolation (e.g. Richardson in the p.v. width).
struct Layer {
  std::size_t group_begin = 0;
  std::size_t group_end = 0;
  double coefficient = 1.0;
};

struct IntegrationReport {
  Complex value{};
  double tail_estimate = 0.0;
  std::size_t nodes_used = 0;
};

/// How layered spaces are combined. Extrapolated applies every layer with its
/// coefficient; FinestLayer evaluates the last layer alone, which is what
/// non-cancelling integrands such as |Phi| need.
enum class Combination { Extrapolated, FinestLayer };

struct IntegrateOptions {
  std::optional<DecayHypothesis> decay;
  Combination combination = Combination::Extrapolated;
};

namespace detail {

inline double center_defect(std::span<const double> group, const double& s) {
  double sum = 0.0, scale = 0.0;
  for (double u : group) {
    sum += u - s;
    scale = std::max(scale, std::abs(u - s));
  }
  return std::abs(sum) / (static_cast<double>(group.size()) * std::max(scale, 1.0));
}

template <std::size_t N>
double center_defect(std::span<const TorusPoint<N>> group, const TorusPoint<N>& s) {
  double worst = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double sum = 0.0;
    for (const auto& u : group) sum += wrap_angle(u.angle[j] - s.angle[j]);
    worst = std::max(worst, std::abs(sum) / static_cast<double>(group.size()));
  }
  return worst;
}

template <class U>
concept MirrorCheckable = requires(std::span<const U> g, const U& s) {
  { center_defect(g, s) } -> std::convertible_to<double>;
};

}  // namespace detail

/// The parameter measure space (Omega, mu) as a weighted node set.
///
/// Nodes are partitioned into contiguous groups; the values of a group are
/// accumulated jointly before entering the tree reduction, which is how p.v.
/// mirror pairs cancel. Groups are in turn partitioned into layers.
/// Immutable after construction.
template <class U>
class MeasureSpace {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  MeasureSpace() = default;

  /// Every node its own group, one layer.
  MeasureSpace(MeasureKind kind, std::vector<U> nodes, std::vector<double> weights, Truncation truncation = {})
      : MeasureSpace(kind, std::move(nodes), std::move(weights), {}, {}, {}, {}, truncation) {}

  /// Full constructor. `group_offsets` has groups+1 entries (empty means
  /// singleton groups), `group_singularity` indexes `singularities` or is npos.
  MeasureSpace(MeasureKind kind, std::vector<U> nodes, std::vector<double> weights,
               std::vector<std::size_t> group_offsets, std::vector<std::size_t> group_singularity,
               std::vector<U> singularities, std::vector<Layer> layers, Truncation truncation)
      : kind_(kind),
        nodes_(std::move(nodes)),
        weights_(std::move(weights)),
        group_offsets_(std::move(group_offsets)),
        group_singularity_(std::move(group_singularity)),
        singularities_(std::move(singularities)),
        layers_(std::move(layers)),
        truncation_(truncation) {
    require(nodes_.size() == weights_.size(), ErrorCode::InvalidArgument,
            "weight list length must equal node list length");
    for (double w : weights_)
      require(std::isfinite(w) && w > 0.0, ErrorCode::InvalidArgument, "measure weights must be strictly positive");
    if (!group_offsets_.empty()) {
      require(group_offsets_.front() == 0 && group_offsets_.back() == nodes_.size() &&
                  std::is_sorted(group_offsets_.begin(), group_offsets_.end()),
              ErrorCode::InvalidArgument, "group offsets must partition the node list");
    }
    if (group_singularity_.empty()) group_singularity_.assign(group_count(), npos);
    require(group_singularity_.size() == group_count(), ErrorCode::InvalidArgument,
            "one singularity tag per group required");
    if (layers_.empty()) layers_.push_back(Layer{0, group_count(), 1.0});
    std::size_t expect = 0;
    for (const auto& layer : layers_) {
      require(layer.group_begin == expect && layer.group_end >= layer.group_begin, ErrorCode::InvalidArgument,
              "layers must partition the groups in order");
      expect = layer.group_end;
    }
    require(expect == group_count(), ErrorCode::InvalidArgument, "layers must cover every group");
    symmetric_ = check_symmetry();
  }

  MeasureKind kind() const { return kind_; }
  std::span<const U> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }
  const Truncation& truncation() const { return truncation_; }
  const std::vector<U>& singularities() const { return singularities_; }
  const std::vector<Layer>& layers() const { return layers_; }

  std::size_t group_count() const { return group_offsets_.empty() ? nodes_.size() : group_offsets_.size() - 1; }
  std::pair<std::size_t, std::size_t> group(std::size_t g) const {
    if (group_offsets_.empty()) return {g, g + 1};
    return {group_offsets_[g], group_offsets_[g + 1]};
  }
  std::size_t group_singularity(std::size_t g) const { return group_singularity_[g]; }

  /// False when some p.v. group is not balanced about its singularity.
  bool symmetric() const { return symmetric_; }

 private:
  bool check_symmetry() const {
    if (kind_ != MeasureKind::PrincipalValueContinuum) return true;
    for (std::size_t g = 0; g < group_count(); ++g) {
      const std::size_t s = group_singularity_[g];
      if (s == npos) continue;
      if (s >= singularities_.size()) return false;
      auto [lo, hi] = group(g);
      if (hi - lo < 2) return false;
      for (std::size_t i = lo + 1; i < hi; ++i)
        if (std::abs(weights_[i] - weights_[lo]) > 1e-12 * weights_[lo]) return false;
      if constexpr (detail::MirrorCheckable<U>) {
        std::span<const U> members(nodes_.data() + lo, hi - lo);
        if (detail::center_defect(members, singularities_[s]) > 1e-10) return false;
      }
    }
    return true;
  }

  MeasureKind kind_ = MeasureKind::DiscreteWeighted;
  std::vector<U> nodes_;
  std::vector<double> weights_;
  std::vector<std::size_t> group_offsets_;
  std::vector<std::size_t> group_singularity_;
  std::vector<U> singularities_;
  std::vector<Layer> layers_;
  Truncation truncation_;
  bool symmetric_ = true;
};

/// Sum of g(u) w(u) over the nodes, with p.v. groups summed jointly and
/// layers combined per `options.combination`. Deterministic for a fixed node
/// order.
template <class U, class G>
IntegrationReport integrate(const MeasureSpace<U>& space, const G& g, const IntegrateOptions& options = {}) {
  if (!space.symmetric())
    fail(ErrorCode::SingularityMismatch, "p.v. node layout is not symmetric about its singularity");
  const auto nodes = space.nodes();
  const auto weights = space.weights();
  auto group_sum = [&](std::size_t gi) {
    auto [lo, hi] = space.group(gi);
    Complex acc{};
    for (std::size_t i = lo; i < hi; ++i) {
      const Complex v(g(nodes[i]));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorCode::NonFiniteSample, "integrand is not finite at node " + std::to_string(i));
      acc += v * weights[i];
    }
    return acc;
  };

  IntegrationReport report;
  const auto& layers = space.layers();
  auto run_layer = [&](const Layer& layer, double coefficient) {
    report.value += coefficient * detail::pairwise_sum<Complex>(layer.group_begin, layer.group_end, group_sum);
    if (layer.group_end > layer.group_begin)
      report.nodes_used += space.group(layer.group_end - 1).second - space.group(layer.group_begin).first;
  };
  if (options.combination == Combination::FinestLayer || layers.size() == 1) {
    run_layer(layers.back(), 1.0);
  } else {
    for (const auto& layer : layers) run_layer(layer, layer.coefficient);
  }

  const auto& cut = space.truncation();
  if (options.decay && cut.radius && cut.unbounded_ends > 0) {
    const auto& d = *options.decay;
    require(d.exponent > 1.0 && d.constant >= 0.0, ErrorCode::InvalidArgument,
            "decay hypothesis needs exponent > 1 and a nonnegative constant");
    report.tail_estimate = static_cast<double>(cut.unbounded_ends) * d.constant *
                           std::pow(*cut.radius, 1.0 - d.exponent) / (d.exponent - 1.0);
  }
  return report;
}

/// Mass of the represented region.
template <class U>
double total_mass(const MeasureSpace<U>& space) {
  return integrate(space, [](const U&) { return Complex(1.0); }).value.real();
}

// ---------------------------------------------------------------------------
// Constructors for the shipped layouts.

template <class U>
MeasureSpace<U> counting_measure(std::vector<U> points, Truncation truncation = {}) {
  std::vector<double> w(points.size(), 1.0);
  return MeasureSpace<U>(MeasureKind::DiscreteWeighted, std::move(points), std::move(w), truncation);
}

template <class U>
MeasureSpace<U> discrete_measure(std::vector<U> points, std::vector<double> weights, Truncation truncation = {}) {
  return MeasureSpace<U>(MeasureKind::DiscreteWeighted, std::move(points), std::move(weights), truncation);
}

/// Composite trapezoid rule on [a, b] with n >= 2 uniform nodes.
inline MeasureSpace<double> trapezoid(double a, double b, std::size_t n, Truncation truncation = {}) {
  require(n >= 2 && b > a, ErrorCode::InvalidArgument, "trapezoid needs n >= 2 and a < b");
  const double h = (b - a) / static_cast<double>(n - 1);
  std::vector<double> x(n), w(n, h);
  for (std::size_t i = 0; i < n; ++i) x[i] = a + h * static_cast<double>(i);
  w.front() = w.back() = h / 2;
  return MeasureSpace<double>(MeasureKind::QuadratureContinuum, std::move(x), std::move(w), truncation);
}

/// Trapezoid rule for the measure density(u) du; density must be positive on [a, b].
template <class Density>
MeasureSpace<double> weighted_trapezoid(double a, double b, std::size_t n, const Density& density,
                                        Truncation truncation = {}) {
  auto base = trapezoid(a, b, n, truncation);
  std::vector<double> x(base.nodes().begin(), base.nodes().end());
  std::vector<double> w(base.weights().begin(), base.weights().end());
  for (std::size_t i = 0; i < n; ++i) w[i] *= density(x[i]);
  return MeasureSpace<double>(MeasureKind::QuadratureContinuum, std::move(x), std::move(w), truncation);
}

/// Periodic trapezoid rule on T^N, n nodes per circle at angles 2 pi k / n,
/// each node weighted (2 pi / n)^N.
template <std::size_t N>
MeasureSpace<TorusPoint<N>> periodic_trapezoid(std::size_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "periodic trapezoid needs n >= 1");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  std::size_t total = 1;
  for (std::size_t j = 0; j < N; ++j) total *= n;
  std::vector<TorusPoint<N>> x(total);
  std::vector<double> w(total, std::pow(h, static_cast<double>(N)));
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < N; ++j) {
      x[idx].angle[j] = h * static_cast<double>(rest % n);
      rest /= n;
    }
  }
  return MeasureSpace<TorusPoint<N>>(MeasureKind::QuadratureContinuum, std::move(x), std::move(w));
}

struct PrincipalValueLayout {
  /// Half-width of the excluded window at each singularity; <= 0 selects one
  /// node spacing.
  double epsilon = 0.0;
  /// Adds a second layer at epsilon/2 and combines 2 I(eps/2) - I(eps).
  bool richardson = true;
  Truncation truncation{};
};

/// Symmetric p.v. layout on [a, b] about each singularity. The interval is
/// cut at midpoints between singularities; inside each cell the largest
/// window symmetric about the singularity carries mirror pairs on
/// [epsilon, H] (trapezoid in the offset), the leftover is plain trapezoid.
/// `n` is the approximate node budget per layer.
inline MeasureSpace<double> principal_value_line(double a, double b, std::vector<double> singularities, std::size_t n,
                                                 PrincipalValueLayout layout = {}) {
  require(b > a && n >= 4, ErrorCode::InvalidArgument, "p.v. line needs a < b and n >= 4");
  require(!singularities.empty(), ErrorCode::InvalidArgument, "p.v. line needs at least one singularity");
  std::sort(singularities.begin(), singularities.end());
  for (std::size_t i = 0; i < singularities.size(); ++i) {
    require(singularities[i] > a && singularities[i] < b, ErrorCode::InvalidArgument,
            "singularities must lie strictly inside the interval");
    if (i > 0)
      require(singularities[i] > singularities[i - 1], ErrorCode::InvalidArgument, "singularities must be distinct");
  }
  const double length = b - a;
  auto count_for = [&](double len) {
    return std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(static_cast<double>(n) * len / length)));
  };

  // cells [lo_k, hi_k] around singularity k
  std::vector<double> cuts{a};
  for (std::size_t i = 0; i + 1 < singularities.size(); ++i)
    cuts.push_back(0.5 * (singularities[i] + singularities[i + 1]));
  cuts.push_back(b);

  double eps = layout.epsilon;
  if (eps <= 0.0) {
    eps = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < singularities.size(); ++k) {
      const double s = singularities[k];
      const double half = std::min(s - cuts[k], cuts[k + 1] - s);
      eps = std::min(eps, half / static_cast<double>(count_for(half)));
    }
  }

  std::vector<double> nodes, weights;
  std::vector<std::size_t> offsets{0}, tags;
  std::vector<Layer> layers;
  auto push_group = [&](std::initializer_list<double> xs, double w, std::size_t tag) {
    for (double x : xs) {
      nodes.push_back(x);
      weights.push_back(w);
    }
    offsets.push_back(nodes.size());
    tags.push_back(tag);
  };
  auto push_plain = [&](double lo, double hi) {
    if (hi - lo <= 0.0) return;
    const std::size_t m = count_for(hi - lo);
    const double h = (hi - lo) / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i)
      push_group({lo + h * static_cast<double>(i)}, (i == 0 || i + 1 == m) ? h / 2 : h, MeasureSpace<double>::npos);
  };

  std::vector<double> widths{eps};
  if (layout.richardson) widths.push_back(eps / 2);
  for (double e : widths) {
    const std::size_t first_group = tags.size();
    for (std::size_t k = 0; k < singularities.size(); ++k) {
      const double s = singularities[k];
      const double lo = cuts[k], hi = cuts[k + 1];
      const double half = std::min(s - lo, hi - s);
      require(half > e, ErrorCode::InvalidArgument, "exclusion window wider than the symmetric cell");
      const std::size_t m = count_for(half);
      const double h = (half - e) / static_cast<double>(m - 1);
      for (std::size_t i = 0; i < m; ++i) {
        const double t = e + h * static_cast<double>(i);
        push_group({s + t, s - t}, (i == 0 || i + 1 == m) ? h / 2 : h, k);
      }
      push_plain(lo, s - half);
      push_plain(s + half, hi);
    }
    layers.push_back(Layer{first_group, tags.size(), 1.0});
  }
  if (layers.size() == 2) {
    layers[0].coefficient = -1.0;
    layers[1].coefficient = 2.0;
  }
  Truncation cut = layout.truncation;
  cut.exclusion = eps;
  return MeasureSpace<double>(MeasureKind::PrincipalValueContinuum, std::move(nodes), std::move(weights),
                              std::move(offsets), std::move(tags), std::move(singularities), std::move(layers), cut);
}

/// P.v. layout on T^N about the angle 0 in every coordinate: n (even) nodes
/// per circle at angles +-(k + 1/2) 2 pi / n, so no node sits on the pole and
/// each group holds the 2^N sign reflections of one offset.
template <std::size_t N>
MeasureSpace<TorusPoint<N>> principal_value_torus(std::size_t n) {
  require(n >= 2 && n % 2 == 0, ErrorCode::InvalidArgument, "p.v. torus needs an even node count per circle");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  const std::size_t half = n / 2;
  std::size_t groups = 1;
  for (std::size_t j = 0; j < N; ++j) groups *= half;
  const std::size_t members = std::size_t{1} << N;
  const double w = std::pow(h, static_cast<double>(N));

  std::vector<TorusPoint<N>> nodes;
  nodes.reserve(groups * members);
  std::vector<std::size_t> offsets{0};
  offsets.reserve(groups + 1);
  for (std::size_t g = 0; g < groups; ++g) {
    std::array<double, N> offset{};
    std::size_t rest = g;
    for (std::size_t j = 0; j < N; ++j) {
      offset[j] = h * (static_cast<double>(rest % half) + 0.5);
      rest /= half;
    }
    for (std::size_t mask = 0; mask < members; ++mask) {
      TorusPoint<N> p;
      for (std::size_t j = 0; j < N; ++j) p.angle[j] = ((mask >> j) & 1u) ? -offset[j] : offset[j];
      nodes.push_back(p);
    }
    offsets.push_back(nodes.size());
  }
  std::vector<double> weights(nodes.size(), w);
  std::vector<std::size_t> tags(groups, 0);
  Truncation cut;
  cut.exclusion = h / 2;
  return MeasureSpace<TorusPoint<N>>(MeasureKind::PrincipalValueContinuum, std::move(nodes), std::move(weights),
                                     std::move(offsets), std::move(tags), {TorusPoint<N>{}}, {}, cut);
}

}  // namespace hausdorff
