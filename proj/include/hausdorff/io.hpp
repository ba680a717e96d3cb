#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "hausdorff/domain.hpp"
#include "hausdorff/hardy.hpp"
#include "hausdorff/measure.hpp"
#include "hausdorff/operator.hpp"
#include "hausdorff/types.hpp"

namespace hausdorff::io {

using json = nlohmann::json;

/// Non-finite reals become strings, JSON has no inf.
inline json real(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

inline double real_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    fail(ErrorCode::InvalidArgument, "not a real number: " + s);
  }
  return j.get<double>();
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  require(j.is_array() && j.size() == 2, ErrorCode::InvalidArgument, "complex numbers are [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

// Points ---------------------------------------------------------------------

inline json point_json(double x) { return x; }
inline json point_json(long k) { return k; }
inline json point_json(Complex z) { return complex_json(z); }

template <std::size_t D>
json point_json(const RealPoint<D>& x) {
  return json(std::vector<double>(x.begin(), x.end()));
}

template <std::size_t N>
json point_json(const ComplexPoint<N>& z) {
  json out = json::array();
  for (const auto& c : z) out.push_back(complex_json(c));
  return out;
}

template <std::size_t N>
json point_json(const TorusPoint<N>& t) {
  return json{{"angle", std::vector<double>(t.angle.begin(), t.angle.end())}};
}

inline json point_json(const Permutation& s) { return s.image; }

template <class T>
json point_json(const SquareMatrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

// Measures and domains -------------------------------------------------------

template <class U>
json describe(const MeasureSpace<U>& mu) {
  json out{{"kind", std::string(to_string(mu.kind()))},
           {"nodes", mu.size()},
           {"groups", mu.group_count()},
           {"layers", mu.layers().size()},
           {"symmetric", mu.symmetric()}};
  const auto& cut = mu.truncation();
  if (cut.radius) out["truncation_radius"] = *cut.radius;
  if (cut.unbounded_ends) out["unbounded_ends"] = cut.unbounded_ends;
  if (cut.exclusion) out["exclusion"] = *cut.exclusion;
  return out;
}

template <class P>
json describe(const Domain<P>& dom) {
  json out{{"point_kind", std::string(to_string(dom.kind))},
           {"dimension", dom.dimension},
           {"label", dom.label},
           {"whole_space", dom.whole_space},
           {"has_measure", dom.nu.has_value()},
           {"has_metric", dom.rho.has_value()}};
  if (dom.nu) out["nodes"] = dom.nu->size();
  if (dom.analytic_doubling) out["doubling_constant"] = dom.analytic_doubling->C_nu;
  return out;
}

template <class U, class P>
json describe(const HausdorffOperator<U, P>& op) {
  json diag = json::object();
  for (const auto& [k, v] : op.diagnostics) diag[k] = real(v);
  return json{{"operator", op.name},
              {"omega", describe(op.omega)},
              {"family", op.family.name},
              {"modulus_declared", op.family.declares_modulus()},
              {"metric_factor_declared", op.family.declares_metric_factor()},
              {"principal_value", op.principal_value()},
              {"domain", describe(*op.domain)},
              {"diagnostics", diag}};
}

// Atoms ----------------------------------------------------------------------

template <class P>
json atom_json(const Atom<P>& a) {
  json values = json::array();
  for (const auto& v : a.values.values()) values.push_back(complex_json(v));
  json out{{"q", real(a.q)},
           {"support", {{"center", point_json(a.support.center)}, {"radius", real(a.support.radius)}}},
           {"constant_unit", a.constant_unit},
           {"values", values}};
  if (a.bump_scale) out["shape"] = {{"kind", "odd_bump"}, {"scale", *a.bump_scale}};
  return out;
}

template <class P>
json decomposition_json(const AtomicDecomposition<P>& dec) {
  json terms = json::array();
  for (const auto& t : dec.terms) terms.push_back({{"alpha", complex_json(t.alpha)}, {"atom", atom_json(t.atom)}});
  return json{{"q", real(dec.q)}, {"discarded_tail", dec.discarded_tail}, {"terms", terms}};
}

inline json check_json(const AtomCheck& c) {
  return json{{"pass", c.pass()},
              {"support_ok", c.support_ok()},
              {"support_leak", c.support_leak},
              {"size_ok", c.size_ok()},
              {"size_norm", real(c.size_norm)},
              {"size_bound", real(c.size_bound)},
              {"cancellation_ok", c.cancellation_ok()},
              {"mean_abs", c.mean_abs},
              {"cancellation_tolerance", real(c.cancellation_tolerance)}};
}

inline json bound_json(const BoundReport& r) {
  return json{{"bound", real(r.bound_value)},
              {"empirical", real(r.empirical_lower)},
              {"witnesses", r.witnesses},
              {"slack", r.slack},
              {"worst", r.worst}};
}

}  // namespace hausdorff::io
