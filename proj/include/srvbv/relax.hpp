#pragma once

#include "srvbv/curve.hpp"
#include "srvbv/gtransform.hpp"
#include "srvbv/srvt.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace srvbv {

// Relaxed velocity correlation for curves with jumps, evaluated in closed
// form: the positive part of the direction cosine weighted by the geometric
// mean of the speeds, integrated over the merged node grid, plus one term
// per co-located jump pair. Jumps at distinct parameters (exact comparison)
// and stationary stretches opposite moving ones contribute nothing.
inline double s_hat(const SbvCurve& c1, const SbvCurve& c2) {
  if (c1.dimension != c2.dimension) throw std::invalid_argument("s_hat: dimension mismatch");
  const std::vector<double> grid =
      detail::merge_params(detail::node_params(c1), detail::node_params(c2));
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    const Vec u = (eval(c1, grid[i + 1], EvalSide::left()) - eval(c1, grid[i], EvalSide::right())) / dt;
    const Vec v = (eval(c2, grid[i + 1], EvalSide::left()) - eval(c2, grid[i], EvalSide::right())) / dt;
    const double nu = u.norm(), nv = v.norm();
    if (nu == 0.0 || nv == 0.0) continue;
    const double cosv = (u / nu).dot(v / nv);
    if (cosv <= 0.0) continue;
    s += cosv * std::sqrt(nu * nv) * dt;
  }
  const auto j1 = jump_set(c1), j2 = jump_set(c2);
  std::size_t a = 0, b = 0;
  while (a < j1.size() && b < j2.size()) {
    if (j1[a].t < j2[b].t) {
      ++a;
    } else if (j2[b].t < j1[a].t) {
      ++b;
    } else {
      const double n1 = j1[a].delta.norm(), n2 = j2[b].delta.norm();
      const double cosv = (j1[a].delta / n1).dot(j2[b].delta / n2);
      if (cosv > 0.0) s += cosv * std::sqrt(n1 * n2);
      ++a, ++b;
    }
  }
  return s;
}

// Relaxed squared-type distance; not rooted (it can exceed the square of any
// metric bound and is reported as-is).
inline double d_hat(const SbvCurve& c1, const SbvCurve& c2) {
  return length(c1) + length(c2) - 2.0 * s_hat(c1, c2);
}

// Square root of d_hat clamped at zero; for metric-style reporting.
inline double d_hat_rooted(const SbvCurve& c1, const SbvCurve& c2) {
  return detail::root_clamped(d_hat(c1, c2), "d_hat_rooted");
}

namespace detail {

// Rewrites (phi1, phi2) on the joint progress parameter u = (phi1+phi2)/2,
// yielding gamma1 + gamma2 = 2u with the same composed curves. The result is
// unchanged when both inputs are precomposed with a common reparametrisation,
// which makes the bracket evaluation below invariant.
inline std::pair<Reparam, Reparam> progress_normalize(const Reparam& phi1, const Reparam& phi2) {
  std::vector<double> xs;
  xs.reserve(phi1.knots.size() + phi2.knots.size());
  for (const auto& k : phi1.knots) xs.push_back(k.x);
  for (const auto& k : phi2.knots) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Reparam g1, g2;
  double last_u = -1.0;
  for (double x : xs) {
    const double y1 = phi1(x), y2 = phi2(x);
    const double u = 0.5 * (y1 + y2);
    if (u == last_u) continue;  // both flat: redundant knot
    g1.knots.push_back({u, y1});
    g2.knots.push_back({u, y2});
    last_u = u;
  }
  g1.knots.front() = {0.0, 0.0};
  g2.knots.front() = {0.0, 0.0};
  g1.knots.back() = {1.0, 1.0};
  g2.knots.back() = {1.0, 1.0};
  return {std::move(g1), std::move(g2)};
}

}  // namespace detail

// Relaxed distance between the composition sets of (c1, phi1) and (c2, phi2),
// evaluated on the canonical representatives: the pair is first rewritten on
// the joint progress parameter, then each plateau at a jump location is
// traversed affinely. Returns the value and the two representatives.
inline std::tuple<double, SbvCurve, SbvCurve> d_hat_bracket(const SbvCurve& c1, const Reparam& phi1,
                                                            const SbvCurve& c2, const Reparam& phi2) {
  require_valid(phi1, "d_hat_bracket");
  require_valid(phi2, "d_hat_bracket");
  const auto [g1, g2] = detail::progress_normalize(phi1, phi2);
  SbvCurve r1 = bracket_representative(c1, g1);
  SbvCurve r2 = bracket_representative(c2, g2);
  const double d = d_hat(r1, r2);
  return {d, std::move(r1), std::move(r2)};
}

}  // namespace srvbv
