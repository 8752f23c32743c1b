#pragma once

#include "srvbv/curve.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srvbv {

// Piecewise-constant function on [0,1]; values[i] lives on
// (breakpoints[i], breakpoints[i+1]).
struct StepFunction {
  int dimension = 0;
  std::vector<double> breakpoints;
  std::vector<Vec> values;
};

// q = c' / sqrt(|c'|), taken to be zero wherever the segment is stationary.
inline StepFunction srvt(const AcCurve& c) {
  StepFunction q;
  q.dimension = c.dimension;
  for (const auto& n : c.nodes) q.breakpoints.push_back(n.t);
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) {
    const double dt = c.nodes[i + 1].t - c.nodes[i].t;
    const Vec v = (c.nodes[i + 1].value - c.nodes[i].value) / dt;
    const double speed = v.norm();
    q.values.push_back(speed == 0.0 ? Vec(Vec::Zero(c.dimension)) : Vec(v / std::sqrt(speed)));
  }
  return q;
}

// Integrate q|q| from the origin; inverts srvt up to translation.
inline AcCurve srvt_inverse(const StepFunction& q) {
  AcCurve c;
  c.dimension = q.dimension;
  Vec x = Vec::Zero(q.dimension);
  c.nodes.push_back({q.breakpoints.front(), x});
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    const double dt = q.breakpoints[i + 1] - q.breakpoints[i];
    x += q.values[i] * q.values[i].norm() * dt;
    c.nodes.push_back({q.breakpoints[i + 1], x});
  }
  return c;
}

// Squared L2 norm of q; equals the length of the underlying curve.
inline double l2_norm_sq(const StepFunction& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.values.size(); ++i)
    s += q.values[i].squaredNorm() * (q.breakpoints[i + 1] - q.breakpoints[i]);
  return s;
}

inline double l2_inner(const StepFunction& p, const StepFunction& q) {
  if (p.dimension != q.dimension) throw std::invalid_argument("l2_inner: dimension mismatch");
  const std::vector<double> grid = detail::merge_params(p.breakpoints, q.breakpoints);
  double s = 0.0;
  std::size_t ip = 0, iq = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i];
    while (ip + 1 < p.values.size() && p.breakpoints[ip + 1] <= a) ++ip;
    while (iq + 1 < q.values.size() && q.breakpoints[iq + 1] <= a) ++iq;
    s += p.values[ip].dot(q.values[iq]) * (grid[i + 1] - a);
  }
  return s;
}

// Signed velocity correlation: the L2 inner product of the two transforms.
inline double s_functional(const AcCurve& c1, const AcCurve& c2) {
  return l2_inner(srvt(c1), srvt(c2));
}

namespace detail {

// d^2 = len1 + len2 - 2 S is nonnegative up to rounding; tiny negative
// excursions are clamped, anything larger is an internal inconsistency.
inline double root_clamped(double sq, const char* who) {
  if (sq < 0.0) {
    if (sq < -1e-12) throw std::logic_error(std::string(who) + ": negative squared distance");
    sq = 0.0;
  }
  return std::sqrt(sq);
}

}  // namespace detail

// L2 distance between the transforms.
inline double distance(const AcCurve& c1, const AcCurve& c2) {
  const double sq = length(c1) + length(c2) - 2.0 * s_functional(c1, c2);
  return detail::root_clamped(sq, "distance");
}

inline AcCurve scaled(const AcCurve& c, double factor) {
  AcCurve out = c;
  for (auto& n : out.nodes) n.value *= factor;
  return out;
}

// Great-circle distance between the transforms of the length-normalized
// curves. The cosine is clamped to [-1,1]; excursions beyond 1e-9 raise.
inline double scale_invariant_distance(const AcCurve& c1, const AcCurve& c2) {
  const double l1 = length(c1), l2 = length(c2);
  if (!(l1 > 0.0) || !(l2 > 0.0))
    throw std::invalid_argument("scale_invariant_distance: curves must have positive length");
  double cosv = s_functional(scaled(c1, 1.0 / l1), scaled(c2, 1.0 / l2));
  if (cosv > 1.0 || cosv < -1.0) {
    if (cosv > 1.0 + 1e-9 || cosv < -1.0 - 1e-9)
      throw std::logic_error("scale_invariant_distance: cosine outside [-1,1] beyond tolerance");
    cosv = std::clamp(cosv, -1.0, 1.0);
  }
  return std::acos(cosv);
}

}  // namespace srvbv
