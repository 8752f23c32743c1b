#pragma once

#include "srvbv/srvbv.hpp"

#include <algorithm>
#include <random>
#include <vector>

// Deterministic random fixtures shared by the unit and acceptance suites.
namespace testsup {

using srvbv::AcCurve;
using srvbv::Node;
using srvbv::Reparam;
using srvbv::SbvCurve;
using srvbv::Vec;

inline Vec v1(double x) {
  Vec v(1);
  v << x;
  return v;
}

inline Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec rvec(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

// Piecewise linear curve with strictly increasing parameters and generic
// nodes; redrawn if it degenerates to a point.
inline AcCurve random_ac(std::mt19937_64& rng, int dim, int max_nodes = 10) {
  std::uniform_int_distribution<int> nn(2, max_nodes);
  std::uniform_real_distribution<double> ut(0.0, 1.0);
  for (;;) {
    const int n = nn(rng);
    std::vector<double> ts{0.0, 1.0};
    for (int i = 2; i < n; ++i) ts.push_back(ut(rng));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    AcCurve c;
    c.dimension = dim;
    for (double t : ts) c.nodes.push_back({t, rvec(rng, dim)});
    if (c.nodes.size() >= 2 && srvbv::length(c) > 1e-6) return c;
  }
}

// Curve with nodes on the quarter lattice {0, 1/4, 1/2, 3/4, 1} and at most
// three jumps. The coarse lattice keeps the node gaps at 1/4, which leaves
// room for recovery windows of width up to 1/8.
inline SbvCurve random_sbv(std::mt19937_64& rng, int dim, double jump_prob = 0.5) {
  std::bernoulli_distribution jumps(jump_prob);
  for (;;) {
    SbvCurve c;
    c.dimension = dim;
    int jump_count = 0;
    for (int k = 0; k <= 4; ++k) {
      const double t = k / 4.0;
      Vec l = rvec(rng, dim);
      Vec r = l;
      if (k > 0 && jump_count < 3 && jumps(rng)) {
        r = rvec(rng, dim);
        ++jump_count;
      }
      c.nodes.push_back({t, l, r});
    }
    if (srvbv::length(c) > 1e-6) return c;
  }
}

// Nodes restricted to the uniform lattice k/(n-1) so the matching grids of
// size n pick up no extra parameters and stay exactly uniform.
inline AcCurve random_lattice_ac(std::mt19937_64& rng, int n, int dim) {
  std::uniform_int_distribution<int> extra(0, 3);
  for (;;) {
    std::vector<int> ks{0, n - 1};
    const int m = extra(rng);
    std::uniform_int_distribution<int> pick(1, n - 2);
    for (int i = 0; i < m; ++i) ks.push_back(pick(rng));
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    AcCurve c;
    c.dimension = dim;
    for (int k : ks) c.nodes.push_back({static_cast<double>(k) / (n - 1), rvec(rng, dim)});
    if (srvbv::length(c) > 1e-6) return c;
  }
}

// Strictly increasing piecewise linear reparametrisation.
inline Reparam random_strict_reparam(std::mt19937_64& rng, int max_interior = 4) {
  std::uniform_int_distribution<int> nn(0, max_interior);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = nn(rng);
  std::vector<double> xs{0.0, 1.0}, ys{0.0, 1.0};
  for (int i = 0; i < n; ++i) {
    xs.push_back(u(rng));
    ys.push_back(u(rng));
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const std::size_t m = std::min(xs.size(), ys.size());
  Reparam r;
  for (std::size_t i = 0; i < m; ++i) {
    const bool last = i + 1 == m;
    r.knots.push_back({last ? 1.0 : xs[i], last ? 1.0 : ys[i]});
  }
  return r;
}

// Largest pointwise gap between two curves over the union of their node
// parameters, segment midpoints, and both one-sided limits.
inline double max_pointwise_gap(const SbvCurve& a, const SbvCurve& b) {
  std::vector<double> ts = srvbv::detail::merge_params(srvbv::detail::node_params(a),
                                                       srvbv::detail::node_params(b));
  std::vector<double> probes = ts;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) probes.push_back(0.5 * (ts[i] + ts[i + 1]));
  double gap = 0.0;
  for (double t : probes) {
    gap = std::max(gap, (srvbv::eval(a, t, srvbv::EvalSide::left()) -
                         srvbv::eval(b, t, srvbv::EvalSide::left())).norm());
    gap = std::max(gap, (srvbv::eval(a, t, srvbv::EvalSide::right()) -
                         srvbv::eval(b, t, srvbv::EvalSide::right())).norm());
  }
  return gap;
}

// Fixtures used across suites.

inline SbvCurve unit_step(double at = 0.5) {
  Vec a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  SbvCurve c;
  c.dimension = 2;
  c.nodes.push_back({0.0, a, a});
  c.nodes.push_back({at, a, b});
  c.nodes.push_back({1.0, b, b});
  return c;
}

inline AcCurve unit_segment() {
  Vec a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  AcCurve c;
  c.dimension = 2;
  c.nodes.push_back({0.0, a});
  c.nodes.push_back({1.0, b});
  return c;
}

// Horizontal then vertical unit legs.
inline AcCurve l_shape() {
  Vec a(2), b(2), c2(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  c2 << 1.0, 1.0;
  AcCurve c;
  c.dimension = 2;
  c.nodes.push_back({0.0, a});
  c.nodes.push_back({0.5, b});
  c.nodes.push_back({1.0, c2});
  return c;
}

// Ramp to [1,0] on the first half, then a jump of the same vector: half the
// mass is absolutely continuous, half singular, so alpha = 1/4.
inline SbvCurve ramp_plus_step() {
  Vec a(2), b(2), c2(2);
  a << 0.0, 0.0;
  b << 1.0, 0.0;
  c2 << 2.0, 0.0;
  SbvCurve c;
  c.dimension = 2;
  c.nodes.push_back({0.0, a, a});
  c.nodes.push_back({0.5, b, c2});
  c.nodes.push_back({1.0, c2, c2});
  return c;
}

}  // namespace testsup
