#pragma once

#include "srvbv/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace srvbv {

// Monotone surjective reparametrisation of [0,1], piecewise linear. Knot x
// coordinates are strictly increasing from 0 to 1; y coordinates are
// non-decreasing from 0 to 1 (equal neighbours form a plateau, detected by
// exact equality).
struct ReparamKnot {
  double x = 0.0;
  double y = 0.0;
};

struct Reparam {
  std::vector<ReparamKnot> knots;

  static Reparam identity() { return Reparam{{{0.0, 0.0}, {1.0, 1.0}}}; }

  bool is_strict() const {
    for (std::size_t i = 0; i + 1 < knots.size(); ++i)
      if (!(knots[i].y < knots[i + 1].y)) return false;
    return true;
  }

  double operator()(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("Reparam: argument outside [0,1]");
    auto it = std::upper_bound(knots.begin(), knots.end(), x,
                               [](double v, const ReparamKnot& k) { return v < k.x; });
    std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    if (knots[i].x == x) return knots[i].y;
    const ReparamKnot &a = knots[i], &b = knots[i + 1];
    if (a.y == b.y) return a.y;  // plateau value is exact
    return a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
  }
};

inline std::vector<std::string> validate(const Reparam& r) {
  std::vector<std::string> out;
  if (r.knots.size() < 2) {
    out.push_back("reparametrisation needs at least two knots");
    return out;
  }
  if (r.knots.front().x != 0.0 || r.knots.front().y != 0.0) out.push_back("must start at (0,0)");
  if (r.knots.back().x != 1.0 || r.knots.back().y != 1.0) out.push_back("must end at (1,1)");
  for (std::size_t i = 0; i + 1 < r.knots.size(); ++i) {
    if (!(r.knots[i].x < r.knots[i + 1].x)) out.push_back("knot x must be strictly increasing");
    if (r.knots[i].y > r.knots[i + 1].y) out.push_back("knot y must be non-decreasing");
  }
  return out;
}

inline void require_valid(const Reparam& r, const char* who = "reparam") {
  auto v = validate(r);
  if (!v.empty()) throw std::invalid_argument(std::string(who) + ": " + v.front());
}

namespace detail {

// Breakpoints (x, phi(x)) at every knot of phi and at every preimage of a
// listed target value; the target y is recorded exactly rather than
// re-evaluated. targets must be sorted.
inline std::vector<std::pair<double, double>> composition_breakpoints(
    const Reparam& phi, const std::vector<double>& targets) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& k : phi.knots) pts.push_back({k.x, k.y});
  for (std::size_t i = 0; i + 1 < phi.knots.size(); ++i) {
    const ReparamKnot &a = phi.knots[i], &b = phi.knots[i + 1];
    if (!(a.y < b.y)) continue;
    auto lo = std::upper_bound(targets.begin(), targets.end(), a.y);
    auto hi = std::lower_bound(targets.begin(), targets.end(), b.y);
    for (auto it = lo; it != hi; ++it)
      pts.push_back({a.x + (*it - a.y) / (b.y - a.y) * (b.x - a.x), *it});
  }
  std::sort(pts.begin(), pts.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& p, const auto& q) { return p.first == q.first; }),
            pts.end());
  return pts;
}

}  // namespace detail

// c after the time change phi. Plateaus of phi become constant stretches.
inline AcCurve compose_ac(const AcCurve& c, const Reparam& phi) {
  const auto pts = detail::composition_breakpoints(phi, detail::node_params(c));
  AcCurve out;
  out.dimension = c.dimension;
  out.nodes.reserve(pts.size());
  for (const auto& [x, y] : pts) out.nodes.push_back({x, eval(c, y)});
  return out;
}

// outer after inner, as a reparametrisation.
inline Reparam compose(const Reparam& outer, const Reparam& inner) {
  std::vector<double> targets;
  targets.reserve(outer.knots.size());
  for (const auto& k : outer.knots) targets.push_back(k.x);
  const auto pts = detail::composition_breakpoints(inner, targets);
  Reparam out;
  out.knots.reserve(pts.size());
  for (const auto& [x, y] : pts) out.knots.push_back({x, outer(y)});
  out.knots.front().y = 0.0;
  out.knots.back().y = 1.0;
  return out;
}

namespace detail {

// Shared scaffolding for the jump embedding: for every node of c the left
// and right values of the cumulative singular-mass profile
//   xi(x) = |jump mass before x| / (2 len) + (1 - alpha) x,
// alpha = |total jump mass| / (2 len) <= 1/2.
struct JumpEmbedding {
  double len = 0.0;
  double alpha = 0.0;
  std::vector<double> xi_left;
  std::vector<double> xi_right;
};

inline JumpEmbedding jump_embedding(const SbvCurve& c) {
  JumpEmbedding e;
  e.len = length(c);
  if (!(e.len > 0.0)) throw std::invalid_argument("jump embedding: curve has zero length");
  double singular = 0.0;
  for (const auto& n : c.nodes)
    if (n.is_jump()) singular += n.jump().norm();
  e.alpha = singular / (2.0 * e.len);
  double before = 0.0;
  for (const auto& n : c.nodes) {
    const double l = before / (2.0 * e.len) + (1.0 - e.alpha) * n.t;
    const double jump = n.is_jump() ? n.jump().norm() : 0.0;
    e.xi_left.push_back(l);
    e.xi_right.push_back(l + jump / (2.0 * e.len));
    before += jump;
  }
  // endpoints are exact by construction; snap away the rounding of the sums
  if (std::abs(e.xi_right.back() - 1.0) > 1e-9)
    throw std::logic_error("jump embedding: profile endpoint drifted");
  e.xi_right.back() = 1.0;
  if (!c.nodes.back().is_jump()) e.xi_left.back() = 1.0;
  for (std::size_t i = 0; i + 1 < e.xi_left.size(); ++i)
    if (!(e.xi_right[i] < e.xi_left[i + 1]))
      throw std::logic_error("jump embedding: profile not strictly increasing");
  return e;
}

inline Vec vec1(double v) {
  Vec out(1);
  out[0] = v;
  return out;
}

}  // namespace detail

// Cumulative singular-mass profile of c as a one-dimensional curve (it jumps
// exactly where c jumps), together with the mass fraction alpha.
inline std::pair<SbvCurve, double> xi(const SbvCurve& c) {
  const auto e = detail::jump_embedding(c);
  SbvCurve out;
  out.dimension = 1;
  out.nodes.reserve(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    out.nodes.push_back({c.nodes[i].t, detail::vec1(e.xi_left[i]), detail::vec1(e.xi_right[i])});
  return {std::move(out), e.alpha};
}

// Non-decreasing left inverse of the profile: continuous, plateaus exactly
// over the jumps of c, slope 1/(1-alpha) <= 2 elsewhere.
inline Reparam zeta(const SbvCurve& c) {
  const auto e = detail::jump_embedding(c);
  Reparam out;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    out.knots.push_back({e.xi_left[i], c.nodes[i].t});
    if (e.xi_right[i] != e.xi_left[i]) out.knots.push_back({e.xi_right[i], c.nodes[i].t});
  }
  return out;
}

// Continuous curve tracing c with every jump opened into an affine ramp over
// the profile plateau; preserves length exactly and carries the same image.
inline AcCurve g_transform(const SbvCurve& c) {
  const auto e = detail::jump_embedding(c);
  AcCurve out;
  out.dimension = c.dimension;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    out.nodes.push_back({e.xi_left[i], c.nodes[i].left});
    if (c.nodes[i].is_jump()) out.nodes.push_back({e.xi_right[i], c.nodes[i].right});
  }
  return out;
}

namespace detail {

inline const Node* find_node(const SbvCurve& c, double t) {
  auto it = std::lower_bound(c.nodes.begin(), c.nodes.end(), t,
                             [](const Node& n, double v) { return n.t < v; });
  if (it != c.nodes.end() && it->t == t) return &*it;
  return nullptr;
}

}  // namespace detail

// The canonical element of the composition set of (c, phi): c(phi(x)) where
// that is single-valued; across each maximal plateau of phi sitting at a jump
// location the jump segment is traversed affinely; a strict crossing of a
// jump location keeps the jump.
inline SbvCurve bracket_representative(const SbvCurve& c, const Reparam& phi) {
  const auto pts = detail::composition_breakpoints(phi, detail::node_params(c));
  SbvCurve out;
  out.dimension = c.dimension;
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t j = i;
    while (j + 1 < pts.size() && pts[j + 1].second == pts[i].second) ++j;
    const double y = pts[i].second;
    const Node* n = detail::find_node(c, y);
    if (n != nullptr && n->is_jump()) {
      if (i == j) {
        out.nodes.push_back({pts[i].first, n->left, n->right});
      } else {
        out.nodes.push_back({pts[i].first, n->left, n->left});
        out.nodes.push_back({pts[j].first, n->right, n->right});
      }
    } else {
      const Vec v = n != nullptr ? n->left : eval(c, y);
      out.nodes.push_back({pts[i].first, v, v});
      if (j > i) out.nodes.push_back({pts[j].first, v, v});
    }
    i = j + 1;
  }
  return out;
}

// Membership test for the composition set: length must match and every
// sampled point of g must sit on the (possibly degenerate) jump segment of c
// at phi(x). Samples all knots of g plus 1000 uniform parameters.
inline bool is_in_bracket(const SbvCurve& g, const SbvCurve& c, const Reparam& phi,
                          double tol = 1e-9) {
  if (g.dimension != c.dimension) return false;
  const double lc = length(c);
  if (std::abs(length(g) - lc) > tol * std::max(1.0, lc)) return false;
  auto on_segment = [&](double x, const Vec& value) {
    const double y = phi(x);
    const Vec a = eval(c, y, EvalSide::left());
    const Vec b = eval(c, y, EvalSide::right());
    return detail::dist_point_segment(value, a, b) <= tol;
  };
  for (const auto& n : g.nodes)
    if (!on_segment(n.t, n.left) || !on_segment(n.t, n.right)) return false;
  for (int k = 0; k <= 1000; ++k) {
    const double x = static_cast<double>(k) / 1000.0;
    if (!on_segment(x, eval(g, x))) return false;
  }
  return true;
}

}  // namespace srvbv
