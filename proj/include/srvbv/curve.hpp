#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srvbv {

using Vec = Eigen::VectorXd;

// Jump detection is exact by design: a node is a jump iff left != right bitwise.
inline bool exact_equal(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

struct Node {
  double t = 0.0;
  Vec left;
  Vec right;

  bool is_jump() const { return !exact_equal(left, right); }
  Vec jump() const { return right - left; }
};

// Piecewise-linear curve on [0,1] that may jump at its nodes. Between
// consecutive nodes the curve runs affinely from nodes[i].right to
// nodes[i+1].left; at a node it jumps from left to right. The first node
// carries no jump so the value at 0 is unambiguous.
struct SbvCurve {
  int dimension = 0;
  std::vector<Node> nodes;
};

// Jump-free curve: one value per node, affine in between.
struct AcNode {
  double t = 0.0;
  Vec value;
};

struct AcCurve {
  int dimension = 0;
  std::vector<AcNode> nodes;
};

inline SbvCurve as_sbv(const AcCurve& c) {
  SbvCurve out;
  out.dimension = c.dimension;
  out.nodes.reserve(c.nodes.size());
  for (const auto& n : c.nodes) out.nodes.push_back({n.t, n.value, n.value});
  return out;
}

inline bool has_jumps(const SbvCurve& c) {
  for (const auto& n : c.nodes)
    if (n.is_jump()) return true;
  return false;
}

// Throws if the curve has a jump node.
inline AcCurve to_ac(const SbvCurve& c) {
  AcCurve out;
  out.dimension = c.dimension;
  out.nodes.reserve(c.nodes.size());
  for (const auto& n : c.nodes) {
    if (n.is_jump()) throw std::invalid_argument("to_ac: curve has a jump at t=" + std::to_string(n.t));
    out.nodes.push_back({n.t, n.left});
  }
  return out;
}

// Structural check. Returns human-readable violations (empty = valid).
inline std::vector<std::string> validate(const SbvCurve& c) {
  std::vector<std::string> out;
  if (c.dimension < 1) out.push_back("dimension must be >= 1");
  if (c.nodes.size() < 2) {
    out.push_back("curve needs at least two nodes");
    return out;
  }
  if (c.nodes.front().t != 0.0) out.push_back("first node must have t = 0");
  if (c.nodes.back().t != 1.0) out.push_back("last node must have t = 1");
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    if (!(std::isfinite(n.t))) out.push_back("node " + std::to_string(i) + ": non-finite parameter");
    if (n.left.size() != c.dimension)
      out.push_back("node " + std::to_string(i) + ": left value has wrong dimension");
    if (n.right.size() != c.dimension)
      out.push_back("node " + std::to_string(i) + ": right value has wrong dimension");
    if (n.left.size() == n.right.size())
      for (Eigen::Index k = 0; k < n.left.size(); ++k)
        if (!std::isfinite(n.left[k]) || !std::isfinite(n.right[k])) {
          out.push_back("node " + std::to_string(i) + ": non-finite value");
          break;
        }
    if (i + 1 < c.nodes.size() && !(c.nodes[i].t < c.nodes[i + 1].t))
      out.push_back("node " + std::to_string(i + 1) + ": parameters must be strictly increasing");
  }
  if (c.nodes.front().left.size() == c.nodes.front().right.size() &&
      c.nodes.front().is_jump())
    out.push_back("first node must not jump (left == right required)");
  return out;
}

inline std::vector<std::string> validate(const AcCurve& c) { return validate(as_sbv(c)); }

inline void require_valid(const SbvCurve& c, const char* who = "curve") {
  auto v = validate(c);
  if (!v.empty()) throw std::invalid_argument(std::string(who) + ": " + v.front());
}

inline void require_valid(const AcCurve& c, const char* who = "curve") {
  auto v = validate(c);
  if (!v.empty()) throw std::invalid_argument(std::string(who) + ": " + v.front());
}

struct EvalSide {
  enum class Kind { left, right, interior };
  Kind kind = Kind::right;
  double theta = 0.0;

  static EvalSide left() { return {Kind::left, 0.0}; }
  static EvalSide right() { return {Kind::right, 0.0}; }
  // Position across a jump: (1-theta)*left + theta*right, theta in [0,1].
  static EvalSide interior(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
      throw std::invalid_argument("EvalSide::interior: theta must lie in [0,1]");
    return {Kind::interior, theta};
  }
};

namespace detail {

// Index of the last node with node.t <= t. Parameters are strictly increasing.
inline std::size_t node_at_or_before(const std::vector<Node>& nodes, double t) {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                             [](double x, const Node& n) { return x < n.t; });
  return static_cast<std::size_t>(it - nodes.begin()) - 1;
}

}  // namespace detail

// Evaluate at parameter t. On a segment all sides agree; exactly at a stored
// node the side picks left limit, right limit, or a point across the jump.
inline Vec eval(const SbvCurve& c, double t, EvalSide side = EvalSide::right()) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("eval: parameter outside [0,1]");
  std::size_t i = detail::node_at_or_before(c.nodes, t);
  const Node& n = c.nodes[i];
  if (n.t == t) {
    switch (side.kind) {
      case EvalSide::Kind::left:
        return n.left;
      case EvalSide::Kind::right:
        return n.right;
      case EvalSide::Kind::interior:
        return (1.0 - side.theta) * n.left + side.theta * n.right;
    }
  }
  const Node& m = c.nodes[i + 1];
  const double w = (t - n.t) / (m.t - n.t);
  return n.right + w * (m.left - n.right);
}

inline Vec eval(const AcCurve& c, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("eval: parameter outside [0,1]");
  auto it = std::upper_bound(c.nodes.begin(), c.nodes.end(), t,
                             [](double x, const AcNode& n) { return x < n.t; });
  std::size_t i = static_cast<std::size_t>(it - c.nodes.begin()) - 1;
  const AcNode& n = c.nodes[i];
  if (n.t == t) return n.value;
  const AcNode& m = c.nodes[i + 1];
  const double w = (t - n.t) / (m.t - n.t);
  return n.value + w * (m.value - n.value);
}

// Total variation: sum of segment chords plus jump magnitudes.
inline double length(const SbvCurve& c) {
  double len = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    if (c.nodes[i].is_jump()) len += c.nodes[i].jump().norm();
    if (i + 1 < c.nodes.size()) len += (c.nodes[i + 1].left - c.nodes[i].right).norm();
  }
  return len;
}

inline double length(const AcCurve& c) {
  double len = 0.0;
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i)
    len += (c.nodes[i + 1].value - c.nodes[i].value).norm();
  return len;
}

struct Jump {
  double t = 0.0;
  Vec delta;  // right - left, nonzero
};

inline std::vector<Jump> jump_set(const SbvCurve& c) {
  std::vector<Jump> out;
  for (const auto& n : c.nodes)
    if (n.is_jump()) out.push_back({n.t, n.jump()});
  return out;
}

// Splits c into a continuous part and a pure-jump part with
// ac(0) = c(0) and jump_part(0) = 0; the two sum pointwise to c
// (left and right values alike).
inline std::pair<AcCurve, SbvCurve> decompose(const SbvCurve& c) {
  AcCurve ac;
  ac.dimension = c.dimension;
  SbvCurve jp;
  jp.dimension = c.dimension;
  Vec a = c.nodes.front().left;
  Vec j = Vec::Zero(c.dimension);
  for (std::size_t i = 0; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    if (i > 0) a += n.left - c.nodes[i - 1].right;
    ac.nodes.push_back({n.t, a});
    Vec jl = j;
    if (n.is_jump()) j += n.jump();
    jp.nodes.push_back({n.t, jl, j});
  }
  return {std::move(ac), std::move(jp)};
}

// Translate so the curve starts at the origin.
inline SbvCurve normalize_bv0(const SbvCurve& c) {
  SbvCurve out = c;
  const Vec base = c.nodes.front().right;
  for (auto& n : out.nodes) {
    n.left -= base;
    n.right -= base;
  }
  return out;
}

inline AcCurve normalize_bv0(const AcCurve& c) {
  AcCurve out = c;
  const Vec base = c.nodes.front().value;
  for (auto& n : out.nodes) n.value -= base;
  return out;
}

// Knots (t, s) of the normalized cumulative arc length of c; s runs 0 -> 1.
// Requires positive length.
inline std::vector<std::pair<double, double>> arclength_profile(const AcCurve& c) {
  std::vector<double> cum(c.nodes.size(), 0.0);
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i)
    cum[i + 1] = cum[i] + (c.nodes[i + 1].value - c.nodes[i].value).norm();
  const double total = cum.back();
  if (!(total > 0.0)) throw std::invalid_argument("arclength_profile: curve has zero length");
  std::vector<std::pair<double, double>> out;
  out.reserve(c.nodes.size());
  for (std::size_t i = 0; i < c.nodes.size(); ++i) out.push_back({c.nodes[i].t, cum[i] / total});
  out.back().second = 1.0;
  return out;
}

// Reparametrise to constant speed. Zero-speed stretches collapse to a point
// in the new parameter; tol guards the result (each output segment's speed
// must match the total length to within tol relative error).
inline AcCurve constant_speed(const AcCurve& c, double tol = 1e-9) {
  const double len = length(c);
  if (!(len > 0.0)) throw std::invalid_argument("constant_speed: curve has zero length");
  auto prof = arclength_profile(c);
  AcCurve out;
  out.dimension = c.dimension;
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (!out.nodes.empty() && prof[i].second == out.nodes.back().t) continue;  // collapsed stretch
    out.nodes.push_back({prof[i].second, c.nodes[i].value});
  }
  for (std::size_t i = 0; i + 1 < out.nodes.size(); ++i) {
    const double ds = out.nodes[i + 1].t - out.nodes[i].t;
    const double speed = (out.nodes[i + 1].value - out.nodes[i].value).norm() / ds;
    if (std::abs(speed - len) > tol * std::max(1.0, len))
      throw std::logic_error("constant_speed: speed deviates beyond tolerance");
  }
  return out;
}

namespace detail {

inline double dist_point_segment(const Vec& p, const Vec& a, const Vec& b) {
  const Vec ab = b - a;
  const double denom = ab.squaredNorm();
  if (denom == 0.0) return (p - a).norm();
  double s = (p - a).dot(ab) / denom;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

// Sorted union of two sorted lists, exact-equality dedup.
inline std::vector<double> merge_params(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<double> node_params(const SbvCurve& c) {
  std::vector<double> out;
  out.reserve(c.nodes.size());
  for (const auto& n : c.nodes) out.push_back(n.t);
  return out;
}

inline std::vector<double> node_params(const AcCurve& c) {
  std::vector<double> out;
  out.reserve(c.nodes.size());
  for (const auto& n : c.nodes) out.push_back(n.t);
  return out;
}

}  // namespace detail

}  // namespace srvbv
