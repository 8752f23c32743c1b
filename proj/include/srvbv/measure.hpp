#pragma once

#include "srvbv/curve.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace srvbv {

struct Atom {
  double location = 0.0;
  Vec weight;  // nonzero
};

// Vector measure on [0,1]: piecewise-constant density w.r.t. Lebesgue plus
// finitely many atoms. breakpoints are strictly increasing from 0 to 1;
// densities[i] lives on (breakpoints[i], breakpoints[i+1]).
struct PiecewiseMeasure {
  int dimension = 0;
  std::vector<double> breakpoints;
  std::vector<Vec> densities;
  std::vector<Atom> atoms;
};

inline void require_valid(const PiecewiseMeasure& m, const char* who = "measure") {
  auto fail = [&](const char* msg) { throw std::invalid_argument(std::string(who) + ": " + msg); };
  if (m.dimension < 1) fail("dimension must be >= 1");
  if (m.breakpoints.size() < 2) fail("need at least two breakpoints");
  if (m.breakpoints.front() != 0.0 || m.breakpoints.back() != 1.0) fail("breakpoints must run 0 to 1");
  for (std::size_t i = 0; i + 1 < m.breakpoints.size(); ++i)
    if (!(m.breakpoints[i] < m.breakpoints[i + 1])) fail("breakpoints must be strictly increasing");
  if (m.densities.size() + 1 != m.breakpoints.size()) fail("one density per interval required");
  for (const auto& d : m.densities)
    if (d.size() != m.dimension) fail("density has wrong dimension");
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const Atom& a = m.atoms[i];
    if (a.weight.size() != m.dimension) fail("atom weight has wrong dimension");
    if (a.weight.norm() == 0.0) fail("atom weight must be nonzero");
    if (!(a.location >= 0.0 && a.location <= 1.0)) fail("atom location outside [0,1]");
    if (i > 0 && !(m.atoms[i - 1].location < a.location)) fail("atom locations must be strictly increasing");
  }
}

// Distributional derivative of a curve: segment slopes as densities, jumps
// as atoms.
inline PiecewiseMeasure derivative(const SbvCurve& c) {
  PiecewiseMeasure m;
  m.dimension = c.dimension;
  for (const auto& n : c.nodes) m.breakpoints.push_back(n.t);
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i) {
    const double dt = c.nodes[i + 1].t - c.nodes[i].t;
    m.densities.push_back((c.nodes[i + 1].left - c.nodes[i].right) / dt);
  }
  for (const auto& n : c.nodes)
    if (n.is_jump()) m.atoms.push_back({n.t, n.jump()});
  return m;
}

inline double total_variation(const PiecewiseMeasure& m) {
  double tv = 0.0;
  for (std::size_t i = 0; i < m.densities.size(); ++i)
    tv += m.densities[i].norm() * (m.breakpoints[i + 1] - m.breakpoints[i]);
  for (const auto& a : m.atoms) tv += a.weight.norm();
  return tv;
}

// Two measures rewritten over a shared grid. Atoms are aligned by exact
// location equality; an absent side is the zero vector.
struct CommonRefinement {
  std::vector<double> breakpoints;
  std::vector<Vec> densities1;
  std::vector<Vec> densities2;
  struct AlignedAtom {
    double location = 0.0;
    Vec weight1;
    Vec weight2;
  };
  std::vector<AlignedAtom> atoms;
};

inline CommonRefinement common_refinement(const PiecewiseMeasure& m1, const PiecewiseMeasure& m2) {
  if (m1.dimension != m2.dimension)
    throw std::invalid_argument("common_refinement: dimension mismatch");
  CommonRefinement out;
  out.breakpoints = detail::merge_params(m1.breakpoints, m2.breakpoints);
  std::size_t i1 = 0, i2 = 0;
  for (std::size_t i = 0; i + 1 < out.breakpoints.size(); ++i) {
    const double a = out.breakpoints[i];
    while (i1 + 1 < m1.densities.size() && m1.breakpoints[i1 + 1] <= a) ++i1;
    while (i2 + 1 < m2.densities.size() && m2.breakpoints[i2 + 1] <= a) ++i2;
    out.densities1.push_back(m1.densities[i1]);
    out.densities2.push_back(m2.densities[i2]);
  }
  const Vec zero = Vec::Zero(m1.dimension);
  std::size_t i = 0, j = 0;
  while (i < m1.atoms.size() || j < m2.atoms.size()) {
    const bool take1 = j >= m2.atoms.size() ||
                       (i < m1.atoms.size() && m1.atoms[i].location <= m2.atoms[j].location);
    const bool take2 = i >= m1.atoms.size() ||
                       (j < m2.atoms.size() && m2.atoms[j].location <= m1.atoms[i].location);
    CommonRefinement::AlignedAtom a;
    if (take1 && take2) {
      a = {m1.atoms[i].location, m1.atoms[i].weight, m2.atoms[j].weight};
      ++i, ++j;
    } else if (take1) {
      a = {m1.atoms[i].location, m1.atoms[i].weight, zero};
      ++i;
    } else {
      a = {m2.atoms[j].location, zero, m2.atoms[j].weight};
      ++j;
    }
    out.atoms.push_back(std::move(a));
  }
  return out;
}

namespace detail {

// <u/|u|, v/|v|>^+ * sqrt(|u| |v|); zero when either argument vanishes.
inline double positive_part_kernel(const Vec& u, const Vec& v) {
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double dot = u.dot(v);
  if (dot <= 0.0) return 0.0;
  return dot / std::sqrt(nu * nv);
}

}  // namespace detail

// Relaxed inner product of two derivative measures: the positive-part kernel
// integrated over the shared grid plus the co-located atom terms. Mutually
// singular mass (an atom on one side only, or a density opposite an atom)
// contributes nothing.
inline double s_hat_measure(const PiecewiseMeasure& m1, const PiecewiseMeasure& m2) {
  const CommonRefinement r = common_refinement(m1, m2);
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < r.breakpoints.size(); ++i) {
    const double dt = r.breakpoints[i + 1] - r.breakpoints[i];
    s += detail::positive_part_kernel(r.densities1[i], r.densities2[i]) * dt;
  }
  for (const auto& a : r.atoms) s += detail::positive_part_kernel(a.weight1, a.weight2);
  return s;
}

// Pointwise integrand of the relaxed product in barycentric form: the mass
// fraction t of the first measure against 1-t of the second, directions xi
// and zeta. Convex in t for fixed directions; the sign convention makes it
// a convex integrand (hence the leading minus).
inline double f_c(double t, const Vec& xi, const Vec& zeta) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("f_c: t outside [0,1]");
  if (std::abs(xi.norm() - 1.0) > 1e-9 || std::abs(zeta.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("f_c: directions must be unit vectors");
  const double dot = xi.dot(zeta);
  if (dot <= 0.0) return 0.0;
  return -dot * std::sqrt(t * (1.0 - t));
}

}  // namespace srvbv
