#pragma once

#include "srvbv/curve.hpp"
#include "srvbv/gtransform.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace srvbv {

struct GridConfig {
  int n1 = 17;                  // uniform grid sizes (node parameters are merged in)
  int n2 = 17;
  int window = 8;               // max index span per move, per axis
  int refine_rounds = 3;
  int refine_factor = 2;        // grid growth n -> factor*(n-1)+1 keeps grids nested
  double convergence_tol = 1e-9;
  bool collapse_zero_speed = true;  // reparametrise inputs to constant speed first
};

inline void require_valid(const GridConfig& cfg, const char* who = "grid config") {
  auto fail = [&](const char* msg) { throw std::invalid_argument(std::string(who) + ": " + msg); };
  if (cfg.n1 < 2 || cfg.n2 < 2) fail("grid sizes must be >= 2");
  if (cfg.window < 1) fail("window must be >= 1");
  if (cfg.refine_rounds < 1) fail("refine_rounds must be >= 1");
  if (cfg.refine_factor < 2) fail("refine_factor must be >= 2");
  if (!(cfg.convergence_tol > 0.0)) fail("convergence_tol must be positive");
}

struct MatchResult {
  double s_star = 0.0;
  double d_shape = 0.0;
  Reparam psi1;                 // reparametrisations of the matched curves below
  Reparam psi2;
  AcCurve g1;                   // the curves the correspondence refers to
  AcCurve g2;
  std::vector<double> rounds;   // s_star per refinement round
  int grid_n1 = 0;              // final grid sizes (after node-parameter merge)
  int grid_n2 = 0;
  bool degenerate_speed = false;  // an input is stationary on a set of positive measure;
                                  // the result is a quotient-sense match only
};

namespace detail {

inline std::vector<double> uniform_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) g[static_cast<std::size_t>(k)] = static_cast<double>(k) / (n - 1);
  return g;
}

// Both grids carry both curves' node parameters so that an edge spanning a
// single cell never straddles a kink of either curve.
inline std::pair<std::vector<double>, std::vector<double>> build_grids(const AcCurve& a,
                                                                       const AcCurve& b, int n1,
                                                                       int n2) {
  const auto shared = merge_params(node_params(a), node_params(b));
  return {merge_params(uniform_grid(n1), shared), merge_params(uniform_grid(n2), shared)};
}

inline bool has_zero_speed(const AcCurve& c) {
  for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i)
    if (exact_equal(c.nodes[i].value, c.nodes[i + 1].value)) return true;
  return false;
}

// Positive-part chord gain between two position increments.
inline double edge_gain(const Vec& da, const Vec& db) {
  const double na = da.norm(), nb = db.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double dot = da.dot(db);
  if (dot <= 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace detail

// Best monotone lattice matching of a against b over explicit parameter
// grids. Moves advance up to `window` grid steps per axis (at least one axis
// must advance); a move gains the positive-part correlation of the two chords
// it spans. Ties between predecessors prefer the move closest to the
// diagonal, then the shortest, then the largest first-axis span; the fill is
// sequential, so results are deterministic.
inline MatchResult match_dp_on_grids(const AcCurve& a, const AcCurve& b,
                                     const std::vector<double>& grid1,
                                     const std::vector<double>& grid2, int window) {
  auto check_grid = [](const std::vector<double>& g, const AcCurve& c, const char* name) {
    if (g.size() < 2 || g.front() != 0.0 || g.back() != 1.0)
      throw std::invalid_argument(std::string("match_dp: ") + name + " must run 0 to 1");
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      if (!(g[i] < g[i + 1]))
        throw std::invalid_argument(std::string("match_dp: ") + name + " must be strictly increasing");
    for (const auto& n : c.nodes)
      if (!std::binary_search(g.begin(), g.end(), n.t))
        throw std::invalid_argument(std::string("match_dp: ") + name +
                                    " is missing a node parameter of its curve");
  };
  check_grid(grid1, a, "grid1");
  check_grid(grid2, b, "grid2");
  if (window < 1) throw std::invalid_argument("match_dp: window must be >= 1");

  const int n1 = static_cast<int>(grid1.size());
  const int n2 = static_cast<int>(grid2.size());
  std::vector<Vec> pa(grid1.size()), pb(grid2.size());
  for (int i = 0; i < n1; ++i) pa[static_cast<std::size_t>(i)] = eval(a, grid1[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n2; ++j) pb[static_cast<std::size_t>(j)] = eval(b, grid2[static_cast<std::size_t>(j)]);

  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> value(static_cast<std::size_t>(n1) * n2, neg_inf);
  std::vector<int> pred(static_cast<std::size_t>(n1) * n2, -1);
  auto at = [n2](int i, int j) { return static_cast<std::size_t>(i) * n2 + j; };
  value[at(0, 0)] = 0.0;

  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i == 0 && j == 0) continue;
      double best = neg_inf;
      int best_p = -1, best_q = -1;
      int best_skew = 0;
      const int pmax = std::min(window, i), qmax = std::min(window, j);
      for (int p = 0; p <= pmax; ++p) {
        for (int q = (p == 0 ? 1 : 0); q <= qmax; ++q) {
          const double base = value[at(i - p, j - q)];
          if (base == neg_inf) continue;
          const double cand = base + detail::edge_gain(pa[static_cast<std::size_t>(i)] - pa[static_cast<std::size_t>(i - p)],
                                                       pb[static_cast<std::size_t>(j)] - pb[static_cast<std::size_t>(j - q)]);
          // Ties: closest to the diagonal, then the smallest predecessor
          // index. Symmetric under swapping the two axes, so transposing the
          // inputs transposes the chosen path.
          const int skew = std::abs(p - q);
          const bool better =
              cand > best ||
              (cand == best && (skew < best_skew ||
                                (skew == best_skew && (p > best_p ||
                                                       (p == best_p && q > best_q)))));
          if (better) {
            best = cand;
            best_p = p;
            best_q = q;
            best_skew = skew;
          }
        }
      }
      value[at(i, j)] = best;
      pred[at(i, j)] = best_p * (window + 1) + best_q;
    }
  }

  MatchResult res;
  res.s_star = value[at(n1 - 1, n2 - 1)];
  res.grid_n1 = n1;
  res.grid_n2 = n2;
  std::vector<std::pair<int, int>> path;
  for (int i = n1 - 1, j = n2 - 1;;) {
    path.push_back({i, j});
    if (i == 0 && j == 0) break;
    const int code = pred[at(i, j)];
    i -= code / (window + 1);
    j -= code % (window + 1);
  }
  std::reverse(path.begin(), path.end());
  for (const auto& [i, j] : path) {
    const double s = grid1[static_cast<std::size_t>(i)], t = grid2[static_cast<std::size_t>(j)];
    const double u = 0.5 * (s + t);  // joint progress: psi1' + psi2' = 2 a.e.
    res.psi1.knots.push_back({u, s});
    res.psi2.knots.push_back({u, t});
  }
  res.psi1.knots.front() = {0.0, 0.0};
  res.psi2.knots.front() = {0.0, 0.0};
  res.psi1.knots.back() = {1.0, 1.0};
  res.psi2.knots.back() = {1.0, 1.0};
  res.g1 = a;
  res.g2 = b;
  res.d_shape = length(a) + length(b) - 2.0 * res.s_star;
  res.rounds = {res.s_star};
  res.degenerate_speed = detail::has_zero_speed(a) || detail::has_zero_speed(b);
  return res;
}

inline MatchResult match_dp(const AcCurve& a, const AcCurve& b, const GridConfig& cfg) {
  require_valid(cfg, "match_dp");
  const auto [g1, g2] = detail::build_grids(a, b, cfg.n1, cfg.n2);
  return match_dp_on_grids(a, b, g1, g2, cfg.window);
}

// Repeated matching on nested grids: sizes grow by refine_factor per round
// (n -> factor*(n-1)+1) and the window scales along, so every coarse path
// stays feasible and s_star is non-decreasing. Stops early once the gain per
// round drops below convergence_tol.
inline MatchResult refine(const AcCurve& a, const AcCurve& b, const GridConfig& cfg) {
  require_valid(cfg, "refine");
  int n1 = cfg.n1, n2 = cfg.n2, window = cfg.window;
  MatchResult res;
  std::vector<double> rounds;
  for (int r = 0; r < cfg.refine_rounds; ++r) {
    const auto [g1, g2] = detail::build_grids(a, b, n1, n2);
    res = match_dp_on_grids(a, b, g1, g2, window);
    rounds.push_back(res.s_star);
    if (rounds.size() >= 2 && std::abs(rounds.back() - rounds[rounds.size() - 2]) < cfg.convergence_tol)
      break;
    n1 = cfg.refine_factor * (n1 - 1) + 1;
    n2 = cfg.refine_factor * (n2 - 1) + 1;
    window = window * cfg.refine_factor;
  }
  res.rounds = std::move(rounds);
  return res;
}

namespace detail {

// Leftmost parameter of the preimage of u under a continuous non-decreasing
// profile given by (t, s) knots.
inline double left_preimage(const std::vector<std::pair<double, double>>& prof, double u) {
  auto it = std::lower_bound(prof.begin(), prof.end(), u,
                             [](const std::pair<double, double>& k, double v) { return k.second < v; });
  if (it == prof.begin()) return it->first;
  if (it == prof.end()) return prof.back().first;
  if (it->second == u) return it->first;
  const auto& b = *it;
  const auto& a = *std::prev(it);
  return a.first + (u - a.second) / (b.second - a.second) * (b.first - a.first);
}

inline MatchResult degenerate_shape_result(const SbvCurve& c1, const SbvCurve& c2, double l1,
                                           double l2) {
  MatchResult res;
  res.s_star = 0.0;
  res.d_shape = l1 + l2;
  res.psi1 = Reparam::identity();
  res.psi2 = Reparam::identity();
  res.g1 = l1 > 0.0 ? g_transform(c1) : to_ac(c1);
  res.g2 = l2 > 0.0 ? g_transform(c2) : to_ac(c2);
  res.rounds = {0.0};
  res.degenerate_speed = true;
  return res;
}

}  // namespace detail

// Quotient distance between the shapes of two curves with jumps: embeds both
// through the jump-opening transform, optionally collapses stationary
// stretches, and searches reparametrisation pairs on refining grids. The
// returned psi_i act on the parametrisation of g_i (the embedded curves), so
// downstream consumers can compose them with the respective profile inverses.
inline MatchResult shape_distance(const SbvCurve& c1, const SbvCurve& c2, const GridConfig& cfg) {
  require_valid(cfg, "shape_distance");
  if (c1.dimension != c2.dimension) throw std::invalid_argument("shape_distance: dimension mismatch");
  const double l1 = length(c1), l2 = length(c2);
  if (l1 == 0.0 || l2 == 0.0) return detail::degenerate_shape_result(c1, c2, l1, l2);

  AcCurve e1 = g_transform(c1), e2 = g_transform(c2);
  const bool degen = detail::has_zero_speed(e1) || detail::has_zero_speed(e2);
  MatchResult res;
  if (cfg.collapse_zero_speed) {
    const auto prof1 = arclength_profile(e1);
    const auto prof2 = arclength_profile(e2);
    res = refine(constant_speed(e1), constant_speed(e2), cfg);
    for (auto& k : res.psi1.knots) k.y = detail::left_preimage(prof1, k.y);
    for (auto& k : res.psi2.knots) k.y = detail::left_preimage(prof2, k.y);
    res.psi1.knots.back().y = 1.0;
    res.psi2.knots.back().y = 1.0;
  } else {
    res = refine(e1, e2, cfg);
  }
  res.g1 = std::move(e1);
  res.g2 = std::move(e2);
  res.degenerate_speed = degen;
  res.d_shape = l1 + l2 - 2.0 * res.s_star;
  return res;
}

// k sample pairs (g1(psi1(u)), g2(psi2(u))) at uniform u.
inline std::vector<std::pair<Vec, Vec>> correspondences(const MatchResult& m, int k) {
  if (k < 1) throw std::invalid_argument("correspondences: need at least one sample");
  std::vector<std::pair<Vec, Vec>> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double u = k == 1 ? 0.0 : static_cast<double>(j) / (k - 1);
    out.push_back({eval(m.g1, m.psi1(u)), eval(m.g2, m.psi2(u))});
  }
  return out;
}

}  // namespace srvbv
