#pragma once

#include "srvbv/curve.hpp"
#include "srvbv/matching.hpp"
#include "srvbv/relax.hpp"
#include "srvbv/srvt.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace srvbv {

namespace detail {

// c with extra (continuous) nodes so its node parameters are exactly params.
// params must contain every node parameter of c.
inline SbvCurve refined_to(const SbvCurve& c, const std::vector<double>& params) {
  SbvCurve out;
  out.dimension = c.dimension;
  out.nodes.reserve(params.size());
  for (double t : params) {
    if (const Node* n = find_node(c, t)) {
      out.nodes.push_back(*n);
    } else {
      const Vec v = eval(c, t);
      out.nodes.push_back({t, v, v});
    }
  }
  return out;
}

}  // namespace detail

// Continuous curves that approximate (c1, c2) in the strict sense while
// realizing the relaxed correlation exactly for every valid eps:
//  - every jump parameter of either curve gets a shared window of width eps;
//    a curve with a jump there ramps across it, the other one waits, and a
//    co-located opposed jump pair splits the window into disjoint halves;
//  - segments where the two velocities oppose each other are interleaved in
//    cells of width <= eps so the moving sets become disjoint;
//  - everything else is compressed by the same time change on both curves.
// Lengths and images are preserved. eps must stay below half the smallest
// node gap so the windows fit.
inline std::pair<AcCurve, AcCurve> recovery_pair(const SbvCurve& c1, const SbvCurve& c2,
                                                 double eps) {
  if (c1.dimension != c2.dimension) throw std::invalid_argument("recovery_pair: dimension mismatch");
  const std::vector<double> grid =
      detail::merge_params(detail::node_params(c1), detail::node_params(c2));
  double min_gap = 1.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) min_gap = std::min(min_gap, grid[i + 1] - grid[i]);
  if (!(eps > 0.0)) throw std::invalid_argument("recovery_pair: eps must be positive");
  if (!(eps < 0.5 * min_gap))
    throw std::invalid_argument("recovery_pair: eps too large for the node spacing");

  const SbvCurve r1 = detail::refined_to(c1, grid);
  const SbvCurve r2 = detail::refined_to(c2, grid);
  const std::size_t n = grid.size();

  AcCurve out1, out2;
  out1.dimension = c1.dimension;
  out2.dimension = c2.dimension;
  out1.nodes.push_back({0.0, r1.nodes.front().left});
  out2.nodes.push_back({0.0, r2.nodes.front().left});
  auto push = [](AcCurve& c, double t, const Vec& v) {
    if (!(t > c.nodes.back().t)) throw std::logic_error("recovery_pair: time went backwards");
    c.nodes.push_back({t, v});
  };

  for (std::size_t k = 0; k < n; ++k) {
    const Node& a = r1.nodes[k];
    const Node& b = r2.nodes[k];
    const bool j1 = a.is_jump(), j2 = b.is_jump();
    if (j1 || j2) {
      const double w0 = grid[k] == 1.0 ? out1.nodes.back().t : grid[k];
      const double w1 = grid[k] == 1.0 ? 1.0 : grid[k] + eps;
      if (j1 && j2 && a.jump().dot(b.jump()) < 0.0) {
        const double mid = w0 + 0.5 * eps;
        push(out1, mid, a.right);  // ramps first, then waits
        push(out1, w1, a.right);
        push(out2, mid, b.left);   // waits first, then ramps
        push(out2, w1, b.right);
      } else {
        push(out1, w1, a.right);   // a ramp for a jump, a wait otherwise
        push(out2, w1, b.right);
      }
    }
    if (k + 1 == n) break;
    const double a0 = out1.nodes.back().t;
    const bool end_window = grid[k + 1] == 1.0 &&
                            (r1.nodes[k + 1].is_jump() || r2.nodes[k + 1].is_jump());
    const double b0 = end_window ? 1.0 - eps : grid[k + 1];
    const Vec d1 = r1.nodes[k + 1].left - a.right;
    const Vec d2 = r2.nodes[k + 1].left - b.right;
    if (d1.norm() > 0.0 && d2.norm() > 0.0 && d1.dot(d2) < 0.0) {
      const int cells = std::max(1, static_cast<int>(std::ceil((b0 - a0) / eps)));
      for (int m = 1; m <= cells; ++m) {
        const double x1 = m == cells ? b0 : a0 + (b0 - a0) * m / cells;
        const double x0 = a0 + (b0 - a0) * (m - 1) / cells;
        const double mid = 0.5 * (x0 + x1);
        const Vec v1 = m == cells ? Vec(r1.nodes[k + 1].left) : Vec(a.right + d1 * (static_cast<double>(m) / cells));
        const Vec v2 = m == cells ? Vec(r2.nodes[k + 1].left) : Vec(b.right + d2 * (static_cast<double>(m) / cells));
        push(out1, mid, v1);  // moves on the first half-cell
        push(out1, x1, v1);
        push(out2, mid, out2.nodes.back().value);  // waits, then moves
        push(out2, x1, v2);
      }
    } else {
      push(out1, b0, r1.nodes[k + 1].left);
      push(out2, b0, r2.nodes[k + 1].left);
    }
  }
  return {std::move(out1), std::move(out2)};
}

struct ApproxReport {
  std::vector<double> epsilons;
  std::vector<double> s_values;     // correlation of the recovery pair per eps
  double s_hat_target = 0.0;        // relaxed correlation of the inputs
  double max_overshoot = 0.0;       // max(0, s_value - target) over the schedule
  double final_gap = 0.0;           // |s_value - target| at the smallest eps
};

// Runs the recovery construction over a decreasing eps schedule and compares
// the plain correlation of each pair against the relaxed value of the inputs.
inline ApproxReport verify_relaxation(const SbvCurve& c1, const SbvCurve& c2,
                                      const std::vector<double>& eps_schedule) {
  if (eps_schedule.empty()) throw std::invalid_argument("verify_relaxation: empty schedule");
  for (std::size_t i = 0; i < eps_schedule.size(); ++i) {
    if (!(eps_schedule[i] > 0.0))
      throw std::invalid_argument("verify_relaxation: eps must be positive");
    if (i > 0 && !(eps_schedule[i] < eps_schedule[i - 1]))
      throw std::invalid_argument("verify_relaxation: schedule must decrease");
  }
  ApproxReport rep;
  rep.s_hat_target = s_hat(c1, c2);
  for (double eps : eps_schedule) {
    const auto [a1, a2] = recovery_pair(c1, c2, eps);
    const double s = s_functional(a1, a2);
    rep.epsilons.push_back(eps);
    rep.s_values.push_back(s);
    rep.max_overshoot = std::max(rep.max_overshoot, s - rep.s_hat_target);
  }
  rep.max_overshoot = std::max(rep.max_overshoot, 0.0);
  rep.final_gap = std::abs(rep.s_values.back() - rep.s_hat_target);
  return rep;
}

// Exhaustive reference for match_dp: enumerates every monotone staircase path
// on the same grids (unbounded window) and accumulates gains in path order,
// so on equal grids the DP value matches bitwise. Refuses grids with more
// than 1e7 paths.
inline double brute_force_match(const AcCurve& a, const AcCurve& b, int n1, int n2) {
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("brute_force_match: grid sizes must be >= 2");
  const auto [grid1, grid2] = detail::build_grids(a, b, n1, n2);
  const int N1 = static_cast<int>(grid1.size()), N2 = static_cast<int>(grid2.size());
  std::vector<double> count(static_cast<std::size_t>(N1) * N2, 0.0);
  auto at = [N2](int i, int j) { return static_cast<std::size_t>(i) * N2 + j; };
  count[at(0, 0)] = 1.0;
  for (int i = 0; i < N1; ++i)
    for (int j = 0; j < N2; ++j) {
      if (i == 0 && j == 0) continue;
      double c = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q) {
          if (p == i && q == j) continue;
          c += count[at(p, q)];
        }
      count[at(i, j)] = c;
    }
  if (count[at(N1 - 1, N2 - 1)] > 1e7)
    throw std::invalid_argument("brute_force_match: too many paths to enumerate");

  std::vector<Vec> pa(grid1.size()), pb(grid2.size());
  for (int i = 0; i < N1; ++i) pa[static_cast<std::size_t>(i)] = eval(a, grid1[static_cast<std::size_t>(i)]);
  for (int j = 0; j < N2; ++j) pb[static_cast<std::size_t>(j)] = eval(b, grid2[static_cast<std::size_t>(j)]);

  double best = -std::numeric_limits<double>::infinity();
  std::function<void(int, int, double)> extend = [&](int i, int j, double acc) {
    if (i == N1 - 1 && j == N2 - 1) {
      best = std::max(best, acc);
      return;
    }
    for (int k = i; k < N1; ++k)
      for (int l = j; l < N2; ++l) {
        if (k == i && l == j) continue;
        extend(k, l,
               acc + detail::edge_gain(pa[static_cast<std::size_t>(k)] - pa[static_cast<std::size_t>(i)],
                                       pb[static_cast<std::size_t>(l)] - pb[static_cast<std::size_t>(j)]));
      }
  };
  extend(0, 0, 0.0);
  return best;
}

struct LemmaOptimum {
  std::vector<double> mu;  // optimal mass allocation, sums to 1
  double value = 0.0;      // optimal objective
};

// Maximizes sum_i g_i sqrt(mu_i nu_i) over probability vectors mu. The
// optimum is mu_i proportional to g_i^2 nu_i with value sqrt(sum g_i^2 nu_i);
// when that sum vanishes the objective is identically zero and the uniform
// allocation is returned.
inline LemmaOptimum lemma_mu_opt(const std::vector<double>& nu, const std::vector<double>& g) {
  if (nu.empty() || nu.size() != g.size())
    throw std::invalid_argument("lemma_mu_opt: need equally sized, non-empty inputs");
  double total_nu = 0.0, denom = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] < 0.0 || g[i] < 0.0) throw std::invalid_argument("lemma_mu_opt: inputs must be nonnegative");
    total_nu += nu[i];
    denom += g[i] * g[i] * nu[i];
  }
  if (!(total_nu > 0.0)) throw std::invalid_argument("lemma_mu_opt: nu must carry mass");
  LemmaOptimum out;
  out.mu.resize(nu.size());
  if (denom == 0.0) {
    // Objective is identically zero; keep the allocation on the support of nu.
    std::size_t support = 0;
    for (double v : nu)
      if (v > 0.0) ++support;
    for (std::size_t i = 0; i < nu.size(); ++i)
      out.mu[i] = nu[i] > 0.0 ? 1.0 / static_cast<double>(support) : 0.0;
    out.value = 0.0;
    return out;
  }
  for (std::size_t i = 0; i < nu.size(); ++i) out.mu[i] = g[i] * g[i] * nu[i] / denom;
  out.value = std::sqrt(denom);
  return out;
}

inline double lemma_objective(const std::vector<double>& nu, const std::vector<double>& g,
                              const std::vector<double>& mu) {
  if (mu.size() != nu.size() || g.size() != nu.size())
    throw std::invalid_argument("lemma_objective: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (mu[i] < 0.0) throw std::invalid_argument("lemma_objective: mu must be nonnegative");
    s += g[i] * std::sqrt(mu[i] * nu[i]);
  }
  return s;
}

struct StrictLimitReport {
  std::vector<double> value_deviations;  // per sequence element, max over samples
  std::vector<double> length_gaps;       // per sequence element
  bool values_converged = false;
  bool lengths_converged = false;
  bool pass = false;
};

// Checks strict convergence numerically: pointwise values at the given
// continuity samples plus total length. sample_ts must avoid the jump
// parameters of the limit (exact comparison).
inline StrictLimitReport strict_limit_check(const std::vector<SbvCurve>& seq,
                                            const SbvCurve& limit,
                                            const std::vector<double>& sample_ts,
                                            double value_tol = 1e-6, double length_tol = 1e-9) {
  if (seq.empty()) throw std::invalid_argument("strict_limit_check: empty sequence");
  if (sample_ts.empty()) throw std::invalid_argument("strict_limit_check: no sample parameters");
  for (double t : sample_ts) {
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("strict_limit_check: sample outside [0,1]");
    if (const Node* n = detail::find_node(limit, t); n != nullptr && n->is_jump())
      throw std::invalid_argument("strict_limit_check: sample sits on a jump of the limit");
  }
  StrictLimitReport rep;
  const double limit_len = length(limit);
  for (const auto& c : seq) {
    double dev = 0.0;
    for (double t : sample_ts) dev = std::max(dev, (eval(c, t) - eval(limit, t)).norm());
    rep.value_deviations.push_back(dev);
    rep.length_gaps.push_back(std::abs(length(c) - limit_len));
  }
  rep.values_converged = rep.value_deviations.back() <= value_tol;
  rep.lengths_converged = rep.length_gaps.back() <= length_tol;
  rep.pass = rep.values_converged && rep.lengths_converged;
  return rep;
}

}  // namespace srvbv
