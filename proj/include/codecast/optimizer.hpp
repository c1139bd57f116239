#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "codecast/degree_model.hpp"
#include "codecast/errors.hpp"
#include "codecast/scenario.hpp"
#include "codecast/simplex.hpp"

namespace codecast {

// Degree-distribution design. With a_j = t * p_j the minimal server delivery
// time is a linear program: minimize sum a_j subject to
//
//     sum_j j a_j x^(j-1)  >=  -ln(1-x) / (1 - eps_i)
//
// for every user i and every grid point x in (0, z_i]. The systematic
// variant substitutes a_j = (t-1) * p_j, right-hand side
// (-ln(1-x) + ln eps_i) / (1 - eps_i), and the range (1 - eps_i, z_i];
// users whose demand fits inside the channel capacity contribute no rows.

/// Largest degree an optimal distribution ever needs for peak demand z_max.
inline std::size_t dmax_for(double z_max) {
  if (!(z_max > 0.0)) throw usage_error("dmax_for: z_max must be positive");
  if (z_max >= 1.0) throw domain_error("dmax_for: z_max must be below 1");
  return static_cast<std::size_t>(std::ceil(1.0 / (1.0 - z_max) - 1e-9)) - 1;
}

struct LpConstraint {
  std::size_t user;
  double x;
  double rhs;
};

struct LpProblem {
  std::size_t var_count = 0;  ///< number of degrees, a_1..a_dmax
  bool systematic = false;
  double grid_step = 1e-3;
  std::vector<LpConstraint> rows;
  /// In systematic mode, max_i z_i/(1-eps_i) over the users served by the
  /// uncoded round alone; the server time when no rows exist.
  double systematic_floor = 0.0;

  double coefficient(std::size_t degree, double x) const {
    return static_cast<double>(degree) * std::pow(x, static_cast<double>(degree) - 1.0);
  }
};

struct BindingConstraint {
  std::size_t user;
  double x;
  double slack;
};

struct OptimizationResult {
  double t0 = 0.0;
  DegreeDistribution dist = DegreeDistribution::point_mass(1);
  std::size_t dmax_used = 1;
  std::vector<BindingConstraint> binding;
  /// Server delivery time of `dist` recomputed through the ripple analysis;
  /// should agree with t0 up to grid-induced tolerance.
  double reanalyzed_t0 = 0.0;
};

inline LpProblem build_lp(const Scenario& scenario, bool systematic,
                          double grid_step = 1e-3,
                          std::optional<std::size_t> dmax_override = {}) {
  for (const auto& u : scenario.users()) {
    if (u.z >= 1.0)
      throw domain_error("build_lp: demand z = 1 is not supported by the LT analysis");
    if (u.eps >= 1.0) throw domain_error("build_lp: dead channel (eps >= 1)");
  }
  LpProblem p;
  p.systematic = systematic;
  p.grid_step = grid_step;
  p.var_count = dmax_override ? *dmax_override : dmax_for(scenario.max_demand());
  if (p.var_count == 0) throw usage_error("build_lp: dmax must be >= 1");
  for (std::size_t i = 0; i < scenario.users().size(); ++i) {
    const auto& u = scenario.users()[i];
    if (systematic) {
      if (u.z <= 1.0 - u.eps) {
        p.systematic_floor = std::max(p.systematic_floor, u.z / (1.0 - u.eps));
        continue;
      }
      for (double x : detail::constraint_grid(1.0 - u.eps, u.z, grid_step))
        p.rows.push_back(
            {i, x, (-std::log1p(-x) + std::log(u.eps)) / (1.0 - u.eps)});
    } else {
      for (double x : detail::constraint_grid(0.0, u.z, grid_step))
        p.rows.push_back({i, x, -std::log1p(-x) / (1.0 - u.eps)});
    }
  }
  return p;
}

inline OptimizationResult solve_lp(const LpProblem& problem) {
  OptimizationResult res;
  res.dmax_used = problem.var_count;
  if (problem.rows.empty()) {
    // systematic round alone meets every demand
    res.t0 = problem.systematic ? problem.systematic_floor : 0.0;
    res.dist = DegreeDistribution::point_mass(1);
    return res;
  }
  const std::size_t m = problem.rows.size(), n = problem.var_count;
  std::vector<std::vector<double>> A(m, std::vector<double>(n));
  std::vector<double> b(m), c(n, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      A[i][j] = problem.coefficient(j + 1, problem.rows[i].x);
    b[i] = problem.rows[i].rhs;
  }
  auto sol = simplex::minimize_geq(A, b, c);
  if (sol.status != simplex::Status::optimal)
    throw std::runtime_error("solve_lp: simplex failed to reach an optimum");
  double total = 0.0;
  for (double a : sol.x) total += a;
  res.t0 = problem.systematic ? 1.0 + total : total;
  // recover the distribution; probabilities below 1e-6 are solver dust
  std::vector<double> weights(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pj = sol.x[j] / total;
    weights[j] = (pj < 1e-6) ? 0.0 : pj;
  }
  res.dist = DegreeDistribution::normalized(std::move(weights));
  for (std::size_t i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * sol.x[j];
    double slack = lhs - b[i];
    if (slack <= 1e-7)
      res.binding.push_back({problem.rows[i].user, problem.rows[i].x, slack});
  }
  return res;
}

inline OptimizationResult optimize_scenario(const Scenario& scenario, bool systematic,
                                            double grid_step = 1e-3,
                                            std::optional<std::size_t> dmax_override = {}) {
  auto res = solve_lp(build_lp(scenario, systematic, grid_step, dmax_override));
  if (res.t0 > 0.0 && std::isfinite(res.t0)) {
    bool analyzable = true;
    for (const auto& u : scenario.users())
      if (u.z >= 1.0 || u.eps >= 1.0) analyzable = false;
    if (analyzable)
      res.reanalyzed_t0 =
          analyze_lt(scenario, res.dist, systematic, grid_step).server_time;
  }
  return res;
}

}  // namespace codecast
