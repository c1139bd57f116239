#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast::simplex {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::optimal;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase simplex on the tableau
//
//   maximize c.x  subject to  A x <= b,  x >= 0.
//
// Phase one drives an auxiliary variable out of the basis to reach a feasible
// vertex when some b_i < 0; phase two optimizes the real objective. Entering
// and leaving variables are chosen by (value, variable index) lexicographic
// comparison, so ties always break toward the smallest index (Bland's rule),
// which prevents cycling on degenerate vertices.
class DenseSolver {
 public:
  DenseSolver(const std::vector<std::vector<double>>& A,
              const std::vector<double>& b, const std::vector<double>& c)
      : m_(A.size()), n_(c.size()), nonbasic_(n_ + 1), basic_(m_),
        tableau_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (A[i].size() != n_) throw usage_error("simplex: ragged constraint matrix");
      for (std::size_t j = 0; j < n_; ++j) tableau_[i][j] = A[i][j];
      basic_[i] = static_cast<int>(n_ + i);
      tableau_[i][n_] = -1.0;
      tableau_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<int>(j);
      tableau_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    tableau_[m_ + 1][n_] = 1.0;
  }

  Solution solve() {
    Solution sol;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (tableau_[i][n_ + 1] < tableau_[r][n_ + 1]) r = i;
    if (m_ > 0 && tableau_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!optimize(2) || tableau_[m_ + 1][n_ + 1] < -kEps) {
        sol.status = iterations_exhausted_ ? Status::iteration_limit
                                           : Status::infeasible;
        return sol;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (basic_[i] == -1) {
          std::size_t s = 0;
          for (std::size_t j = 1; j <= n_; ++j)
            if (less(tableau_[i][j], nonbasic_[j], tableau_[i][s], nonbasic_[s]))
              s = j;
          pivot(i, s);
        }
      }
    }
    bool ok = optimize(1);
    sol.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < static_cast<int>(n_))
        sol.x[static_cast<std::size_t>(basic_[i])] = tableau_[i][n_ + 1];
    if (iterations_exhausted_)
      sol.status = Status::iteration_limit;
    else if (!ok)
      sol.status = Status::unbounded;
    else
      sol.status = Status::optimal;
    sol.objective = tableau_[m_][n_ + 1];
    return sol;
  }

 private:
  static constexpr double kEps = 1e-9;
  static constexpr std::size_t kMaxIterations = 200000;

  static bool less(double va, int ia, double vb, int ib) {
    return va < vb - kEps || (va < vb + kEps && ia < ib);
  }

  void pivot(std::size_t r, std::size_t s) {
    double* a = tableau_[r].data();
    double inv = 1.0 / a[s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i != r && std::abs(tableau_[i][s]) > kEps) {
        double* row = tableau_[i].data();
        double factor = row[s] * inv;
        for (std::size_t j = 0; j < n_ + 2; ++j) row[j] -= a[j] * factor;
        row[s] = a[s] * factor;
      }
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) tableau_[r][j] *= inv;
    for (std::size_t i = 0; i < m_ + 2; ++i)
      if (i != r) tableau_[i][s] *= -inv;
    tableau_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool optimize(int phase) {
    const std::size_t obj = m_ + static_cast<std::size_t>(phase) - 1;
    for (;;) {
      if (++iterations_ > kMaxIterations) {
        iterations_exhausted_ = true;
        return false;
      }
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (phase == 1 && nonbasic_[j] == -1) continue;
        if (s == n_ + 1 ||
            less(tableau_[obj][j], nonbasic_[j], tableau_[obj][s], nonbasic_[s]))
          s = j;
      }
      if (tableau_[obj][s] >= -kEps) return true;
      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (tableau_[i][s] <= kEps) continue;
        double ratio = tableau_[i][n_ + 1] / tableau_[i][s];
        if (r == m_ ||
            less(ratio, basic_[i], tableau_[r][n_ + 1] / tableau_[r][s], basic_[r]))
          r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<int> nonbasic_, basic_;
  std::vector<std::vector<double>> tableau_;
  std::size_t iterations_ = 0;
  bool iterations_exhausted_ = false;
};

/// Minimize c.x subject to A x >= b, x >= 0.
inline Solution minimize_geq(const std::vector<std::vector<double>>& A,
                             const std::vector<double>& b,
                             const std::vector<double>& c) {
  const std::size_t m = A.size(), n = c.size();
  std::vector<std::vector<double>> A2(m, std::vector<double>(n));
  std::vector<double> b2(m), c2(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) A2[i][j] = -A[i][j];
    b2[i] = -b[i];
  }
  for (std::size_t j = 0; j < n; ++j) c2[j] = -c[j];
  DenseSolver solver(A2, b2, c2);
  Solution sol = solver.solve();
  sol.objective = -sol.objective;
  return sol;
}

}  // namespace codecast::simplex
