#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "codecast/simplex.hpp"

using namespace codecast;

TEST_SUITE("simplex") {

TEST_CASE("one-variable tight bound") {
  // min x s.t. x >= 3
  auto sol = simplex::minimize_geq({{1.0}}, {3.0}, {1.0});
  REQUIRE(sol.status == simplex::Status::optimal);
  CHECK(sol.objective == doctest::Approx(3.0));
  CHECK(sol.x[0] == doctest::Approx(3.0));
}

TEST_CASE("two variables, known vertex") {
  // min x + y s.t. x + 2y >= 4, 3x + y >= 6  -> vertex (8/5, 6/5), value 14/5
  auto sol = simplex::minimize_geq({{1.0, 2.0}, {3.0, 1.0}}, {4.0, 6.0}, {1.0, 1.0});
  REQUIRE(sol.status == simplex::Status::optimal);
  CHECK(sol.objective == doctest::Approx(14.0 / 5.0));
  CHECK(sol.x[0] == doctest::Approx(8.0 / 5.0));
  CHECK(sol.x[1] == doctest::Approx(6.0 / 5.0));
}

TEST_CASE("redundant and degenerate rows") {
  // duplicated constraints meet at the same optimum
  auto sol = simplex::minimize_geq(
      {{1.0, 1.0}, {1.0, 1.0}, {2.0, 2.0}, {1.0, 0.0}},
      {2.0, 2.0, 4.0, 0.5}, {1.0, 3.0});
  REQUIRE(sol.status == simplex::Status::optimal);
  CHECK(sol.objective == doctest::Approx(2.0));  // all mass on x0
  CHECK(sol.x[0] == doctest::Approx(2.0));
}

TEST_CASE("infeasible problem is reported") {
  // -x >= 1 with x >= 0
  auto sol = simplex::minimize_geq({{-1.0}}, {1.0}, {1.0});
  CHECK(sol.status == simplex::Status::infeasible);
}

TEST_CASE("unbounded problem is reported") {
  // min -x s.t. x >= 0 (no upper bound)
  auto sol = simplex::minimize_geq({{1.0}}, {0.0}, {-1.0});
  CHECK(sol.status == simplex::Status::unbounded);
}

TEST_CASE("no rows means origin is optimal") {
  auto sol = simplex::minimize_geq({}, {}, {1.0, 1.0});
  REQUIRE(sol.status == simplex::Status::optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("moderate random problems match a brute-force vertex search") {
  // minimize c.x over {Ax >= b, x >= 0} in 2-3 variables; enumerate all basic
  // solutions as the oracle
  std::uint64_t state = 12345;
  auto next = [&] {
    state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
    return (state * 0x2545F4914F6CDD1Dull >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2, m = 3;  // vertex enumeration below is exact for n = 2
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : A)
      for (auto& v : row) v = 0.2 + next();  // positive coefficients: bounded, feasible
    for (auto& v : b) v = next() * 2.0;
    for (auto& v : c) v = 0.1 + next();
    auto sol = simplex::minimize_geq(A, b, c);
    REQUIRE(sol.status == simplex::Status::optimal);
    // oracle: scan candidate vertices from all constraint/axis intersections
    double best = 1e18;
    auto consider = [&](const std::vector<double>& x) {
      for (double v : x)
        if (!(v >= -1e-9)) return;
      for (std::size_t i = 0; i < m; ++i) {
        double lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * x[j];
        if (lhs < b[i] - 1e-9) return;
      }
      double obj = 0;
      for (std::size_t j = 0; j < n; ++j) obj += c[j] * x[j];
      best = std::min(best, obj);
    };
    // axis-aligned candidates: one variable carries each constraint alone
    for (std::size_t j = 0; j < n; ++j) {
      double need = 0.0;
      for (std::size_t i = 0; i < m; ++i) need = std::max(need, b[i] / A[i][j]);
      std::vector<double> x(n, 0.0);
      x[j] = need;
      consider(x);
    }
    // pairwise intersections of two active constraints in two active variables
    for (std::size_t j0 = 0; j0 < n; ++j0)
      for (std::size_t j1 = j0 + 1; j1 < n; ++j1)
        for (std::size_t i0 = 0; i0 < m; ++i0)
          for (std::size_t i1 = 0; i1 < m; ++i1) {
            if (i0 == i1) continue;
            double det = A[i0][j0] * A[i1][j1] - A[i0][j1] * A[i1][j0];
            if (std::abs(det) < 1e-12) continue;
            std::vector<double> x(n, 0.0);
            x[j0] = (b[i0] * A[i1][j1] - A[i0][j1] * b[i1]) / det;
            x[j1] = (A[i0][j0] * b[i1] - b[i0] * A[i1][j0]) / det;
            consider(x);
          }
    CHECK(sol.objective == doctest::Approx(best).epsilon(1e-6));
  }
}

TEST_CASE("three-variable problems return feasible optima no worse than sampling") {
  std::uint64_t state = 777;
  auto next = [&] {
    state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
    return (state * 0x2545F4914F6CDD1Dull >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3, m = 4;
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m), c(n);
    for (auto& row : A)
      for (auto& v : row) v = 0.2 + next();
    for (auto& v : b) v = next() * 2.0;
    for (auto& v : c) v = 0.1 + next();
    auto sol = simplex::minimize_geq(A, b, c);
    REQUIRE(sol.status == simplex::Status::optimal);
    for (double v : sol.x) CHECK(v >= -1e-9);
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += A[i][j] * sol.x[j];
      CHECK(lhs >= b[i] - 1e-7);
    }
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * sol.x[j];
    CHECK(sol.objective == doctest::Approx(obj).epsilon(1e-9));
    // no single-variable candidate beats the reported optimum
    for (std::size_t j = 0; j < n; ++j) {
      double need = 0.0;
      for (std::size_t i = 0; i < m; ++i) need = std::max(need, b[i] / A[i][j]);
      CHECK(sol.objective <= c[j] * need + 1e-7);
    }
  }
}

}  // TEST_SUITE
