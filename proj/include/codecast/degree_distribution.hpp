#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "codecast/errors.hpp"

namespace codecast {

/// Probability distribution over packet degrees 1..dmax, i.e. the
/// coefficients of the generating polynomial P(x) = p_1 x + p_2 x^2 + ...
class DegreeDistribution {
 public:
  /// probs[0] is the probability of degree 1. Probabilities must be
  /// nonnegative and sum to 1 within 1e-9.
  explicit DegreeDistribution(std::vector<double> probs)
      : probs_(std::move(probs)) {
    if (probs_.empty()) throw usage_error("DegreeDistribution: empty");
    double sum = 0.0;
    for (double p : probs_) {
      if (!(p >= 0.0)) throw usage_error("DegreeDistribution: negative probability");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw usage_error("DegreeDistribution: probabilities must sum to 1");
  }

  static DegreeDistribution point_mass(std::size_t degree) {
    if (degree == 0) throw usage_error("DegreeDistribution: degree 0");
    std::vector<double> p(degree, 0.0);
    p[degree - 1] = 1.0;
    return DegreeDistribution(std::move(p));
  }

  /// Build from nonnegative weights, normalizing to sum 1.
  static DegreeDistribution normalized(std::vector<double> weights) {
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw usage_error("DegreeDistribution: negative weight");
      sum += w;
    }
    if (!(sum > 0.0)) throw usage_error("DegreeDistribution: zero total weight");
    for (double& w : weights) w /= sum;
    // make the sum exactly 1 against accumulated rounding
    double s2 = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= s2;
    return DegreeDistribution(std::move(weights));
  }

  std::size_t max_degree() const { return probs_.size(); }

  double prob(std::size_t degree) const {
    return (degree >= 1 && degree <= probs_.size()) ? probs_[degree - 1] : 0.0;
  }

  const std::vector<double>& probs() const { return probs_; }

  /// P(x) by Horner evaluation.
  double pgf(double x) const {
    double acc = 0.0;
    for (std::size_t j = probs_.size(); j >= 1; --j) acc = acc * x + probs_[j - 1];
    return acc * x;
  }

  /// P'(x) = sum_j j p_j x^(j-1); x must lie in [0, 1].
  double pgf_prime(double x) const {
    if (x < 0.0 || x > 1.0)
      throw usage_error("DegreeDistribution: derivative evaluated outside [0,1]");
    double acc = 0.0;
    for (std::size_t j = probs_.size(); j >= 1; --j)
      acc = acc * x + static_cast<double>(j) * probs_[j - 1];
    return acc;
  }

  double mean_degree() const {
    double m = 0.0;
    for (std::size_t j = 1; j <= probs_.size(); ++j)
      m += static_cast<double>(j) * probs_[j - 1];
    return m;
  }

 private:
  std::vector<double> probs_;
};

}  // namespace codecast
