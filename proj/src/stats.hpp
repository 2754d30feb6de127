#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "admg.hpp"

namespace cda {

/// Result of one conditional-independence test.
struct CiTestResult {
  double r = 0.0;    // partial correlation in [-1, 1]
  double p = 1.0;    // two-sided p-value
  int n = 0;         // samples used
  int cond_size = 0;
};

/// (In)dependence statement with a nonnegative weight; +inf marks a hard
/// fact from an oracle or background knowledge.
struct WeightedConstraint {
  SeparationQuery query;
  bool independent = true;
  double weight = 0.0;

  bool hard() const { return std::isinf(weight); }
  friend bool operator==(const WeightedConstraint&, const WeightedConstraint&) = default;
};

inline constexpr double kPValueFloor = 1e-16;

/// Covariance with denominator n-1. NaN cells poison exactly the entries
/// that touch them, which keeps masked columns out of reach.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows);

/// Sample partial correlation of columns x and y given S, from a covariance
/// matrix. Returns nullopt when the statement is untestable: singular
/// conditioning block, or (near-)zero residual variance of x or y given S.
/// The result is clamped to [-1, 1].
std::optional<double> partial_correlation_cov(const Eigen::MatrixXd& cov, int x, int y,
                                              const std::vector<int>& S);

/// Same, computed from raw data rows.
std::optional<double> partial_correlation(const Eigen::MatrixXd& rows, int x, int y,
                                          const std::vector<int>& S);

/// Two-sided p-value of the Fisher z statistic
/// z = sqrt(n - |S| - 3) * atanh(|r|), with |r| clamped below 1.
double fisher_z_p(double r, int n, int cond_size);

std::optional<CiTestResult> ci_test_cov(const Eigen::MatrixXd& cov, int n_rows, int x, int y,
                                        const std::vector<int>& S);

/// Polarity: independent iff p >= alpha. Weight: |log(max(p, floor)/alpha)|.
WeightedConstraint to_constraint(const SeparationQuery& q, double p, double alpha);

}  // namespace cda
