#include "stats.hpp"

#include <stdexcept>
#include <string>

namespace cda {

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& rows) {
  const auto n = rows.rows();
  if (n < 2) throw std::invalid_argument("covariance needs at least two rows");
  Eigen::RowVectorXd mean = rows.colwise().mean();
  Eigen::MatrixXd centered = rows.rowwise() - mean;
  return (centered.adjoint() * centered) / static_cast<double>(n - 1);
}

std::optional<double> partial_correlation_cov(const Eigen::MatrixXd& cov, int x, int y,
                                              const std::vector<int>& S) {
  const int k = static_cast<int>(cov.rows());
  auto check = [&](int v) {
    if (v < 0 || v >= k) throw std::invalid_argument("column index out of range");
  };
  check(x);
  check(y);
  if (x == y) throw std::invalid_argument("columns must differ");
  for (int s : S) {
    check(s);
    if (s == x || s == y) throw std::invalid_argument("conditioning set overlaps the pair");
  }

  double cxx = cov(x, x), cyy = cov(y, y), cxy = cov(x, y);
  if (!S.empty()) {
    const int m = static_cast<int>(S.size());
    Eigen::MatrixXd css(m, m);
    Eigen::VectorXd csx(m), csy(m);
    for (int i = 0; i < m; ++i) {
      csx(i) = cov(S[i], x);
      csy(i) = cov(S[i], y);
      for (int j = 0; j < m; ++j) css(i, j) = cov(S[i], S[j]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(css);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::VectorXd wx = lu.solve(csx);
    Eigen::VectorXd wy = lu.solve(csy);
    cxx -= csx.dot(wx);
    cyy -= csy.dot(wy);
    cxy -= csx.dot(wy);
  }

  // residual variance relative to the marginal; catastrophically small
  // values mean x or y is determined by S and the statement is untestable
  const double rel = 1e-10;
  if (!(cxx > 0) || !(cyy > 0)) return std::nullopt;
  if (cxx < rel * cov(x, x) || cyy < rel * cov(y, y)) return std::nullopt;

  double r = cxy / std::sqrt(cxx * cyy);
  if (!std::isfinite(r)) return std::nullopt;
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> partial_correlation(const Eigen::MatrixXd& rows, int x, int y,
                                          const std::vector<int>& S) {
  if (rows.rows() <= static_cast<long>(S.size()) + 3)
    throw std::invalid_argument("insufficient rows: need more than |S| + 3 samples");
  std::vector<int> used{x, y};
  used.insert(used.end(), S.begin(), S.end());
  for (int c : used) {
    if (c < 0 || c >= rows.cols()) throw std::invalid_argument("column index out of range");
    if (rows.col(c).hasNaN())
      throw std::invalid_argument("missing values in tested column " + std::to_string(c));
  }
  return partial_correlation_cov(sample_covariance(rows), x, y, S);
}

double fisher_z_p(double r, int n, int cond_size) {
  if (cond_size < 0) throw std::invalid_argument("negative conditioning size");
  if (n <= cond_size + 3)
    throw std::invalid_argument("insufficient samples: need n > |S| + 3");
  if (std::abs(r) > 1.0 + 1e-9) throw std::invalid_argument("|r| must not exceed 1");
  double a = std::min(std::abs(r), 1.0 - 1e-12);
  double z = std::sqrt(static_cast<double>(n - cond_size - 3)) * std::atanh(a);
  // 2 * (1 - Phi(z)) without cancellation for large z
  return std::erfc(z / std::sqrt(2.0));
}

std::optional<CiTestResult> ci_test_cov(const Eigen::MatrixXd& cov, int n_rows, int x, int y,
                                        const std::vector<int>& S) {
  auto r = partial_correlation_cov(cov, x, y, S);
  if (!r) return std::nullopt;
  const int cond_size = static_cast<int>(S.size());
  return CiTestResult{*r, fisher_z_p(*r, n_rows, cond_size), n_rows, cond_size};
}

WeightedConstraint to_constraint(const SeparationQuery& q, double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-value outside [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0, 1)");
  bool independent = p >= alpha;
  double weight = std::abs(std::log(std::max(p, kPValueFloor)) - std::log(alpha));
  return WeightedConstraint{q, independent, weight};
}

}  // namespace cda
