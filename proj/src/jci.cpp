#include "jci.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace cda {

StatementKind classify_statement(const SeparationQuery& q, int c1, int y) {
  std::uint64_t used = var_bit(q.a) | var_bit(q.b) | q.cond;
  bool has_y = (used & var_bit(y)) != 0;
  if (!has_y) return StatementKind::pooled;
  bool has_c1 = (used & var_bit(c1)) != 0;
  return has_c1 ? StatementKind::untestable : StatementKind::lifted;
}

std::vector<StatementPlan> plan_statements(int n_vars, int c1, int y, int max_cond) {
  if (max_cond < 0 || max_cond > n_vars - 2)
    throw std::invalid_argument("max_cond must be in [0, n_vars - 2]");
  std::vector<StatementPlan> out;
  for (int a = 0; a < n_vars; ++a)
    for (int b = a + 1; b < n_vars; ++b) {
      std::vector<int> rest;
      for (int v = 0; v < n_vars; ++v)
        if (v != a && v != b) rest.push_back(v);
      const std::uint64_t end = std::uint64_t{1} << rest.size();
      for (std::uint64_t sub = 0; sub < end; ++sub) {
        if (std::popcount(sub) > max_cond) continue;
        std::uint64_t cond = 0;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (sub & (std::uint64_t{1} << i)) cond |= var_bit(rest[i]);
        SeparationQuery q{a, b, cond};
        StatementKind kind = classify_statement(q, c1, y);
        if (kind == StatementKind::untestable) continue;
        SeparationQuery emitted = q;
        if (kind == StatementKind::lifted) emitted.cond |= var_bit(c1);
        out.push_back(StatementPlan{q, emitted, kind});
      }
    }
  return out;
}

int default_max_cond(int n_vars) { return n_vars - 2; }

void sort_constraints(std::vector<WeightedConstraint>& cs) {
  std::sort(cs.begin(), cs.end(), [](const WeightedConstraint& l, const WeightedConstraint& r) {
    return std::tie(l.query.a, l.query.b, l.query.cond) <
           std::tie(r.query.a, r.query.b, r.query.cond);
  });
}

std::vector<WeightedConstraint> generate_constraints(const DomainDataset& ds, double alpha,
                                                     int max_cond) {
  validate_task_dataset(ds);
  const int n_vars = ds.cols();
  if (max_cond < 0) max_cond = default_max_cond(n_vars);

  std::vector<int> src = ds.source_rows();
  const int n_pooled = ds.rows();
  const int n_source = static_cast<int>(src.size());
  if (n_source <= max_cond + 3)
    throw DataError("insufficient source rows: " + std::to_string(n_source) +
                    " for conditioning sets up to size " + std::to_string(max_cond));

  // Pooled covariance over every row: masked target cells are NaN and
  // poison exactly the entries involving Y, which pooled statements never
  // touch. Source covariance sees Y fully observed.
  Eigen::MatrixXd pooled_cov = sample_covariance(ds.values);
  Eigen::MatrixXd src_rows(n_source, n_vars);
  for (int i = 0; i < n_source; ++i) src_rows.row(i) = ds.values.row(src[i]);
  Eigen::MatrixXd source_cov = sample_covariance(src_rows);

  std::vector<WeightedConstraint> out;
  for (const auto& plan : plan_statements(n_vars, ds.c1_col, ds.y_col, max_cond)) {
    bool pooled = plan.kind == StatementKind::pooled;
    const Eigen::MatrixXd& cov = pooled ? pooled_cov : source_cov;
    auto res = ci_test_cov(cov, pooled ? n_pooled : n_source, plan.test.a, plan.test.b,
                           mask_to_vars(plan.test.cond));
    if (!res) continue;  // untestable under this data; no evidence emitted
    out.push_back(to_constraint(plan.emitted, res->p, alpha));
  }
  sort_constraints(out);
  return out;
}

std::vector<WeightedConstraint> oracle_constraints(const Admg& truth, const JciBackground& bg,
                                                   int max_cond) {
  const int n_vars = truth.n();
  if (max_cond < 0) max_cond = default_max_cond(n_vars);
  std::vector<WeightedConstraint> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& plan : plan_statements(n_vars, bg.c1, bg.y, max_cond)) {
    bool sep = m_separated(truth, plan.emitted);
    out.push_back(WeightedConstraint{plan.emitted, sep, inf});
  }
  sort_constraints(out);
  return out;
}

}  // namespace cda
