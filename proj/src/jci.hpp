#pragma once

#include <vector>

#include "admg.hpp"
#include "dataset.hpp"
#include "stats.hpp"

namespace cda {

/// How a candidate statement (a, b | S) is handled given the task:
///   pooled     - Y not involved; testable on all rows as stated.
///   lifted     - Y involved, C1 not; testable on source rows only, and the
///                source-domain fact equals the graph statement
///                (a, b | S + {C1}).
///   untestable - both Y and C1 involved; Y is unobserved where C1 = 1.
enum class StatementKind { pooled, lifted, untestable };

StatementKind classify_statement(const SeparationQuery& q, int c1, int y);

struct StatementPlan {
  SeparationQuery test;     // statement evaluated on data
  SeparationQuery emitted;  // statement handed to the solver
  StatementKind kind = StatementKind::pooled;
};

/// All testable statements over n_vars with |S| <= max_cond, in a fixed
/// order. Untestable statements are omitted.
std::vector<StatementPlan> plan_statements(int n_vars, int c1, int y, int max_cond);

/// All statements are used when max_cond is n_vars - 2.
int default_max_cond(int n_vars);

/// Weighted constraints for the solver: pooled tests on all rows, lifted
/// tests on source rows only. Statements with singular covariance are
/// skipped. Output is sorted by emitted statement.
std::vector<WeightedConstraint> generate_constraints(const DomainDataset& ds, double alpha,
                                                     int max_cond = -1);

/// Same statement selection, with polarities read off a ground-truth graph
/// and all weights hard (+inf).
std::vector<WeightedConstraint> oracle_constraints(const Admg& truth, const JciBackground& bg,
                                                   int max_cond = -1);

void sort_constraints(std::vector<WeightedConstraint>& cs);

}  // namespace cda
