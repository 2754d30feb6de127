#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "admg.hpp"
#include "stats.hpp"

namespace cda {

/// Signed support for a separation statement: the minimum loss over
/// hypothesis graphs where the statement fails, minus the minimum over
/// graphs where it holds. Positive means the statement is supported.
struct Confidence {
  double value = 0.0;
  double min_loss_true = std::numeric_limits<double>::infinity();
  double min_loss_false = std::numeric_limits<double>::infinity();
};

/// Sum of weights of the constraints the graph violates.
double graph_loss(const Admg& g, const std::vector<WeightedConstraint>& constraints);

/// Enumerates the background-satisfying hypothesis space once, scores every
/// graph against a fixed constraint set, and answers confidence queries.
/// Queries share the cached per-graph losses, so evaluating many candidate
/// subsets against the same evidence costs one enumeration.
class ConfidenceEngine {
 public:
  ConfidenceEngine(int n_context, int n_system, const JciBackground& bg,
                   const std::vector<WeightedConstraint>& constraints, int cap = 7);

  Confidence query(const SeparationQuery& q) const;
  std::size_t space_size() const { return graphs_.size(); }

 private:
  struct Scored {
    std::uint32_t dir = 0;
    std::uint32_t bid = 0;
    double loss = 0.0;
  };

  void build_dag(std::uint32_t dir, std::uint32_t bid, detail::CanonicalDag& dag) const;

  EdgeSpace space_;
  int n_ = 0;
  std::vector<Scored> graphs_;
};

/// One-shot confidence query over a fresh enumeration.
Confidence query_confidence(const SeparationQuery& q,
                            const std::vector<WeightedConstraint>& constraints,
                            const JciBackground& bg, int n_context, int n_system, int cap = 7);

}  // namespace cda
