#include "solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "errors.hpp"

namespace cda {

namespace {

void check_query(const SeparationQuery& q, int n) {
  if (q.a < 0 || q.a >= n || q.b < 0 || q.b >= n)
    throw std::invalid_argument("query variable not in the universe");
  if (q.a == q.b) throw std::invalid_argument("query endpoints must differ");
  if (q.cond >> n) throw std::invalid_argument("conditioning set references unknown variable");
  if (q.cond & (var_bit(q.a) | var_bit(q.b)))
    throw std::invalid_argument("query endpoint may not appear in the conditioning set");
}

double loss_on_dag(const detail::CanonicalDag& dag,
                   const std::vector<WeightedConstraint>& constraints) {
  double loss = 0.0;
  for (const auto& c : constraints) {
    bool sep = detail::d_separated_dag(dag, c.query.a, c.query.b, c.query.cond);
    if (sep != c.independent) {
      loss += c.weight;
      if (std::isinf(loss)) return loss;
    }
  }
  return loss;
}

}  // namespace

double graph_loss(const Admg& g, const std::vector<WeightedConstraint>& constraints) {
  for (const auto& c : constraints) check_query(c.query, g.n());
  return loss_on_dag(detail::canonical_dag(g), constraints);
}

ConfidenceEngine::ConfidenceEngine(int n_context, int n_system, const JciBackground& bg,
                                   const std::vector<WeightedConstraint>& constraints, int cap)
    : space_(EdgeSpace::build(n_context, n_system, bg)), n_(n_context + n_system) {
  for (const auto& c : constraints) check_query(c.query, n_);

  // hard constraints first so violated graphs short-circuit to +inf
  std::vector<WeightedConstraint> ordered = constraints;
  std::stable_partition(ordered.begin(), ordered.end(),
                        [](const WeightedConstraint& c) { return c.hard(); });

  AdmgEnumerator e(n_context, n_system, bg, cap);
  if (space_.directed_slots.size() > 32 || space_.optional_bidirected_slots.size() > 32)
    throw std::invalid_argument("hypothesis space too large to score");

  detail::CanonicalDag dag;
  std::uint64_t dir = 0, bid = 0;
  // re-drive the enumerator's mask sequence to store graphs compactly
  const std::uint64_t bid_end = std::uint64_t{1} << space_.optional_bidirected_slots.size();
  while (auto g = e.next()) {
    build_dag(static_cast<std::uint32_t>(dir), static_cast<std::uint32_t>(bid), dag);
    graphs_.push_back(Scored{static_cast<std::uint32_t>(dir), static_cast<std::uint32_t>(bid),
                             loss_on_dag(dag, ordered)});
    if (++bid >= bid_end) {
      bid = 0;
      ++dir;
      while (dir < (std::uint64_t{1} << space_.directed_slots.size())) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < space_.directed_slots.size(); ++i)
          if (dir & (std::uint64_t{1} << i)) edges.push_back(space_.directed_slots[i]);
        if (is_acyclic(edges, n_)) break;
        ++dir;
      }
    }
  }
  if (graphs_.empty()) throw DataError("hypothesis space is empty: background unsatisfiable");
}

void ConfidenceEngine::build_dag(std::uint32_t dir, std::uint32_t bid,
                                 detail::CanonicalDag& dag) const {
  dag = detail::CanonicalDag{};
  dag.n_observed = n_;
  dag.m = n_;
  for (std::size_t i = 0; i < space_.directed_slots.size(); ++i)
    if (dir & (std::uint32_t{1} << i))
      dag.add_edge(space_.directed_slots[i].first, space_.directed_slots[i].second);
  for (auto [a, b] : space_.forced_bidirected) dag.add_latent_for(a, b);
  for (std::size_t i = 0; i < space_.optional_bidirected_slots.size(); ++i)
    if (bid & (std::uint32_t{1} << i))
      dag.add_latent_for(space_.optional_bidirected_slots[i].first,
                         space_.optional_bidirected_slots[i].second);
}

Confidence ConfidenceEngine::query(const SeparationQuery& q) const {
  check_query(q, n_);
  Confidence c;
  detail::CanonicalDag dag;
  for (const auto& g : graphs_) {
    if (std::isinf(g.loss)) continue;  // cannot improve either class minimum
    build_dag(g.dir, g.bid, dag);
    bool sep = detail::d_separated_dag(dag, q.a, q.b, q.cond);
    double& slot = sep ? c.min_loss_true : c.min_loss_false;
    slot = std::min(slot, g.loss);
  }
  if (std::isinf(c.min_loss_true) && std::isinf(c.min_loss_false))
    c.value = 0.0;  // every graph violates a hard fact; no discrimination
  else
    c.value = c.min_loss_false - c.min_loss_true;
  return c;
}

Confidence query_confidence(const SeparationQuery& q,
                            const std::vector<WeightedConstraint>& constraints,
                            const JciBackground& bg, int n_context, int n_system, int cap) {
  return ConfidenceEngine(n_context, n_system, bg, constraints, cap).query(q);
}

}  // namespace cda
