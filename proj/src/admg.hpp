#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cda {

enum class VarRole { context, system };

constexpr std::uint64_t var_bit(int v) { return std::uint64_t{1} << v; }

std::uint64_t mask_of(const std::vector<int>& vars);
std::vector<int> mask_to_vars(std::uint64_t mask);

/// Pairwise conditional-independence statement (a, b | cond).
/// Invariants: a != b, neither endpoint is in cond.
struct SeparationQuery {
  int a = -1;
  int b = -1;
  std::uint64_t cond = 0;  // bitmask of conditioning variables

  friend bool operator==(const SeparationQuery&, const SeparationQuery&) = default;
};

SeparationQuery make_query(int a, int b, const std::vector<int>& cond = {});

/// JCI background knowledge plus the task-specific ban on a direct
/// C1 -> Y edge. Variable indices refer to the graph universe, where
/// context variables come first.
struct JciBackground {
  int c1 = 0;  // source/target domain indicator (context role)
  int y = -1;  // target variable (system role)
  bool forbid_c1_to_y = true;
  bool exogeneity = true;     // no system -> context edge
  bool randomization = true;  // no system <-> context edge
  bool genericity = true;     // every context pair purely confounded
};

/// Acyclic directed mixed graph over a universe of context variables
/// (indices 0..n_context-1) followed by system variables. A directed and
/// a bidirected edge may coexist between the same pair of nodes.
class Admg {
 public:
  Admg(int n_context, int n_system, std::vector<std::pair<int, int>> directed,
       std::vector<std::pair<int, int>> bidirected);

  int n() const { return n_context_ + n_system_; }
  int n_context() const { return n_context_; }
  int n_system() const { return n_system_; }
  VarRole role(int v) const { return v < n_context_ ? VarRole::context : VarRole::system; }

  const std::vector<std::pair<int, int>>& directed() const { return directed_; }
  const std::vector<std::pair<int, int>>& bidirected() const { return bidirected_; }

  bool has_directed(int tail, int head) const;
  bool has_bidirected(int a, int b) const;

  std::uint64_t parents_of(int v) const { return parents_[v]; }
  std::uint64_t children_of(int v) const { return children_[v]; }
  std::uint64_t siblings_of(int v) const { return siblings_[v]; }

  friend bool operator==(const Admg&, const Admg&) = default;

 private:
  int n_context_ = 0;
  int n_system_ = 0;
  std::vector<std::pair<int, int>> directed_;    // sorted (tail, head)
  std::vector<std::pair<int, int>> bidirected_;  // sorted (min, max)
  std::vector<std::uint64_t> parents_, children_, siblings_;
};

/// True iff the directed relation admits a topological order.
bool is_acyclic(const std::vector<std::pair<int, int>>& directed, int n);

/// m-separation of q.a and q.b given q.cond, decided by d-separation in the
/// canonical DAG where each bidirected edge is replaced by a fresh latent
/// node with two outgoing edges.
bool m_separated(const Admg& g, const SeparationQuery& q);

bool satisfies_background(const Admg& g, const JciBackground& bg);

/// Free edge slots admitted by a background over a fixed universe. Slot
/// order is (tail, head) ascending for directed and (min, max) ascending
/// for bidirected edges; it defines the enumeration bitmask layout.
struct EdgeSpace {
  int n_context = 0;
  int n_system = 0;
  std::vector<std::pair<int, int>> directed_slots;
  std::vector<std::pair<int, int>> optional_bidirected_slots;
  std::vector<std::pair<int, int>> forced_bidirected;

  static EdgeSpace build(int n_context, int n_system, const JciBackground& bg);
};

/// Yields every background-satisfying ADMG over the universe exactly once,
/// in lexicographic order of (directed bitmask, bidirected bitmask).
class AdmgEnumerator {
 public:
  AdmgEnumerator(int n_context, int n_system, const JciBackground& bg, int cap = 7);

  std::optional<Admg> next();

  /// Bitmasks of the next graph over the space's slots, without building it.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> next_masks();
  Admg materialize(std::uint64_t dir_mask, std::uint64_t bid_mask) const;

  const EdgeSpace& space() const { return space_; }

 private:
  bool directed_mask_acyclic(std::uint64_t mask) const;
  void seek_acyclic();

  EdgeSpace space_;
  JciBackground bg_;
  std::uint64_t dir_mask_ = 0;
  std::uint64_t bid_mask_ = 0;
  bool done_ = false;
};

std::vector<Admg> enumerate_admgs(int n_context, int n_system, const JciBackground& bg,
                                  int cap = 7);

/// Every separation statement with |cond| <= max_cond and its truth value,
/// in a fixed order (a asc, b asc, cond mask asc).
std::vector<std::pair<SeparationQuery, bool>> implied_statements(const Admg& g, int max_cond);

namespace detail {

/// Canonical DAG of an ADMG: observed nodes 0..n-1 plus one latent per
/// bidirected edge. Adjacency as bitmasks; at most 64 nodes total.
struct CanonicalDag {
  int n_observed = 0;
  int m = 0;
  std::uint64_t parents[64] = {};
  std::uint64_t children[64] = {};

  void add_edge(int tail, int head) {
    children[tail] |= var_bit(head);
    parents[head] |= var_bit(tail);
  }
  void add_latent_for(int a, int b) {
    add_edge(m, a);
    add_edge(m, b);
    ++m;
  }
};

CanonicalDag canonical_dag(const Admg& g);

/// Reachability-based d-separation on a canonical DAG.
bool d_separated_dag(const CanonicalDag& dag, int a, int b, std::uint64_t cond);

}  // namespace detail

}  // namespace cda
