#include "admg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

#include "errors.hpp"

namespace cda {

std::uint64_t mask_of(const std::vector<int>& vars) {
  std::uint64_t m = 0;
  for (int v : vars) {
    if (v < 0 || v >= 64) throw std::invalid_argument("variable index out of range: " + std::to_string(v));
    m |= var_bit(v);
  }
  return m;
}

std::vector<int> mask_to_vars(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

SeparationQuery make_query(int a, int b, const std::vector<int>& cond) {
  return SeparationQuery{a, b, mask_of(cond)};
}

namespace {

void check_index(int v, int n, const char* what) {
  if (v < 0 || v >= n)
    throw std::invalid_argument(std::string(what) + " index out of range: " + std::to_string(v));
}

void validate_query(const SeparationQuery& q, int n) {
  check_index(q.a, n, "query endpoint");
  check_index(q.b, n, "query endpoint");
  if (q.a == q.b) throw std::invalid_argument("query endpoints must differ");
  if (q.cond >> n) throw std::invalid_argument("conditioning set references unknown variable");
  if (q.cond & (var_bit(q.a) | var_bit(q.b)))
    throw std::invalid_argument("query endpoint may not appear in the conditioning set");
}

}  // namespace

Admg::Admg(int n_context, int n_system, std::vector<std::pair<int, int>> directed,
           std::vector<std::pair<int, int>> bidirected)
    : n_context_(n_context), n_system_(n_system) {
  if (n_context < 0 || n_system < 0 || n() > 64)
    throw std::invalid_argument("unsupported universe size");
  for (auto& [t, h] : directed) {
    check_index(t, n(), "edge tail");
    check_index(h, n(), "edge head");
    if (t == h) throw std::invalid_argument("self-loop in directed edges");
  }
  for (auto& [a, b] : bidirected) {
    check_index(a, n(), "edge endpoint");
    check_index(b, n(), "edge endpoint");
    if (a == b) throw std::invalid_argument("self-loop in bidirected edges");
    if (a > b) std::swap(a, b);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());
  std::sort(bidirected.begin(), bidirected.end());
  bidirected.erase(std::unique(bidirected.begin(), bidirected.end()), bidirected.end());
  if (!is_acyclic(directed, n())) throw std::invalid_argument("directed subgraph has a cycle");

  directed_ = std::move(directed);
  bidirected_ = std::move(bidirected);
  parents_.assign(n(), 0);
  children_.assign(n(), 0);
  siblings_.assign(n(), 0);
  for (auto [t, h] : directed_) {
    children_[t] |= var_bit(h);
    parents_[h] |= var_bit(t);
  }
  for (auto [a, b] : bidirected_) {
    siblings_[a] |= var_bit(b);
    siblings_[b] |= var_bit(a);
  }
}

bool Admg::has_directed(int tail, int head) const {
  check_index(tail, n(), "edge tail");
  check_index(head, n(), "edge head");
  return (children_[tail] & var_bit(head)) != 0;
}

bool Admg::has_bidirected(int a, int b) const {
  check_index(a, n(), "edge endpoint");
  check_index(b, n(), "edge endpoint");
  return (siblings_[a] & var_bit(b)) != 0;
}

bool is_acyclic(const std::vector<std::pair<int, int>>& directed, int n) {
  if (n < 0 || n > 64) throw std::invalid_argument("unsupported node count");
  std::array<std::uint64_t, 64> parents{};
  for (auto [t, h] : directed) {
    check_index(t, n, "edge tail");
    check_index(h, n, "edge head");
    parents[h] |= var_bit(t);
  }
  std::uint64_t alive = (n == 64) ? ~std::uint64_t{0} : (var_bit(n) - 1);
  while (alive) {
    std::uint64_t removable = 0;
    for (std::uint64_t rest = alive; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if ((parents[v] & alive) == 0) removable |= var_bit(v);
    }
    if (!removable) return false;
    alive &= ~removable;
  }
  return true;
}

namespace detail {

CanonicalDag canonical_dag(const Admg& g) {
  if (g.n() + static_cast<int>(g.bidirected().size()) > 64)
    throw std::invalid_argument("graph too large for separation queries");
  CanonicalDag dag;
  dag.n_observed = g.n();
  dag.m = g.n();
  for (auto [t, h] : g.directed()) dag.add_edge(t, h);
  for (auto [a, b] : g.bidirected()) dag.add_latent_for(a, b);
  return dag;
}

bool d_separated_dag(const CanonicalDag& dag, int a, int b, std::uint64_t cond) {
  // ancestors of the conditioning set, including the set itself
  std::uint64_t anc = cond;
  for (std::uint64_t frontier = cond; frontier;) {
    int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    std::uint64_t fresh = dag.parents[v] & ~anc;
    anc |= fresh;
    frontier |= fresh;
  }

  // ball passing: state = (node, arrived-from-parent?)
  std::uint64_t vis_up = 0, vis_down = 0;
  std::array<std::uint16_t, 130> stack;
  int top = 0;
  auto push_up = [&](int v) {
    if (!(vis_up & var_bit(v))) {
      vis_up |= var_bit(v);
      stack[top++] = static_cast<std::uint16_t>(v << 1);
    }
  };
  auto push_down = [&](int v) {
    if (!(vis_down & var_bit(v))) {
      vis_down |= var_bit(v);
      stack[top++] = static_cast<std::uint16_t>((v << 1) | 1);
    }
  };
  auto push_all = [&](std::uint64_t mask, auto&& push) {
    while (mask) {
      push(std::countr_zero(mask));
      mask &= mask - 1;
    }
  };

  push_up(a);
  while (top) {
    std::uint16_t s = stack[--top];
    int v = s >> 1;
    bool from_parent = s & 1;
    if (v == b) return false;
    if (!from_parent) {
      if (cond & var_bit(v)) continue;
      push_all(dag.parents[v], push_up);
      push_all(dag.children[v], push_down);
    } else {
      if (!(cond & var_bit(v))) push_all(dag.children[v], push_down);
      if (anc & var_bit(v)) push_all(dag.parents[v], push_up);
    }
  }
  return true;
}

}  // namespace detail

bool m_separated(const Admg& g, const SeparationQuery& q) {
  validate_query(q, g.n());
  return detail::d_separated_dag(detail::canonical_dag(g), q.a, q.b, q.cond);
}

namespace {

void validate_background(const JciBackground& bg, int n_context, int n_system) {
  if (bg.c1 < 0 || bg.c1 >= n_context)
    throw std::invalid_argument("background c1 must be a context variable");
  if (bg.forbid_c1_to_y &&
      (bg.y < n_context || bg.y >= n_context + n_system))
    throw std::invalid_argument("background y must be a system variable");
}

}  // namespace

bool satisfies_background(const Admg& g, const JciBackground& bg) {
  validate_background(bg, g.n_context(), g.n_system());
  for (auto [t, h] : g.directed()) {
    if (bg.exogeneity && g.role(t) == VarRole::system && g.role(h) == VarRole::context)
      return false;
    if (bg.genericity && g.role(t) == VarRole::context && g.role(h) == VarRole::context)
      return false;
    if (bg.forbid_c1_to_y && t == bg.c1 && h == bg.y) return false;
  }
  for (auto [a, b] : g.bidirected()) {
    if (bg.randomization && g.role(a) != g.role(b)) return false;
  }
  if (bg.genericity) {
    for (int i = 0; i < g.n_context(); ++i)
      for (int j = i + 1; j < g.n_context(); ++j)
        if (!g.has_bidirected(i, j)) return false;
  }
  return true;
}

EdgeSpace EdgeSpace::build(int n_context, int n_system, const JciBackground& bg) {
  validate_background(bg, n_context, n_system);
  EdgeSpace es;
  es.n_context = n_context;
  es.n_system = n_system;
  const int n = n_context + n_system;
  auto role = [&](int v) { return v < n_context ? VarRole::context : VarRole::system; };
  for (int t = 0; t < n; ++t)
    for (int h = 0; h < n; ++h) {
      if (t == h) continue;
      if (bg.exogeneity && role(t) == VarRole::system && role(h) == VarRole::context) continue;
      if (bg.genericity && role(t) == VarRole::context && role(h) == VarRole::context) continue;
      if (bg.forbid_c1_to_y && t == bg.c1 && h == bg.y) continue;
      es.directed_slots.emplace_back(t, h);
    }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool both_context = role(a) == VarRole::context && role(b) == VarRole::context;
      if (bg.genericity && both_context) {
        es.forced_bidirected.emplace_back(a, b);
        continue;
      }
      if (bg.randomization && role(a) != role(b)) continue;
      es.optional_bidirected_slots.emplace_back(a, b);
    }
  return es;
}

AdmgEnumerator::AdmgEnumerator(int n_context, int n_system, const JciBackground& bg, int cap)
    : space_(EdgeSpace::build(n_context, n_system, bg)), bg_(bg) {
  if (n_context + n_system > cap)
    throw std::invalid_argument("universe exceeds enumeration cap of " + std::to_string(cap));
  if (space_.directed_slots.size() >= 63 || space_.optional_bidirected_slots.size() >= 63)
    throw std::invalid_argument("edge slot count too large to enumerate");
  seek_acyclic();  // mask 0 is always acyclic, but keep one code path
}

bool AdmgEnumerator::directed_mask_acyclic(std::uint64_t mask) const {
  const int n = space_.n_context + space_.n_system;
  std::array<std::uint64_t, 64> parents{};
  for (std::size_t i = 0; i < space_.directed_slots.size(); ++i)
    if (mask & (std::uint64_t{1} << i))
      parents[space_.directed_slots[i].second] |= var_bit(space_.directed_slots[i].first);
  std::uint64_t alive = var_bit(n) - 1;
  while (alive) {
    std::uint64_t removable = 0;
    for (std::uint64_t rest = alive; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if ((parents[v] & alive) == 0) removable |= var_bit(v);
    }
    if (!removable) return false;
    alive &= ~removable;
  }
  return true;
}

void AdmgEnumerator::seek_acyclic() {
  const std::uint64_t dir_end = std::uint64_t{1} << space_.directed_slots.size();
  while (dir_mask_ < dir_end && !directed_mask_acyclic(dir_mask_)) ++dir_mask_;
  if (dir_mask_ >= dir_end) done_ = true;
}

std::optional<Admg> AdmgEnumerator::next() {
  if (done_) return std::nullopt;

  std::vector<std::pair<int, int>> directed;
  for (std::size_t i = 0; i < space_.directed_slots.size(); ++i)
    if (dir_mask_ & (std::uint64_t{1} << i)) directed.push_back(space_.directed_slots[i]);
  std::vector<std::pair<int, int>> bidirected = space_.forced_bidirected;
  for (std::size_t i = 0; i < space_.optional_bidirected_slots.size(); ++i)
    if (bid_mask_ & (std::uint64_t{1} << i))
      bidirected.push_back(space_.optional_bidirected_slots[i]);
  Admg g(space_.n_context, space_.n_system, std::move(directed), std::move(bidirected));

  const std::uint64_t bid_end = std::uint64_t{1} << space_.optional_bidirected_slots.size();
  if (++bid_mask_ >= bid_end) {
    bid_mask_ = 0;
    ++dir_mask_;
    seek_acyclic();
  }
  return g;
}

std::vector<Admg> enumerate_admgs(int n_context, int n_system, const JciBackground& bg,
                                  int cap) {
  AdmgEnumerator e(n_context, n_system, bg, cap);
  std::vector<Admg> out;
  while (auto g = e.next()) out.push_back(std::move(*g));
  return out;
}

std::vector<std::pair<SeparationQuery, bool>> implied_statements(const Admg& g, int max_cond) {
  std::vector<std::pair<SeparationQuery, bool>> out;
  const int n = g.n();
  auto dag = detail::canonical_dag(g);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<int> rest;
      for (int v = 0; v < n; ++v)
        if (v != a && v != b) rest.push_back(v);
      const std::uint64_t end = std::uint64_t{1} << rest.size();
      for (std::uint64_t sub = 0; sub < end; ++sub) {
        if (std::popcount(sub) > max_cond) continue;
        std::uint64_t cond = 0;
        for (std::size_t i = 0; i < rest.size(); ++i)
          if (sub & (std::uint64_t{1} << i)) cond |= var_bit(rest[i]);
        out.emplace_back(SeparationQuery{a, b, cond},
                         detail::d_separated_dag(dag, a, b, cond));
      }
    }
  return out;
}

}  // namespace cda
