#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "idsolve/digraph.hpp"

namespace idsolve {

/// Capacitated directed network with synthetic source and sink.
/// Capacities are nonnegative reals; infinity marks uncuttable arcs.
class FlowNetwork {
 public:
  struct Arc {
    int to;
    double cap;
    double flow = 0.0;
    int rev;  // index of the reverse arc in adj_[to]
  };

  explicit FlowNetwork(int n = 0) : adj_(n) {}

  int add_node() {
    adj_.emplace_back();
    return static_cast<int>(adj_.size()) - 1;
  }
  int num_nodes() const { return static_cast<int>(adj_.size()); }

  void add_arc(int from, int to, double cap) {
    if (cap < 0.0) throw std::invalid_argument("FlowNetwork: negative capacity");
    adj_[from].push_back({to, cap, 0.0, static_cast<int>(adj_[to].size())});
    adj_[to].push_back({from, 0.0, 0.0, static_cast<int>(adj_[from].size()) - 1});
  }

  int source = -1;
  int sink = -1;

  std::vector<std::vector<Arc>>& adj() { return adj_; }
  const std::vector<std::vector<Arc>>& adj() const { return adj_; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

struct MaxFlowResult {
  double value = 0.0;
  IdSet min_cut_source_side;  // residual-reachable from the source
  IdSet sink_reaching;        // nodes that can reach the sink in the residual
};

/// Edmonds-Karp (shortest augmenting paths). Arcs are explored in insertion
/// order, so callers that insert arcs in ascending node-id order get fully
/// deterministic augmentation. An infinite augmenting path yields an
/// infinite value (no finite cut).
inline MaxFlowResult max_flow(FlowNetwork net) {
  const double INF = std::numeric_limits<double>::infinity();
  auto& adj = net.adj();

  MaxFlowResult res;
  const int n = net.num_nodes();
  std::vector<int> prev_node(n), prev_arc(n);
  while (true) {
    std::fill(prev_node.begin(), prev_node.end(), -1);
    prev_node[static_cast<std::size_t>(net.source)] = net.source;
    std::queue<int> q;
    q.push(net.source);
    while (!q.empty() && prev_node[static_cast<std::size_t>(net.sink)] < 0) {
      int u = q.front();
      q.pop();
      const auto& as = adj[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& a = as[i];
        if (a.cap - a.flow > 0.0 && prev_node[static_cast<std::size_t>(a.to)] < 0) {
          prev_node[static_cast<std::size_t>(a.to)] = u;
          prev_arc[static_cast<std::size_t>(a.to)] = static_cast<int>(i);
          q.push(a.to);
        }
      }
    }
    if (prev_node[static_cast<std::size_t>(net.sink)] < 0) break;
    double push = INF;
    for (int v = net.sink; v != net.source; v = prev_node[static_cast<std::size_t>(v)]) {
      const auto& a = adj[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                         [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
      push = std::min(push, a.cap - a.flow);
    }
    if (push == INF) {  // no finite cut separates source from sink
      res.value = INF;
      return res;
    }
    for (int v = net.sink; v != net.source; v = prev_node[static_cast<std::size_t>(v)]) {
      auto& a = adj[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                   [static_cast<std::size_t>(prev_arc[static_cast<std::size_t>(v)])];
      a.flow += push;
      adj[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].flow -= push;
    }
    res.value += push;
  }

  // source side: forward residual reachability
  {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(net.source)] = 1;
    q.push(net.source);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      res.min_cut_source_side.push_back(u);
      for (const auto& a : adj[static_cast<std::size_t>(u)])
        if (a.cap - a.flow > 0.0 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          q.push(a.to);
        }
    }
    res.min_cut_source_side = make_set(std::move(res.min_cut_source_side));
  }
  // sink side: nodes that can reach the sink through residual arcs
  {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    seen[static_cast<std::size_t>(net.sink)] = 1;
    q.push(net.sink);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      res.sink_reaching.push_back(u);
      // arc w->u with residual => w can reach sink; scan reverse arcs of u
      for (const auto& a : adj[static_cast<std::size_t>(u)]) {
        const auto& back = adj[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)];
        if (back.cap - back.flow > 0.0 && !seen[static_cast<std::size_t>(a.to)]) {
          seen[static_cast<std::size_t>(a.to)] = 1;
          q.push(a.to);
        }
      }
    }
    res.sink_reaching = make_set(std::move(res.sink_reaching));
  }
  return res;
}

struct SeparatorResult {
  bool feasible = false;
  IdSet separator;  // includes the fixed nodes
};

/// Minimum-cardinality node set S (forced to contain `fixed`) whose removal
/// disconnects A from B in g. Menger node splitting: each removable node
/// becomes an in->out arc of capacity 1; fixed nodes get capacity 0 (forced
/// into every cut at no cost); members of A, B and `unremovable` cannot be
/// cut. Among minimum separators, returns the one closest to B (sink-side
/// canonical cut).
inline SeparatorResult min_separating_set(const UGraph& g, const IdSet& A, const IdSet& B,
                                          const IdSet& fixed, const IdSet& unremovable = {}) {
  if (!set_intersect(A, B).empty())
    throw std::invalid_argument("min_separating_set: A and B overlap");
  if (!set_intersect(fixed, set_union(A, B)).empty())
    throw std::invalid_argument("min_separating_set: fixed overlaps A or B");

  const double INF = std::numeric_limits<double>::infinity();
  const int n = g.num_nodes();
  FlowNetwork net(2 * n + 2);
  net.source = 2 * n;
  net.sink = 2 * n + 1;
  auto vin = [](int v) { return 2 * v; };
  auto vout = [](int v) { return 2 * v + 1; };

  for (int v = 0; v < n; ++v) {
    double cap = 1.0;
    if (set_contains(fixed, v))
      cap = 0.0;
    else if (set_contains(A, v) || set_contains(B, v) || set_contains(unremovable, v))
      cap = INF;
    net.add_arc(vin(v), vout(v), cap);
  }
  for (int v = 0; v < n; ++v) {
    IdSet nb = make_set(g.neighbors(v));
    for (int w : nb) net.add_arc(vout(v), vin(w), INF);  // both directions arise from symmetry
  }
  for (int a : A) net.add_arc(net.source, vout(a), INF);
  for (int b : B) net.add_arc(vin(b), net.sink, INF);

  auto mf = max_flow(std::move(net));
  SeparatorResult out;
  if (mf.value == INF) return out;  // infeasible: A-B connected through unremovable nodes
  out.feasible = true;
  // Sink-side canonical cut: saturated split arcs crossing into the
  // sink-reaching residual set.
  for (int v = 0; v < n; ++v) {
    bool in_T = set_contains(mf.sink_reaching, vin(v));
    bool out_T = set_contains(mf.sink_reaching, vout(v));
    if (!in_T && out_T) out.separator.push_back(v);
  }
  out.separator = make_set(set_union(out.separator, fixed));
  return out;
}

}  // namespace idsolve
