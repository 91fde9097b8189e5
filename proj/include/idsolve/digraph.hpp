#pragma once

#include <algorithm>
#include <array>
#include <queue>
#include <stdexcept>
#include <vector>

#include "idsolve/influence_diagram.hpp"

namespace idsolve {

/// Sorted, duplicate-free id set.
using IdSet = std::vector<int>;

inline IdSet make_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
inline bool set_contains(const IdSet& s, int x) {
  return std::binary_search(s.begin(), s.end(), x);
}
inline IdSet set_union(const IdSet& a, const IdSet& b) {
  IdSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
inline IdSet set_intersect(const IdSet& a, const IdSet& b) {
  IdSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}
inline IdSet set_minus(const IdSet& a, const IdSet& b) {
  IdSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

/// Directed graph over node ids 0..n-1. No self-loops.
class Digraph {
 public:
  explicit Digraph(int n = 0) : parents_(n), children_(n) {}

  int num_nodes() const { return static_cast<int>(parents_.size()); }

  void add_arc(int from, int to) {
    check(from);
    check(to);
    if (from == to) throw std::invalid_argument("Digraph: self-loop");
    if (std::find(children_[from].begin(), children_[from].end(), to) != children_[from].end())
      return;
    children_[from].push_back(to);
    parents_[to].push_back(from);
  }

  bool has_arc(int from, int to) const {
    check(from);
    return std::find(children_[from].begin(), children_[from].end(), to) != children_[from].end();
  }

  const std::vector<int>& parents(int v) const {
    check(v);
    return parents_[v];
  }
  const std::vector<int>& children(int v) const {
    check(v);
    return children_[v];
  }

  static Digraph from_diagram(const InfluenceDiagram& id) {
    Digraph g(id.num_vars());
    for (const auto& v : id.vars)
      for (int p : v.parents) g.add_arc(p, v.id);
    return g;
  }

 private:
  void check(int v) const {
    if (v < 0 || v >= num_nodes()) throw std::out_of_range("Digraph: unknown node");
  }
  std::vector<std::vector<int>> parents_, children_;
};

/// Undirected graph over node ids 0..n-1; symmetric adjacency, no self-loops.
class UGraph {
 public:
  explicit UGraph(int n = 0) : adj_(n) {}

  int num_nodes() const { return static_cast<int>(adj_.size()); }

  void add_edge(int a, int b) {
    check(a);
    check(b);
    if (a == b) throw std::invalid_argument("UGraph: self-loop");
    if (!has_edge(a, b)) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
  }

  bool has_edge(int a, int b) const {
    check(a);
    return std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end();
  }

  const std::vector<int>& neighbors(int v) const {
    check(v);
    return adj_[v];
  }

  /// Subgraph induced on `keep` (same node ids, edges outside dropped).
  UGraph induced(const IdSet& keep) const {
    UGraph g(num_nodes());
    for (int v : keep)
      for (int w : adj_[static_cast<std::size_t>(v)])
        if (w > v && set_contains(keep, w)) g.add_edge(v, w);
    return g;
  }

  /// True iff removing `removed` leaves no path between A and B.
  bool separates(const IdSet& removed, const IdSet& A, const IdSet& B) const {
    std::vector<char> blocked(adj_.size(), 0), seen(adj_.size(), 0);
    for (int v : removed) blocked[static_cast<std::size_t>(v)] = 1;
    std::queue<int> q;
    for (int a : A)
      if (!blocked[static_cast<std::size_t>(a)]) {
        seen[static_cast<std::size_t>(a)] = 1;
        q.push(a);
      }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (set_contains(B, u)) return false;
      for (int w : adj_[static_cast<std::size_t>(u)])
        if (!seen[static_cast<std::size_t>(w)] && !blocked[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          q.push(w);
        }
    }
    return true;
  }

 private:
  void check(int v) const {
    if (v < 0 || v >= num_nodes()) throw std::out_of_range("UGraph: unknown node");
  }
  std::vector<std::vector<int>> adj_;
};

/// Moral graph: every arc as an edge plus an edge between every pair of
/// nodes sharing a child.
inline UGraph moralize(const Digraph& g) {
  UGraph m(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) {
    const auto& ps = g.parents(v);
    for (int p : ps) m.add_edge(p, v);
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        if (ps[i] != ps[j]) m.add_edge(ps[i], ps[j]);
  }
  return m;
}

struct Relatives {
  IdSet de;  // descendants, excluding x
  IdSet nd;  // non-descendants, excluding x
  IdSet an;  // proper ancestors
  IdSet fa;  // x and its parents
};

namespace detail {
inline IdSet reach(const Digraph& g, const IdSet& from, bool forward) {
  std::vector<char> seen(g.num_nodes(), 0);
  std::queue<int> q;
  for (int v : from) q.push(v);
  IdSet out;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    const auto& next = forward ? g.children(u) : g.parents(u);
    for (int w : next)
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        out.push_back(w);
        q.push(w);
      }
  }
  return make_set(std::move(out));
}
}  // namespace detail

inline IdSet descendants(const Digraph& g, int x) { return set_minus(detail::reach(g, {x}, true), {x}); }
inline IdSet ancestors(const Digraph& g, int x) { return set_minus(detail::reach(g, {x}, false), {x}); }

/// Ancestors of a set, including the set itself.
inline IdSet ancestral_set(const Digraph& g, const IdSet& xs) {
  return set_union(detail::reach(g, xs, false), xs);
}

inline IdSet family(const Digraph& g, int x) {
  IdSet f = make_set(g.parents(x));
  return set_union(f, {x});
}
inline IdSet family(const Digraph& g, const IdSet& xs) {
  IdSet f;
  for (int x : xs) f = set_union(f, family(g, x));
  return f;
}

inline Relatives relatives(const Digraph& g, int x) {
  Relatives r;
  r.de = descendants(g, x);
  r.an = ancestors(g, x);
  r.fa = family(g, x);
  IdSet all;
  for (int v = 0; v < g.num_nodes(); ++v) all.push_back(v);
  r.nd = set_minus(set_minus(all, r.de), {x});
  return r;
}

/// Standard d-separation: true iff every path between A and B is blocked
/// given Z. Reachability over (node, entry direction) states; colliders are
/// open iff the collider or one of its descendants is in Z.
inline bool d_separated(const Digraph& g, const IdSet& A, const IdSet& B, const IdSet& Z) {
  if (!set_intersect(A, B).empty() || !set_intersect(A, Z).empty() ||
      !set_intersect(B, Z).empty())
    throw std::invalid_argument("d_separated: input sets overlap");

  // Nodes with a descendant (or themselves) in Z open colliders.
  std::vector<char> z(g.num_nodes(), 0), z_anc(g.num_nodes(), 0);
  for (int v : Z) z[static_cast<std::size_t>(v)] = 1;
  {
    std::queue<int> q;
    for (int v : Z) {
      z_anc[static_cast<std::size_t>(v)] = 1;
      q.push(v);
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int p : g.parents(u))
        if (!z_anc[static_cast<std::size_t>(p)]) {
          z_anc[static_cast<std::size_t>(p)] = 1;
          q.push(p);
        }
    }
  }

  // state: (node, 0 = entered from a child / start, 1 = entered from a parent)
  std::vector<std::array<char, 2>> seen(g.num_nodes(), {0, 0});
  std::queue<std::pair<int, int>> q;
  for (int a : A) {
    seen[static_cast<std::size_t>(a)][0] = 1;
    q.push({a, 0});
  }
  while (!q.empty()) {
    auto [u, dir] = q.front();
    q.pop();
    if (set_contains(B, u)) return false;
    auto push = [&](int w, int d) {
      if (!seen[static_cast<std::size_t>(w)][d]) {
        seen[static_cast<std::size_t>(w)][d] = 1;
        q.push({w, d});
      }
    };
    if (dir == 0) {
      // entered against arc direction: may continue to parents and children
      if (!z[static_cast<std::size_t>(u)]) {
        for (int p : g.parents(u)) push(p, 0);
        for (int c : g.children(u)) push(c, 1);
      }
    } else {
      // entered along an arc (from a parent)
      if (!z[static_cast<std::size_t>(u)])
        for (int c : g.children(u)) push(c, 1);
      if (z_anc[static_cast<std::size_t>(u)])  // collider open
        for (int p : g.parents(u)) push(p, 0);
    }
  }
  return true;
}

}  // namespace idsolve
