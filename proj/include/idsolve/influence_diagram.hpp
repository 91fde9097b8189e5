#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "idsolve/potential.hpp"

namespace idsolve {

enum class VarKind { chance, decision, utility };

inline const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::chance: return "chance";
    case VarKind::decision: return "decision";
    case VarKind::utility: return "utility";
  }
  return "?";
}

struct Variable {
  int id = -1;
  std::string name;
  VarKind kind = VarKind::chance;
  std::vector<std::string> states;  // empty for utility variables
  std::vector<int> parents;         // ordered
};

/// Mapping variable id -> state index; -1 means unbound.
struct Assignment {
  std::vector<int> states;
  explicit Assignment(std::size_t n = 0) : states(n, -1) {}
  int operator[](int v) const { return states[static_cast<std::size_t>(v)]; }
  int& operator[](int v) { return states[static_cast<std::size_t>(v)]; }
  bool bound(int v) const { return states[static_cast<std::size_t>(v)] >= 0; }
};

/// A directed acyclic graph over chance, decision and utility variables,
/// with CPTs on chance variables, value tables on utility variables and a
/// total order over the decisions.
struct InfluenceDiagram {
  std::vector<Variable> vars;
  std::map<int, Potential> cpts;       // chance id -> table over (parents..., self)
  std::map<int, Potential> utilities;  // utility id -> table over parents
  std::vector<int> decision_order;

  int num_vars() const { return static_cast<int>(vars.size()); }
  const Variable& var(int v) const { return vars[static_cast<std::size_t>(v)]; }
  VarKind kind(int v) const { return var(v).kind; }
  bool is_chance(int v) const { return kind(v) == VarKind::chance; }
  bool is_decision(int v) const { return kind(v) == VarKind::decision; }
  bool is_utility(int v) const { return kind(v) == VarKind::utility; }
  int card(int v) const { return static_cast<int>(var(v).states.size()); }
  const std::vector<int>& parents(int v) const { return var(v).parents; }

  int add_variable(const std::string& name, VarKind kind, std::vector<std::string> states,
                   std::vector<int> parents) {
    Variable v;
    v.id = num_vars();
    v.name = name;
    v.kind = kind;
    v.states = std::move(states);
    v.parents = std::move(parents);
    vars.push_back(std::move(v));
    return vars.back().id;
  }

  /// Scope (parents..., self) and matching cardinalities for a chance variable.
  Potential make_cpt_shape(int v) const {
    std::vector<int> scope = parents(v);
    scope.push_back(v);
    std::vector<int> cards;
    cards.reserve(scope.size());
    for (int s : scope) cards.push_back(card(s));
    return Potential(std::move(scope), std::move(cards), 0.0);
  }

  Potential make_utility_shape(int v) const {
    std::vector<int> scope = parents(v);
    std::vector<int> cards;
    cards.reserve(scope.size());
    for (int s : scope) cards.push_back(card(s));
    return Potential(std::move(scope), std::move(cards), 0.0);
  }

  std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(vars.size());
    for (const auto& v : vars)
      for (int p : v.parents) ch[static_cast<std::size_t>(p)].push_back(v.id);
    return ch;
  }

  int find(const std::string& name) const {
    for (const auto& v : vars)
      if (v.name == name) return v.id;
    return -1;
  }

  std::vector<int> chance_vars() const {
    std::vector<int> r;
    for (const auto& v : vars)
      if (v.kind == VarKind::chance) r.push_back(v.id);
    return r;
  }
  std::vector<int> utility_vars() const {
    std::vector<int> r;
    for (const auto& v : vars)
      if (v.kind == VarKind::utility) r.push_back(v.id);
    return r;
  }
};

struct Violation {
  std::string code;
  std::string message;
};

namespace detail {

/// Kahn topological check; returns true iff acyclic.
inline bool acyclic(const InfluenceDiagram& id) {
  std::vector<int> indeg(id.vars.size(), 0);
  auto ch = id.children();
  for (const auto& v : id.vars) indeg[v.id] = static_cast<int>(v.parents.size());
  std::queue<int> q;
  for (const auto& v : id.vars)
    if (indeg[v.id] == 0) q.push(v.id);
  int seen = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    ++seen;
    for (int w : ch[static_cast<std::size_t>(u)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) q.push(w);
  }
  return seen == id.num_vars();
}

inline std::vector<bool> descendant_mask(const InfluenceDiagram& id, int x) {
  auto ch = id.children();
  std::vector<bool> de(id.vars.size(), false);
  std::queue<int> q;
  q.push(x);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : ch[static_cast<std::size_t>(u)])
      if (!de[static_cast<std::size_t>(w)]) {
        de[static_cast<std::size_t>(w)] = true;
        q.push(w);
      }
  }
  return de;
}

}  // namespace detail

/// Structural validity. Returns an empty list iff the diagram is well formed.
inline std::vector<Violation> validate(const InfluenceDiagram& id) {
  std::vector<Violation> out;
  auto add = [&](const std::string& code, const std::string& msg) {
    out.push_back({code, msg});
  };

  std::set<std::string> names;
  for (const auto& v : id.vars) {
    if (!names.insert(v.name).second) add("duplicate-name", "duplicate variable name " + v.name);
    for (int p : v.parents) {
      if (p < 0 || p >= id.num_vars()) {
        add("unknown-parent", v.name + " has out-of-range parent id");
        return out;  // later checks would index out of range
      }
      if (p == v.id) add("self-loop", v.name + " is its own parent");
    }
    std::set<int> ps(v.parents.begin(), v.parents.end());
    if (ps.size() != v.parents.size()) add("duplicate-parent", v.name + " lists a parent twice");
    if (v.kind == VarKind::utility) {
      if (!v.states.empty()) add("states", "utility variable " + v.name + " must not have states");
    } else if (v.states.empty()) {
      add("states", v.name + " has an empty state list");
    }
  }

  auto ch = id.children();
  for (const auto& v : id.vars)
    if (v.kind == VarKind::utility && !ch[static_cast<std::size_t>(v.id)].empty())
      add("utility-children", "utility variable " + v.name + " has children");

  if (!detail::acyclic(id)) add("cycle", "the arc relation contains a directed cycle");

  // Tables. Skip when shape prerequisites are already broken.
  for (const auto& v : id.vars) {
    if (v.kind == VarKind::chance) {
      auto it = id.cpts.find(v.id);
      if (it == id.cpts.end()) {
        add("cpt-missing", v.name + " has no CPT");
        continue;
      }
      std::vector<int> expect = v.parents;
      expect.push_back(v.id);
      if (it->second.scope() != expect) {
        add("cpt-scope", v.name + " CPT scope must be (parents..., self)");
        continue;
      }
      const Potential& t = it->second;
      const int k = static_cast<int>(v.states.size());
      if (k <= 0) continue;
      bool neg = false, unnorm = false;
      for (std::size_t row = 0; row < t.size(); row += static_cast<std::size_t>(k)) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) {
          double p = t[row + static_cast<std::size_t>(j)];
          if (p < 0.0) neg = true;
          s += p;
        }
        if (std::abs(s - 1.0) > 1e-9) unnorm = true;
      }
      if (neg) add("cpt-negative", v.name + " CPT has negative entries");
      if (unnorm) add("normalization", v.name + " CPT rows must sum to 1 within 1e-9");
    } else if (v.kind == VarKind::utility) {
      auto it = id.utilities.find(v.id);
      if (it == id.utilities.end()) {
        add("utility-missing", v.name + " has no value table");
        continue;
      }
      if (it->second.scope() != v.parents)
        add("utility-scope", v.name + " value table scope must equal its parent list");
    }
  }

  // Decision order: every decision exactly once, nothing else.
  {
    std::vector<int> decl;
    for (const auto& v : id.vars)
      if (v.kind == VarKind::decision) decl.push_back(v.id);
    std::set<int> in_order(id.decision_order.begin(), id.decision_order.end());
    if (in_order.size() != id.decision_order.size())
      add("decision-order", "decision_order repeats an entry");
    for (int d : decl)
      if (!in_order.count(d)) add("decision-order", id.var(d).name + " missing from decision_order");
    for (int d : id.decision_order)
      if (d < 0 || d >= id.num_vars() || !id.is_decision(d)) {
        add("decision-order", "decision_order names a non-decision");
        return out;
      }
    // Consistency with some topological order: no later decision may be an
    // ancestor of an earlier one.
    if (std::find_if(out.begin(), out.end(),
                     [](const Violation& w) { return w.code == "cycle"; }) == out.end()) {
      for (std::size_t j = 0; j < id.decision_order.size(); ++j) {
        auto de = detail::descendant_mask(id, id.decision_order[j]);
        for (std::size_t i = 0; i < j; ++i)
          if (de[static_cast<std::size_t>(id.decision_order[i])])
            add("decision-order",
                "decision_order contradicts the DAG: " + id.var(id.decision_order[j]).name +
                    " precedes " + id.var(id.decision_order[i]).name + " topologically");
      }
    }
  }
  return out;
}

inline void require_valid(const InfluenceDiagram& id, const char* where) {
  auto v = validate(id);
  if (!v.empty())
    throw std::invalid_argument(std::string(where) + ": invalid diagram: " + v.front().code +
                                " (" + v.front().message + ")");
}

/// Add, for every pair j < k, D_j and all parents of D_j as parents of D_k.
/// Idempotent. Throws if the added arcs would create a cycle.
inline InfluenceDiagram apply_no_forgetting(const InfluenceDiagram& id) {
  InfluenceDiagram out = id;
  for (std::size_t k = 1; k < out.decision_order.size(); ++k) {
    int dk = out.decision_order[k];
    int dj = out.decision_order[k - 1];
    std::set<int> have(out.vars[static_cast<std::size_t>(dk)].parents.begin(),
                       out.vars[static_cast<std::size_t>(dk)].parents.end());
    std::vector<int> extra;
    if (!have.count(dj)) extra.push_back(dj);
    for (int p : out.parents(dj))
      if (!have.count(p)) extra.push_back(p);
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    auto& ps = out.vars[static_cast<std::size_t>(dk)].parents;
    ps.insert(ps.end(), extra.begin(), extra.end());
  }
  if (!detail::acyclic(out))
    throw std::invalid_argument(
        "apply_no_forgetting: closure creates a cycle (decision_order inconsistent with DAG)");
  return out;
}

/// I_0 < D_1 < I_1 < ... < D_n < I_n over chance and decision variables.
struct PartialOrder {
  std::vector<std::vector<int>> groups;  // I_0..I_n, each sorted ascending
  std::vector<int> decisions;            // D_1..D_n
  std::vector<int> rank_of;              // per var id; utilities -1

  /// I_k -> 2k, D_k -> 2k-1
  int rank(int v) const { return rank_of[static_cast<std::size_t>(v)]; }
};

/// Derive the partial order; the diagram must be valid and no-forgetting.
inline PartialOrder partial_order(const InfluenceDiagram& id) {
  PartialOrder po;
  po.decisions = id.decision_order;
  po.rank_of.assign(id.vars.size(), -1);
  std::vector<bool> placed(id.vars.size(), false);
  const std::size_t n = po.decisions.size();
  po.groups.resize(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    int d = po.decisions[k];
    for (int p : id.parents(d))
      if (id.is_chance(p) && !placed[static_cast<std::size_t>(p)]) {
        placed[static_cast<std::size_t>(p)] = true;
        po.groups[k].push_back(p);
      }
    po.rank_of[static_cast<std::size_t>(d)] = static_cast<int>(2 * k + 1);
  }
  for (const auto& v : id.vars)
    if (v.kind == VarKind::chance && !placed[static_cast<std::size_t>(v.id)])
      po.groups[n].push_back(v.id);
  for (std::size_t k = 0; k <= n; ++k) {
    std::sort(po.groups[k].begin(), po.groups[k].end());
    for (int v : po.groups[k]) po.rank_of[static_cast<std::size_t>(v)] = static_cast<int>(2 * k);
  }
  return po;
}

}  // namespace idsolve
