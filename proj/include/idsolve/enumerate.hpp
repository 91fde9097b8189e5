#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "idsolve/influence_diagram.hpp"
#include "idsolve/policy.hpp"

namespace idsolve {

struct EnumerateResult {
  double meu = 0.0;
  PolicyTree policy;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct EnumCtx {
  const InfluenceDiagram* id;
  std::vector<int> order;                       // chance/decision vars, partial-order sequence
  std::vector<std::vector<int>> ready_cpts;     // per position: CPT owners becoming evaluable
  std::vector<std::vector<int>> ready_utils;    // per position: utility vars becoming evaluable
  std::vector<int> base_utils;                  // scope-free utilities, applied up front
  bool build_policy = false;
  Assignment assign;

  struct NodeEval {
    double value = 0.0;  // sum over subtree leaves of P * U
    double mass = 0.0;   // sum over subtree leaves of P
    std::unique_ptr<PolicyNode> node;
  };

  NodeEval run(std::size_t t, double p, double u) {
    if (p == 0.0) return {0.0, 0.0, nullptr};
    if (t == order.size()) {
      NodeEval r;
      r.value = p * u;
      r.mass = p;
      if (build_policy) {
        r.node = std::make_unique<PolicyNode>();
        r.node->kind = PolicyNode::Kind::leaf;
        r.node->utility = u;
        r.node->value = u;
      }
      return r;
    }
    const int v = order[t];
    const int k = id->card(v);
    NodeEval out;
    std::unique_ptr<PolicyNode> node;
    std::vector<double> child_mass;  // per retained AND child
    if (build_policy) {
      node = std::make_unique<PolicyNode>();
      if (id->is_decision(v)) {
        node->kind = PolicyNode::Kind::decision;
        node->decision = v;
      } else {
        node->kind = PolicyNode::Kind::chance;
        node->group = {v};
      }
    }
    bool any = false;
    for (int s = 0; s < k; ++s) {
      assign[v] = s;
      double ps = p, us = u;
      for (int c : ready_cpts[t]) ps *= id->cpts.at(c).value_at(assign.states);
      if (ps != 0.0)
        for (int w : ready_utils[t]) us += id->utilities.at(w).value_at(assign.states);
      NodeEval child = run(t + 1, ps, us);
      if (id->is_decision(v)) {
        if (!any || child.value > out.value) {
          out.value = child.value;
          out.mass = child.mass;
          if (node) {
            node->action = s;
            node->chosen = std::move(child.node);
          }
        }
        any = true;
      } else {
        out.value += child.value;
        out.mass += child.mass;
        if (node && child.mass > 0.0) {
          PolicyNode::AndChild ac;
          ac.state = s;
          ac.node = std::move(child.node);
          node->children.push_back(std::move(ac));
          child_mass.push_back(child.mass);
        }
      }
    }
    assign[v] = -1;
    if (node) {
      node->value = (out.mass > 0.0) ? out.value / out.mass : 0.0;
      if (node->kind == PolicyNode::Kind::chance && out.mass > 0.0)
        for (std::size_t i = 0; i < node->children.size(); ++i)
          node->children[i].prob = child_mass[i] / out.mass;
      out.node = std::move(node);
    }
    return out;
  }
};

}  // namespace detail

/// Exact MEU by direct recursion over the partial order:
/// sum over I_0, max over D_1, ..., sum over I_n of P(X|D) * sum_j U_j.
/// This is the test oracle for every other solver.
///
/// Guard: the product of all state-space sizes must not exceed 1e7.
inline EnumerateResult enumerate_meu(const InfluenceDiagram& id, bool build_policy = true) {
  require_valid(id, "enumerate_meu");
  PartialOrder po = partial_order(id);

  double leaves = 1.0;
  for (const auto& v : id.vars)
    if (v.kind != VarKind::utility) leaves *= static_cast<double>(v.states.size());
  if (leaves > 1e7) throw SizeGuardError("enumerate_meu: state space exceeds 1e7 leaf scenarios");

  detail::EnumCtx ctx;
  ctx.id = &id;
  ctx.build_policy = build_policy;
  ctx.assign = Assignment(id.vars.size());
  for (std::size_t k = 0; k < po.groups.size(); ++k) {
    for (int v : po.groups[k]) ctx.order.push_back(v);
    if (k < po.decisions.size()) ctx.order.push_back(po.decisions[k]);
  }

  // Schedule each factor at the position where its scope becomes fully bound.
  std::vector<int> pos(id.vars.size(), -1);
  for (std::size_t t = 0; t < ctx.order.size(); ++t) pos[static_cast<std::size_t>(ctx.order[t])] = static_cast<int>(t);
  ctx.ready_cpts.resize(ctx.order.size());
  ctx.ready_utils.resize(ctx.order.size());
  for (const auto& [c, table] : id.cpts) {
    int at = -1;
    for (int v : table.scope()) at = std::max(at, pos[static_cast<std::size_t>(v)]);
    ctx.ready_cpts[static_cast<std::size_t>(at)].push_back(c);
  }
  double base_utility = 0.0;
  for (const auto& [w, table] : id.utilities) {
    int at = -1;
    for (int v : table.scope()) at = std::max(at, pos[static_cast<std::size_t>(v)]);
    if (at < 0)
      base_utility += table[0];
    else
      ctx.ready_utils[static_cast<std::size_t>(at)].push_back(w);
  }

  auto r = ctx.run(0, 1.0, base_utility);

  EnumerateResult res;
  res.meu = (r.mass > 0.0) ? r.value / r.mass : 0.0;
  if (build_policy) {
    res.policy.root = std::move(r.node);
    res.policy.value = res.meu;
  }
  return res;
}

}  // namespace idsolve
