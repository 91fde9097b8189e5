#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "idsolve/influence_diagram.hpp"

namespace idsolve {

/// A strategy subtree of the AND/OR tree: AND nodes keep every expanded child
/// with its arc probability, OR nodes keep exactly one action child, leaves
/// carry the utility of a complete history. Node values are conditional
/// expected utilities given the path from the root.
struct PolicyNode {
  enum class Kind { leaf, chance, decision };
  Kind kind = Kind::leaf;
  double value = 0.0;

  // leaf
  double utility = 0.0;

  // chance (AND): joint state index is row-major over `group`
  std::vector<int> group;
  struct AndChild {
    int state = 0;
    double prob = 0.0;
    std::unique_ptr<PolicyNode> node;
  };
  std::vector<AndChild> children;

  // decision (OR)
  int decision = -1;
  int action = -1;
  std::unique_ptr<PolicyNode> chosen;
};

struct PolicyTree {
  std::unique_ptr<PolicyNode> root;
  double value = 0.0;
};

namespace detail {
inline double reeval(const PolicyNode& n) {
  switch (n.kind) {
    case PolicyNode::Kind::leaf:
      return n.utility;
    case PolicyNode::Kind::chance: {
      double acc = 0.0;
      for (const auto& c : n.children) acc += c.prob * reeval(*c.node);
      return acc;
    }
    case PolicyNode::Kind::decision:
      if (!n.chosen) throw std::invalid_argument("policy: OR node without a chosen child");
      return reeval(*n.chosen);
  }
  return 0.0;
}

inline std::uint64_t count_internal(const PolicyNode& n) {
  switch (n.kind) {
    case PolicyNode::Kind::leaf:
      return 0;
    case PolicyNode::Kind::chance: {
      std::uint64_t c = 1;
      for (const auto& ch : n.children) c += count_internal(*ch.node);
      return c;
    }
    case PolicyNode::Kind::decision:
      return 1 + (n.chosen ? count_internal(*n.chosen) : 0);
  }
  return 0;
}
}  // namespace detail

/// Recompute the root value bottom-up from leaf utilities and arc
/// probabilities. Must equal the stored root value.
inline double evaluate_policy(const InfluenceDiagram&, const PolicyTree& t) {
  if (!t.root) return 0.0;
  return detail::reeval(*t.root);
}

/// Count of AND and OR nodes in the retained subtree (leaves excluded).
inline std::uint64_t policy_node_count(const PolicyTree& t) {
  return t.root ? detail::count_internal(*t.root) : 0;
}

}  // namespace idsolve
