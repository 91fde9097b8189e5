#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace idsolve {

/// Dense real-valued table over an ordered variable scope.
///
/// Layout convention (shared by CPTs, utility tables and clique potentials):
/// for scope (V_1..V_m) the flat index is ((c_1*|V_2| + c_2)*|V_3| + ...) + c_m,
/// i.e. the first scope variable varies slowest and the last fastest.
class Potential {
 public:
  Potential() = default;

  Potential(std::vector<int> scope, std::vector<int> cards, double fill = 0.0)
      : scope_(std::move(scope)), cards_(std::move(cards)) {
    if (scope_.size() != cards_.size())
      throw std::invalid_argument("Potential: scope/cards size mismatch");
    std::size_t n = 1;
    for (int c : cards_) {
      if (c <= 0) throw std::invalid_argument("Potential: nonpositive cardinality");
      n *= static_cast<std::size_t>(c);
    }
    data_.assign(n, fill);
  }

  static Potential scalar(double v) { return Potential({}, {}, v); }

  const std::vector<int>& scope() const { return scope_; }
  const std::vector<int>& cards() const { return cards_; }
  std::size_t size() const { return data_.size(); }
  bool empty_scope() const { return scope_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  int position(int var) const {
    for (std::size_t i = 0; i < scope_.size(); ++i)
      if (scope_[i] == var) return static_cast<int>(i);
    return -1;
  }
  bool contains(int var) const { return position(var) >= 0; }

  int card_of(int var) const {
    int p = position(var);
    if (p < 0) throw std::out_of_range("Potential: variable not in scope");
    return cards_[static_cast<std::size_t>(p)];
  }

  /// stride of the i-th scope position
  std::size_t stride(std::size_t pos) const {
    std::size_t s = 1;
    for (std::size_t i = pos + 1; i < cards_.size(); ++i)
      s *= static_cast<std::size_t>(cards_[i]);
    return s;
  }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> st(cards_.size(), 1);
    for (int i = static_cast<int>(cards_.size()) - 2; i >= 0; --i)
      st[i] = st[i + 1] * static_cast<std::size_t>(cards_[i + 1]);
    return st;
  }

  /// Flat index of a full assignment given as state-per-variable-id.
  /// Every scope variable must be bound (>= 0) in `states`.
  std::size_t index_of(const std::vector<int>& states) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < scope_.size(); ++i) {
      int v = scope_[i];
      int s = (v < static_cast<int>(states.size())) ? states[v] : -1;
      if (s < 0 || s >= cards_[i])
        throw std::out_of_range("Potential::index_of: unbound or bad state");
      idx = idx * static_cast<std::size_t>(cards_[i]) + static_cast<std::size_t>(s);
    }
    return idx;
  }

  double value_at(const std::vector<int>& states) const { return data_[index_of(states)]; }

  /// Iterate own flat indices while tracking the aligned index of a table
  /// whose scope is a subset of this one. fn(self_flat, sub_flat).
  template <class Fn>
  void for_each_aligned(const Potential& sub, Fn&& fn) const {
    const std::size_t m = scope_.size();
    std::vector<std::size_t> sub_stride(m, 0);
    const auto ss = sub.strides();
    for (std::size_t k = 0; k < sub.scope_.size(); ++k) {
      int pos = position(sub.scope_[k]);
      if (pos < 0) throw std::logic_error("Potential: aligned scope not a subset");
      sub_stride[static_cast<std::size_t>(pos)] = ss[k];
    }
    std::vector<int> digit(m, 0);
    std::size_t sidx = 0;
    const std::size_t n = data_.size();
    for (std::size_t flat = 0; flat < n; ++flat) {
      fn(flat, sidx);
      for (int p = static_cast<int>(m) - 1; p >= 0; --p) {
        ++digit[p];
        sidx += sub_stride[p];
        if (digit[p] < cards_[p]) break;
        sidx -= static_cast<std::size_t>(cards_[p]) * sub_stride[p];
        digit[p] = 0;
      }
    }
  }

  /// this *= f, f's scope must be a subset of this scope.
  void multiply_in(const Potential& f) {
    for_each_aligned(f, [&](std::size_t i, std::size_t j) { data_[i] *= f.data_[j]; });
  }

  /// this += f, f's scope must be a subset of this scope.
  void add_in(const Potential& f) {
    for_each_aligned(f, [&](std::size_t i, std::size_t j) { data_[i] += f.data_[j]; });
  }

  double total() const {
    double t = 0.0;
    for (double v : data_) t += v;
    return t;
  }

  /// Zero all entries inconsistent with var = state.
  void zero_except(int var, int state) {
    int p = position(var);
    if (p < 0) throw std::out_of_range("Potential::zero_except: variable not in scope");
    const int k = cards_[static_cast<std::size_t>(p)];
    if (state < 0 || state >= k) throw std::out_of_range("Potential::zero_except: bad state");
    const std::size_t s = stride(static_cast<std::size_t>(p));
    const std::size_t block = s * static_cast<std::size_t>(k);
    for (std::size_t outer = 0; outer < data_.size(); outer += block)
      for (int j = 0; j < k; ++j) {
        if (j == state) continue;
        std::size_t base = outer + static_cast<std::size_t>(j) * s;
        for (std::size_t inner = 0; inner < s; ++inner) data_[base + inner] = 0.0;
      }
  }

  bool same_layout(const Potential& o) const {
    return scope_ == o.scope_ && cards_ == o.cards_;
  }

  bool bitwise_equal(const Potential& o) const {
    return same_layout(o) && data_ == o.data_;
  }

 private:
  std::vector<int> scope_;
  std::vector<int> cards_;
  std::vector<double> data_;
};

/// Sum a variable out of a plain table.
inline Potential sum_out(const Potential& p, int var) {
  int pos = p.position(var);
  if (pos < 0) throw std::out_of_range("sum_out: variable not in scope");
  std::vector<int> scope = p.scope(), cards = p.cards();
  const int k = cards[static_cast<std::size_t>(pos)];
  const std::size_t s = p.stride(static_cast<std::size_t>(pos));
  scope.erase(scope.begin() + pos);
  cards.erase(cards.begin() + pos);
  Potential out(std::move(scope), std::move(cards), 0.0);
  const std::size_t block = s * static_cast<std::size_t>(k);
  std::size_t o = 0;
  for (std::size_t outer = 0; outer < p.size(); outer += block)
    for (std::size_t inner = 0; inner < s; ++inner, ++o) {
      double acc = 0.0;
      for (int j = 0; j < k; ++j) acc += p[outer + inner + static_cast<std::size_t>(j) * s];
      out[o] = acc;
    }
  return out;
}

}  // namespace idsolve
