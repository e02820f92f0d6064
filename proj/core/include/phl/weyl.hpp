#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phl/error.hpp"

namespace phl {

/// Permutation of {0..m-1} in one-line notation; w maps x to w[x].
/// The simple reflection s_i (1 <= i < m) swaps i-1 and i.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> one_line);
  static Perm identity(int m);
  static Perm simple(int m, int i);
  static Perm longest(int m);

  int m() const { return static_cast<int>(w_.size()); }
  int operator()(int x) const { return w_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& one_line() const { return w_; }
  int length() const { return len_; }
  /// Reduced word as simple reflection indices, w = s_{word[0]} s_{word[1]} ...
  std::vector<int> reduced_word() const;
  Perm inverse() const;
  int sign() const { return len_ % 2 ? -1 : 1; }
  bool right_descent(int i) const { return w_[static_cast<std::size_t>(i - 1)] > w_[static_cast<std::size_t>(i)]; }
  bool left_descent(int i) const;

  Perm operator*(const Perm& o) const;
  bool operator==(const Perm& o) const { return w_ == o.w_; }
  bool operator<(const Perm& o) const { return w_ < o.w_; }
  /// One-line notation on {1..m}, e.g. "312".
  std::string str() const;

 private:
  std::vector<int> w_;
  int len_ = 0;
};

std::vector<Perm> all_perms(int m);

/// Subset of simple roots {1..m-1}, sorted.
using JSet = std::vector<int>;

bool in_parabolic(const Perm& w, const JSet& J);
bool in_WJ(const Perm& w, const JSet& J);
/// Minimal length representative of w W_J.
Perm min_coset_rep(const Perm& w, const JSet& J);

struct WJSets {
  std::vector<Perm> WJ;
  std::vector<Perm> Wpr;
  Perm zJ;
};

WJSets wJ_sets(int m, const JSet& J);
bool lessJ(const Perm& w, const Perm& w2, const JSet& J);
/// Matrix of the boundary map into Z[W^J] (rows W^J, columns the disjoint
/// union of W^{J u {a}} for a not in J).
std::vector<std::vector<std::int64_t>> boundary_matrix(int m, const JSet& J);
/// Diagonal of the integer Smith normal form.
std::vector<std::int64_t> integer_smith_diagonal(std::vector<std::vector<std::int64_t>> a);
/// Rank of coker(boundary); throws if the cokernel has torsion.
int mj_rank(int m, const JSet& J);

/// All subsets of {1..m-1}.
std::vector<JSet> all_jsets(int m);

/// Dominance order on cocharacters: sorted decreasingly, equal totals,
/// partial sums of lambda bounded by those of mu.
bool dominance(const std::vector<int>& lambda, const std::vector<int>& mu);
/// Dominant lambda <= mu for dominant mu.
std::vector<std::vector<int>> dominance_interval(const std::vector<int>& mu);

}  // namespace phl
