#pragma once

#include <vector>

#include "phl/field.hpp"

namespace phl {

using FVec = std::vector<Elt>;

/// Dense row-major matrix over a finite field.
struct FMat {
  int rows = 0, cols = 0;
  std::vector<Elt> a;

  FMat() = default;
  FMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0) {}
  static FMat identity(int n);

  Elt& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  Elt at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)]; }
  FVec column(int j) const;
  bool operator==(const FMat&) const = default;
};

FMat mat_mul(const GF& K, const FMat& x, const FMat& y);
FVec mat_vec(const GF& K, const FMat& x, const FVec& v);
FMat mat_sub(const GF& K, const FMat& x, const FMat& y);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(const GF& K, FMat& x);
int rank(const GF& K, FMat x);
/// Basis of the kernel {v : x v = 0}.
std::vector<FVec> nullspace(const GF& K, FMat x);
/// Inverse of a square matrix; throws Singular.
FMat mat_inverse(const GF& K, FMat x);

/// Incrementally grown subspace of K^n kept in semi-echelon form.
class Span {
 public:
  Span(const GF& K, int n) : K_(&K), n_(n) {}
  int dim() const { return static_cast<int>(rows_.size()); }
  int ambient() const { return n_; }
  /// Canonical representative of v modulo the span: zero at every pivot.
  FVec reduce(FVec v) const;
  bool contains(const FVec& v) const;
  /// Adds v; returns false if it was already in the span.
  bool add(const FVec& v);
  const std::vector<int>& pivots() const { return piv_; }
  const std::vector<FVec>& rows() const { return rows_; }

 private:
  const GF* K_;
  int n_;
  std::vector<FVec> rows_;
  std::vector<int> piv_;
};

}  // namespace phl
