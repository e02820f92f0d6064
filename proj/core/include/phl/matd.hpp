#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phl/dseries.hpp"

namespace phl {

/// Square matrix over D.
class MatD {
 public:
  MatD() = default;
  MatD(FieldPtr F, int m) : F_(std::move(F)), m_(m), e_(static_cast<std::size_t>(m * m)) {}

  static MatD identity(FieldPtr F, int m);
  static MatD diag(FieldPtr F, const std::vector<int>& exps);
  /// Entry varpi^{exps[j]} at (perm[j], j).
  static MatD monomial(FieldPtr F, const std::vector<int>& perm, const std::vector<int>& exps);

  int m() const { return m_; }
  const FieldSpec& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }

  DElement& at(int i, int j) { return e_[static_cast<std::size_t>(i * m_ + j)]; }
  const DElement& at(int i, int j) const { return e_[static_cast<std::size_t>(i * m_ + j)]; }

  MatD operator*(const MatD& o) const;
  MatD operator+(const MatD& o) const;
  MatD operator-(const MatD& o) const;
  bool operator==(const MatD& o) const { return m_ == o.m_ && e_ == o.e_; }

  bool is_exact() const;
  MatD truncated(int prec) const;
  /// Residue matrix mod varpi of an integral matrix (row-major over k_D).
  std::vector<Elt> residue() const;

 private:
  FieldPtr F_;
  int m_ = 0;
  std::vector<DElement> e_;
};

/// Rows separated by '|', entries by ';', each entry a DElement literal.
MatD parse_matd(FieldPtr F, const std::string& s);
std::string to_text(const MatD& g);

/// Antidominant (nondecreasing) exponent vector of a Cartan double coset.
struct CartanClass {
  std::vector<int> exponents;
  bool operator==(const CartanClass&) const = default;
  auto operator<=>(const CartanClass&) const = default;
};

/// Pivot-and-clear reduction under the valuation V(i,j) = w*v(x_ij) + off(i,j)
/// (w = 1, off = 0 for K; w = m, off = j - i for the Iwahori subgroup).
/// The result is the normalized monomial matrix with varpi^{exps[j]} at
/// (perm[j], j) and det-bar of the right transform; the left transform is
/// unipotent-elementary.
struct Reduction {
  enum Status { Determined, Undetermined, Singular } status = Undetermined;
  std::vector<int> perm;
  std::vector<int> exps;
  Elt det_right = 1;
  /// Pivot exponents in the order found; for an undetermined Cartan
  /// reduction these are the smallest invariants and every remaining one is
  /// at least rest_lb.
  std::vector<int> found;
  int rest_lb = 0;
};

enum class Weighting { Cartan, Iwahori };

Reduction pivot_reduce(const MatD& g, Weighting w, int work_prec, std::mt19937_64* rng = nullptr);

/// Cartan invariants; throws InsufficientPrecision or Singular.
CartanClass smith(const MatD& g);
/// Cartan invariants of a possibly inexact matrix, or nullopt if the known
/// digits do not determine them. Throws Singular.
std::optional<CartanClass> smith_try(const MatD& g);
/// Reduction of an exact or inexact matrix, raising work precision for exact
/// input until determined. Throws InsufficientPrecision or Singular.
Reduction reduce_full(const MatD& g, Weighting w, std::mt19937_64* rng = nullptr);

/// det-bar(k1 k2) for the factorization g = k1 t k2 (t antidominant diagonal)
/// read off a determined Cartan reduction.
Elt cartan_detbar(const FieldSpec& F, const Reduction& r);

int val_det(const MatD& g);

/// Determinant over k_D of a row-major m x m matrix.
Elt residue_det(const GF& K, std::vector<Elt> a, int m);

enum class Subgroup { K, K1, I, I1, U, Uminus, B, A };
bool subgroup_test(const MatD& g, Subgroup tag);

/// Minor-valuation criterion for upper triangular matrices with monomial
/// diagonal varpi^x, varpi^y (, varpi^z), m in {2,3}, x <= y <= z for m = 3.
bool minor_test(const MatD& g, const CartanClass& target);

/// Random element of K with entries having `digits` Teichmuller digits.
MatD random_k(FieldPtr F, int m, int digits, std::mt19937_64& rng);

}  // namespace phl
