#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "phl/linalg.hpp"
#include "phl/weyl.hpp"

namespace phl {

/// Element of GL(m, k) as a row-major m x m matrix.
using GMat = std::vector<Elt>;

/// The coset space P_J \ G with a fixed representative per coset and the
/// Bruhat label w in W^J of the double coset P_J w^-1 B containing it.
struct CosetSpace {
  JSet J;
  std::vector<GMat> reps;
  std::map<std::vector<Elt>, int> index;  // canonical flag key -> coset
  std::vector<Perm> label;
  std::map<Perm, std::vector<int>> cells;  // w -> cosets of P_J w^-1 B
};

/// G = GL(m, F_Q) together with every parabolic coset space.
struct FiniteGroupCtx {
  int p = 0, n = 0, m = 0;
  std::int64_t Q = 0;
  std::uint64_t order = 0;
  std::shared_ptr<const GF> k;  // F_Q
  std::shared_ptr<const GF> R;  // F_p, coefficients of function spaces
  std::map<JSet, CosetSpace> spaces;

  GMat mul(const GMat& a, const GMat& b) const;
  GMat inverse(const GMat& a) const;
  GMat identity() const;
  /// Matrix with 1 at (w(j), j).
  GMat perm_matrix(const Perm& w) const;
  /// I + a E_{i,j}.
  GMat root_element(int i, int j, Elt a) const;
  /// diag(1, .., c at i, .., 1).
  GMat torus_element(int i, Elt c) const;
  /// Generators of the upper triangular Borel subgroup.
  std::vector<GMat> borel_generators() const;

  const CosetSpace& space(const JSet& J) const;
  int coset_of(const JSet& J, const GMat& x) const;
};

/// Builds the context for Q = p^n; throws TooLarge when |G| > 10^6.
FiniteGroupCtx build_context(std::int64_t Q, int m);

/// Characteristic function of P_J w^-1 B on P_J \ G, over F_p.
FVec g_function(const FiniteGroupCtx& ctx, const JSet& J, const Perm& w);

/// f T_s = sum over u in U_s of (u^-1 s^-1) . f, with (h . f)(x) = f(x h).
FVec hecke_ts(const FiniteGroupCtx& ctx, const JSet& J, const FVec& f, int s);

/// g_w T_s expanded in the basis (g_v)_{v in W^J} of the B-invariants.
std::map<Perm, Elt> hecke_action(const FiniteGroupCtx& ctx, const JSet& J, const Perm& w, int s);

/// The quotient St_J = C(P_J\G) / sum_{a not in J} C(P_{J+a}\G) over F_p,
/// with coordinates on the non-pivot cosets of the image.
class SteinbergQuotient {
 public:
  SteinbergQuotient(const FiniteGroupCtx& ctx, const JSet& J);
  int dim() const { return static_cast<int>(free_.size()); }
  int dim_ind() const { return image_.ambient(); }
  FVec project(const FVec& f) const;
  FVec lift(const FVec& v) const;
  /// Right translation action (h . f)(x) = f(x h) on quotient coordinates.
  FMat action(const GMat& h) const;
  FVec apply_ts(const FVec& v, int s) const;
  const JSet& J() const { return J_; }

 private:
  const FiniteGroupCtx* ctx_;
  JSet J_;
  Span image_;
  std::vector<int> free_;
};

struct SteinbergInvariants {
  int dim_ind = 0;
  int dim_st = 0;
  int dim_binv = 0;  // computed as a kernel, independently of the basis
  std::map<Perm, FVec> basis;  // w in W_pr^J -> image of g_w
  bool basis_ok = false;       // B-invariant, independent and spanning
};

SteinbergInvariants steinberg_binvariants(const FiniteGroupCtx& ctx, const JSet& J);

/// Whether the right H(G, B)-submodule generated by v (quotient
/// coordinates) contains the image of g_{z^J}.
bool generates_zJ(const FiniteGroupCtx& ctx, const SteinbergQuotient& st, const FVec& v);

/// The GL(2, k_D)-weight V(r, chi) = (chi o det) (x) tensor_j (Sym^{r_j})^{Frob^j},
/// with values in the coefficient field of F.
struct Gl2Weight {
  FieldPtr F;
  std::vector<int> r;
  std::int64_t c = 0;
  int dim = 1;

  /// Basis index of the monomial tensor_j X^{r_j - i_j} Y^{i_j}.
  int index(const std::vector<int>& i) const;
  /// Action matrix of g = (a b; c d) over k_D, columns are images of basis vectors.
  FMat matrix(Elt a, Elt b, Elt c, Elt d) const;
  bool regular() const;
};

/// Throws InvalidParams for entries outside [0, p-1] or a wrong length and
/// DimensionCap past dimension 10^4.
Gl2Weight weight_gl2(FieldPtr F, std::vector<int> r, std::int64_t c);

/// U-invariants (common kernel of u - 1 over the upper unipotent group).
std::vector<FVec> weight_u_invariants(const Gl2Weight& V);
/// Span of (u - 1) V for u in the upper unipotent group; V_U is the quotient.
Span weight_u_augmentation(const Gl2Weight& V);

}  // namespace phl
