#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phl/finitegrp.hpp"
#include "phl/linalg.hpp"
#include "phl/matd.hpp"

namespace phl {

/// Irreducible representation rho(sigma, eta) of D^x trivial on 1 + varpi O_D,
/// with sigma(x) = x^c through the embedding of k_D in the coefficient field.
/// Basis v_a = varpi^-a v_0 (0 <= a < d0); [x] acts on v_a by sigma(x^{q_D^a}).
struct DxIrrep {
  FieldPtr F;
  std::int64_t c = 0;
  Elt eta = 1;
  int d0 = 1;
  Elt xi = 1;  // eigenvalue of mu on v_0
  FMat varpi_action;

  /// Eigenvalue of [x] on v_a.
  Elt teich_value(Elt x, int a) const;
  FMat teich_action(Elt x) const;
};

/// Throws ZeroArgument when eta = 0.
DxIrrep dx_irrep(FieldPtr F, std::int64_t c, Elt eta);

/// d0 = min{k > 0 : c q_D^k = c mod (Q - 1)}.
int stabilizer_index(const FieldSpec& F, std::int64_t c);

/// The right H(G, I(1))-module of I(1)-invariants of Ind_B^G rho1 (x) rho2 in
/// the basis f^i_{a,b} (ordered by i, a, b); matrix columns are images.
struct ProPIwahoriModule {
  DxIrrep rho1, rho2;  // normalized so that varpi^{d1} acts trivially on rho1
  Elt twist = 1;       // theta: both factors were divided by a character with varpi -> theta
  int e = 2;
  Elt lambda = 1, tau = 1;
  int k = -1;  // index of the S_k block, -1 when absent
  FMat H_omega, H_s;

  FMat H_delta(Elt x, Elt y) const;
  /// H_omega, H_s, H_delta(mu, 1), H_delta(1, mu).
  std::vector<FMat> generators() const;
};

/// Throws NormalizationError when eta1 has no d1-th root in the coefficient field.
ProPIwahoriModule build_module(const DxIrrep& rho1, const DxIrrep& rho2);

/// Closure of v under the matrices.
Span spin(const GF& K, const std::vector<FMat>& gens, const FVec& v);

struct SimplicityVerdict {
  bool simple = false;             // absolutely simple
  bool simple_over_field = false;  // no invariant subspace defined over the coefficient field
  int algebra_dim = 0;
  std::vector<FVec> witness;  // basis of a proper nonzero invariant subspace, when one is rational
  std::string method;
};

/// Decides simplicity of K^n under the algebra generated by gens: the span
/// dimension decides absolute simplicity, a Norton test with the dual check
/// decides simplicity over K and produces a witness otherwise.
SimplicityVerdict simplicity_check(const GF& K, const std::vector<FMat>& gens, std::uint64_t seed = 1);
SimplicityVerdict simplicity_check(const ProPIwahoriModule& M);

/// Rank of the family of characters of (k_D^x)^2 indexed by k1 - k2 = j mod g,
/// evaluated on the whole group; `count` receives the family size.
int character_family_rank(const ProPIwahoriModule& M, int j, int* count = nullptr);

/// Vertex K h of K \ GL(2, D) in the form h = (varpi^a 0; c varpi^b) with c
/// reduced modulo varpi^a.
struct Vertex {
  MatD h;
  int a = 0, b = 0;
  int v_beta() const { return a + b; }
  std::string key() const;
};

struct Canonical {
  Vertex vertex;
  std::vector<Elt> k0_bar;  // residue of k0 in K with h = k0 g, row-major over k_D
};

/// Canonical form of K g for an exact invertible 2 x 2 matrix.
Canonical canonicalize(const MatD& g);

/// Tree distance between the images of two vertices in K varpi^Z \ G.
int tree_distance(const Vertex& x, const Vertex& y);

struct TreeMetrics {
  int e_Z = 0;
  int delta_T = 0;
};

TreeMetrics tree_metrics(const std::vector<Vertex>& X);

/// Finitely supported function of ind_K^G V, stored by its value at the
/// canonical representative of each vertex of its support.
struct IndFunction {
  std::map<std::string, std::pair<Vertex, FVec>> terms;
  std::vector<Vertex> support() const;
};

enum class TreeOp { T, Y, YPrime, Z };

struct TreeHecke {
  Gl2Weight V;
  int d0 = 1;
  Elt chi_T = 1, chi_Z = 1;

  /// Throws InvalidParams unless the torus elements diag(varpi^a1, varpi^a2)
  /// fixing the character on V_{U cap K} are exactly those with d0 | a1, a2.
  TreeHecke(Gl2Weight V, int d0, Elt chi_T, Elt chi_Z);

  /// [g, v] with g^-1 = x_inv.
  IndFunction bracket(const MatD& x_inv, const FVec& v) const;
  /// Representatives k_i of the right cosets K phi1^{d0} k_i in K phi1^{d0} K.
  const std::vector<MatD>& coset_reps() const;
  FVec p_U(const FVec& v) const;
  /// Applies the operator to [g, v] with g^-1 = x_inv.
  IndFunction apply(TreeOp op, const MatD& x_inv, const FVec& v) const;

 private:
  mutable std::vector<MatD> reps_;
  void add_term(IndFunction& f, const MatD& x_inv, const FVec& v, Elt scale) const;
};

}  // namespace phl
