#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phl/matd.hpp"

namespace phl {

using Cochar = std::vector<int>;

bool is_dominant(const Cochar& l);
bool is_antidominant(const Cochar& l);
Cochar w0_conjugate(const Cochar& l);
int pairing(const Cochar& l, int i);  // <l, alpha_i> = l_i - l_{i+1}, i in [1, m-1]
/// 2<rho, l> = sum_{i<j} (l_i - l_j).
int rho_pairing2(const Cochar& l);
Cochar sorted_antidominant(Cochar l);

enum class Side { U, Uminus };
/// Which mu are listed in a Satake row: antidominant mu only, or every mu
/// with the right total whose dominant conjugate is below that of lambda.
enum class MuRange { Antidominant, Full };

const char* side_name(Side s);

std::vector<Cochar> mu_candidates(const Cochar& lambda, MuRange range);

/// Canonical representatives of mu(varpi) U / (U n K) (resp. U^-): the
/// off-diagonal entries of row i carry the digits of exponent in
/// [min(mu) - budget, mu_i). Throws BudgetTooSmall for budget < 0 and
/// TooLarge past 10^6 representatives.
std::vector<MatD> iwasawa_reps(FieldPtr F, const Cochar& mu, Side side, int budget);

/// Canonical form of an exact g in mu(varpi) U (resp. U^-) under right
/// multiplication by U n K (resp. U^- n K).
MatD iwasawa_canonical(const MatD& g, const Cochar& mu, Side side);

/// One stratum of representatives with a common Cartan class and a common
/// value of det-bar(k1 k2); weight representatives share it.
struct Stratum {
  CartanClass cls;
  Elt detbar = 1;
  std::uint64_t weight = 1;
  int free_slots = 0;  // weight = Q^free_slots
};

/// Walks the canonical representatives of mu(varpi) U/(U n K) whose digits
/// lie at exponents >= lower, digit level by digit level, reporting each
/// subtree as soon as its Cartan class is determined. With a target class,
/// subtrees that cannot reach it are pruned and strata of other classes may
/// be skipped.
void iwasawa_strata(FieldPtr F, const Cochar& mu, Side side, int lower, const CartanClass* target,
                    const std::function<void(const Stratum&)>& visit);

/// |(K lambda(varpi) K n mu(varpi) U) / (U n K)|.
std::uint64_t count_cartan_iwasawa(FieldPtr F, const Cochar& lambda, const Cochar& mu, Side side);

struct SatakeRow {
  Cochar lambda;
  Side side = Side::U;
  MuRange range = MuRange::Antidominant;
  bool modp = false;
  std::map<Cochar, std::uint64_t> counts;  // nonzero classical counts
  std::map<Cochar, Elt> values;            // nonzero coefficient-field values
  std::vector<Cochar> skipped;             // out-of-support mu (mod-p rows)
  /// Twice the normalization exponent d <w0 mu, rho>.
  int norm_exponent2(const Cochar& mu, int d) const { return d * rho_pairing2(w0_conjugate(mu)); }
};

/// Classical Satake row of 1_{K lambda K}; `threads` only affects speed.
SatakeRow satake_classical(FieldPtr F, const Cochar& lambda, Side side, MuRange range = MuRange::Antidominant,
                           int threads = 1);

struct Conjecture2Result {
  bool equal = false;
  SatakeRow rows_D, rows_E;
};

/// Compares the Satake counts over D = (q, d, a_D) with those of the split
/// group over the degree-d unramified extension, computed by the same code.
Conjecture2Result conjecture2_check(const Cochar& lambda, int p, int f, int d, int aD,
                                    MuRange range = MuRange::Full, int threads = 1);

/// A character chi = x -> mu^{c {x}} of k_D^x lifted to K through det-bar,
/// extended to its Cartan support by the value rho_val on the generator.
struct ChiTildeSpec {
  std::int64_t c = 0;
  int d0 = 1;
  Elt rho_val = 1;
};

ChiTildeSpec make_chi_spec(const FieldSpec& F, std::int64_t c, Elt rho_val);
/// Whether chi factors through the reduced norm (c a multiple of (Q-1)/(q-1)).
bool factors_through_norm(const FieldSpec& F, std::int64_t c);

Elt chi_tilde(const MatD& g, const ChiTildeSpec& spec, std::mt19937_64* rng = nullptr);

enum class K3Family { Residual, Antidiagonal };

struct PseudoMultWitness {
  MatD t1, k3, t2;
  Elt lhs = 0, rhs = 0;
};

struct PseudoMultResult {
  bool holds = true;
  std::uint64_t checked = 0;
  std::optional<PseudoMultWitness> witness;
};

/// Tests chi~(a b) = chi~(a) chi~(b) for a = t1 k3, b = t2 with t1, t2
/// antidominant support points of exponents in [0, exponent_bound] and k3
/// drawn from the family: every K element with `digit_budget` digits per
/// entry (Residual), or the matrices (alpha gamma 1; beta 1 0; 1 0 0) with
/// alpha, beta, gamma carrying digits at exponents [0, digit_budget] and
/// v(beta), v(gamma) > 0 (Antidiagonal, m = 3).
PseudoMultResult pseudo_mult_search(FieldPtr F, int m, const ChiTildeSpec& spec, int exponent_bound, int digit_budget,
                                    K3Family family);

/// Weighted mod-p Satake row of T_lambda for the weight chi o det-bar.
SatakeRow satake_modp_char(FieldPtr F, const Cochar& lambda, const ChiTildeSpec& spec,
                           MuRange range = MuRange::Antidominant, Side side = Side::U);

/// Reduction of a classical row into the coefficient field.
std::map<Cochar, Elt> reduce_mod_p(const FieldSpec& F, const SatakeRow& row);

struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::map<Cochar, Elt> lhs, rhs;
};

/// Mod-p inversion identities for dominant mu: the degenerate Lusztig-Kato
/// identity for every m, and for m = 2 the two-term difference formula and,
/// when a character spec with d0 >= 2 is given, S(T_mu) = tau_mu.
std::vector<IdentityCheck> verify_inversion_identities(FieldPtr F, const Cochar& mu,
                                                       const std::optional<ChiTildeSpec>& spec = std::nullopt);

/// The matrices w (I_r 0; M I_{m-r}) for t = diag(1^r, varpi^zeta ^{m-r}),
/// with M over Teichmuller digits below zeta and w running through minimal
/// representatives of W / W_t. They meet every coset of K / (K n tKt^-1),
/// some of them more than once.
std::vector<MatD> parabolic_reps(FieldPtr F, int m, int r, int zeta);

}  // namespace phl
