#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phl/cosets.hpp"

namespace phl {

/// Coefficient list, index = degree.
using Poly = std::vector<std::int64_t>;

std::int64_t poly_eval(const Poly& p, std::int64_t x);
std::string poly_str(const Poly& p);

/// Nonincreasing integer vector; parts = partition() + shift with shift = min(parts).
struct DominantWeight {
  std::vector<int> parts;
  int shift = 0;

  /// Throws InvalidParams unless nonincreasing and nonempty.
  static DominantWeight make(std::vector<int> parts);
  int m() const { return static_cast<int>(parts.size()); }
  std::vector<int> partition() const;
  static DominantWeight from_partition(const std::vector<int>& partition, int shift);
};

/// Semistandard tableau as rows of entries in [1, m].
using Tableau = std::vector<std::vector<int>>;

/// Tableaux of the given shape (a partition) and content (a composition).
std::vector<Tableau> ssyt(const std::vector<int>& shape, const std::vector<int>& content);

/// dim V_mu(nu): the number of semistandard tableaux of shape mu with content nu.
std::int64_t kostka(const DominantWeight& mu, const std::vector<int>& nu);

/// Charge of a word whose content is a partition.
int charge(const std::vector<int>& word);
/// Rows read from the bottom up, each left to right.
std::vector<int> reading_word(const Tableau& t);

/// K_{mu, lambda}(t): the charge generating function over tableaux of shape mu
/// and content lambda; empty unless lambda <= mu.
Poly kostka_foulkes(const DominantWeight& lambda, const DominantWeight& mu);

/// How P_{w_lambda, w_mu}(v) is read off K_{mu, lambda}(t).
enum class KLNormalization {
  Direct,    // P(v) = K(v)
  Reversed,  // P(v) = v^{<rho, mu - lambda>} K(1/v)
};

const char* normalization_name(KLNormalization n);

Poly kl_spherical(const DominantWeight& lambda, const DominantWeight& mu, KLNormalization n);

/// <rho, x> for x with sum zero.
int rho_pairing_zero_sum(const std::vector<int>& x);

struct LusztigKatoEntry {
  Cochar nu;
  int exponent = 0;             // <mu - w0 nu, rho>, a power of Q
  std::int64_t multiplicity = 0;
  std::int64_t lhs = 0;         // Q^exponent dim V_mu(nu)
  std::int64_t rhs = 0;         // sum over lambda of P(Q) N(lambda, nu)
  bool pass = false;
};

struct LusztigKatoReport {
  Cochar mu;
  int p = 0, f = 0, d = 0, aD = 0;
  KLNormalization normalization = KLNormalization::Reversed;
  std::string convention;
  std::map<Cochar, Poly> P;                      // keyed by dominant lambda
  std::map<std::pair<Cochar, Cochar>, std::uint64_t> counts;  // (lambda, nu) -> N
  std::vector<LusztigKatoEntry> entries;          // sorted by nu
  bool pass = false;
};

/// Compares the coefficient of every tau_nu, nu a weight of V_mu, in
/// Q^{d<mu,rho>} ch V_mu and in sum_lambda P_{w_lambda,w_mu}(Q) S(1_{K lambda K}),
/// Q = q^d, with the Satake counts N(lambda, nu) = |K lambda K n nu U / U n K|.
/// Requires m = 2, or m = 3 with <rho, mu> <= 2, and Q <= 9.
LusztigKatoReport lusztig_kato_check(const DominantWeight& mu, int p, int f, int d, int aD,
                                     KLNormalization n, int threads = 1);

/// The normalization fixed by the split calibration.
inline constexpr KLNormalization kCalibratedNormalization = KLNormalization::Reversed;

struct CalibrationCase {
  Cochar mu;
  int p = 0;
};

/// Split (d = 1) baselines used for calibration.
std::vector<CalibrationCase> calibration_baselines();

/// The unique normalization passing every split baseline; NormalizationError
/// if none or several do.
KLNormalization calibrate_normalization(int threads = 1);

/// Weyl dimension formula for GL_m.
std::int64_t weyl_dimension(const std::vector<int>& mu);

}  // namespace phl
