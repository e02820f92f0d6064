#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phl/matd.hpp"
#include "phl/weyl.hpp"

namespace phl {

/// Element w . lambda(varpi) of the extended affine Weyl group, represented by
/// the monomial matrix with varpi^{lambda_j} at (w(j), j).
struct ExtendedWeylElt {
  Perm w;
  std::vector<int> lambda;

  static ExtendedWeylElt identity(int m);
  static ExtendedWeylElt translation(std::vector<int> lambda);
  static ExtendedWeylElt finite(const Perm& w);
  /// s_i for 1 <= i < m; s_0 is the affine reflection s_varpi^-1 s_{m-1} s_varpi.
  static ExtendedWeylElt simple(int m, int i);
  /// Ones on the superdiagonal and varpi in the bottom-left corner.
  static ExtendedWeylElt s_varpi(int m);

  int m() const { return w.m(); }
  /// log_Q |I x I / I|.
  int length() const;
  MatD matrix(FieldPtr F) const;
  ExtendedWeylElt operator*(const ExtendedWeylElt& o) const;
  ExtendedWeylElt inverse() const;
  bool operator==(const ExtendedWeylElt& o) const { return w == o.w && lambda == o.lambda; }
  bool operator<(const ExtendedWeylElt& o) const {
    return w == o.w ? lambda < o.lambda : w < o.w;
  }
  /// "w=312;l=(1,0,0)".
  std::string str() const;
};

/// x = s_{word[0]} ... s_{word[k-1]} s_varpi^omega with k = l(x).
struct ReducedWord {
  std::vector<int> word;
  int omega = 0;
};

ReducedWord reduced_word(const ExtendedWeylElt& x);

/// The label of the double coset I g I; g exact and invertible.
ExtendedWeylElt iwahori_label(const MatD& g);

/// Representatives of I x I / I with their inverses, built from a reduced word.
struct CosetList {
  std::vector<MatD> reps;
  std::vector<MatD> inverses;
};

CosetList coset_decompose(FieldPtr F, const ExtendedWeylElt& x);

/// Canonical key of the right coset g K (column Hermite form of g O_D^m).
std::string k_coset_key(const MatD& g);

/// Integer combination of characteristic functions of double cosets I x I.
struct IwahoriElt {
  int m = 0;
  std::map<ExtendedWeylElt, std::int64_t> coef;

  static IwahoriElt basis(const ExtendedWeylElt& x, std::int64_t c = 1);
  static IwahoriElt unit(int m) { return basis(ExtendedWeylElt::identity(m)); }
  IwahoriElt operator+(const IwahoriElt& o) const;
  IwahoriElt operator*(std::int64_t s) const;
  /// Coefficients reduced into [0, p), zeros dropped.
  IwahoriElt mod(std::int64_t p) const;
  bool operator==(const IwahoriElt& o) const { return m == o.m && coef == o.coef; }
  std::string str() const;
};

/// (a * b)(g) = sum over x in G/I of a(x) b(x^-1 g); structure constants are
/// obtained by multiplying coset representatives and labelling the products.
IwahoriElt convolve(FieldPtr F, const IwahoriElt& a, const IwahoriElt& b);

/// Letters: i in [1, m-1] for S_i, 'P' for Pi (support I s_varpi^-1 I),
/// 'p' for Pi^-1.
IwahoriElt word_product(FieldPtr F, int m, const std::string& word);

struct RelationResult {
  std::string relation;
  bool pass = false;
  std::string detail;
};

/// The quadratic, braid and Pi relations modulo p, the expression of U_i
/// through Pi and the S_j, the reduced-word identity for I d_i sigma_i I, and
/// the count of K t_1 K / K. Requires m in {2, 3} and Q <= 9.
std::vector<RelationResult> relation_suite(FieldPtr F, int m);

/// |K t_1 K / K| by enumerating every I-coset of K t_1 K.
std::int64_t kt1k_coset_count(FieldPtr F, int m);

}  // namespace phl
