#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "phl/error.hpp"

namespace phl {

/// Element of a finite field, stored as the packed base-p code of its
/// coefficient vector: sum c_i p^i with 0 <= c_i < p. Zero is code 0, one is 1.
using Elt = std::uint32_t;

bool is_prime(std::int64_t n);
std::int64_t ipow(std::int64_t b, int e);
std::int64_t mod(std::int64_t a, std::int64_t n);

/// Lexicographically smallest primitive monic polynomial of degree n over F_p,
/// coefficients listed from the constant term up (the leading 1 included).
std::vector<int> smallest_primitive_poly(int p, int n);

/// Built-in modulus for F_{p^n}; falls back to the search above for entries
/// missing from the frozen table.
std::vector<int> builtin_modulus(int p, int n);

/// F_{p^n} with log/antilog and Zech tables. The class of x is a generator.
class GF {
 public:
  GF(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  std::uint32_t size() const { return size_; }
  std::uint32_t order() const { return size_ - 1; }
  const std::vector<int>& modulus() const { return modulus_; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }
  Elt gen() const { return exp_[1 % order()]; }

  Elt add(Elt a, Elt b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    if (p_ == 2) return a ^ b;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t k = lb >= la ? lb - la : lb + order() - la;
    std::int32_t z = zech_[k];
    if (z < 0) return 0;
    std::uint32_t e = la + static_cast<std::uint32_t>(z);
    return exp_[e >= order() ? e - order() : e];
  }
  Elt neg(Elt a) const {
    if (a == 0 || p_ == 2) return a;
    std::uint32_t e = log_[a] + half_;
    return exp_[e >= order() ? e - order() : e];
  }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    return exp_[e >= order() ? e - order() : e];
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::int64_t e) const;

  /// Discrete log base gen(), in [0, order()).
  std::uint32_t dlog(Elt a) const;
  Elt exp(std::int64_t e) const { return exp_[static_cast<std::size_t>(mod(e, order()))]; }

  Elt from_int(std::int64_t k) const { return static_cast<Elt>(mod(k, p_)); }
  std::vector<int> coeffs(Elt a) const;
  Elt from_coeffs(const std::vector<int>& c) const;

  /// Multiplicative order of a nonzero element.
  std::uint32_t elt_order(Elt a) const;

 private:
  int p_, n_;
  std::uint32_t size_;
  std::uint32_t half_ = 0;  // log of -1 for odd p
  std::vector<int> modulus_;
  std::vector<Elt> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::int32_t> zech_;
};

/// Residue data of D: k_D = F_{q^d}, q = p^f, sigma = Frob_q^{a_D}, plus a
/// coefficient field F_{p^M} (f*d | M) holding character values, with a fixed
/// embedding of k_D.
class FieldSpec {
 public:
  int p, f, d, aD, M;
  std::int64_t q;   // p^f
  std::int64_t Q;   // q^d = |k_D|
  std::shared_ptr<const GF> kd;
  std::shared_ptr<const GF> coef;

  /// x^{q^{a_D j}}.
  Elt frobenius_pow(Elt x, std::int64_t j) const;
  /// Exponent e with frobenius_pow(x, j) = x^e on dlogs, i.e. q^{a_D j} mod (Q-1).
  std::int64_t frob_mult(std::int64_t j) const { return frob_mult_[static_cast<std::size_t>(mod(j, d))]; }

  /// x -> mu^{c {x}} viewed in the coefficient field.
  Elt char_apply(std::int64_t c, Elt x) const;
  Elt embed(Elt x) const;
  Elt mu() const { return kd->gen(); }
  Elt mu_coef() const { return mu_coef_; }

  std::string to_json() const;

 private:
  friend std::shared_ptr<const FieldSpec> make_field(int, int, int, int, int);
  std::vector<std::int64_t> frob_mult_;
  Elt mu_coef_ = 1;
  std::vector<Elt> embed_table_;
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Validates (p, f, d, a_D) and builds tables. M = 0 selects M = f*d.
FieldPtr make_field(int p, int f, int d, int aD, int M = 0);

}  // namespace phl
