#pragma once

#include <climits>
#include <cstdint>
#include <string>
#include <vector>

#include "phl/field.hpp"

namespace phl {

/// Absolute precision of exact elements.
constexpr int kExactPrec = INT_MAX / 4;

struct Valuation {
  enum Kind { Finite, LowerBound, Infinite } kind = Infinite;
  int v = 0;
  bool operator==(const Valuation&) const = default;
};

/// Truncated skew Laurent series sum_i varpi^{e0+i} [digits_i] over k_D with
/// varpi [a] = [sigma(a)] varpi. Exact elements have no unwritten nonzero
/// digits; inexact ones are known below abs_prec() = e0 + digits.size().
/// An inexact zero has no digits and e0 equal to its precision.
class DElement {
 public:
  DElement() = default;

  static DElement zero() { return DElement(); }
  static DElement inexact_zero(int prec);
  static DElement monomial(int v, Elt c);
  static DElement one() { return monomial(0, 1); }
  /// Normalizes leading zeros; trims trailing zeros of exact elements.
  static DElement from_digits(int e0, std::vector<Elt> digits, bool exact);

  bool is_zero() const { return exact_ && dig_.empty(); }
  bool is_exact() const { return exact_; }
  bool is_inexact_zero() const { return !exact_ && dig_.empty(); }
  /// Nonzero with known valuation.
  bool determined() const { return !dig_.empty(); }

  int e0() const { return e0_; }
  const std::vector<Elt>& digits() const { return dig_; }
  int abs_prec() const { return exact_ ? kExactPrec : e0_ + static_cast<int>(dig_.size()); }
  /// Valuation, or its lower bound for an inexact zero; kExactPrec for ZERO.
  int val_lb() const { return is_zero() ? kExactPrec : e0_; }
  Valuation valuation() const;
  /// Leading digit of a determined element.
  Elt lead() const { return dig_.front(); }
  /// Coefficient of varpi^k; requires k < abs_prec().
  Elt digit_at(int k) const;

  /// Same element known only below min(abs_prec(), prec).
  DElement truncated(int prec) const;
  bool is_monomial() const { return exact_ && dig_.size() == 1; }

  bool operator==(const DElement& o) const {
    return exact_ == o.exact_ && dig_ == o.dig_ && (dig_.empty() && exact_ ? true : e0_ == o.e0_);
  }

 private:
  int e0_ = 0;
  std::vector<Elt> dig_;
  bool exact_ = true;
};

DElement d_add(const FieldSpec& F, const DElement& a, const DElement& b);
DElement d_neg(const FieldSpec& F, const DElement& a);
DElement d_sub(const FieldSpec& F, const DElement& a, const DElement& b);
DElement d_mul(const FieldSpec& F, const DElement& a, const DElement& b);

enum class DOp { Add, Mul };
DElement d_arith(const FieldSpec& F, const DElement& a, const DElement& b, DOp op);

/// Inverse of a nonzero element, known below min(target_precision, the
/// precision supported by a's relative precision).
DElement d_inv(const FieldSpec& F, const DElement& a, int target_precision);
Valuation d_val(const DElement& a);

/// Left multiplication by a Teichmuller digit, [c] * a.
DElement d_scale_left(const FieldSpec& F, Elt c, const DElement& a);

/// Text form "vK:[t,t,...]" with tokens "0" for a zero digit and k in
/// [1, Q-1] for mu^k; a trailing "~" marks an inexact element, "0" is ZERO.
std::string to_text(const FieldSpec& F, const DElement& a);
DElement parse_delement(const FieldSpec& F, const std::string& s);

}  // namespace phl
