#include "phl/dseries.hpp"

#include <algorithm>
#include <sstream>

namespace phl {

namespace {

int sat_add(int a, int b) {
  if (a >= kExactPrec || b >= kExactPrec) return kExactPrec;
  long long s = static_cast<long long>(a) + b;
  return s >= kExactPrec ? kExactPrec : static_cast<int>(s);
}

}  // namespace

DElement DElement::inexact_zero(int prec) {
  DElement r;
  r.exact_ = false;
  r.e0_ = prec;
  return r;
}

DElement DElement::monomial(int v, Elt c) {
  DElement r;
  if (c == 0) return r;
  r.e0_ = v;
  r.dig_.push_back(c);
  return r;
}

DElement DElement::from_digits(int e0, std::vector<Elt> digits, bool exact) {
  DElement r;
  r.exact_ = exact;
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == 0) ++lead;
  if (lead == digits.size()) {
    if (exact) return DElement();
    return inexact_zero(e0 + static_cast<int>(digits.size()));
  }
  if (exact) {
    std::size_t end = digits.size();
    while (end > lead && digits[end - 1] == 0) --end;
    digits.resize(end);
  }
  r.e0_ = e0 + static_cast<int>(lead);
  r.dig_.assign(digits.begin() + static_cast<std::ptrdiff_t>(lead), digits.end());
  return r;
}

Valuation DElement::valuation() const {
  if (is_zero()) return {Valuation::Infinite, 0};
  if (dig_.empty()) return {Valuation::LowerBound, e0_};
  return {Valuation::Finite, e0_};
}

Elt DElement::digit_at(int k) const {
  if (k < e0_) return 0;
  std::size_t i = static_cast<std::size_t>(k - e0_);
  if (i < dig_.size()) return dig_[i];
  if (!exact_) throw Error(ErrorKind::InsufficientPrecision, "digit beyond precision");
  return 0;
}

DElement DElement::truncated(int prec) const {
  if (prec >= abs_prec()) return *this;
  if (dig_.empty()) return inexact_zero(prec);
  std::vector<Elt> d;
  for (int k = e0_; k < prec; ++k) d.push_back(digit_at(k));
  if (prec <= e0_) return inexact_zero(prec);
  return from_digits(e0_, std::move(d), false);
}

DElement d_add(const FieldSpec& F, const DElement& a, const DElement& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const GF& K = *F.kd;
  int P = std::min(a.abs_prec(), b.abs_prec());
  int lo = std::min(a.e0(), b.e0());
  int hi;
  if (P >= kExactPrec) {
    hi = std::max(a.e0() + static_cast<int>(a.digits().size()), b.e0() + static_cast<int>(b.digits().size()));
  } else {
    hi = P;
  }
  if (hi <= lo) return DElement::inexact_zero(P);
  std::vector<Elt> d(static_cast<std::size_t>(hi - lo), 0);
  for (std::size_t i = 0; i < a.digits().size(); ++i) {
    int k = a.e0() + static_cast<int>(i);
    if (k < hi) d[static_cast<std::size_t>(k - lo)] = a.digits()[i];
  }
  for (std::size_t i = 0; i < b.digits().size(); ++i) {
    int k = b.e0() + static_cast<int>(i);
    if (k < hi) {
      Elt& slot = d[static_cast<std::size_t>(k - lo)];
      slot = K.add(slot, b.digits()[i]);
    }
  }
  return DElement::from_digits(lo, std::move(d), P >= kExactPrec);
}

DElement d_neg(const FieldSpec& F, const DElement& a) {
  if (a.digits().empty()) return a;
  std::vector<Elt> d(a.digits());
  for (auto& x : d) x = F.kd->neg(x);
  return DElement::from_digits(a.e0(), std::move(d), a.is_exact());
}

DElement d_sub(const FieldSpec& F, const DElement& a, const DElement& b) { return d_add(F, a, d_neg(F, b)); }

DElement d_mul(const FieldSpec& F, const DElement& a, const DElement& b) {
  if (a.is_zero() || b.is_zero()) return DElement::zero();
  const GF& K = *F.kd;
  int va = a.val_lb(), vb = b.val_lb();
  int P = std::min(sat_add(a.abs_prec(), vb), sat_add(b.abs_prec(), va));
  if (a.digits().empty() || b.digits().empty()) return DElement::inexact_zero(P);
  int base = va + vb;
  const auto& A = a.digits();
  const auto& B = b.digits();
  std::size_t len = A.size() + B.size() - 1;
  bool exact = P >= kExactPrec;
  if (!exact) {
    if (P <= base) return DElement::inexact_zero(P);
    len = static_cast<std::size_t>(P - base);
  }
  std::vector<Elt> d(len, 0);
  std::int64_t ord = K.order();
  // varpi^i [x] varpi^j [y] = varpi^{i+j} [sigma^{-j}(x) y]
  for (std::size_t t = 0; t < B.size() && t < len; ++t) {
    if (B[t] == 0) continue;
    std::int64_t fm = F.frob_mult(-(vb + static_cast<int>(t)));
    std::int64_t lb = K.dlog(B[t]);
    for (std::size_t s = 0; s < A.size() && s + t < len; ++s) {
      if (A[s] == 0) continue;
      Elt term = K.exp((static_cast<std::int64_t>(K.dlog(A[s])) * fm + lb) % (ord == 0 ? 1 : ord));
      d[s + t] = K.add(d[s + t], term);
    }
  }
  return DElement::from_digits(base, std::move(d), exact);
}

DElement d_arith(const FieldSpec& F, const DElement& a, const DElement& b, DOp op) {
  return op == DOp::Add ? d_add(F, a, b) : d_mul(F, a, b);
}

DElement d_scale_left(const FieldSpec& F, Elt c, const DElement& a) {
  return d_mul(F, DElement::monomial(0, c), a);
}

DElement d_inv(const FieldSpec& F, const DElement& a, int target_precision) {
  if (a.is_zero()) throw Error(ErrorKind::NotAUnit, "inverse of ZERO");
  if (a.is_inexact_zero()) throw Error(ErrorKind::InsufficientPrecision, "inverse of an undetermined element");
  const GF& K = *F.kd;
  int v = a.e0();
  const auto& A = a.digits();
  if (a.is_monomial()) return DElement::monomial(-v, K.inv(F.frobenius_pow(A[0], v)));
  long long r = a.is_exact() ? static_cast<long long>(target_precision) + v : static_cast<long long>(A.size());
  r = std::min<long long>(r, static_cast<long long>(target_precision) + v);
  if (r < 1) throw Error(ErrorKind::InsufficientPrecision, "inverse target precision below the valuation");
  std::size_t n = static_cast<std::size_t>(r);
  std::vector<Elt> b(n, 0);
  // Digit n of a*b: sum_{s+t=n} sigma^{v-t}(a_s) b_t.
  auto sig = [&](Elt x, int j) { return F.frobenius_pow(x, j); };
  for (std::size_t t = 0; t < n; ++t) {
    Elt rhs = t == 0 ? 1 : 0;
    for (std::size_t s = 1; s <= t && s < A.size(); ++s) {
      std::size_t tt = t - s;
      rhs = K.sub(rhs, K.mul(sig(A[s], v - static_cast<int>(tt)), b[tt]));
    }
    b[t] = K.div(rhs, sig(A[0], v - static_cast<int>(t)));
  }
  return DElement::from_digits(-v, std::move(b), false);
}

Valuation d_val(const DElement& a) { return a.valuation(); }

std::string to_text(const FieldSpec& F, const DElement& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  os << 'v' << a.e0() << ":[";
  const auto& d = a.digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) os << ',';
    if (d[i] == 0) {
      os << '0';
    } else {
      std::uint32_t l = F.kd->dlog(d[i]);
      os << (l == 0 ? F.Q - 1 : static_cast<std::int64_t>(l));
    }
  }
  os << ']';
  if (!a.is_exact()) os << '~';
  return os.str();
}

DElement parse_delement(const FieldSpec& F, const std::string& s_in) {
  std::string s;
  for (char c : s_in)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "0") return DElement::zero();
  auto fail = [&]() { return Error(ErrorKind::Parse, "bad D-element literal '" + s_in + "'"); };
  if (s.size() < 4 || (s[0] != 'v' && s[0] != 'w')) throw fail();
  bool exact = true;
  if (s.back() == '~') {
    exact = false;
    s.pop_back();
  }
  auto colon = s.find(':');
  if (colon == std::string::npos || s[colon + 1] != '[' || s.back() != ']') throw fail();
  int e0;
  try {
    std::size_t used = 0;
    e0 = std::stoi(s.substr(1, colon - 1), &used);
    if (used != colon - 1) throw fail();
  } catch (const std::logic_error&) {
    throw fail();
  }
  std::string body = s.substr(colon + 2, s.size() - colon - 3);
  std::vector<Elt> digits;
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      long long k;
      try {
        std::size_t used = 0;
        k = std::stoll(tok, &used);
        if (used != tok.size()) throw fail();
      } catch (const std::logic_error&) {
        throw fail();
      }
      if (k < 0 || k > F.Q - 1) throw fail();
      digits.push_back(k == 0 ? 0 : F.kd->exp(k));
    }
  }
  return DElement::from_digits(e0, std::move(digits), exact);
}

}  // namespace phl
