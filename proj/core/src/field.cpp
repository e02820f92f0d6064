#include "phl/field.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "modulus_table.inc"

namespace phl {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::NotInSupport: return "NotInSupport";
    case ErrorKind::NotInWJ: return "NotInWJ";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::NormalizationError: return "NormalizationError";
    case ErrorKind::Parse: return "Parse";
  }
  return "Error";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

namespace {

constexpr std::uint32_t kTableCap = 1u << 20;

// Multiply the code by x modulo the monic polynomial f (coefficients low to high).
std::vector<int> times_x(const std::vector<int>& c, const std::vector<int>& f, int p) {
  int n = static_cast<int>(c.size());
  int top = c[n - 1];
  std::vector<int> r(n);
  for (int i = n - 1; i > 0; --i) r[i] = c[i - 1];
  r[0] = 0;
  if (top != 0)
    for (int i = 0; i < n; ++i) r[i] = static_cast<int>(mod(r[i] - top * f[i], p));
  return r;
}

Elt pack(const std::vector<int>& c, int p) {
  Elt code = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) code = code * p + c[i];
  return code;
}

bool x_is_primitive(const std::vector<int>& f, int p, int n) {
  std::uint64_t order = static_cast<std::uint64_t>(ipow(p, n)) - 1;
  std::vector<int> cur(n, 0);
  cur[0] = 1;
  for (std::uint64_t k = 1; k <= order; ++k) {
    cur = times_x(cur, f, p);
    bool is_one = cur[0] == 1;
    for (int i = 1; i < n && is_one; ++i) is_one = cur[i] == 0;
    if (is_one) return k == order;
  }
  return false;
}

}  // namespace

std::vector<int> smallest_primitive_poly(int p, int n) {
  if (!is_prime(p) || n < 1) throw Error(ErrorKind::InvalidParams, "bad field parameters");
  std::int64_t total = ipow(p, n);
  if (total > static_cast<std::int64_t>(kTableCap))
    throw Error(ErrorKind::TooLarge, "field larger than 2^20");
  // Non-leading coefficients are enumerated by increasing packed code.
  for (std::int64_t code = 0; code < total; ++code) {
    std::vector<int> f(n + 1, 0);
    std::int64_t c = code;
    for (int i = 0; i < n; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[n] = 1;
    if (f[0] == 0 && !(n == 1 && p == 2)) continue;
    if (n == 1) {
      // x - r is primitive iff r generates F_p^*.
      int r = static_cast<int>(mod(-f[0], p));
      if (r == 0) continue;
      int ord = 1;
      for (std::int64_t v = r; v != 1; v = v * r % p) ++ord;
      if (ord == p - 1) return f;
      continue;
    }
    if (x_is_primitive(f, p, n)) return f;
  }
  throw Error(ErrorKind::InvalidParams, "no primitive polynomial found");
}

std::vector<int> builtin_modulus(int p, int n) {
  for (const auto& e : kModulusTable)
    if (e.p == p && e.n == n) return std::vector<int>(e.coeffs, e.coeffs + n + 1);
  return smallest_primitive_poly(p, n);
}

GF::GF(int p, int n) : p_(p), n_(n) {
  if (!is_prime(p) || n < 1) throw Error(ErrorKind::InvalidParams, "bad field parameters");
  std::int64_t sz = ipow(p, n);
  if (sz > static_cast<std::int64_t>(kTableCap)) throw Error(ErrorKind::TooLarge, "field larger than 2^20");
  size_ = static_cast<std::uint32_t>(sz);
  modulus_ = builtin_modulus(p, n);
  std::uint32_t ord = order();
  exp_.assign(ord, 0);
  log_.assign(size_, 0);
  if (n == 1) {
    // x - r with root r: the generator is r.
    int r = static_cast<int>(mod(-modulus_[0], p));
    std::int64_t v = 1;
    for (std::uint32_t k = 0; k < ord; ++k) {
      exp_[k] = static_cast<Elt>(v);
      log_[v] = k;
      v = v * r % p;
    }
  } else {
    std::vector<int> cur(n, 0);
    cur[0] = 1;
    for (std::uint32_t k = 0; k < ord; ++k) {
      Elt code = pack(cur, p);
      exp_[k] = code;
      log_[code] = k;
      cur = times_x(cur, modulus_, p);
    }
  }
  if (p != 2) half_ = ord / 2;
  zech_.assign(ord, -1);
  for (std::uint32_t k = 0; k < ord; ++k) {
    // 1 + g^k, computed coefficient-wise.
    std::vector<int> c = coeffs(exp_[k]);
    c[0] = (c[0] + 1) % p;
    Elt s = from_coeffs(c);
    zech_[k] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
  }
}

Elt GF::inv(Elt a) const {
  if (a == 0) throw Error(ErrorKind::ZeroArgument, "inverse of zero");
  std::uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : order() - l];
}

Elt GF::pow(Elt a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw Error(ErrorKind::ZeroArgument, "negative power of zero");
    return 0;
  }
  return exp(static_cast<std::int64_t>(log_[a]) * mod(e, order()));
}

std::uint32_t GF::dlog(Elt a) const {
  if (a == 0) throw Error(ErrorKind::ZeroArgument, "dlog of zero");
  return log_[a];
}

std::vector<int> GF::coeffs(Elt a) const {
  std::vector<int> c(n_);
  for (int i = 0; i < n_; ++i) {
    c[i] = static_cast<int>(a % p_);
    a /= p_;
  }
  return c;
}

Elt GF::from_coeffs(const std::vector<int>& c) const {
  std::vector<int> r(n_, 0);
  for (std::size_t i = 0; i < c.size() && i < r.size(); ++i) r[i] = static_cast<int>(mod(c[i], p_));
  return pack(r, p_);
}

std::uint32_t GF::elt_order(Elt a) const {
  std::uint32_t l = dlog(a);
  return order() / std::gcd(order(), l == 0 ? order() : l);
}

namespace {

std::shared_ptr<const GF> cached_gf(int p, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GF>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto gf = std::make_shared<const GF>(p, n);
  cache.emplace(key, gf);
  return gf;
}

// Evaluate a polynomial with F_p coefficients at e in the field F.
Elt eval_poly(const GF& F, const std::vector<int>& poly, Elt e) {
  Elt acc = 0;
  for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) acc = F.add(F.mul(acc, e), F.from_int(poly[i]));
  return acc;
}

}  // namespace

FieldPtr make_field(int p, int f, int d, int aD, int M) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidParams, "p is not prime");
  if (f < 1 || d < 1) throw Error(ErrorKind::InvalidParams, "f and d must be positive");
  if (d == 1) {
    if (aD != 0) throw Error(ErrorKind::InvalidParams, "a_D must be 0 when d = 1");
  } else if (aD < 1 || aD >= d || std::gcd(aD, d) != 1) {
    throw Error(ErrorKind::InvalidParams, "a_D must lie in [1,d) and be coprime to d");
  }
  int n = f * d;
  if (M == 0) M = n;
  if (M % n != 0) throw Error(ErrorKind::InvalidParams, "M must be a multiple of f*d");
  auto fs = std::make_shared<FieldSpec>();
  fs->p = p;
  fs->f = f;
  fs->d = d;
  fs->aD = aD;
  fs->M = M;
  fs->q = ipow(p, f);
  fs->Q = ipow(fs->q, d);
  fs->kd = cached_gf(p, n);
  fs->coef = cached_gf(p, M);
  std::int64_t ord = fs->Q - 1;
  fs->frob_mult_.resize(d);
  for (int j = 0; j < d; ++j) {
    std::int64_t e = 1;
    for (int t = 0; t < (static_cast<std::int64_t>(aD) * j) % d * f; ++t) e = e * p % ord;
    fs->frob_mult_[j] = ord == 1 ? 1 : e;
  }
  // Embedding: the first root of k_D's modulus among the generators of the
  // order-(Q-1) subgroup of the coefficient field.
  const GF& C = *fs->coef;
  std::int64_t step = static_cast<std::int64_t>(C.order()) / ord;
  Elt eps = 1;
  bool found = false;
  for (std::int64_t j = 1; j <= ord && !found; ++j) {
    if (std::gcd(j, ord) != 1) continue;
    Elt cand = C.exp(j * step);
    if (eval_poly(C, fs->kd->modulus(), cand) == 0) {
      eps = cand;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::InvalidParams, "no embedding of k_D into the coefficient field");
  fs->mu_coef_ = eps;
  fs->embed_table_.assign(static_cast<std::size_t>(fs->Q), 0);
  for (std::uint32_t x = 1; x < fs->Q; ++x) fs->embed_table_[x] = C.pow(eps, fs->kd->dlog(x));
  // Additivity of the embedding is a consequence of eps being a root; the
  // table is still checked in the test suite.
  return fs;
}

Elt FieldSpec::frobenius_pow(Elt x, std::int64_t j) const {
  if (x == 0) return 0;
  return kd->exp(static_cast<std::int64_t>(kd->dlog(x)) * frob_mult(j));
}

Elt FieldSpec::embed(Elt x) const { return embed_table_[x]; }

Elt FieldSpec::char_apply(std::int64_t c, Elt x) const {
  if (x == 0) throw Error(ErrorKind::ZeroArgument, "character of zero");
  std::int64_t ord = Q - 1;
  return coef->pow(mu_coef_, mod(c, ord == 0 ? 1 : ord) * kd->dlog(x));
}

std::string FieldSpec::to_json() const {
  std::ostringstream os;
  os << "{\"p\":" << p << ",\"f\":" << f << ",\"d\":" << d << ",\"aD\":" << aD << ",\"modulus\":[";
  const auto& m = kd->modulus();
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << "]}";
  return os.str();
}

}  // namespace phl
