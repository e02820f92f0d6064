#include "phl/iwahori.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "phl/error.hpp"

namespace phl {

ExtendedWeylElt ExtendedWeylElt::identity(int m) { return {Perm::identity(m), std::vector<int>(static_cast<std::size_t>(m), 0)}; }

ExtendedWeylElt ExtendedWeylElt::translation(std::vector<int> lambda) {
  int m = static_cast<int>(lambda.size());
  return {Perm::identity(m), std::move(lambda)};
}

ExtendedWeylElt ExtendedWeylElt::finite(const Perm& w) { return {w, std::vector<int>(static_cast<std::size_t>(w.m()), 0)}; }

ExtendedWeylElt ExtendedWeylElt::s_varpi(int m) {
  std::vector<int> one_line(static_cast<std::size_t>(m));
  std::vector<int> lambda(static_cast<std::size_t>(m), 0);
  one_line[0] = m - 1;
  lambda[0] = 1;
  for (int j = 1; j < m; ++j) one_line[static_cast<std::size_t>(j)] = j - 1;
  return {Perm(one_line), lambda};
}

ExtendedWeylElt ExtendedWeylElt::simple(int m, int i) {
  if (m < 2 || i < 0 || i >= m) throw Error(ErrorKind::InvalidParams, "simple reflection index out of range");
  if (i > 0) return finite(Perm::simple(m, i));
  ExtendedWeylElt s = s_varpi(m);
  return s.inverse() * finite(Perm::simple(m, m - 1)) * s;
}

int ExtendedWeylElt::length() const {
  // [I : I n x I x^-1]: entry (w(i), w(j)) of x I x^-1 has valuation at least
  // c(i, j) + lambda_i - lambda_j, with c(a, b) = 1 below the diagonal.
  int n = m(), len = 0;
  auto c = [](int a, int b) { return a > b ? 1 : 0; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int need = c(i, j) + lambda[static_cast<std::size_t>(i)] - lambda[static_cast<std::size_t>(j)] - c(w(i), w(j));
      len += std::max(0, need);
    }
  return len;
}

MatD ExtendedWeylElt::matrix(FieldPtr F) const { return MatD::monomial(std::move(F), w.one_line(), lambda); }

ExtendedWeylElt ExtendedWeylElt::operator*(const ExtendedWeylElt& o) const {
  std::vector<int> l(lambda.size());
  for (int j = 0; j < m(); ++j) l[static_cast<std::size_t>(j)] = lambda[static_cast<std::size_t>(o.w(j))] + o.lambda[static_cast<std::size_t>(j)];
  return {w * o.w, l};
}

ExtendedWeylElt ExtendedWeylElt::inverse() const {
  Perm wi = w.inverse();
  std::vector<int> l(lambda.size());
  for (int j = 0; j < m(); ++j) l[static_cast<std::size_t>(j)] = -lambda[static_cast<std::size_t>(wi(j))];
  return {wi, l};
}

std::string ExtendedWeylElt::str() const {
  std::ostringstream os;
  os << "w=" << w.str() << ";l=(";
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ')';
  return os.str();
}

namespace {

ExtendedWeylElt omega_power(int m, int k) {
  ExtendedWeylElt s = k >= 0 ? ExtendedWeylElt::s_varpi(m) : ExtendedWeylElt::s_varpi(m).inverse();
  ExtendedWeylElt r = ExtendedWeylElt::identity(m);
  for (int i = 0; i < std::abs(k); ++i) r = r * s;
  return r;
}

MatD root_element(FieldPtr F, int m, int i, int j, Elt a) {
  MatD x = MatD::identity(F, m);
  if (a != 0) x.at(i, j) = DElement::monomial(0, a);
  return x;
}

}  // namespace

ReducedWord reduced_word(const ExtendedWeylElt& x0) {
  const int m = x0.m();
  ReducedWord r;
  ExtendedWeylElt x = x0;
  while (x.length() > 0) {
    bool found = false;
    for (int i = 0; i < m && !found; ++i) {
      ExtendedWeylElt y = ExtendedWeylElt::simple(m, i) * x;
      if (y.length() < x.length()) {
        r.word.push_back(i);
        x = y;
        found = true;
      }
    }
    if (!found) throw Error(ErrorKind::InvalidParams, "no left descent for a positive-length element");
  }
  r.omega = std::accumulate(x.lambda.begin(), x.lambda.end(), 0);
  if (!(x == omega_power(m, r.omega))) throw Error(ErrorKind::InvalidParams, "length-zero element outside the s_varpi powers");
  return r;
}

ExtendedWeylElt iwahori_label(const MatD& g) {
  Reduction r = reduce_full(g, Weighting::Iwahori);
  return {Perm(r.perm), r.exps};
}

CosetList coset_decompose(FieldPtr F, const ExtendedWeylElt& x) {
  const int m = x.m();
  ReducedWord rw = reduced_word(x);
  const GF& k = *F->kd;
  MatD S = ExtendedWeylElt::s_varpi(m).matrix(F);
  MatD Sinv = ExtendedWeylElt::s_varpi(m).inverse().matrix(F);
  CosetList out;
  out.reps = {MatD::identity(F, m)};
  out.inverses = {MatD::identity(F, m)};
  for (int letter : rw.word) {
    int i = letter == 0 ? m - 1 : letter;
    MatD s = ExtendedWeylElt::simple(m, i).matrix(F);
    std::vector<MatD> step, step_inv;
    for (Elt a = 0; a < static_cast<Elt>(F->Q); ++a) {
      MatD r = root_element(F, m, i - 1, i, a) * s;
      MatD ri = s * root_element(F, m, i - 1, i, k.neg(a));
      if (letter == 0) {
        r = Sinv * r * S;
        ri = Sinv * ri * S;
      }
      step.push_back(std::move(r));
      step_inv.push_back(std::move(ri));
    }
    std::vector<MatD> reps, inv;
    for (std::size_t u = 0; u < out.reps.size(); ++u)
      for (std::size_t v = 0; v < step.size(); ++v) {
        reps.push_back(out.reps[u] * step[v]);
        inv.push_back(step_inv[v] * out.inverses[u]);
      }
    out.reps = std::move(reps);
    out.inverses = std::move(inv);
  }
  ExtendedWeylElt om = omega_power(m, rw.omega);
  MatD O = om.matrix(F), Oi = om.inverse().matrix(F);
  for (auto& r : out.reps) r = r * O;
  for (auto& r : out.inverses) r = Oi * r;
  return out;
}

namespace {

// Column Hermite form at working precision P, or an empty string when some
// needed digit is not determined.
std::string k_coset_key_at(const MatD& g, int P) {
  const FieldSpec& F = g.field();
  const int m = g.m();
  std::vector<std::vector<DElement>> col(static_cast<std::size_t>(m), std::vector<DElement>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = g.at(i, j);
  auto sub_scaled = [&](std::vector<DElement>& dst, const std::vector<DElement>& src, const DElement& c) {
    for (int i = 0; i < m; ++i)
      if (!src[static_cast<std::size_t>(i)].is_zero())
        dst[static_cast<std::size_t>(i)] = d_sub(F, dst[static_cast<std::size_t>(i)], d_mul(F, src[static_cast<std::size_t>(i)], c));
  };
  std::vector<int> active(static_cast<std::size_t>(m));
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::vector<DElement>> H(static_cast<std::size_t>(m));
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  for (int i = m - 1; i >= 0; --i) {
    int best = -1;
    for (int j : active) {
      const DElement& e = col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (e.is_zero()) continue;
      if (!e.determined()) return {};
      if (best < 0 || e.e0() < col[static_cast<std::size_t>(best)][static_cast<std::size_t>(i)].e0()) best = j;
    }
    if (best < 0) {
      bool undetermined = false;
      for (int j : active) undetermined = undetermined || !col[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].is_zero();
      if (undetermined) return {};
      throw Error(ErrorKind::Singular, "singular matrix");
    }
    auto& pc = col[static_cast<std::size_t>(best)];
    const DElement piv = pc[static_cast<std::size_t>(i)];
    int e = piv.e0();
    a[static_cast<std::size_t>(i)] = e;
    DElement u = d_mul(F, d_inv(F, piv, P), DElement::monomial(e, 1));
    for (auto& x : pc)
      if (!x.is_zero()) x = d_mul(F, x, u);
    pc[static_cast<std::size_t>(i)] = DElement::monomial(e, 1);
    DElement vinv = DElement::monomial(-e, 1);
    for (int j : active) {
      if (j == best) continue;
      auto& cj = col[static_cast<std::size_t>(j)];
      const DElement& x = cj[static_cast<std::size_t>(i)];
      if (x.is_zero()) continue;
      DElement c = d_mul(F, vinv, x);
      sub_scaled(cj, pc, c);
      cj[static_cast<std::size_t>(i)] = DElement::zero();
    }
    H[static_cast<std::size_t>(i)] = pc;
    active.erase(std::find(active.begin(), active.end(), best));
  }
  // Reduce the entries right of each pivot modulo varpi^{a_i}, bottom row first.
  for (int i = m - 1; i >= 0; --i)
    for (int j = i + 1; j < m; ++j) {
      DElement x = H[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (x.is_zero()) continue;
      int ai = a[static_cast<std::size_t>(i)];
      if (x.abs_prec() < ai) return {};
      std::vector<Elt> low;
      if (x.determined())
        for (int t = x.e0(); t < ai; ++t) low.push_back(x.digit_at(t));
      while (!low.empty() && low.back() == 0) low.pop_back();
      DElement xl = low.empty() ? DElement::zero() : DElement::from_digits(x.e0(), std::move(low), true);
      DElement c = d_mul(F, DElement::monomial(-ai, 1), d_sub(F, x, xl));
      auto hi = H[static_cast<std::size_t>(i)];
      hi[static_cast<std::size_t>(i)] = DElement::zero();
      sub_scaled(H[static_cast<std::size_t>(j)], hi, c);
      H[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = xl;
    }
  std::ostringstream os;
  for (int i = 0; i < m; ++i) {
    os << (i ? "|" : "");
    for (int j = i; j < m; ++j) {
      DElement x = H[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (j > i && !x.is_zero() && x.determined()) {
        // Strip trailing zero digits so equal cosets print identically.
        std::vector<Elt> d = x.digits();
        while (!d.empty() && d.back() == 0) d.pop_back();
        x = d.empty() ? DElement::zero() : DElement::from_digits(x.e0(), std::move(d), true);
      }
      os << (j > i ? ";" : "") << to_text(F, x);
    }
  }
  return os.str();
}

}  // namespace

std::string k_coset_key(const MatD& g) {
  if (!g.is_exact()) throw Error(ErrorKind::InsufficientPrecision, "coset key needs an exact matrix");
  for (int P = 32; P <= 4096; P *= 2) {
    std::string s = k_coset_key_at(g, P);
    if (!s.empty()) return s;
  }
  throw Error(ErrorKind::InsufficientPrecision, "coset key not determined");
}

IwahoriElt IwahoriElt::basis(const ExtendedWeylElt& x, std::int64_t c) {
  IwahoriElt e;
  e.m = x.m();
  if (c != 0) e.coef[x] = c;
  return e;
}

IwahoriElt IwahoriElt::operator+(const IwahoriElt& o) const {
  IwahoriElt r = *this;
  if (r.m == 0) r.m = o.m;
  for (const auto& [x, c] : o.coef) {
    auto& t = r.coef[x];
    t += c;
    if (t == 0) r.coef.erase(x);
  }
  return r;
}

IwahoriElt IwahoriElt::operator*(std::int64_t s) const {
  IwahoriElt r;
  r.m = m;
  if (s == 0) return r;
  for (const auto& [x, c] : coef) r.coef[x] = c * s;
  return r;
}

IwahoriElt IwahoriElt::mod(std::int64_t p) const {
  IwahoriElt r;
  r.m = m;
  for (const auto& [x, c] : coef) {
    std::int64_t v = ((c % p) + p) % p;
    if (v) r.coef[x] = v;
  }
  return r;
}

std::string IwahoriElt::str() const {
  if (coef.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [x, c] : coef) {
    os << (first ? "" : " + ") << c << "*[" << x.str() << ']';
    first = false;
  }
  return os.str();
}

namespace {

using ProductKey = std::tuple<int, int, int, int, int, ExtendedWeylElt, ExtendedWeylElt>;

std::map<ExtendedWeylElt, std::int64_t> basis_product(const FieldPtr& F, const ExtendedWeylElt& u, const ExtendedWeylElt& v) {
  static std::mutex mu;
  static std::map<ProductKey, std::map<ExtendedWeylElt, std::int64_t>> cache;
  ProductKey key{F->p, F->f, F->d, F->aD, F->M, u, v};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  CosetList cu = coset_decompose(F, u), cv = coset_decompose(F, v);
  std::map<ExtendedWeylElt, std::int64_t> counts;
  for (const auto& x : cu.reps)
    for (const auto& y : cv.reps) ++counts[iwahori_label(x * y)];
  std::map<ExtendedWeylElt, std::int64_t> out;
  for (const auto& [w, n] : counts) {
    std::int64_t size = 1;
    for (int i = 0; i < w.length(); ++i) size *= F->Q;
    if (n % size != 0) throw Error(ErrorKind::InsufficientPrecision, "product is not left I-invariant: " + w.str());
    out[w] = n / size;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, out);
  return out;
}

}  // namespace

IwahoriElt convolve(FieldPtr F, const IwahoriElt& a, const IwahoriElt& b) {
  if (a.m != b.m) throw Error(ErrorKind::ShapeMismatch, "Hecke elements of different rank");
  IwahoriElt r;
  r.m = a.m;
  for (const auto& [u, cu] : a.coef)
    for (const auto& [v, cv] : b.coef)
      for (const auto& [w, n] : basis_product(F, u, v)) {
        auto& t = r.coef[w];
        t += cu * cv * n;
        if (t == 0) r.coef.erase(w);
      }
  return r;
}

IwahoriElt word_product(FieldPtr F, int m, const std::string& word) {
  IwahoriElt r = IwahoriElt::unit(m);
  for (char ch : word) {
    ExtendedWeylElt x;
    if (ch == 'P') {
      x = ExtendedWeylElt::s_varpi(m).inverse();
    } else if (ch == 'p') {
      x = ExtendedWeylElt::s_varpi(m);
    } else if (ch >= '1' && ch <= '9' && ch - '0' < m) {
      x = ExtendedWeylElt::simple(m, ch - '0');
    } else {
      throw Error(ErrorKind::InvalidParams, std::string("bad Hecke word letter ") + ch);
    }
    r = convolve(F, r, IwahoriElt::basis(x));
  }
  return r;
}

std::int64_t kt1k_coset_count(FieldPtr F, int m) {
  std::vector<int> t1(static_cast<std::size_t>(m), 0);
  t1[0] = 1;
  ExtendedWeylElt t = ExtendedWeylElt::translation(t1);
  std::set<ExtendedWeylElt> cells;
  for (const auto& u : all_perms(m))
    for (const auto& v : all_perms(m)) cells.insert(ExtendedWeylElt::finite(u) * t * ExtendedWeylElt::finite(v));
  std::set<std::string> keys;
  for (const auto& x : cells)
    for (const auto& r : coset_decompose(F, x).reps) keys.insert(k_coset_key(r));
  return static_cast<std::int64_t>(keys.size());
}

namespace {

std::string descending(int from, int to) {
  std::string s;
  for (int i = from; i >= to; --i) s += static_cast<char>('0' + i);
  return s;
}

}  // namespace

std::vector<RelationResult> relation_suite(FieldPtr F, int m) {
  if (m != 2 && m != 3) throw Error(ErrorKind::InvalidParams, "relation suite needs m in {2, 3}");
  if (F->Q > 9) throw Error(ErrorKind::TooLarge, "relation suite needs q^d <= 9");
  const std::int64_t p = F->p;
  std::vector<RelationResult> out;
  auto eq = [&](const std::string& name, const IwahoriElt& l, const IwahoriElt& r) {
    IwahoriElt a = l.mod(p), b = r.mod(p);
    out.push_back({name, a == b, a == b ? "" : a.str() + " vs " + b.str()});
  };
  auto W = [&](const std::string& w) { return word_product(F, m, w); };
  auto S = [&](int i) { return std::string(1, static_cast<char>('0' + i)); };

  for (int i = 1; i < m; ++i) eq("S_" + S(i) + "^2 = -S_" + S(i), W(S(i) + S(i)), W(S(i)) * -1);
  for (int i = 1; i < m; ++i)
    for (int j = i + 2; j < m; ++j) eq("S_" + S(i) + " S_" + S(j) + " = S_" + S(j) + " S_" + S(i), W(S(i) + S(j)), W(S(j) + S(i)));
  for (int i = 1; i + 1 < m; ++i)
    eq("S_" + S(i) + " S_" + S(i + 1) + " S_" + S(i) + " = S_" + S(i + 1) + " S_" + S(i) + " S_" + S(i + 1),
       W(S(i) + S(i + 1) + S(i)), W(S(i + 1) + S(i) + S(i + 1)));
  for (int i = 1; i + 1 < m; ++i) eq("Pi S_" + S(i) + " = S_" + S(i + 1) + " Pi", W("P" + S(i)), W(S(i + 1) + "P"));
  eq("Pi Pi^-1 = 1", W("Pp"), IwahoriElt::unit(m));

  for (int i = 1; i < m; ++i) {
    std::vector<int> l(static_cast<std::size_t>(m), 0);
    for (int k = 0; k < i; ++k) l[static_cast<std::size_t>(k)] = -1;
    std::string w;
    for (int k = 0; k < i; ++k) w += "P" + descending(m - 1, i);
    std::string word = "Pi";
    for (int k = m - 1; k >= i; --k) word += " S_" + S(k);
    eq("U_" + S(i) + " = (" + word + ")^" + S(i), IwahoriElt::basis(ExtendedWeylElt::translation(l)), W(w));
  }

  // I d_i sigma_i I = I s_i I ... I s_{m-1} I s_varpi I, as an identity of
  // basis elements with integer coefficients.
  for (int i = 1; i <= m; ++i) {
    std::vector<int> one_line(static_cast<std::size_t>(m)), l(static_cast<std::size_t>(m), 0);
    for (int j = 0; j < m; ++j) one_line[static_cast<std::size_t>(j)] = j;
    one_line[0] = i - 1;
    l[0] = 1;
    for (int j = 1; j < i; ++j) one_line[static_cast<std::size_t>(j)] = j - 1;
    ExtendedWeylElt target{Perm(one_line), l};
    IwahoriElt prod = IwahoriElt::unit(m);
    for (int j = i; j < m; ++j) prod = convolve(F, prod, IwahoriElt::basis(ExtendedWeylElt::simple(m, j)));
    prod = convolve(F, prod, IwahoriElt::basis(ExtendedWeylElt::s_varpi(m)));
    bool ok = prod == IwahoriElt::basis(target);
    std::string rhs;
    for (int j = i; j < m; ++j) rhs += "I s_" + S(j) + " ";
    out.push_back({"I d_" + S(i) + " sigma_" + S(i) + " I = " + rhs + "I s_varpi I", ok, ok ? "" : prod.str()});
  }

  std::int64_t expect = 0, qk = 1;
  for (int k = 0; k < m; ++k, qk *= F->Q) expect += qk;
  std::int64_t got = kt1k_coset_count(F, m);
  out.push_back({"|K t_1 K / K| = (q^{dm} - 1)/(q^d - 1)", got == expect, std::to_string(got) + " vs " + std::to_string(expect)});
  return out;
}

}  // namespace phl
