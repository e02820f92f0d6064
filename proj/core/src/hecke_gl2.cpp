#include "phl/hecke_gl2.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <random>

#include "phl/error.hpp"

namespace phl {

namespace {

// C_n(nu): ones on the superdiagonal, nu^-1 in the bottom-left corner.
FMat cyclic_block(const GF& K, int n, Elt nu) {
  FMat c(n, n);
  for (int i = 0; i + 1 < n; ++i) c.at(i, i + 1) = 1;
  c.at(n - 1, 0) = K.add(c.at(n - 1, 0), K.inv(nu));
  return c;
}

FMat kron(const GF& K, const FMat& x, const FMat& y) {
  FMat r(x.rows * y.rows, x.cols * y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x.at(i, j) != 0)
        for (int k = 0; k < y.rows; ++k)
          for (int l = 0; l < y.cols; ++l) r.at(i * y.rows + k, j * y.cols + l) = K.mul(x.at(i, j), y.at(k, l));
  return r;
}

void put_block(FMat& dst, int r0, int c0, const FMat& src) {
  for (int i = 0; i < src.rows; ++i)
    for (int j = 0; j < src.cols; ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

FMat transpose(const FMat& x) {
  FMat t(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) t.at(j, i) = x.at(i, j);
  return t;
}

FVec flatten(const FMat& x) { return x.a; }

DxIrrep with_eta(const DxIrrep& r, Elt eta) { return dx_irrep(r.F, r.c, eta); }

}  // namespace

int stabilizer_index(const FieldSpec& F, std::int64_t c) {
  const std::int64_t n = F.Q - 1;
  for (int k = 1; k <= F.d; ++k)
    if (mod(c * F.frob_mult(k) - c, n) == 0) return k;
  return F.d;
}

Elt DxIrrep::teich_value(Elt x, int a) const { return F->char_apply(c, F->frobenius_pow(x, a)); }

FMat DxIrrep::teich_action(Elt x) const {
  FMat m(d0, d0);
  for (int a = 0; a < d0; ++a) m.at(a, a) = teich_value(x, a);
  return m;
}

DxIrrep dx_irrep(FieldPtr F, std::int64_t c, Elt eta) {
  if (eta == 0) throw Error(ErrorKind::ZeroArgument, "eta must be a unit");
  DxIrrep r;
  r.F = F;
  r.c = mod(c, F->Q - 1);
  r.eta = eta;
  r.d0 = stabilizer_index(*F, r.c);
  r.xi = F->char_apply(r.c, F->mu());
  r.varpi_action = FMat(r.d0, r.d0);
  for (int a = 1; a < r.d0; ++a) r.varpi_action.at(a - 1, a) = 1;
  r.varpi_action.at(r.d0 - 1, 0) = eta;
  return r;
}

FMat ProPIwahoriModule::H_delta(Elt x, Elt y) const {
  const GF& K = *rho1.F->coef;
  int d1 = rho1.d0, d2 = rho2.d0, n = d1 * d2;
  FMat h(e, e);
  Elt xq = rho1.F->frobenius_pow(x, 1);
  for (int a = 0; a < d1; ++a)
    for (int b = 0; b < d2; ++b) {
      int i = a * d2 + b;
      h.at(i, i) = K.mul(rho1.teich_value(x, a), rho2.teich_value(y, b));
      h.at(n + i, n + i) = K.mul(rho1.teich_value(y, a), rho2.teich_value(xq, b));
    }
  return h;
}

std::vector<FMat> ProPIwahoriModule::generators() const {
  Elt mu = rho1.F->mu();
  return {H_omega, H_s, H_delta(mu, 1), H_delta(1, mu)};
}

ProPIwahoriModule build_module(const DxIrrep& rho1_in, const DxIrrep& rho2_in) {
  if (rho1_in.F != rho2_in.F && !(rho1_in.F->p == rho2_in.F->p && rho1_in.F->f == rho2_in.F->f &&
                                  rho1_in.F->d == rho2_in.F->d && rho1_in.F->aD == rho2_in.F->aD &&
                                  rho1_in.F->M == rho2_in.F->M))
    throw Error(ErrorKind::InvalidParams, "both representations must live over the same field");
  const FieldSpec& F = *rho1_in.F;
  const GF& K = *F.coef;
  ProPIwahoriModule M;
  int d1 = rho1_in.d0, d2 = rho2_in.d0;
  Elt theta = 1;
  if (rho1_in.eta != 1) {
    bool found = false;
    for (Elt t = 1; t < static_cast<Elt>(K.size()); ++t)
      if (K.pow(t, d1) == rho1_in.eta) {
        theta = t;
        found = true;
        break;
      }
    if (!found) throw Error(ErrorKind::NormalizationError, "eta1 has no d1-th root in the coefficient field");
  }
  M.twist = theta;
  M.rho1 = with_eta(rho1_in, 1);
  M.rho2 = with_eta(rho2_in, K.mul(rho2_in.eta, K.inv(K.pow(theta, d2))));
  M.e = 2 * d1 * d2;
  M.lambda = K.inv(M.rho2.eta);
  M.tau = F.p == 2 ? 1 : K.neg(M.rho1.teich_value(F.kd->neg(1), 0));

  if (d1 == d2)
    for (int k = 0; k < d1; ++k)
      if (M.rho2.teich_value(F.mu(), k) == M.rho1.xi) {
        M.k = k;
        break;
      }

  int n = d1 * d2;
  M.H_omega = FMat(M.e, M.e);
  put_block(M.H_omega, 0, n, FMat::identity(n));
  put_block(M.H_omega, n, 0, kron(K, cyclic_block(K, d1, 1), cyclic_block(K, d2, M.lambda)));

  M.H_s = FMat(M.e, M.e);
  put_block(M.H_s, n, 0, kron(K, FMat::identity(d1), cyclic_block(K, d2, M.lambda)));
  if (M.k >= 0)
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b)
        if (mod(a + M.k - b - 1, d1) == 0) M.H_s.at(n + a * d2 + b, n + a * d2 + b) = M.tau;
  return M;
}

Span spin(const GF& K, const std::vector<FMat>& gens, const FVec& v) {
  int n = static_cast<int>(v.size());
  Span S(K, n);
  std::vector<FVec> queue;
  if (S.add(v)) queue.push_back(v);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      FVec w = mat_vec(K, g, queue[i]);
      if (S.add(w)) queue.push_back(std::move(w));
      if (S.dim() == n) return S;
    }
  return S;
}

SimplicityVerdict simplicity_check(const GF& K, const std::vector<FMat>& gens, std::uint64_t seed) {
  if (gens.empty()) throw Error(ErrorKind::InvalidParams, "no generators");
  const int n = gens[0].rows;
  SimplicityVerdict out;

  // Algebra span, closed under right multiplication by the generators.
  Span A(K, n * n);
  std::vector<FMat> elems;
  FMat I = FMat::identity(n);
  A.add(flatten(I));
  elems.push_back(I);
  for (std::size_t i = 0; i < elems.size() && A.dim() < n * n; ++i)
    for (const auto& g : gens) {
      FMat y = mat_mul(K, elems[i], g);
      if (A.add(flatten(y))) elems.push_back(std::move(y));
    }
  out.algebra_dim = A.dim();
  if (out.algebra_dim == n * n) {
    out.simple = out.simple_over_field = true;
    out.method = "burnside";
    return out;
  }

  auto proper = [&](const Span& S) { return S.dim() > 0 && S.dim() < n; };
  for (int i = 0; i < n; ++i) {
    FVec e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    Span S = spin(K, gens, e);
    if (proper(S)) {
      out.witness = S.rows();
      out.method = "spin";
      return out;
    }
  }

  std::vector<FMat> gens_t;
  for (const auto& g : gens) gens_t.push_back(transpose(g));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Elt> coef(0, static_cast<Elt>(K.size() - 1));
  for (int attempt = 0; attempt < 256; ++attempt) {
    FMat theta(n, n);
    for (const auto& x : elems) {
      Elt r = coef(rng);
      if (r == 0) continue;
      for (std::size_t j = 0; j < theta.a.size(); ++j) theta.a[j] = K.add(theta.a[j], K.mul(r, x.a[j]));
    }
    auto ker = nullspace(K, theta);
    if (ker.empty()) continue;
    // Kernels of dimension above 3 make the enumeration expensive; keep looking.
    if (ker.size() > 3 && attempt < 200) continue;
    // Every nonzero kernel vector up to scalars: last nonzero coefficient 1.
    const std::size_t kd = ker.size();
    const std::uint64_t qs = K.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < kd; ++i) total *= qs;
    for (std::uint64_t code = 1; code < total; ++code) {
      std::vector<Elt> cf(kd);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < kd; ++i, c /= qs) cf[i] = static_cast<Elt>(c % qs);
      auto lead = std::find_if(cf.rbegin(), cf.rend(), [](Elt x) { return x != 0; });
      if (*lead != 1) continue;
      FVec v(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < kd; ++i)
        if (cf[i])
          for (int j = 0; j < n; ++j)
            v[static_cast<std::size_t>(j)] = K.add(v[static_cast<std::size_t>(j)], K.mul(cf[i], ker[i][static_cast<std::size_t>(j)]));
      Span S = spin(K, gens, v);
      if (proper(S)) {
        out.witness = S.rows();
        out.method = "norton";
        return out;
      }
    }
    auto ker_t = nullspace(K, transpose(theta));
    Span W = spin(K, gens_t, ker_t.front());
    if (proper(W)) {
      FMat ann(W.dim(), n);
      for (int i = 0; i < W.dim(); ++i)
        for (int j = 0; j < n; ++j) ann.at(i, j) = W.rows()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      out.witness = nullspace(K, ann);
      out.method = "norton-dual";
      return out;
    }
    out.simple_over_field = true;
    out.method = "norton";
    return out;
  }
  // Every sampled element was invertible: the algebra is a division algebra
  // and K^n is a sum of copies of its regular module.
  out.simple_over_field = out.algebra_dim == n;
  out.method = "division";
  return out;
}

SimplicityVerdict simplicity_check(const ProPIwahoriModule& M) {
  return simplicity_check(*M.rho1.F->coef, M.generators());
}

int character_family_rank(const ProPIwahoriModule& M, int j, int* count) {
  const FieldSpec& F = *M.rho1.F;
  int d1 = M.rho1.d0, d2 = M.rho2.d0, g = std::gcd(d1, d2);
  std::vector<Elt> units;
  for (std::int64_t t = 0; t < F.Q - 1; ++t) units.push_back(F.kd->pow(F.mu(), t));
  int cols = static_cast<int>(units.size() * units.size());
  std::vector<FVec> rows;
  for (int k1 = 0; k1 < d1; ++k1)
    for (int k2 = 0; k2 < d2; ++k2) {
      if (mod(k1 - k2 - j, g) != 0) continue;
      FVec r1, r2;
      for (Elt x : units)
        for (Elt y : units) {
          r1.push_back(F.coef->mul(M.rho1.teich_value(x, k1), M.rho2.teich_value(y, k2)));
          r2.push_back(F.coef->mul(M.rho1.teich_value(y, k1), M.rho2.teich_value(x, k2 + 1)));
        }
      rows.push_back(std::move(r1));
      rows.push_back(std::move(r2));
    }
  if (count) *count = static_cast<int>(rows.size());
  FMat m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int c = 0; c < cols; ++c) m.at(static_cast<int>(i), c) = rows[i][static_cast<std::size_t>(c)];
  return rank(*F.coef, m);
}

std::string Vertex::key() const { return to_text(h); }

namespace {

std::vector<Elt> res_mul(const GF& K, const std::vector<Elt>& x, const std::vector<Elt>& y) {
  return {K.add(K.mul(x[0], y[0]), K.mul(x[1], y[2])), K.add(K.mul(x[0], y[1]), K.mul(x[1], y[3])),
          K.add(K.mul(x[2], y[0]), K.mul(x[3], y[2])), K.add(K.mul(x[2], y[1]), K.mul(x[3], y[3]))};
}

std::optional<Canonical> canonicalize_at(const MatD& g, int P) {
  const FieldPtr& Fp = g.field_ptr();
  const FieldSpec& F = *Fp;
  const GF& k = *F.kd;
  DElement p11 = g.at(0, 0), p12 = g.at(0, 1), p21 = g.at(1, 0), p22 = g.at(1, 1);
  if (p12.is_zero() && p22.is_zero()) throw Error(ErrorKind::Singular, "singular matrix");
  bool swap = p22.is_zero() || (!p12.is_zero() && p12.e0() < p22.e0());
  if (swap) {
    std::swap(p11, p21);
    std::swap(p12, p22);
  }
  DElement inv22 = d_inv(F, p22, P);
  DElement t = p12.is_zero() ? DElement::zero() : d_mul(F, p12, inv22);
  DElement a11 = d_sub(F, p11, d_mul(F, t, p21));
  if (!a11.determined()) {
    if (a11.is_zero()) throw Error(ErrorKind::Singular, "singular matrix");
    return std::nullopt;
  }
  int a = a11.e0(), b = p22.e0();
  DElement u1 = d_mul(F, DElement::monomial(a, 1), d_inv(F, a11, P));
  DElement u2 = d_mul(F, DElement::monomial(b, 1), inv22);
  DElement cfull = d_mul(F, u2, p21);
  if (cfull.abs_prec() < a + 1 || u1.abs_prec() < 1 || u2.abs_prec() < 1 || t.abs_prec() < 1) return std::nullopt;
  std::vector<Elt> cd;
  int ce = 0;
  if (!cfull.is_zero() && !cfull.is_inexact_zero() && cfull.e0() < a) {
    ce = cfull.e0();
    for (int e = ce; e < a; ++e) cd.push_back(cfull.digit_at(e));
    while (!cd.empty() && cd.back() == 0) cd.pop_back();
  }
  DElement c = cd.empty() ? DElement::zero() : DElement::from_digits(ce, std::move(cd), true);
  DElement tau = d_mul(F, d_sub(F, cfull, c), DElement::monomial(-a, 1));

  Canonical out;
  out.vertex.a = a;
  out.vertex.b = b;
  out.vertex.h = MatD(Fp, 2);
  out.vertex.h.at(0, 0) = DElement::monomial(a, 1);
  out.vertex.h.at(0, 1) = DElement::zero();
  out.vertex.h.at(1, 0) = c;
  out.vertex.h.at(1, 1) = DElement::monomial(b, 1);
  std::vector<Elt> L = {1, 0, k.neg(tau.digit_at(0)), 1};
  std::vector<Elt> D = {u1.digit_at(0), 0, 0, u2.digit_at(0)};
  std::vector<Elt> E = {1, k.neg(t.digit_at(0)), 0, 1};
  std::vector<Elt> Pm = swap ? std::vector<Elt>{0, 1, 1, 0} : std::vector<Elt>{1, 0, 0, 1};
  out.k0_bar = res_mul(k, res_mul(k, res_mul(k, L, D), E), Pm);
  return out;
}

}  // namespace

Canonical canonicalize(const MatD& g) {
  if (g.m() != 2) throw Error(ErrorKind::ShapeMismatch, "vertices need 2 x 2 matrices");
  if (!g.is_exact()) throw Error(ErrorKind::InsufficientPrecision, "canonical form needs an exact matrix");
  for (int P = 32; P <= 4096; P *= 2)
    if (auto c = canonicalize_at(g, P)) return *c;
  throw Error(ErrorKind::Singular, "canonical form not determined");
}

int tree_distance(const Vertex& x, const Vertex& y) {
  const FieldSpec& F = x.h.field();
  const DElement& c = y.h.at(1, 0);
  MatD inv(y.h.field_ptr(), 2);
  inv.at(0, 0) = DElement::monomial(-y.a, 1);
  inv.at(0, 1) = DElement::zero();
  inv.at(1, 0) = d_neg(F, d_mul(F, d_mul(F, DElement::monomial(-y.b, 1), c), DElement::monomial(-y.a, 1)));
  inv.at(1, 1) = DElement::monomial(-y.b, 1);
  CartanClass cc = smith(x.h * inv);
  const auto& e = cc.exponents;
  return std::abs(e[1] - e[0]);
}

TreeMetrics tree_metrics(const std::vector<Vertex>& X) {
  TreeMetrics m;
  if (X.empty()) return m;
  int lo = X[0].v_beta(), hi = lo;
  std::map<int, std::vector<const Vertex*>> by_level;
  for (const auto& v : X) {
    lo = std::min(lo, v.v_beta());
    hi = std::max(hi, v.v_beta());
    by_level[v.v_beta()].push_back(&v);
  }
  m.e_Z = hi - lo + 1;
  for (const auto& [lvl, vs] : by_level)
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) m.delta_T = std::max(m.delta_T, tree_distance(*vs[i], *vs[j]));
  return m;
}

std::vector<Vertex> IndFunction::support() const {
  std::vector<Vertex> s;
  for (const auto& [k, t] : terms) s.push_back(t.first);
  return s;
}

TreeHecke::TreeHecke(Gl2Weight V_, int d0_, Elt chi_T_, Elt chi_Z_)
    : V(std::move(V_)), d0(d0_), chi_T(chi_T_), chi_Z(chi_Z_) {
  const FieldSpec& F = *V.F;
  if (d0 < 1 || F.d % d0 != 0) throw Error(ErrorKind::InvalidParams, "d0 must divide d");
  if (chi_T == 0 || chi_Z == 0) throw Error(ErrorKind::ZeroArgument, "Hecke eigenvalues must be units");
  int idx = V.index(V.r);
  auto psi = [&](Elt a, Elt d) { return V.matrix(a, 0, 0, d).at(idx, idx); };
  Elt mu = F.mu();
  for (int a = 0; a < F.d; ++a) {
    Elt s = F.frobenius_pow(mu, a);
    bool expect = a % d0 == 0;
    if ((psi(s, 1) == psi(mu, 1)) != expect || (psi(1, s) == psi(1, mu)) != expect)
      throw Error(ErrorKind::InvalidParams, "the weight does not have the stated stabilizer index d0");
  }
}

void TreeHecke::add_term(IndFunction& f, const MatD& x_inv, const FVec& v, Elt scale) const {
  const GF& K = *V.F->coef;
  Canonical can = canonicalize(x_inv);
  const auto& r = can.k0_bar;
  FVec w = mat_vec(K, V.matrix(r[0], r[1], r[2], r[3]), v);
  for (auto& x : w) x = K.mul(scale, x);
  std::string key = can.vertex.key();
  auto it = f.terms.find(key);
  if (it == f.terms.end()) {
    if (std::all_of(w.begin(), w.end(), [](Elt x) { return x == 0; })) return;
    f.terms.emplace(key, std::make_pair(can.vertex, std::move(w)));
    return;
  }
  FVec& acc = it->second.second;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = K.add(acc[i], w[i]);
  if (std::all_of(acc.begin(), acc.end(), [](Elt x) { return x == 0; })) f.terms.erase(it);
}

IndFunction TreeHecke::bracket(const MatD& x_inv, const FVec& v) const {
  IndFunction f;
  add_term(f, x_inv, v, 1);
  return f;
}

const std::vector<MatD>& TreeHecke::coset_reps() const {
  if (!reps_.empty()) return reps_;
  const FieldPtr& F = V.F;
  const std::int64_t Q = F->Q;
  MatD phi = MatD::diag(F, {d0, 0});
  std::map<std::string, MatD> seen;
  std::vector<MatD> reps;
  std::int64_t total = 1;
  for (int e = 0; e < d0; ++e) total *= Q;
  MatD s(F, 2);
  s.at(0, 1) = DElement::one();
  s.at(1, 0) = DElement::one();
  for (std::int64_t code = 0; code < total; ++code) {
    std::vector<Elt> dig;
    std::int64_t c = code;
    for (int e = 0; e < d0; ++e, c /= Q) dig.push_back(static_cast<Elt>(c % Q));
    while (!dig.empty() && dig.back() == 0) dig.pop_back();
    MatD n = MatD::identity(F, 2);
    n.at(1, 0) = dig.empty() ? DElement::zero() : DElement::from_digits(0, dig, true);
    for (const MatD& k : {n, n * s}) {
      std::string key = canonicalize(phi * k).vertex.key();
      if (seen.emplace(key, k).second) reps.push_back(k);
    }
  }
  std::int64_t expect = (Q + 1);
  for (int e = 1; e < d0; ++e) expect *= Q;
  if (static_cast<std::int64_t>(reps.size()) != expect)
    throw Error(ErrorKind::NormalizationError, "double coset decomposition has the wrong size");
  reps_ = std::move(reps);
  return reps_;
}

FVec TreeHecke::p_U(const FVec& v) const {
  std::vector<int> top(V.r.begin(), V.r.end());
  int idx = V.index(top);
  FVec w(v.size(), 0);
  w[static_cast<std::size_t>(idx)] = v[static_cast<std::size_t>(idx)];
  return w;
}

IndFunction TreeHecke::apply(TreeOp op, const MatD& x_inv, const FVec& v) const {
  const GF& K = *V.F->coef;
  const auto& reps = coset_reps();
  auto kv = [&](const MatD& k, const FVec& w) {
    auto r = k.residue();
    return mat_vec(K, V.matrix(r[0], r[1], r[2], r[3]), w);
  };
  MatD phi1 = MatD::diag(V.F, {d0, 0});
  MatD phi2inv = MatD::diag(V.F, {0, -d0});
  IndFunction f;
  switch (op) {
    case TreeOp::T:
      for (const auto& k : reps) add_term(f, phi1 * k * x_inv, p_U(kv(k, v)), 1);
      return f;
    case TreeOp::Y:
      for (const auto& k : reps) add_term(f, phi1 * k * x_inv, p_U(kv(k, v)), 1);
      add_term(f, x_inv, v, K.neg(chi_T));
      return f;
    case TreeOp::YPrime:
      for (const auto& k : reps) add_term(f, phi2inv * k * x_inv, p_U(kv(k, v)), chi_Z);
      add_term(f, x_inv, v, K.neg(chi_T));
      return f;
    case TreeOp::Z: {
      f = apply(TreeOp::Y, x_inv, v);
      Elt s = K.inv(chi_T);
      for (const auto& k : reps) {
        FVec w = p_U(kv(k, v));
        if (std::all_of(w.begin(), w.end(), [](Elt x) { return x == 0; })) continue;
        IndFunction g = apply(TreeOp::YPrime, phi1 * k * x_inv, w);
        for (const auto& [key, t] : g.terms) add_term(f, t.first.h, t.second, s);
      }
      return f;
    }
  }
  return f;
}

}  // namespace phl
