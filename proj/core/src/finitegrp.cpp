#include "phl/finitegrp.hpp"

#include <deque>

namespace phl {

namespace {

constexpr std::uint64_t kGroupCap = 1000000;
constexpr int kWeightDimCap = 10000;

// Block starts of the Levi of P_J: index i opens a block when s_i is not in J.
std::vector<int> block_starts(int m, const JSet& J) {
  std::vector<int> starts;
  for (int i = 1; i < m; ++i)
    if (!std::binary_search(J.begin(), J.end(), i)) starts.push_back(i);
  return starts;
}

// F_p-basis of F_{p^n}: the codes p^k.
std::vector<Elt> additive_basis(const GF& k) {
  std::vector<Elt> b;
  Elt c = 1;
  for (int i = 0; i < k.n(); ++i, c *= static_cast<Elt>(k.p())) b.push_back(c);
  return b;
}

// P_J x is determined by the row spans of the trailing blocks of x.
std::vector<Elt> flag_key(const GF& k, int m, const std::vector<int>& starts, const GMat& x) {
  std::vector<Elt> key;
  for (int s : starts) {
    FMat t(m - s, m);
    for (int i = s; i < m; ++i)
      for (int j = 0; j < m; ++j) t.at(i - s, j) = x[static_cast<std::size_t>(i * m + j)];
    rref(k, t);
    key.insert(key.end(), t.a.begin(), t.a.end());
  }
  return key;
}

FMat stacked_invariance(const GF& R, const std::vector<FMat>& acts) {
  int n = acts.empty() ? 0 : acts[0].cols;
  FMat big(static_cast<int>(acts.size()) * n, n);
  for (std::size_t g = 0; g < acts.size(); ++g)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        big.at(static_cast<int>(g) * n + i, j) = R.sub(acts[g].at(i, j), i == j ? 1 : 0);
  return big;
}

}  // namespace

GMat FiniteGroupCtx::identity() const {
  GMat x(static_cast<std::size_t>(m * m), 0);
  for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i * m + i)] = 1;
  return x;
}

GMat FiniteGroupCtx::mul(const GMat& a, const GMat& b) const {
  GMat c(static_cast<std::size_t>(m * m), 0);
  for (int i = 0; i < m; ++i)
    for (int l = 0; l < m; ++l) {
      Elt x = a[static_cast<std::size_t>(i * m + l)];
      if (!x) continue;
      for (int j = 0; j < m; ++j) {
        auto& z = c[static_cast<std::size_t>(i * m + j)];
        z = k->add(z, k->mul(x, b[static_cast<std::size_t>(l * m + j)]));
      }
    }
  return c;
}

GMat FiniteGroupCtx::inverse(const GMat& a) const {
  FMat x(m, m);
  x.a = a;
  return mat_inverse(*k, x).a;
}

GMat FiniteGroupCtx::perm_matrix(const Perm& w) const {
  GMat x(static_cast<std::size_t>(m * m), 0);
  for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(w(j) * m + j)] = 1;
  return x;
}

GMat FiniteGroupCtx::root_element(int i, int j, Elt a) const {
  GMat x = identity();
  x[static_cast<std::size_t>(i * m + j)] = k->add(x[static_cast<std::size_t>(i * m + j)], a);
  return x;
}

GMat FiniteGroupCtx::torus_element(int i, Elt c) const {
  GMat x = identity();
  x[static_cast<std::size_t>(i * m + i)] = c;
  return x;
}

std::vector<GMat> FiniteGroupCtx::borel_generators() const {
  std::vector<GMat> gens;
  if (k->size() > 2)
    for (int i = 0; i < m; ++i) gens.push_back(torus_element(i, k->gen()));
  auto basis = additive_basis(*k);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (Elt a : basis) gens.push_back(root_element(i, j, a));
  return gens;
}

const CosetSpace& FiniteGroupCtx::space(const JSet& J) const {
  auto it = spaces.find(J);
  if (it == spaces.end()) throw Error(ErrorKind::InvalidParams, "unknown parabolic subset");
  return it->second;
}

int FiniteGroupCtx::coset_of(const JSet& J, const GMat& x) const {
  const CosetSpace& sp = space(J);
  auto it = sp.index.find(flag_key(*k, m, block_starts(m, J), x));
  if (it == sp.index.end()) throw Error(ErrorKind::InvalidParams, "matrix is not invertible");
  return it->second;
}

FiniteGroupCtx build_context(std::int64_t Q, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParams, "m must be positive");
  int p = 0, n = 0;
  for (std::int64_t c = 2; c <= Q; ++c)
    if (Q % c == 0) {
      p = static_cast<int>(c);
      break;
    }
  if (p == 0) throw Error(ErrorKind::InvalidParams, "field size must be a prime power");
  for (std::int64_t t = Q; t > 1; t /= p, ++n)
    if (t % p != 0) throw Error(ErrorKind::InvalidParams, "field size must be a prime power");

  // |G| >= Q^m / 2, which bounds the powers below before they can overflow.
  std::uint64_t qm = 1;
  for (int i = 0; i < m; ++i) {
    qm *= static_cast<std::uint64_t>(Q);
    if (qm > 2 * kGroupCap) throw Error(ErrorKind::TooLarge, "|GL(m, F_Q)| exceeds 10^6");
  }
  std::uint64_t order = 1;
  for (int i = 0; i < m; ++i) order *= qm - static_cast<std::uint64_t>(ipow(Q, i));
  if (order > kGroupCap) throw Error(ErrorKind::TooLarge, "|GL(m, F_Q)| exceeds 10^6");

  FiniteGroupCtx ctx;
  ctx.p = p;
  ctx.n = n;
  ctx.m = m;
  ctx.Q = Q;
  ctx.order = order;
  ctx.k = std::make_shared<GF>(p, n);
  ctx.R = std::make_shared<GF>(p, 1);

  auto bgens = ctx.borel_generators();
  std::vector<GMat> gens = bgens;
  for (int i = 1; i < m; ++i) gens.push_back(ctx.perm_matrix(Perm::simple(m, i)));

  for (const JSet& J : all_jsets(m)) {
    CosetSpace sp;
    sp.J = J;
    auto starts = block_starts(m, J);
    std::deque<int> queue;
    auto visit = [&](const GMat& x) {
      auto key = flag_key(*ctx.k, m, starts, x);
      auto [it, fresh] = sp.index.emplace(std::move(key), static_cast<int>(sp.reps.size()));
      if (fresh) {
        sp.reps.push_back(x);
        queue.push_back(it->second);
      }
      return it->second;
    };
    visit(ctx.identity());
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (const GMat& g : gens) visit(ctx.mul(sp.reps[static_cast<std::size_t>(c)], g));
    }

    // Bruhat cells: the B-orbit of the coset of w^-1.
    sp.label.assign(sp.reps.size(), Perm());
    std::vector<char> seen(sp.reps.size(), 0);
    for (const Perm& w : wJ_sets(m, J).WJ) {
      int c0 = sp.index.at(flag_key(*ctx.k, m, starts, ctx.perm_matrix(w.inverse())));
      if (seen[static_cast<std::size_t>(c0)]) throw Error(ErrorKind::NormalizationError, "Bruhat cells overlap");
      std::vector<int>& cell = sp.cells[w];
      std::deque<int> q{c0};
      seen[static_cast<std::size_t>(c0)] = 1;
      while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        cell.push_back(c);
        sp.label[static_cast<std::size_t>(c)] = w;
        for (const GMat& b : bgens) {
          int d = sp.index.at(flag_key(*ctx.k, m, starts, ctx.mul(sp.reps[static_cast<std::size_t>(c)], b)));
          if (!seen[static_cast<std::size_t>(d)]) {
            seen[static_cast<std::size_t>(d)] = 1;
            q.push_back(d);
          }
        }
      }
    }
    for (char s : seen)
      if (!s) throw Error(ErrorKind::NormalizationError, "Bruhat cells do not cover the coset space");
    ctx.spaces.emplace(J, std::move(sp));
  }
  return ctx;
}

FVec g_function(const FiniteGroupCtx& ctx, const JSet& J, const Perm& w) {
  const CosetSpace& sp = ctx.space(J);
  auto it = sp.cells.find(w);
  if (it == sp.cells.end()) throw Error(ErrorKind::NotInWJ, "w is not a minimal coset representative for J");
  FVec f(sp.reps.size(), 0);
  for (int c : it->second) f[static_cast<std::size_t>(c)] = 1;
  return f;
}

FVec hecke_ts(const FiniteGroupCtx& ctx, const JSet& J, const FVec& f, int s) {
  int m = ctx.m;
  if (s < 1 || s >= m) throw Error(ErrorKind::InvalidParams, "simple reflection index out of range");
  const CosetSpace& sp = ctx.space(J);
  if (f.size() != sp.reps.size()) throw Error(ErrorKind::ShapeMismatch, "function length");
  GMat sm = ctx.perm_matrix(Perm::simple(m, s));
  // u runs over all of U_s, so u^-1 may be replaced by u.
  std::vector<GMat> right;
  for (Elt a = 0; a < ctx.k->size(); ++a) right.push_back(ctx.mul(ctx.root_element(s - 1, s, a), sm));
  FVec out(f.size(), 0);
  for (std::size_t c = 0; c < sp.reps.size(); ++c) {
    Elt acc = 0;
    for (const GMat& g : right) acc = ctx.R->add(acc, f[static_cast<std::size_t>(ctx.coset_of(J, ctx.mul(sp.reps[c], g)))]);
    out[c] = acc;
  }
  return out;
}

std::map<Perm, Elt> hecke_action(const FiniteGroupCtx& ctx, const JSet& J, const Perm& w, int s) {
  FVec f = hecke_ts(ctx, J, g_function(ctx, J, w), s);
  const CosetSpace& sp = ctx.space(J);
  std::map<Perm, Elt> out;
  FVec check(f.size(), 0);
  for (const auto& [v, cell] : sp.cells) {
    Elt a = f[static_cast<std::size_t>(cell.front())];
    if (!a) continue;
    out[v] = a;
    for (int c : cell) check[static_cast<std::size_t>(c)] = a;
  }
  if (check != f) throw Error(ErrorKind::NormalizationError, "g_w T_s is not constant on Bruhat cells");
  return out;
}

SteinbergQuotient::SteinbergQuotient(const FiniteGroupCtx& ctx, const JSet& J)
    : ctx_(&ctx), J_(J), image_(*ctx.R, static_cast<int>(ctx.space(J).reps.size())) {
  const CosetSpace& sp = ctx.space(J);
  int n = static_cast<int>(sp.reps.size());
  for (int a = 1; a < ctx.m; ++a) {
    if (std::binary_search(J.begin(), J.end(), a)) continue;
    JSet Ja = J;
    Ja.insert(std::lower_bound(Ja.begin(), Ja.end(), a), a);
    const CosetSpace& big = ctx.space(Ja);
    std::vector<FVec> fibres(big.reps.size(), FVec(static_cast<std::size_t>(n), 0));
    for (int c = 0; c < n; ++c) fibres[static_cast<std::size_t>(ctx.coset_of(Ja, sp.reps[static_cast<std::size_t>(c)]))][static_cast<std::size_t>(c)] = 1;
    for (const FVec& f : fibres) image_.add(f);
  }
  std::vector<char> piv(static_cast<std::size_t>(n), 0);
  for (int c : image_.pivots()) piv[static_cast<std::size_t>(c)] = 1;
  for (int c = 0; c < n; ++c)
    if (!piv[static_cast<std::size_t>(c)]) free_.push_back(c);
}

FVec SteinbergQuotient::project(const FVec& f) const {
  FVec r = image_.reduce(f);
  FVec v(free_.size());
  for (std::size_t i = 0; i < free_.size(); ++i) v[i] = r[static_cast<std::size_t>(free_[i])];
  return v;
}

FVec SteinbergQuotient::lift(const FVec& v) const {
  if (v.size() != free_.size()) throw Error(ErrorKind::ShapeMismatch, "quotient vector length");
  FVec f(static_cast<std::size_t>(image_.ambient()), 0);
  for (std::size_t i = 0; i < free_.size(); ++i) f[static_cast<std::size_t>(free_[i])] = v[i];
  return f;
}

FMat SteinbergQuotient::action(const GMat& h) const {
  const CosetSpace& sp = ctx_->space(J_);
  GMat hinv = ctx_->inverse(h);
  int d = dim();
  FMat out(d, d);
  for (int i = 0; i < d; ++i) {
    // h . delta_c = delta_{c h^-1}
    FVec f(static_cast<std::size_t>(image_.ambient()), 0);
    f[static_cast<std::size_t>(ctx_->coset_of(J_, ctx_->mul(sp.reps[static_cast<std::size_t>(free_[static_cast<std::size_t>(i)])], hinv)))] = 1;
    FVec col = project(f);
    for (int j = 0; j < d; ++j) out.at(j, i) = col[static_cast<std::size_t>(j)];
  }
  return out;
}

FVec SteinbergQuotient::apply_ts(const FVec& v, int s) const { return project(hecke_ts(*ctx_, J_, lift(v), s)); }

SteinbergInvariants steinberg_binvariants(const FiniteGroupCtx& ctx, const JSet& J) {
  SteinbergQuotient st(ctx, J);
  SteinbergInvariants out;
  out.dim_ind = st.dim_ind();
  out.dim_st = st.dim();
  std::vector<FMat> acts;
  for (const GMat& b : ctx.borel_generators()) acts.push_back(st.action(b));
  if (out.dim_st == 0) {
    out.dim_binv = 0;
  } else if (acts.empty()) {
    out.dim_binv = out.dim_st;
  } else {
    out.dim_binv = static_cast<int>(nullspace(*ctx.R, stacked_invariance(*ctx.R, acts)).size());
  }

  bool ok = true;
  FMat basis(0, out.dim_st);
  for (const Perm& w : wJ_sets(ctx.m, J).Wpr) {
    FVec v = st.project(g_function(ctx, J, w));
    for (const FMat& a : acts) ok = ok && mat_vec(*ctx.R, a, v) == v;
    basis.rows += 1;
    basis.a.insert(basis.a.end(), v.begin(), v.end());
    out.basis.emplace(w, std::move(v));
  }
  int rk = basis.rows ? rank(*ctx.R, basis) : 0;
  out.basis_ok = ok && rk == basis.rows && rk == out.dim_binv;
  return out;
}

bool generates_zJ(const FiniteGroupCtx& ctx, const SteinbergQuotient& st, const FVec& v) {
  Span span(*ctx.R, st.dim());
  std::deque<FVec> queue;
  if (span.add(v)) queue.push_back(v);
  while (!queue.empty()) {
    FVec x = std::move(queue.front());
    queue.pop_front();
    for (int s = 1; s < ctx.m; ++s) {
      FVec y = st.apply_ts(x, s);
      if (span.add(y)) queue.push_back(std::move(y));
    }
  }
  return span.contains(st.project(g_function(ctx, st.J(), wJ_sets(ctx.m, st.J()).zJ)));
}

int Gl2Weight::index(const std::vector<int>& i) const {
  int idx = 0;
  for (std::size_t j = r.size(); j-- > 0;) idx = idx * (r[j] + 1) + i[j];
  return idx;
}

bool Gl2Weight::regular() const {
  for (int x : r)
    if (x) return true;
  return false;
}

FMat Gl2Weight::matrix(Elt a, Elt b, Elt c, Elt d) const {
  const GF& C = *F->coef;
  const GF& k = *F->kd;
  Elt det = k.sub(k.mul(a, d), k.mul(b, c));
  Elt chi = F->char_apply(this->c, det);
  // Per factor: column i holds the coefficients of (aX + cY)^{r-i} (bX + dY)^i in Y-degree.
  std::vector<FMat> factors;
  std::int64_t frob = 1;
  for (int rj : r) {
    Elt A = C.pow(F->embed(a), frob), B = C.pow(F->embed(b), frob);
    Elt Cc = C.pow(F->embed(c), frob), D = C.pow(F->embed(d), frob);
    FMat m(rj + 1, rj + 1);
    for (int i = 0; i <= rj; ++i) {
      std::vector<Elt> poly{1};
      auto times = [&](Elt x0, Elt y1) {
        std::vector<Elt> nxt(poly.size() + 1, 0);
        for (std::size_t t = 0; t < poly.size(); ++t) {
          nxt[t] = C.add(nxt[t], C.mul(poly[t], x0));
          nxt[t + 1] = C.add(nxt[t + 1], C.mul(poly[t], y1));
        }
        poly = std::move(nxt);
      };
      for (int t = 0; t < rj - i; ++t) times(A, Cc);
      for (int t = 0; t < i; ++t) times(B, D);
      for (int t = 0; t <= rj; ++t) m.at(t, i) = poly[static_cast<std::size_t>(t)];
    }
    factors.push_back(std::move(m));
    frob *= F->p;
  }
  FMat out(dim, dim);
  std::vector<int> src(r.size(), 0), dst(r.size(), 0);
  for (int col = 0; col < dim; ++col) {
    int t = col;
    for (std::size_t j = 0; j < r.size(); ++j) {
      src[j] = t % (r[j] + 1);
      t /= r[j] + 1;
    }
    for (int row = 0; row < dim; ++row) {
      int u = row;
      Elt e = chi;
      for (std::size_t j = 0; j < r.size() && e; ++j) {
        dst[j] = u % (r[j] + 1);
        u /= r[j] + 1;
        e = C.mul(e, factors[j].at(dst[j], src[j]));
      }
      out.at(row, col) = e;
    }
  }
  return out;
}

Gl2Weight weight_gl2(FieldPtr F, std::vector<int> r, std::int64_t c) {
  if (!F) throw Error(ErrorKind::InvalidParams, "missing field");
  if (static_cast<int>(r.size()) != F->f * F->d) throw Error(ErrorKind::InvalidParams, "r must have f*d entries");
  std::int64_t dim = 1;
  for (int x : r) {
    if (x < 0 || x > F->p - 1) throw Error(ErrorKind::InvalidParams, "r entries must lie in [0, p-1]");
    dim *= x + 1;
    if (dim > kWeightDimCap) throw Error(ErrorKind::DimensionCap, "weight dimension exceeds 10^4");
  }
  Gl2Weight V;
  V.F = std::move(F);
  V.r = std::move(r);
  V.c = c;
  V.dim = static_cast<int>(dim);
  return V;
}

namespace {

std::vector<FMat> unipotent_minus_one(const Gl2Weight& V) {
  const GF& C = *V.F->coef;
  std::vector<FMat> out;
  for (Elt b : additive_basis(*V.F->kd)) {
    FMat u = V.matrix(1, b, 0, 1);
    out.push_back(mat_sub(C, u, FMat::identity(V.dim)));
  }
  return out;
}

}  // namespace

std::vector<FVec> weight_u_invariants(const Gl2Weight& V) {
  const GF& C = *V.F->coef;
  auto ms = unipotent_minus_one(V);
  FMat big(0, V.dim);
  for (const FMat& x : ms) {
    big.rows += x.rows;
    big.a.insert(big.a.end(), x.a.begin(), x.a.end());
  }
  return nullspace(C, big);
}

Span weight_u_augmentation(const Gl2Weight& V) {
  Span s(*V.F->coef, V.dim);
  for (const FMat& x : unipotent_minus_one(V))
    for (int j = 0; j < V.dim; ++j) s.add(x.column(j));
  return s;
}

}  // namespace phl
