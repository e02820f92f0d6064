#include <map>
#include <random>

#include "doctest.h"
#include "phl/finitegrp.hpp"

using namespace phl;

namespace {

const FiniteGroupCtx& ctx_for(std::int64_t Q, int m) {
  static std::map<std::pair<std::int64_t, int>, FiniteGroupCtx> cache;
  auto key = std::make_pair(Q, m);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_context(Q, m)).first;
  return it->second;
}

std::int64_t ipow_i(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Random element of P_J: block upper triangular with invertible diagonal blocks.
GMat random_parabolic(const FiniteGroupCtx& ctx, const JSet& J, std::mt19937& rng) {
  int m = ctx.m;
  std::vector<int> block(static_cast<std::size_t>(m), 0);
  for (int i = 1; i < m; ++i)
    block[static_cast<std::size_t>(i)] = block[static_cast<std::size_t>(i - 1)] + (std::binary_search(J.begin(), J.end(), i) ? 0 : 1);
  std::uniform_int_distribution<Elt> any(0, ctx.k->size() - 1);
  for (;;) {
    GMat x(static_cast<std::size_t>(m * m), 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (block[static_cast<std::size_t>(i)] <= block[static_cast<std::size_t>(j)]) x[static_cast<std::size_t>(i * m + j)] = any(rng);
    FMat t(m, m);
    t.a = x;
    if (rank(*ctx.k, t) == m) return x;
  }
}

std::vector<std::pair<std::int64_t, int>> small_groups() { return {{2, 2}, {3, 2}, {4, 2}, {2, 3}}; }

}  // namespace

TEST_CASE("finite group contexts: orders and flag counts") {
  CHECK(ctx_for(2, 2).order == 6);
  CHECK(ctx_for(2, 2).space({}).reps.size() == 3);
  CHECK(ctx_for(2, 3).order == 168);
  CHECK(ctx_for(2, 3).space({}).reps.size() == 21);
  CHECK(ctx_for(2, 3).space({1}).reps.size() == 7);
  CHECK(ctx_for(2, 3).space({1, 2}).reps.size() == 1);
  CHECK(ctx_for(4, 2).space({}).reps.size() == 5);
  CHECK(ctx_for(3, 3).space({}).reps.size() == 13 * 4);
  CHECK_THROWS_AS(build_context(7, 3), Error);
  CHECK_THROWS_AS(build_context(6, 2), Error);
  try {
    build_context(7, 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("finite group contexts: cosets and Bruhat cells") {
  std::mt19937 rng(7);
  for (auto [Q, m] : std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    const auto& ctx = ctx_for(Q, m);
    for (const JSet& J : all_jsets(m)) {
      const auto& sp = ctx.space(J);
      // Left P_J-invariance of the coset key.
      for (std::size_t c = 0; c < sp.reps.size(); ++c) {
        CHECK(ctx.coset_of(J, sp.reps[c]) == static_cast<int>(c));
        GMat y = ctx.mul(random_parabolic(ctx, J, rng), sp.reps[c]);
        CHECK(ctx.coset_of(J, y) == static_cast<int>(c));
      }
      // |P_J w^-1 B / B| = Q^{l(w)} and the cells partition P_J \ G.
      std::size_t total = 0;
      for (const auto& [w, cell] : sp.cells) {
        CHECK(cell.size() == static_cast<std::size_t>(ipow_i(Q, w.length())));
        total += cell.size();
      }
      CHECK(total == sp.reps.size());
      CHECK(sp.cells.size() == wJ_sets(m, J).WJ.size());
    }
  }
}

TEST_CASE("Steinberg quotients: dimensions and B-invariants") {
  SUBCASE("GL(2, F_2) examples") {
    const auto& ctx = ctx_for(2, 2);
    auto inv = steinberg_binvariants(ctx, {});
    CHECK(inv.dim_st == 2);
    CHECK(inv.dim_binv == 1);
    auto top = steinberg_binvariants(ctx, {1});
    CHECK(top.dim_st == 1);
    CHECK(top.dim_binv == 1);
  }
  SUBCASE("GL(3, F_2), J = {1}") {
    auto inv = steinberg_binvariants(ctx_for(2, 3), {1});
    CHECK(inv.dim_binv == 2);
    CHECK(inv.basis.size() == 2);
  }
  for (auto [Q, m] : small_groups()) {
    const auto& ctx = ctx_for(Q, m);
    for (const JSet& J : all_jsets(m)) {
      CAPTURE(Q);
      CAPTURE(m);
      auto inv = steinberg_binvariants(ctx, J);
      // Inclusion-exclusion over the parabolics containing P_J.
      std::int64_t alt = 0;
      for (const JSet& K : all_jsets(m)) {
        if (!std::includes(K.begin(), K.end(), J.begin(), J.end())) continue;
        std::int64_t sign = (K.size() - J.size()) % 2 ? -1 : 1;
        alt += sign * static_cast<std::int64_t>(ctx.space(K).reps.size());
      }
      CHECK(inv.dim_st == alt);
      if (J.empty()) CHECK(inv.dim_st == ipow_i(Q, m * (m - 1) / 2));
      CHECK(inv.dim_ind == static_cast<int>(ctx.space(J).reps.size()));
      CHECK(inv.dim_binv == static_cast<int>(wJ_sets(m, J).Wpr.size()));
      CHECK(inv.dim_binv == mj_rank(m, J));
      CHECK(inv.basis_ok);
    }
  }
}

TEST_CASE("Hecke operators on parabolic inductions: trichotomy") {
  for (auto [Q, m] : std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3}}) {
    const auto& ctx = ctx_for(Q, m);
    int seen[3] = {0, 0, 0};
    for (const JSet& J : all_jsets(m))
      for (const Perm& w : wJ_sets(m, J).WJ)
        for (int s = 1; s < m; ++s) {
          Perm v = min_coset_rep(Perm::simple(m, s) * w, J);
          auto got = hecke_action(ctx, J, w, s);
          std::map<Perm, Elt> want;
          if (v == w) {
            ++seen[0];
          } else if (v.length() > w.length()) {
            want[v] = 1;
            ++seen[1];
          } else {
            want[w] = ctx.R->neg(1);
            ++seen[2];
          }
          CHECK(got == want);
        }
    CHECK(seen[1] > 0);
    CHECK(seen[2] > 0);
    if (m == 3) CHECK(seen[0] > 0);
  }
}

TEST_CASE("Hecke operators: the submodule generated by any invariant contains g_zJ") {
  std::mt19937 rng(11);
  for (auto [Q, m] : std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    const auto& ctx = ctx_for(Q, m);
    for (const JSet& J : all_jsets(m)) {
      SteinbergQuotient st(ctx, J);
      auto inv = steinberg_binvariants(ctx, J);
      REQUIRE(inv.basis_ok);
      std::vector<FVec> basis;
      for (const auto& [w, v] : inv.basis) {
        CHECK(generates_zJ(ctx, st, v));
        basis.push_back(v);
      }
      std::uniform_int_distribution<Elt> coef(0, static_cast<Elt>(ctx.p - 1));
      for (int trial = 0; trial < 200; ++trial) {
        FVec v(static_cast<std::size_t>(st.dim()), 0);
        bool nonzero = false;
        for (const FVec& b : basis) {
          Elt a = coef(rng);
          nonzero = nonzero || a;
          for (std::size_t i = 0; i < v.size(); ++i) v[i] = ctx.R->add(v[i], ctx.R->mul(a, b[i]));
        }
        if (!nonzero) continue;
        CHECK(generates_zJ(ctx, st, v));
      }
    }
  }
}

TEST_CASE("GL2 weights") {
  SUBCASE("trivial exponent is the determinant character") {
    auto F = make_field(3, 1, 2, 1);
    auto V = weight_gl2(F, {0, 0}, 5);
    CHECK(V.dim == 1);
    CHECK_FALSE(V.regular());
    const GF& k = *F->kd;
    Elt a = k.gen(), b = 1, c = 0, d = k.pow(k.gen(), 3);
    Elt det = k.sub(k.mul(a, d), k.mul(b, c));
    CHECK(V.matrix(a, b, c, d).at(0, 0) == F->char_apply(5, det));
  }
  SUBCASE("p = 2, r = (1): invariants spanned by X") {
    auto V = weight_gl2(make_field(2, 1, 1, 0), {1}, 0);
    CHECK(V.dim == 2);
    CHECK(V.regular());
    auto inv = weight_u_invariants(V);
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == FVec{1, 0});
  }
  SUBCASE("errors") {
    auto F = make_field(3, 1, 2, 1);
    CHECK_THROWS_AS(weight_gl2(F, {3, 0}, 0), Error);
    CHECK_THROWS_AS(weight_gl2(F, {1}, 0), Error);
  }
  SUBCASE("dimension cap") {
    auto F = make_field(11, 4, 1, 0);
    try {
      weight_gl2(F, {10, 10, 10, 10}, 0);
      FAIL("expected DimensionCap");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionCap);
    }
  }
}

TEST_CASE("GL2 weights: invariant and coinvariant lines against direct computation") {
  std::mt19937 rng(3);
  struct Case {
    int p, f, d, aD;
  };
  for (Case cs : {Case{2, 1, 1, 0}, Case{2, 1, 2, 1}, Case{2, 2, 1, 0}, Case{3, 1, 1, 0}, Case{3, 1, 2, 1}, Case{3, 2, 1, 0}}) {
    auto F = make_field(cs.p, cs.f, cs.d, cs.aD);
    const GF& k = *F->kd;
    const GF& C = *F->coef;
    int fd = cs.f * cs.d;
    std::vector<std::vector<int>> rs{{}};
    for (int j = 0; j < fd; ++j) {
      std::vector<std::vector<int>> nxt;
      for (auto& r : rs)
        for (int x = 0; x < cs.p; ++x) {
          auto t = r;
          t.push_back(x);
          nxt.push_back(t);
        }
      rs = nxt;
    }
    std::uniform_int_distribution<Elt> any(0, k.size() - 1), unit(1, k.size() - 1);
    for (const auto& r : rs)
      for (std::int64_t c : {0, 1, 2}) {
        CAPTURE(cs.p);
        CAPTURE(fd);
        auto V = weight_gl2(F, r, c);
        std::int64_t dim = 1, rp = 0, pj = 1;
        for (int x : r) {
          dim *= x + 1;
          rp += x * pj;
          pj *= cs.p;
        }
        CHECK(V.dim == dim);
        CHECK(V.regular() == (rp != 0));

        // The action is a homomorphism.
        for (int t = 0; t < 4; ++t) {
          Elt g[4], h[4];
          do {
            for (auto& x : g) x = any(rng);
          } while (k.sub(k.mul(g[0], g[3]), k.mul(g[1], g[2])) == 0);
          do {
            for (auto& x : h) x = any(rng);
          } while (k.sub(k.mul(h[0], h[3]), k.mul(h[1], h[2])) == 0);
          Elt gh[4] = {k.add(k.mul(g[0], h[0]), k.mul(g[1], h[2])), k.add(k.mul(g[0], h[1]), k.mul(g[1], h[3])),
                       k.add(k.mul(g[2], h[0]), k.mul(g[3], h[2])), k.add(k.mul(g[2], h[1]), k.mul(g[3], h[3]))};
          CHECK(mat_mul(C, V.matrix(g[0], g[1], g[2], g[3]), V.matrix(h[0], h[1], h[2], h[3])) ==
                V.matrix(gh[0], gh[1], gh[2], gh[3]));
        }

        // U-invariants: the line through X^r, with torus character chi(ad) a^r.
        auto inv = weight_u_invariants(V);
        REQUIRE(inv.size() == 1);
        FVec x_r(static_cast<std::size_t>(V.dim), 0);
        x_r[0] = 1;
        Elt lead = inv[0][0];
        REQUIRE(lead != 0);
        for (auto& e : inv[0]) e = C.div(e, lead);
        CHECK(inv[0] == x_r);
        // U-coinvariants: the line through Y^r, with character chi(ad) d^r.
        Span aug = weight_u_augmentation(V);
        CHECK(aug.dim() == V.dim - 1);
        FVec y_r(static_cast<std::size_t>(V.dim), 0);
        y_r[static_cast<std::size_t>(V.index(r))] = 1;
        CHECK_FALSE(aug.contains(y_r));
        for (int t = 0; t < 4; ++t) {
          Elt a = unit(rng), d = unit(rng);
          FMat T = V.matrix(a, 0, 0, d);
          Elt chi = F->char_apply(c, k.mul(a, d));
          Elt ca = C.mul(chi, C.pow(F->embed(a), rp));
          Elt cd = C.mul(chi, C.pow(F->embed(d), rp));
          FVec tx = mat_vec(C, T, x_r), want_x(x_r.size(), 0);
          want_x[0] = ca;
          CHECK(tx == want_x);
          FVec ty = mat_vec(C, T, y_r), want_y = y_r;
          for (auto& e : want_y) e = C.mul(e, cd);
          FVec diff(ty.size());
          for (std::size_t i = 0; i < ty.size(); ++i) diff[i] = C.sub(ty[i], want_y[i]);
          CHECK(aug.contains(diff));
        }
      }
  }
}
