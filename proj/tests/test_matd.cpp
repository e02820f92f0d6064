#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "phl/matd.hpp"

using namespace phl;

namespace {

DElement mono(int v, Elt c = 1) { return DElement::monomial(v, c); }

DElement random_entry(const FieldSpec& F, std::mt19937_64& rng, int lo, int hi, int support) {
  std::uniform_int_distribution<int> e(lo, hi), len(1, support), coin(0, 4);
  std::uniform_int_distribution<std::uint32_t> dig(0, static_cast<std::uint32_t>(F.Q - 1));
  if (coin(rng) == 0) return DElement::zero();
  std::vector<Elt> d(static_cast<std::size_t>(len(rng)));
  for (auto& x : d) x = dig(rng);
  return DElement::from_digits(e(rng), d, true);
}

MatD random_triangular(FieldPtr F, int m, std::mt19937_64& rng, int maxexp, int support) {
  std::uniform_int_distribution<int> ex(0, maxexp);
  std::vector<int> exps(m);
  for (auto& x : exps) x = ex(rng);
  std::sort(exps.begin(), exps.end());
  MatD g = MatD::diag(F, exps);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.at(i, j) = random_entry(*F, rng, 0, maxexp, support);
  return g;
}

// All antidominant vectors of length m with entries in [lo, hi] and sum s.
std::vector<CartanClass> classes_with_sum(int m, int lo, int hi, int s) {
  std::vector<CartanClass> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start, int left) -> void {
    if (static_cast<int>(cur.size()) == m) {
      if (left == 0) out.push_back({cur});
      return;
    }
    for (int v = start; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v, left - v);
      cur.pop_back();
    }
  };
  rec(rec, lo, s);
  return out;
}

}  // namespace

TEST_CASE("subgroup membership examples") {
  auto F = make_field(2, 1, 2, 1);
  for (int m : {2, 3}) {
    MatD e = MatD::identity(F, m);
    for (auto tag : {Subgroup::K, Subgroup::K1, Subgroup::I, Subgroup::I1, Subgroup::U, Subgroup::Uminus, Subgroup::B, Subgroup::A})
      CHECK(subgroup_test(e, tag));
  }
  CHECK_FALSE(subgroup_test(MatD::diag(F, {1, 0}), Subgroup::K));
  MatD g = MatD::identity(F, 2);
  g.at(0, 1) = mono(1);
  for (auto tag : {Subgroup::K1, Subgroup::I1, Subgroup::I, Subgroup::K, Subgroup::U, Subgroup::B}) CHECK(subgroup_test(g, tag));
  CHECK_FALSE(subgroup_test(g, Subgroup::Uminus));
  MatD h = MatD::identity(F, 2);
  h.at(1, 0) = mono(0);
  CHECK(subgroup_test(h, Subgroup::K));
  CHECK_FALSE(subgroup_test(h, Subgroup::I));
  MatD unknown = MatD::identity(F, 2);
  unknown.at(0, 1) = DElement::inexact_zero(0);
  CHECK_THROWS_AS(subgroup_test(unknown, Subgroup::K), Error);
}

TEST_CASE("smith examples") {
  auto F = make_field(2, 1, 2, 1);
  CHECK(smith(MatD::diag(F, {3, 1})).exponents == std::vector<int>{1, 3});
  MatD g = parse_matd(F, "w2:[3];w1:[3]|0;w2:[3]");
  CHECK(smith(g).exponents == std::vector<int>{1, 3});
  MatD s(F, 2);
  CHECK_THROWS_AS(smith(s), Error);
}

TEST_CASE("smith is a double coset invariant") {
  for (auto F : {make_field(2, 1, 2, 1), make_field(3, 1, 2, 1), make_field(2, 1, 3, 1), make_field(2, 1, 1, 0)}) {
    std::mt19937_64 rng(17);
    for (int m : {2, 3}) {
      for (int t = 0; t < 250; ++t) {
        MatD g = random_triangular(F, m, rng, 3, 3);
        auto c = smith(g);
        int s = 0;
        for (int x : c.exponents) s += x;
        int diag = 0;
        for (int i = 0; i < m; ++i) diag += g.at(i, i).e0();
        CHECK(s == diag);
        MatD k1 = random_k(F, m, 3, rng), k2 = random_k(F, m, 3, rng);
        CHECK(smith(k1 * g * k2) == c);
        CHECK(smith(g * k2) == c);
      }
    }
  }
}

TEST_CASE("val_det is additive") {
  auto F = make_field(3, 1, 2, 1);
  std::mt19937_64 rng(23);
  CHECK(val_det(MatD::identity(F, 3)) == 0);
  CHECK(val_det(MatD::diag(F, {2, -1, 4})) == 5);
  for (int t = 0; t < 200; ++t) {
    MatD g = random_triangular(F, 3, rng, 3, 2) * random_k(F, 3, 2, rng);
    MatD h = random_k(F, 3, 2, rng) * random_triangular(F, 3, rng, 2, 2);
    CHECK(val_det(g * h) == val_det(g) + val_det(h));
  }
}

TEST_CASE("minor criterion agrees with smith exhaustively on small triangular matrices") {
  for (auto F : {make_field(2, 1, 1, 0), make_field(2, 1, 2, 1), make_field(3, 1, 1, 0)}) {
    std::vector<DElement> entries{DElement::zero()};
    for (int lo = 0; lo <= 2; ++lo)
      for (Elt a = 1; a < F->Q; ++a)
        for (Elt b = 0; b < F->Q; ++b) entries.push_back(DElement::from_digits(lo, {a, b}, true));
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; y <= 2; ++y) {
        for (const auto& a : entries) {
          MatD g = MatD::diag(F, {x, y});
          g.at(0, 1) = a;
          auto c = smith(g);
          for (const auto& t : classes_with_sum(2, 0, 4, x + y)) CHECK(minor_test(g, t) == (t == c));
        }
      }
    std::mt19937_64 rng(29);
    for (int x = 0; x <= 2; ++x)
      for (int y = x; y <= 2; ++y)
        for (int z = y; z <= 2; ++z)
          for (std::size_t ia = 0; ia < entries.size(); ++ia)
            for (std::size_t ib = 0; ib < entries.size(); ib += (F->Q == 4 ? 3 : 1))
              for (std::size_t ic = 0; ic < entries.size(); ic += (F->Q == 4 ? 5 : 1)) {
                MatD g = MatD::diag(F, {x, y, z});
                g.at(0, 1) = entries[ia];
                g.at(0, 2) = entries[ib];
                g.at(1, 2) = entries[ic];
                auto c = smith(g);
                CHECK(minor_test(g, c));
                for (const auto& t : classes_with_sum(3, 0, 6, x + y + z))
                  if (t != c) CHECK_FALSE(minor_test(g, t));
              }
  }
}

TEST_CASE("minor_test worked cases") {
  auto F = make_field(2, 1, 2, 1);
  for (int x = 0; x <= 2; ++x)
    for (int y = x; y <= 3; ++y)
      for (int z = y; z <= 3; ++z) {
        MatD g = MatD::diag(F, {x, y, z});
        for (const auto& t : classes_with_sum(3, 0, 6, x + y + z))
          CHECK(minor_test(g, t) == (t.exponents == std::vector<int>{x, y, z}));
      }
  MatD bad = MatD::diag(F, {2, 1, 0});
  CHECK_THROWS_AS(minor_test(bad, {{0, 1, 2}}), Error);
}

TEST_CASE("reduced-norm valuation of the 2x2 block matches the Cartan sum") {
  // v(det (a b; w^y c)) = v(a c - b c^{-1} w^y c) for c != 0.
  for (auto F : {make_field(2, 1, 2, 1), make_field(2, 1, 3, 1)}) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 500; ++t) {
      DElement a = random_entry(*F, rng, 0, 3, 3), b = random_entry(*F, rng, 0, 3, 3), c = random_entry(*F, rng, 0, 3, 3);
      if (c.is_zero()) continue;
      int y = t % 4;
      MatD blk(F, 2);
      blk.at(0, 0) = a;
      blk.at(0, 1) = b;
      blk.at(1, 0) = mono(y);
      blk.at(1, 1) = c;
      DElement cinv = d_inv(*F, c, 40);
      DElement schur = d_sub(*F, d_mul(*F, a, c), d_mul(*F, d_mul(*F, b, cinv), d_mul(*F, mono(y), c)));
      if (schur.is_zero() || schur.is_inexact_zero()) continue;
      CHECK(val_det(blk) == schur.e0());
      MatD g = MatD::diag(F, {0, y, y + 1});
      g.at(0, 1) = a;
      g.at(0, 2) = b;
      g.at(1, 2) = c;
      CHECK(minor_test(g, smith(g)));
    }
  }
}

TEST_CASE("random 3x3 triangular matrices: minor criterion versus smith") {
  for (auto F : {make_field(2, 1, 2, 1), make_field(3, 1, 2, 1)}) {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 2000; ++t) {
      MatD g = random_triangular(F, 3, rng, 3, 3);
      CHECK(minor_test(g, smith(g)));
    }
  }
}

TEST_CASE("residues of K intersect t^-1 K t form the standard parabolic") {
  for (auto F : {make_field(2, 1, 1, 0), make_field(2, 1, 2, 1), make_field(3, 1, 1, 0)}) {
    for (auto exps : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 1}}) {
      MatD t = MatD::diag(F, exps);
      MatD tinv = MatD::diag(F, {-exps[0], -exps[1]});
      std::set<std::vector<Elt>> seen;
      std::int64_t Q = F->Q, total = Q * Q * Q * Q * Q * Q * Q * Q;
      for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t c = code;
        MatD k(F, 2);
        for (int e = 0; e < 4; ++e) {
          Elt d0 = static_cast<Elt>(c % Q);
          c /= Q;
          Elt d1 = static_cast<Elt>(c % Q);
          c /= Q;
          k.at(e / 2, e % 2) = DElement::from_digits(0, {d0, d1}, true);
        }
        if (!subgroup_test(k, Subgroup::K)) continue;
        if (!subgroup_test(t * k * tinv, Subgroup::K)) continue;
        seen.insert(k.residue());
      }
      std::set<std::vector<Elt>> expected;
      for (Elt a = 0; a < Q; ++a)
        for (Elt b = 0; b < Q; ++b)
          for (Elt c = 0; c < Q; ++c)
            for (Elt d = 0; d < Q; ++d) {
              const GF& K = *F->kd;
              if (K.sub(K.mul(a, d), K.mul(b, c)) == 0) continue;
              if (exps[1] > exps[0] && b != 0) continue;
              expected.insert({a, b, c, d});
            }
      CHECK(seen == expected);
    }
  }
}

TEST_CASE("matrix literal round trip") {
  auto F = make_field(2, 1, 2, 1);
  std::string s = "v2:[3];v1:[1,2]|0;v-1:[3]~";
  CHECK(to_text(parse_matd(F, s)) == s);
  CHECK_THROWS_AS(parse_matd(F, "0;0|0"), Error);
}
