#include <map>
#include <random>

#include "doctest.h"
#include "phl/dseries.hpp"

using namespace phl;

namespace {

// Sparse exact series: exponent -> digit, multiplied monomial by monomial with
// the inverse Frobenius found by search.
using Sparse = std::map<int, Elt>;

Elt sigma_inverse_power(const FieldSpec& F, Elt a, int j) {
  // y with sigma^j(y) = a, sigma(y) = y^{q^{a_D}} applied j times.
  for (Elt y = 0; y < F.Q; ++y) {
    Elt z = y;
    int steps = ((j % F.d) + F.d) % F.d;
    for (int s = 0; s < steps; ++s) z = F.kd->pow(z, ipow(F.q, F.aD));
    if (z == a) return y;
  }
  FAIL("no preimage");
  return 0;
}

Sparse sparse_mul(const FieldSpec& F, const Sparse& a, const Sparse& b) {
  Sparse r;
  for (auto [i, x] : a)
    for (auto [j, y] : b) {
      Elt t = F.kd->mul(sigma_inverse_power(F, x, j), y);
      r[i + j] = F.kd->add(r[i + j], t);
    }
  for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

Sparse to_sparse(const DElement& a) {
  Sparse r;
  for (std::size_t i = 0; i < a.digits().size(); ++i)
    if (a.digits()[i]) r[a.e0() + static_cast<int>(i)] = a.digits()[i];
  return r;
}

DElement random_exact(const FieldSpec& F, std::mt19937_64& rng, int lo, int hi, int maxlen) {
  std::uniform_int_distribution<int> e(lo, hi), len(1, maxlen);
  std::uniform_int_distribution<std::uint32_t> dig(0, static_cast<std::uint32_t>(F.Q - 1));
  std::vector<Elt> d(static_cast<std::size_t>(len(rng)));
  for (auto& x : d) x = dig(rng);
  return DElement::from_digits(e(rng), d, true);
}

// Equality of the digits both elements know.
bool agree(const DElement& a, const DElement& b) {
  int P = std::min(a.abs_prec(), b.abs_prec());
  int lo = std::min(a.e0(), b.e0());
  if (P >= kExactPrec) return a == b;
  for (int k = lo; k < P; ++k)
    if (a.digit_at(k) != b.digit_at(k)) return false;
  return true;
}

}  // namespace

TEST_CASE("skew commutation and the worked square over F_4") {
  auto F = make_field(2, 1, 2, 1);
  Elt mu = F->mu();
  Elt mu2 = F->kd->mul(mu, mu);
  DElement w = DElement::monomial(1, 1);
  CHECK(d_mul(*F, w, DElement::monomial(0, mu)) == d_mul(*F, DElement::monomial(0, mu2), w));
  DElement a = DElement::from_digits(0, {1, mu}, true);
  DElement sq = d_mul(*F, a, a);
  CHECK(sq == DElement::from_digits(0, {1, 0, 1}, true));
  CHECK(to_sparse(sq) == sparse_mul(*F, to_sparse(a), to_sparse(a)));
}

TEST_CASE("d=1 squares and products are commutative") {
  auto F = make_field(3, 1, 1, 0);
  DElement w = DElement::monomial(1, 1);
  CHECK(d_mul(*F, w, w) == DElement::monomial(2, 1));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    DElement a = random_exact(*F, rng, -2, 3, 4), b = random_exact(*F, rng, -2, 3, 4);
    CHECK(d_mul(*F, a, b) == d_mul(*F, b, a));
    // Plain convolution.
    Sparse r;
    for (auto [i, x] : to_sparse(a))
      for (auto [j, y] : to_sparse(b)) r[i + j] = F->kd->add(r[i + j], F->kd->mul(x, y));
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    CHECK(to_sparse(d_mul(*F, a, b)) == r);
  }
}

TEST_CASE("products match the monomial-by-monomial oracle") {
  for (auto F : {make_field(2, 1, 2, 1), make_field(2, 1, 3, 1), make_field(2, 1, 3, 2), make_field(3, 1, 2, 1)}) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
      DElement a = random_exact(*F, rng, -3, 3, 4), b = random_exact(*F, rng, -3, 3, 4);
      CHECK(to_sparse(d_mul(*F, a, b)) == sparse_mul(*F, to_sparse(a), to_sparse(b)));
    }
  }
}

TEST_CASE("associativity on random exact triples") {
  for (auto F : {make_field(2, 1, 2, 1), make_field(3, 1, 2, 1), make_field(2, 1, 3, 1), make_field(2, 1, 1, 0)}) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 10000; ++t) {
      DElement a = random_exact(*F, rng, -2, 2, 3), b = random_exact(*F, rng, -2, 2, 3), c = random_exact(*F, rng, -2, 2, 3);
      REQUIRE(d_mul(*F, d_mul(*F, a, b), c) == d_mul(*F, a, d_mul(*F, b, c)));
    }
  }
}

TEST_CASE("associativity and precision windows for inexact elements") {
  auto F = make_field(2, 1, 3, 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    DElement a = random_exact(*F, rng, -2, 2, 4).truncated(3), b = random_exact(*F, rng, -2, 2, 4).truncated(2),
             c = random_exact(*F, rng, -2, 2, 4);
    DElement l = d_mul(*F, d_mul(*F, a, b), c), r = d_mul(*F, a, d_mul(*F, b, c));
    if (!l.is_zero()) CHECK(!l.is_exact());
    CHECK(agree(l, r));
  }
}

TEST_CASE("distributivity and commutation on exhaustive short series over F_4") {
  auto F = make_field(2, 1, 2, 1);
  std::vector<DElement> all;
  for (Elt a = 0; a < 4; ++a)
    for (Elt b = 0; b < 4; ++b)
      for (Elt c = 0; c < 4; ++c) all.push_back(DElement::from_digits(0, {a, b, c}, true));
  DElement w = DElement::monomial(1, 1);
  for (const auto& x : all) {
    // varpi x varpi^{-1} applies sigma digit-wise.
    DElement conj = d_mul(*F, d_mul(*F, w, x), DElement::monomial(-1, 1));
    std::vector<Elt> tw;
    for (int k = 0; k < 3; ++k) tw.push_back(F->frobenius_pow(x.digit_at(k), 1));
    CHECK(conj == DElement::from_digits(0, tw, true));
    for (const auto& y : all)
      for (std::size_t k = 0; k < all.size(); k += 5) {
        const auto& z = all[k];
        CHECK(d_mul(*F, x, d_add(*F, y, z)) == d_add(*F, d_mul(*F, x, y), d_mul(*F, x, z)));
        CHECK(d_mul(*F, d_add(*F, y, z), x) == d_add(*F, d_mul(*F, y, x), d_mul(*F, z, x)));
      }
  }
}

TEST_CASE("d_inv examples and random units") {
  auto F = make_field(2, 1, 2, 1);
  CHECK(d_inv(*F, DElement::one(), 5) == DElement::one());
  DElement a = DElement::from_digits(0, {1, F->mu()}, true);
  DElement ai = d_inv(*F, a, 2);
  CHECK(ai.abs_prec() == 2);
  CHECK(agree(ai, a.truncated(2)));
  CHECK(d_inv(*F, DElement::monomial(1, 1), 0) == DElement::monomial(-1, 1));
  CHECK_THROWS_AS(d_inv(*F, DElement::zero(), 3), Error);
  for (auto G : {make_field(2, 1, 2, 1), make_field(3, 1, 2, 1), make_field(2, 1, 3, 2)}) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 1000; ++t) {
      DElement u = random_exact(*G, rng, -3, 3, 4);
      if (u.is_zero()) continue;
      DElement inv = d_inv(*G, u, 6);
      DElement one_r = d_mul(*G, u, inv), one_l = d_mul(*G, inv, u);
      CHECK(agree(one_r, DElement::one()));
      CHECK(agree(one_l, DElement::one()));
      if (!u.is_monomial()) CHECK(one_r.abs_prec() == 6 + u.e0());
    }
  }
}

TEST_CASE("d_val examples") {
  auto F = make_field(2, 1, 2, 1);
  CHECK(d_val(DElement::zero()).kind == Valuation::Infinite);
  CHECK(d_val(DElement::monomial(3, F->mu())) == Valuation{Valuation::Finite, 3});
  CHECK(d_val(d_mul(*F, DElement::monomial(1, 1), DElement::from_digits(2, {F->mu(), 1}, true))).v == 3);
  CHECK(d_val(DElement::inexact_zero(4)) == Valuation{Valuation::LowerBound, 4});
  DElement a = DElement::from_digits(1, {1, 1}, true), b = DElement::from_digits(1, {1, 0, 1}, true);
  CHECK(d_add(*F, a, b).e0() >= 1);
}

TEST_CASE("text form round-trips") {
  auto F = make_field(2, 1, 2, 1);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    DElement a = random_exact(*F, rng, -4, 4, 5);
    if (t % 3 == 0) a = a.truncated(a.e0() + 2);
    if (t % 7 == 0) a = DElement::inexact_zero(t % 5);
    std::string s = to_text(*F, a);
    CHECK(parse_delement(*F, s) == a);
    CHECK(to_text(*F, parse_delement(*F, s)) == s);
  }
  CHECK(to_text(*F, DElement::zero()) == "0");
  CHECK(parse_delement(*F, "w2:[3]") == DElement::monomial(2, 1));
  CHECK_THROWS_AS(parse_delement(*F, "v2:[4]"), Error);
  CHECK_THROWS_AS(parse_delement(*F, "x"), Error);
}
