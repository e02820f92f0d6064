#include "phl/cosets.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>

#include "phl/weyl.hpp"

namespace phl {

bool is_dominant(const Cochar& l) { return std::is_sorted(l.rbegin(), l.rend()); }
bool is_antidominant(const Cochar& l) { return std::is_sorted(l.begin(), l.end()); }
Cochar w0_conjugate(const Cochar& l) { return Cochar(l.rbegin(), l.rend()); }
int pairing(const Cochar& l, int i) { return l[static_cast<std::size_t>(i - 1)] - l[static_cast<std::size_t>(i)]; }

int rho_pairing2(const Cochar& l) {
  int s = 0;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) s += l[i] - l[j];
  return s;
}

Cochar sorted_antidominant(Cochar l) {
  std::sort(l.begin(), l.end());
  return l;
}

const char* side_name(Side s) { return s == Side::U ? "U" : "Uminus"; }

std::vector<Cochar> mu_candidates(const Cochar& lambda, MuRange range) {
  Cochar dom = lambda;
  std::sort(dom.rbegin(), dom.rend());
  std::set<Cochar> out;
  for (const Cochar& nu : dominance_interval(dom)) {
    Cochar v = sorted_antidominant(nu);
    if (range == MuRange::Antidominant) {
      out.insert(v);
      continue;
    }
    do out.insert(v);
    while (std::next_permutation(v.begin(), v.end()));
  }
  return {out.begin(), out.end()};
}

namespace {

struct Slot {
  int i, j, hi;
};

std::vector<Slot> side_slots(const Cochar& mu, Side side) {
  std::vector<Slot> s;
  int m = static_cast<int>(mu.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if ((side == Side::U && i < j) || (side == Side::Uminus && i > j)) s.push_back({i, j, mu[static_cast<std::size_t>(i)]});
  return s;
}

std::uint64_t checked_pow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int k = 0; k < e; ++k) {
    if (r > UINT64_MAX / b) throw Error(ErrorKind::TooLarge, "count exceeds 64 bits");
    r *= b;
  }
  return r;
}

}  // namespace

std::vector<MatD> iwasawa_reps(FieldPtr F, const Cochar& mu, Side side, int budget) {
  if (budget < 0) throw Error(ErrorKind::BudgetTooSmall, "digit budget must be nonnegative");
  if (mu.empty()) throw Error(ErrorKind::InvalidParams, "empty cocharacter");
  int lower = *std::min_element(mu.begin(), mu.end()) - budget;
  auto slots = side_slots(mu, side);
  int total = 0;
  for (const auto& s : slots) total += std::max(0, s.hi - lower);
  std::uint64_t n = checked_pow(static_cast<std::uint64_t>(F->Q), total);
  if (n > 1000000) throw Error(ErrorKind::TooLarge, "more than 10^6 representatives");
  std::vector<MatD> out;
  out.reserve(n);
  std::vector<Elt> code(static_cast<std::size_t>(total), 0);
  for (std::uint64_t it = 0; it < n; ++it) {
    MatD g = MatD::diag(F, mu);
    std::size_t k = 0;
    for (const auto& s : slots) {
      int len = std::max(0, s.hi - lower);
      std::vector<Elt> d(code.begin() + static_cast<std::ptrdiff_t>(k), code.begin() + static_cast<std::ptrdiff_t>(k + len));
      g.at(s.i, s.j) = DElement::from_digits(lower, std::move(d), true);
      k += static_cast<std::size_t>(len);
    }
    out.push_back(std::move(g));
    for (std::size_t c = 0; c < code.size(); ++c) {
      if (++code[c] < F->Q) break;
      code[c] = 0;
    }
  }
  return out;
}

MatD iwasawa_canonical(const MatD& g, const Cochar& mu, Side side) {
  const FieldSpec& F = g.field();
  const int m = g.m();
  MatD r = g;
  auto high_part = [&](const DElement& x, int from) {
    if (x.is_zero() || x.e0() + static_cast<int>(x.digits().size()) <= from) return DElement::zero();
    std::vector<Elt> d;
    int start = std::max(from, x.e0());
    for (int k = start; k < x.e0() + static_cast<int>(x.digits().size()); ++k) d.push_back(x.digit_at(k));
    return DElement::from_digits(start, d, true);
  };
  for (int j = 0; j < m; ++j) {
    std::vector<int> order;
    if (side == Side::U)
      for (int i = j - 1; i >= 0; --i) order.push_back(i);
    else
      for (int i = j + 1; i < m; ++i) order.push_back(i);
    for (int i : order) {
      int mi = mu[static_cast<std::size_t>(i)];
      DElement h = high_part(r.at(i, j), mi);
      if (h.is_zero()) continue;
      DElement c = d_neg(F, d_mul(F, DElement::monomial(-mi, 1), h));
      for (int l = 0; l < m; ++l) {
        const DElement& gli = r.at(l, i);
        if (gli.is_zero()) continue;
        r.at(l, j) = d_add(F, r.at(l, j), d_mul(F, gli, c));
      }
    }
  }
  return r;
}

void iwasawa_strata(FieldPtr F, const Cochar& mu, Side side, int lower, const CartanClass* target,
                    const std::function<void(const Stratum&)>& visit) {
  const int m = static_cast<int>(mu.size());
  auto slots = side_slots(mu, side);
  int top = lower;
  for (const auto& s : slots) top = std::max(top, s.hi);
  std::vector<std::vector<Elt>> digits(slots.size());
  const std::uint64_t Q = static_cast<std::uint64_t>(F->Q);

  // A class lambda is stable under perturbation by varpi^N M_m(O_D) for
  // N > max(lambda), so with a target the entries are only needed below N.
  const int cap = target ? target->exponents.back() + 1 : kExactPrec;
  auto build = [&](int e) {
    MatD g = MatD::diag(F, mu);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto& s = slots[k];
      if (s.hi <= lower) continue;
      DElement x = DElement::from_digits(lower, digits[k], s.hi <= e);
      g.at(s.i, s.j) = x.is_zero() && cap < kExactPrec ? DElement::inexact_zero(cap) : x.truncated(cap);
    }
    return g;
  };
  auto free_slots = [&](int e) {
    int n = 0;
    for (const auto& s : slots) n += std::max(0, s.hi - std::max(e, lower));
    return n;
  };

  auto level = [&](auto&& self, int e) -> void {
    MatD g = build(e);
    Reduction r = reduce_full(g, Weighting::Cartan);
    if (r.status == Reduction::Determined) {
      Stratum st;
      st.cls.exponents = r.exps;
      std::sort(st.cls.exponents.begin(), st.cls.exponents.end());
      if (target && st.cls != *target) return;
      st.detbar = cartan_detbar(*F, r);
      st.free_slots = free_slots(e);
      st.weight = checked_pow(Q, st.free_slots);
      visit(st);
      return;
    }
    if (e >= std::min(top, cap)) {
      if (target) return;  // undetermined at precision cap: not in the target class
      throw Error(ErrorKind::InsufficientPrecision, "exact representative left undetermined");
    }
    if (target) {
      const auto& t = target->exponents;
      std::vector<int> f = r.found;
      std::sort(f.begin(), f.end());
      if (!std::equal(f.begin(), f.end(), t.begin())) return;
      if (f.size() < t.size() && t[f.size()] < r.rest_lb) return;
    }
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (slots[k].hi > e) active.push_back(k);
    std::vector<Elt> code(active.size(), 0);
    for (;;) {
      for (std::size_t a = 0; a < active.size(); ++a) digits[active[a]].push_back(code[a]);
      self(self, e + 1);
      for (std::size_t a : active) digits[a].pop_back();
      std::size_t c = 0;
      while (c < code.size() && ++code[c] == F->Q) code[c++] = 0;
      if (c == code.size()) break;
    }
  };
  if (m == 0) return;
  level(level, lower);
}

std::uint64_t count_cartan_iwasawa(FieldPtr F, const Cochar& lambda, const Cochar& mu, Side side) {
  if (lambda.size() != mu.size() || lambda.empty()) throw Error(ErrorKind::InvalidParams, "size mismatch");
  if (std::accumulate(lambda.begin(), lambda.end(), 0) != std::accumulate(mu.begin(), mu.end(), 0)) return 0;
  CartanClass target{sorted_antidominant(lambda)};
  std::uint64_t total = 0;
  iwasawa_strata(F, mu, side, target.exponents.front(), &target, [&](const Stratum& s) { total += s.weight; });
  return total;
}

SatakeRow satake_classical(FieldPtr F, const Cochar& lambda, Side side, MuRange range, int threads) {
  SatakeRow row;
  row.lambda = lambda;
  row.side = side;
  row.range = range;
  auto mus = mu_candidates(lambda, range);
  std::vector<std::uint64_t> res(mus.size(), 0);
  threads = std::max(1, threads);
  std::vector<std::future<void>> jobs;
  for (int t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t k = static_cast<std::size_t>(t); k < mus.size(); k += static_cast<std::size_t>(threads))
        res[k] = count_cartan_iwasawa(F, lambda, mus[k], side);
    }));
  for (auto& j : jobs) j.get();
  for (std::size_t k = 0; k < mus.size(); ++k)
    if (res[k]) row.counts[mus[k]] = res[k];
  return row;
}

Conjecture2Result conjecture2_check(const Cochar& lambda, int p, int f, int d, int aD, MuRange range, int threads) {
  FieldPtr FD = make_field(p, f, d, aD);
  FieldPtr FE = make_field(p, f * d, 1, 0);
  Conjecture2Result r;
  r.rows_D = satake_classical(FD, lambda, Side::U, range, threads);
  r.rows_E = satake_classical(FE, lambda, Side::U, range, threads);
  r.equal = r.rows_D.counts == r.rows_E.counts;
  return r;
}

ChiTildeSpec make_chi_spec(const FieldSpec& F, std::int64_t c, Elt rho_val) {
  if (rho_val == 0) throw Error(ErrorKind::ZeroArgument, "rho value must be a unit");
  ChiTildeSpec s;
  s.c = mod(c, F.Q - 1);
  s.rho_val = rho_val;
  s.d0 = F.d;
  for (int k = 1; k <= F.d; ++k)
    if (mod(s.c * F.frob_mult(k) - s.c, F.Q - 1) == 0) {
      s.d0 = k;
      break;
    }
  return s;
}

bool factors_through_norm(const FieldSpec& F, std::int64_t c) {
  std::int64_t step = (F.Q - 1) / (F.q - 1);
  return mod(c, F.Q - 1) % step == 0;
}

namespace {

Elt coef_pow(const GF& C, Elt x, std::int64_t e) { return e >= 0 ? C.pow(x, e) : C.pow(C.inv(x), -e); }

}  // namespace

Elt chi_tilde(const MatD& g, const ChiTildeSpec& spec, std::mt19937_64* rng) {
  const FieldSpec& F = g.field();
  Reduction r = reduce_full(g, Weighting::Cartan, rng);
  if (r.status != Reduction::Determined) throw Error(ErrorKind::InsufficientPrecision, "Cartan class not determined");
  int total = 0;
  for (int e : r.exps) {
    if (mod(e, spec.d0) != 0) throw Error(ErrorKind::NotInSupport, "Cartan exponent outside d0 Z");
    total += e;
  }
  Elt v = F.char_apply(spec.c, cartan_detbar(F, r));
  return F.coef->mul(v, coef_pow(*F.coef, spec.rho_val, total / spec.d0));
}

PseudoMultResult pseudo_mult_search(FieldPtr F, int m, const ChiTildeSpec& spec, int exponent_bound, int digit_budget,
                                    K3Family family) {
  if (m != 2 && m != 3) throw Error(ErrorKind::InvalidParams, "m must be 2 or 3");
  if (family == K3Family::Antidiagonal && m != 3) throw Error(ErrorKind::InvalidParams, "the three-by-three family needs m = 3");
  const GF& C = *F->coef;
  // Antidominant support points with exponents in d0 Z n [0, bound].
  std::vector<Cochar> ts;
  Cochar cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == m) {
      ts.push_back(cur);
      return;
    }
    for (int v = from; v <= exponent_bound; v += spec.d0) {
      cur.push_back(v);
      self(self, v);
      cur.pop_back();
    }
  };
  rec(rec, 0);

  std::vector<MatD> k3s;
  const std::int64_t Q = F->Q;
  if (family == K3Family::Residual) {
    int n = m * m * digit_budget;
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(Q), n);
    if (total > 20000000) throw Error(ErrorKind::TooLarge, "K enumeration too large");
    std::vector<Elt> code(static_cast<std::size_t>(n), 0);
    for (std::uint64_t it = 0; it < total; ++it) {
      std::vector<Elt> res(static_cast<std::size_t>(m * m));
      for (int e = 0; e < m * m; ++e) res[static_cast<std::size_t>(e)] = code[static_cast<std::size_t>(e * digit_budget)];
      if (digit_budget > 0 && residue_det(*F->kd, res, m) != 0) {
        MatD k(F, m);
        for (int e = 0; e < m * m; ++e) {
          std::vector<Elt> d(code.begin() + e * digit_budget, code.begin() + (e + 1) * digit_budget);
          k.at(e / m, e % m) = DElement::from_digits(0, std::move(d), true);
        }
        k3s.push_back(std::move(k));
      }
      for (std::size_t c = 0; c < code.size(); ++c) {
        if (++code[c] < Q) break;
        code[c] = 0;
      }
    }
  } else {
    int len = digit_budget + 1;
    std::vector<DElement> units_or_any, positive;
    std::uint64_t total = checked_pow(static_cast<std::uint64_t>(Q), len);
    for (std::uint64_t it = 0; it < total; ++it) {
      std::vector<Elt> d(static_cast<std::size_t>(len));
      std::uint64_t x = it;
      for (auto& y : d) {
        y = static_cast<Elt>(x % static_cast<std::uint64_t>(Q));
        x /= static_cast<std::uint64_t>(Q);
      }
      DElement e = DElement::from_digits(0, d, true);
      if (e.is_zero()) continue;
      units_or_any.push_back(e);
      if (d[0] == 0) positive.push_back(e);
    }
    for (const auto& a : units_or_any)
      for (const auto& b : positive)
        for (const auto& g : positive) {
          MatD k(F, 3);
          k.at(0, 0) = a;
          k.at(0, 1) = g;
          k.at(0, 2) = DElement::one();
          k.at(1, 0) = b;
          k.at(1, 1) = DElement::one();
          k.at(2, 0) = DElement::one();
          k3s.push_back(std::move(k));
        }
  }

  PseudoMultResult res;
  for (const Cochar& l1 : ts)
    for (const Cochar& l2 : ts) {
      MatD t1 = MatD::diag(F, l1), t2 = MatD::diag(F, l2);
      Elt x2 = chi_tilde(t2, spec);
      Elt x1 = chi_tilde(t1, spec);
      for (const MatD& k3 : k3s) {
        MatD a = t1 * k3;
        MatD ab = a * t2;
        Elt prod_val;
        try {
          prod_val = chi_tilde(ab, spec);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::NotInSupport) continue;
          throw;
        }
        // chi~(t1 k3) = chi(det-bar k3) chi~(t1) by definition.
        Elt kval = F->char_apply(spec.c, residue_det(*F->kd, k3.residue(), m));
        Elt rhs = C.mul(C.mul(x1, kval), x2);
        ++res.checked;
        if (prod_val != rhs) {
          res.holds = false;
          res.witness = PseudoMultWitness{t1, k3, t2, prod_val, rhs};
          return res;
        }
      }
    }
  return res;
}

SatakeRow satake_modp_char(FieldPtr F, const Cochar& lambda, const ChiTildeSpec& spec, MuRange range, Side side) {
  for (int e : lambda)
    if (mod(e, spec.d0) != 0) throw Error(ErrorKind::NotInSupport, "lambda outside the support");
  const GF& C = *F->coef;
  SatakeRow row;
  row.lambda = lambda;
  row.side = side;
  row.range = range;
  row.modp = true;
  CartanClass target{sorted_antidominant(lambda)};
  for (const Cochar& mu : mu_candidates(lambda, range)) {
    bool in_support = std::all_of(mu.begin(), mu.end(), [&](int e) { return mod(e, spec.d0) == 0; });
    if (!in_support) {
      row.skipped.push_back(mu);
      continue;
    }
    Elt acc = 0;
    iwasawa_strata(F, mu, side, target.exponents.front(), &target, [&](const Stratum& s) {
      if (s.free_slots > 0) return;  // Q^k copies of one value vanish mod p
      acc = C.add(acc, F->char_apply(spec.c, s.detbar));
    });
    if (acc != 0) row.values[mu] = acc;
  }
  return row;
}

std::map<Cochar, Elt> reduce_mod_p(const FieldSpec& F, const SatakeRow& row) {
  std::map<Cochar, Elt> out;
  if (row.modp) return row.values;
  for (const auto& [mu, n] : row.counts) {
    Elt v = F.coef->from_int(static_cast<std::int64_t>(n % static_cast<std::uint64_t>(F.p)));
    if (v) out[mu] = v;
  }
  return out;
}

namespace {

void accumulate(const GF& C, std::map<Cochar, Elt>& acc, const std::map<Cochar, Elt>& add, bool subtract = false) {
  for (const auto& [mu, v] : add) {
    Elt& slot = acc[mu];
    slot = subtract ? C.sub(slot, v) : C.add(slot, v);
    if (slot == 0) acc.erase(mu);
  }
}

}  // namespace

std::vector<IdentityCheck> verify_inversion_identities(FieldPtr F, const Cochar& mu, const std::optional<ChiTildeSpec>& spec) {
  if (!is_dominant(mu)) throw Error(ErrorKind::InvalidParams, "mu must be dominant");
  const GF& C = *F->coef;
  std::vector<IdentityCheck> out;
  {
    IdentityCheck c;
    c.name = "degenerate_inversion";
    c.lhs[w0_conjugate(mu)] = 1;
    for (const Cochar& lam : dominance_interval(mu))
      accumulate(C, c.rhs, reduce_mod_p(*F, satake_classical(F, w0_conjugate(lam), Side::U, MuRange::Full)));
    c.pass = c.lhs == c.rhs;
    out.push_back(std::move(c));
  }
  if (mu.size() == 2) {
    Cochar nu = w0_conjugate(mu);
    IdentityCheck c;
    c.name = "two_term";
    c.lhs = reduce_mod_p(*F, satake_classical(F, nu, Side::U, MuRange::Full));
    c.rhs[nu] = 1;
    if (nu[1] - nu[0] >= 2) accumulate(C, c.rhs, {{Cochar{nu[0] + 1, nu[1] - 1}, 1}}, true);
    c.pass = c.lhs == c.rhs;
    out.push_back(std::move(c));
    if (spec && spec->d0 >= 2 && mod(nu[0], spec->d0) == 0 && mod(nu[1], spec->d0) == 0) {
      for (MuRange range : {MuRange::Antidominant, MuRange::Full}) {
        IdentityCheck e;
        e.name = range == MuRange::Full ? "character_row_full" : "character_row";
        e.lhs = satake_modp_char(F, nu, *spec, range).values;
        e.rhs[nu] = 1;
        e.pass = e.lhs == e.rhs;
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::vector<MatD> parabolic_reps(FieldPtr F, int m, int r, int zeta) {
  if (r < 0 || r > m || zeta < 1) throw Error(ErrorKind::InvalidParams, "need 0 <= r <= m and zeta >= 1");
  if (r == 0 || r == m) return {MatD::identity(F, m)};
  JSet J;
  for (int a = 1; a < m; ++a)
    if (a != r) J.push_back(a);
  auto ws = wJ_sets(m, J).WJ;
  int cells = (m - r) * r * zeta;
  std::uint64_t total = checked_pow(static_cast<std::uint64_t>(F->Q), cells);
  if (total * ws.size() > 5000000) throw Error(ErrorKind::TooLarge, "too many representatives");
  std::vector<MatD> out;
  for (const Perm& w : ws) {
    MatD wm(F, m);
    for (int j = 0; j < m; ++j) wm.at(w(j), j) = DElement::one();
    std::vector<Elt> code(static_cast<std::size_t>(cells), 0);
    for (std::uint64_t it = 0; it < total; ++it) {
      MatD n = MatD::identity(F, m);
      std::size_t k = 0;
      for (int i = r; i < m; ++i)
        for (int j = 0; j < r; ++j) {
          std::vector<Elt> d(code.begin() + static_cast<std::ptrdiff_t>(k), code.begin() + static_cast<std::ptrdiff_t>(k) + zeta);
          n.at(i, j) = DElement::from_digits(0, std::move(d), true);
          k += static_cast<std::size_t>(zeta);
        }
      out.push_back(wm * n);
      for (std::size_t c = 0; c < code.size(); ++c) {
        if (++code[c] < F->Q) break;
        code[c] = 0;
      }
    }
  }
  return out;
}

}  // namespace phl
