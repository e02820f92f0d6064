#include "phl/matd.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace phl {

MatD MatD::identity(FieldPtr F, int m) {
  MatD r(std::move(F), m);
  for (int i = 0; i < m; ++i) r.at(i, i) = DElement::one();
  return r;
}

MatD MatD::diag(FieldPtr F, const std::vector<int>& exps) {
  int m = static_cast<int>(exps.size());
  MatD r(std::move(F), m);
  for (int i = 0; i < m; ++i) r.at(i, i) = DElement::monomial(exps[i], 1);
  return r;
}

MatD MatD::monomial(FieldPtr F, const std::vector<int>& perm, const std::vector<int>& exps) {
  int m = static_cast<int>(exps.size());
  MatD r(std::move(F), m);
  for (int j = 0; j < m; ++j) r.at(perm[j], j) = DElement::monomial(exps[j], 1);
  return r;
}

MatD MatD::operator*(const MatD& o) const {
  if (m_ != o.m_) throw Error(ErrorKind::ShapeMismatch, "matrix sizes differ");
  const FieldSpec& F = *F_;
  MatD r(F_, m_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      DElement acc;
      for (int k = 0; k < m_; ++k) {
        const DElement& x = at(i, k);
        const DElement& y = o.at(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc = d_add(F, acc, d_mul(F, x, y));
      }
      r.at(i, j) = std::move(acc);
    }
  return r;
}

MatD MatD::operator+(const MatD& o) const {
  MatD r(F_, m_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = d_add(*F_, e_[i], o.e_[i]);
  return r;
}

MatD MatD::operator-(const MatD& o) const {
  MatD r(F_, m_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = d_sub(*F_, e_[i], o.e_[i]);
  return r;
}

bool MatD::is_exact() const {
  return std::all_of(e_.begin(), e_.end(), [](const DElement& x) { return x.is_exact(); });
}

MatD MatD::truncated(int prec) const {
  MatD r(F_, m_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].is_zero() ? e_[i] : e_[i].truncated(prec);
  return r;
}

std::vector<Elt> MatD::residue() const {
  std::vector<Elt> r(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) r[i] = e_[i].digit_at(0);
  return r;
}

MatD parse_matd(FieldPtr F, const std::string& s) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, '|')) {
    std::vector<std::string> cells;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ';')) cells.push_back(cell);
    rows.push_back(cells);
  }
  int m = static_cast<int>(rows.size());
  if (m == 0) throw Error(ErrorKind::Parse, "empty matrix literal");
  MatD g(F, m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != m) throw Error(ErrorKind::ShapeMismatch, "matrix literal is not square");
    for (int j = 0; j < m; ++j) g.at(i, j) = parse_delement(*F, rows[i][j]);
  }
  return g;
}

std::string to_text(const MatD& g) {
  std::ostringstream os;
  for (int i = 0; i < g.m(); ++i) {
    if (i) os << '|';
    for (int j = 0; j < g.m(); ++j) os << (j ? ";" : "") << to_text(g.field(), g.at(i, j));
  }
  return os.str();
}

Reduction pivot_reduce(const MatD& g, Weighting w, int work_prec, std::mt19937_64* rng) {
  const FieldSpec& F = g.field();
  const int m = g.m();
  std::vector<DElement> a(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i * m + j)] = g.at(i, j);
  auto A = [&](int i, int j) -> DElement& { return a[static_cast<std::size_t>(i * m + j)]; };
  const long long mult = w == Weighting::Iwahori ? m : 1;
  auto off = [&](int i, int j) -> long long { return w == Weighting::Iwahori ? j - i : 0; };

  Reduction res;
  res.perm.assign(m, -1);
  res.exps.assign(m, 0);
  std::vector<char> row_on(m, 1), col_on(m, 1);
  std::vector<std::pair<int, int>> ties;
  auto stop = [&](Reduction::Status st) {
    res.status = st;
    int lb = kExactPrec;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (row_on[i] && col_on[j]) lb = std::min(lb, A(i, j).val_lb());
    res.rest_lb = lb;
    return res;
  };
  for (int step = 0; step < m; ++step) {
    long long best = LLONG_MAX, lbmin = LLONG_MAX;
    ties.clear();
    for (int i = 0; i < m; ++i) {
      if (!row_on[i]) continue;
      for (int j = 0; j < m; ++j) {
        if (!col_on[j]) continue;
        const DElement& e = A(i, j);
        if (e.is_zero()) continue;
        long long V = mult * e.e0() + off(i, j);
        if (e.is_inexact_zero()) {
          lbmin = std::min(lbmin, V);
          continue;
        }
        if (V < best) {
          best = V;
          ties.clear();
        }
        if (V == best) ties.emplace_back(i, j);
      }
    }
    if (ties.empty()) return stop(lbmin == LLONG_MAX ? Reduction::Singular : Reduction::Undetermined);
    if (best > lbmin) return stop(Reduction::Undetermined);
    auto [r, k] = ties.front();
    if (rng) {
      std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
      std::tie(r, k) = ties[pick(*rng)];
    }
    const DElement p = A(r, k);
    DElement pinv;
    try {
      pinv = d_inv(F, p, work_prec);
    } catch (const Error&) {
      return stop(Reduction::Undetermined);
    }
    for (int i = 0; i < m; ++i) {
      if (i == r || !row_on[i] || A(i, k).is_zero()) continue;
      DElement c = d_mul(F, A(i, k), pinv);
      for (int j = 0; j < m; ++j) {
        if (j == k || !col_on[j] || A(r, j).is_zero()) continue;
        A(i, j) = d_sub(F, A(i, j), d_mul(F, c, A(r, j)));
      }
      A(i, k) = DElement::zero();
    }
    for (int j = 0; j < m; ++j)
      if (j != k) A(r, j) = DElement::zero();
    res.perm[k] = r;
    res.exps[k] = p.e0();
    res.found.push_back(p.e0());
    res.det_right = F.kd->mul(res.det_right, F.kd->inv(p.lead()));
    row_on[r] = 0;
    col_on[k] = 0;
  }
  res.status = Reduction::Determined;
  return res;
}

namespace {

int max_known_prec(const MatD& g) {
  int best = INT_MIN;
  for (int i = 0; i < g.m(); ++i)
    for (int j = 0; j < g.m(); ++j) {
      const DElement& e = g.at(i, j);
      if (!e.is_exact()) best = std::max(best, e.abs_prec());
    }
  return best;
}

int max_abs_e0(const MatD& g) {
  int best = 0;
  for (int i = 0; i < g.m(); ++i)
    for (int j = 0; j < g.m(); ++j) {
      const DElement& e = g.at(i, j);
      if (!e.is_zero()) best = std::max(best, std::abs(e.e0()) + static_cast<int>(e.digits().size()));
    }
  return best;
}

}  // namespace

Reduction reduce_full(const MatD& g, Weighting w, std::mt19937_64* rng) {
  int known = max_known_prec(g);
  int base = max_abs_e0(g);
  if (known != INT_MIN) {
    // Precision tracking is sound at any working precision; this one lets
    // inverses of pivots reach the window of the inexact entries.
    Reduction r = pivot_reduce(g, w, known + 2 * base + 2, rng);
    if (r.status == Reduction::Singular) throw Error(ErrorKind::Singular, "matrix is singular");
    return r;
  }
  for (int extra = 8; extra <= 1024; extra *= 2) {
    std::mt19937_64 saved;
    if (rng) saved = *rng;
    Reduction r = pivot_reduce(g, w, base * (g.m() + 1) + extra, rng);
    if (r.status == Reduction::Singular) throw Error(ErrorKind::Singular, "matrix is singular");
    if (r.status == Reduction::Determined) return r;
    if (rng) *rng = saved;
  }
  throw Error(ErrorKind::InsufficientPrecision, "reduction did not stabilise");
}

std::optional<CartanClass> smith_try(const MatD& g) {
  Reduction r = reduce_full(g, Weighting::Cartan);
  if (r.status != Reduction::Determined) return std::nullopt;
  CartanClass c{r.exps};
  std::sort(c.exponents.begin(), c.exponents.end());
  return c;
}

CartanClass smith(const MatD& g) {
  auto c = smith_try(g);
  if (!c) throw Error(ErrorKind::InsufficientPrecision, "Cartan class not determined by the known digits");
  return *c;
}

Elt cartan_detbar(const FieldSpec& F, const Reduction& r) {
  int m = static_cast<int>(r.perm.size()), inversions = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (r.perm[static_cast<std::size_t>(i)] > r.perm[static_cast<std::size_t>(j)]) ++inversions;
  Elt v = F.kd->inv(r.det_right);
  return inversions % 2 ? F.kd->neg(v) : v;
}

int val_det(const MatD& g) {
  int s = 0;
  for (int e : smith(g).exponents) s += e;
  return s;
}

Elt residue_det(const GF& K, std::vector<Elt> a, int m) {
  Elt det = 1;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (a[static_cast<std::size_t>(r * m + c)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < m; ++j) std::swap(a[static_cast<std::size_t>(piv * m + j)], a[static_cast<std::size_t>(c * m + j)]);
      det = K.neg(det);
    }
    Elt pv = a[static_cast<std::size_t>(c * m + c)];
    det = K.mul(det, pv);
    Elt pinv = K.inv(pv);
    for (int r = c + 1; r < m; ++r) {
      Elt f = K.mul(a[static_cast<std::size_t>(r * m + c)], pinv);
      if (f == 0) continue;
      for (int j = c; j < m; ++j)
        a[static_cast<std::size_t>(r * m + j)] =
            K.sub(a[static_cast<std::size_t>(r * m + j)], K.mul(f, a[static_cast<std::size_t>(c * m + j)]));
    }
  }
  return det;
}


namespace {

void need_known(const DElement& e, int k) {
  if (e.abs_prec() <= k) throw Error(ErrorKind::InsufficientPrecision, "membership not determined by the window");
}

}  // namespace

bool subgroup_test(const MatD& g, Subgroup tag) {
  const int m = g.m();
  const GF& K = *g.field().kd;
  auto exact_is = [&](const DElement& e, bool one) {
    if (!e.is_exact()) throw Error(ErrorKind::InsufficientPrecision, "membership not determined by the window");
    return one ? (e == DElement::one()) : e.is_zero();
  };
  switch (tag) {
    case Subgroup::U:
    case Subgroup::Uminus:
    case Subgroup::B:
    case Subgroup::A: {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          const DElement& e = g.at(i, j);
          bool below = i > j, above = i < j;
          bool must_vanish = (tag == Subgroup::U && below) || (tag == Subgroup::Uminus && above) ||
                             (tag == Subgroup::B && below) || (tag == Subgroup::A && i != j);
          if (must_vanish && !exact_is(e, false)) return false;
          if (i == j) {
            if ((tag == Subgroup::U || tag == Subgroup::Uminus) && !exact_is(e, true)) return false;
            if ((tag == Subgroup::B || tag == Subgroup::A) && !e.determined()) {
              if (e.is_zero()) return false;
              throw Error(ErrorKind::InsufficientPrecision, "membership not determined by the window");
            }
          }
        }
      return true;
    }
    default: break;
  }
  // Integral subgroups: entries in O_D and a residue condition.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const DElement& e = g.at(i, j);
      if (e.is_zero()) continue;
      if (e.determined() && e.e0() < 0) return false;
      need_known(e, 0);
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) need_known(g.at(i, j), 0);
  std::vector<Elt> res = g.residue();
  auto R = [&](int i, int j) { return res[static_cast<std::size_t>(i * m + j)]; };
  bool ok = residue_det(K, res, m) != 0;
  if (!ok) return false;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Elt x = R(i, j);
      switch (tag) {
        case Subgroup::K1:
          if (x != (i == j ? 1u : 0u)) return false;
          break;
        case Subgroup::I:
          if (i > j && x != 0) return false;
          break;
        case Subgroup::I1:
          if ((i > j && x != 0) || (i == j && x != 1)) return false;
          break;
        default: break;
      }
    }
  return true;
}

namespace {

int entry_val(const DElement& e) {
  if (e.is_zero()) return kExactPrec;
  if (!e.determined()) throw Error(ErrorKind::InsufficientPrecision, "entry valuation not determined");
  return e.e0();
}

int diag_exp(const DElement& e) {
  if (!e.is_monomial()) throw Error(ErrorKind::ShapeMismatch, "diagonal entries must be monomials");
  return e.e0();
}

}  // namespace

bool minor_test(const MatD& g, const CartanClass& target) {
  const int m = g.m();
  if (m != 2 && m != 3) throw Error(ErrorKind::ShapeMismatch, "minor_test needs m in {2,3}");
  if (static_cast<int>(target.exponents.size()) != m) throw Error(ErrorKind::ShapeMismatch, "target size");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (!g.at(i, j).is_zero()) throw Error(ErrorKind::ShapeMismatch, "matrix must be upper triangular");
  const auto& t = target.exponents;
  if (!std::is_sorted(t.begin(), t.end())) throw Error(ErrorKind::ShapeMismatch, "target must be antidominant");
  if (m == 2) {
    int x = diag_exp(g.at(0, 0)), y = diag_exp(g.at(1, 1));
    int a = entry_val(g.at(0, 1));
    return std::min({x, y, a}) == t[0] && x + y == t[0] + t[1];
  }
  int x = diag_exp(g.at(0, 0)), y = diag_exp(g.at(1, 1)), z = diag_exp(g.at(2, 2));
  if (!(x <= y && y <= z)) throw Error(ErrorKind::ShapeMismatch, "diagonal exponents must satisfy x <= y <= z");
  int va = entry_val(g.at(0, 1)), vb = entry_val(g.at(0, 2)), vc = entry_val(g.at(1, 2));
  // Reduced-norm valuation of the block (a b; varpi^y c): clearing with the
  // exact monomial pivot varpi^y leaves b - a varpi^{-y} c, so the Cartan sum
  // of the block is y + v(b - a varpi^{-y} c).
  const FieldSpec& F = g.field();
  DElement rest = d_sub(F, g.at(0, 2), d_mul(F, d_mul(F, g.at(0, 1), DElement::monomial(-y, 1)), g.at(1, 2)));
  long long vdet = rest.is_zero() ? kExactPrec : static_cast<long long>(y) + entry_val(rest);
  auto sat = [](long long u, long long v) { return std::min<long long>(u + v, kExactPrec); };
  bool c1 = std::min({x, y, z, va, vb, vc}) == t[0];
  bool c2 = x + y + z == t[0] + t[1] + t[2];
  long long m2 = std::min({sat(x, y), sat(y, z), sat(x, z), sat(z, va), sat(x, vc), vdet});
  bool c3 = m2 == t[0] + t[1];
  return c1 && c2 && c3;
}

MatD random_k(FieldPtr F, int m, int digits, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dig(0, static_cast<std::uint32_t>(F->Q - 1));
  for (;;) {
    MatD g(F, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        std::vector<Elt> d(static_cast<std::size_t>(digits));
        for (auto& x : d) x = dig(rng);
        g.at(i, j) = DElement::from_digits(0, std::move(d), true);
      }
    std::vector<Elt> res(static_cast<std::size_t>(m * m));
    for (int i = 0; i < m * m; ++i) res[static_cast<std::size_t>(i)] = g.at(i / m, i % m).digit_at(0);
    if (residue_det(*F->kd, res, m) != 0) return g;
  }
}

}  // namespace phl
