#include "phl/weyl.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace phl {

Perm::Perm(std::vector<int> one_line) : w_(std::move(one_line)) {
  std::vector<char> seen(w_.size(), 0);
  for (int x : w_) {
    if (x < 0 || x >= m() || seen[static_cast<std::size_t>(x)]) throw Error(ErrorKind::InvalidParams, "not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
  for (std::size_t i = 0; i < w_.size(); ++i)
    for (std::size_t j = i + 1; j < w_.size(); ++j)
      if (w_[i] > w_[j]) ++len_;
}

Perm Perm::identity(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  return Perm(v);
}

Perm Perm::simple(int m, int i) {
  if (i < 1 || i >= m) throw Error(ErrorKind::InvalidParams, "simple reflection index out of range");
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  std::swap(v[static_cast<std::size_t>(i - 1)], v[static_cast<std::size_t>(i)]);
  return Perm(v);
}

Perm Perm::longest(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = m - 1 - i;
  return Perm(v);
}

std::vector<int> Perm::reduced_word() const {
  std::vector<int> word;
  std::vector<int> v = w_;
  // Strip right descents: w = w' s_i with l(w') = l(w) - 1.
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 1; i < m(); ++i)
      if (v[static_cast<std::size_t>(i - 1)] > v[static_cast<std::size_t>(i)]) {
        std::swap(v[static_cast<std::size_t>(i - 1)], v[static_cast<std::size_t>(i)]);
        word.push_back(i);
        changed = true;
        break;
      }
  }
  std::reverse(word.begin(), word.end());
  return word;
}

Perm Perm::inverse() const {
  std::vector<int> v(w_.size());
  for (int i = 0; i < m(); ++i) v[static_cast<std::size_t>(w_[static_cast<std::size_t>(i)])] = i;
  return Perm(v);
}

bool Perm::left_descent(int i) const { return inverse().right_descent(i); }

Perm Perm::operator*(const Perm& o) const {
  std::vector<int> v(w_.size());
  for (int i = 0; i < m(); ++i) v[static_cast<std::size_t>(i)] = w_[static_cast<std::size_t>(o(i))];
  return Perm(v);
}

std::string Perm::str() const {
  std::string s;
  for (int x : w_) {
    if (m() >= 10 && !s.empty()) s += ',';
    s += std::to_string(x + 1);
  }
  return s;
}

std::vector<Perm> all_perms(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Perm> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

bool in_parabolic(const Perm& w, const JSet& J) {
  // Blocks of {0..m-1} joined by the reflections in J must be preserved.
  int m = w.m();
  std::vector<int> block(static_cast<std::size_t>(m), 0);
  for (int x = 1; x < m; ++x)
    block[static_cast<std::size_t>(x)] =
        block[static_cast<std::size_t>(x - 1)] + (std::find(J.begin(), J.end(), x) == J.end() ? 1 : 0);
  for (int x = 0; x < m; ++x)
    if (block[static_cast<std::size_t>(x)] != block[static_cast<std::size_t>(w(x))]) return false;
  return true;
}

bool in_WJ(const Perm& w, const JSet& J) {
  for (int a : J)
    if (w.right_descent(a)) return false;
  return true;
}

Perm min_coset_rep(const Perm& w, const JSet& J) {
  Perm v = w;
  for (bool changed = true; changed;) {
    changed = false;
    for (int a : J)
      if (v.right_descent(a)) {
        v = v * Perm::simple(v.m(), a);
        changed = true;
      }
  }
  return v;
}

WJSets wJ_sets(int m, const JSet& J) {
  WJSets r;
  std::vector<int> rest;
  for (int a = 1; a < m; ++a)
    if (std::find(J.begin(), J.end(), a) == J.end()) rest.push_back(a);
  for (const Perm& w : all_perms(m)) {
    if (!in_WJ(w, J)) continue;
    r.WJ.push_back(w);
    bool primitive = true;
    for (int b : rest) primitive = primitive && w.right_descent(b);
    if (primitive) r.Wpr.push_back(w);
  }
  r.zJ = *std::max_element(r.WJ.begin(), r.WJ.end(),
                           [](const Perm& a, const Perm& b) { return a.length() < b.length(); });
  return r;
}

bool lessJ(const Perm& w, const Perm& w2, const JSet& J) {
  if (!in_WJ(w, J) || !in_WJ(w2, J)) throw Error(ErrorKind::NotInWJ, "arguments must lie in W^J");
  if (w2.length() < w.length()) return false;
  std::set<Perm> seen{w};
  std::deque<Perm> todo{w};
  while (!todo.empty()) {
    Perm v = todo.front();
    todo.pop_front();
    if (v == w2) return true;
    if (v.length() >= w2.length()) continue;
    for (int s = 1; s < v.m(); ++s) {
      Perm u = Perm::simple(v.m(), s) * v;
      if (u.length() == v.length() + 1 && in_WJ(u, J) && seen.insert(u).second) todo.push_back(u);
    }
  }
  return false;
}

std::vector<std::vector<std::int64_t>> boundary_matrix(int m, const JSet& J) {
  auto rows = wJ_sets(m, J).WJ;
  std::vector<std::vector<std::int64_t>> mat(rows.size());
  for (int a = 1; a < m; ++a) {
    if (std::find(J.begin(), J.end(), a) != J.end()) continue;
    JSet Ja = J;
    Ja.push_back(a);
    std::sort(Ja.begin(), Ja.end());
    for (const Perm& w : wJ_sets(m, Ja).WJ) {
      Perm winv = w.inverse();
      for (std::size_t r = 0; r < rows.size(); ++r) mat[r].push_back(in_parabolic(winv * rows[r], Ja) ? 1 : 0);
    }
  }
  return mat;
}

std::vector<std::int64_t> integer_smith_diagonal(std::vector<std::vector<std::int64_t>> a) {
  std::size_t R = a.size(), C = R ? a[0].size() : 0;
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  while (t < R && t < C) {
    // Pivot: nonzero entry of least absolute value in the trailing block.
    std::size_t pr = R, pc = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (a[i][j] != 0 && (pr == R || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == R) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        std::int64_t qt = a[i][t] / a[t][t];
        if (qt)
          for (std::size_t j = t; j < C; ++j) a[i][j] -= qt * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        std::int64_t qt = a[t][j] / a[t][t];
        if (qt)
          for (std::size_t i = t; i < R; ++i) a[i][j] -= qt * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Divisibility: fold any entry not divisible by the pivot into row t.
        for (std::size_t i = t + 1; i < R && clean; ++i)
          for (std::size_t j = t + 1; j < C && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < C; ++k) a[t][k] += a[i][k];
              clean = false;
            }
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  return diag;
}

int mj_rank(int m, const JSet& J) {
  auto mat = boundary_matrix(m, J);
  int rows = static_cast<int>(mat.size());
  if (mat.empty() || mat[0].empty()) return rows;
  auto diag = integer_smith_diagonal(mat);
  for (auto x : diag)
    if (x != 1) throw Error(ErrorKind::InvalidParams, "cokernel has torsion");
  return rows - static_cast<int>(diag.size());
}

std::vector<JSet> all_jsets(int m) {
  std::vector<JSet> out;
  int n = m - 1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    JSet J;
    for (int a = 1; a <= n; ++a)
      if (mask & (1 << (a - 1))) J.push_back(a);
    out.push_back(J);
  }
  return out;
}

bool dominance(const std::vector<int>& lambda, const std::vector<int>& mu) {
  if (lambda.size() != mu.size()) return false;
  std::vector<int> l = lambda, u = mu;
  std::sort(l.rbegin(), l.rend());
  std::sort(u.rbegin(), u.rend());
  long long sl = 0, su = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    sl += l[i];
    su += u[i];
    if (sl > su) return false;
  }
  return sl == su;
}

std::vector<std::vector<int>> dominance_interval(const std::vector<int>& mu) {
  std::vector<std::vector<int>> out;
  int m = static_cast<int>(mu.size());
  if (m == 0) return {{}};
  int hi = *std::max_element(mu.begin(), mu.end()), lo = *std::min_element(mu.begin(), mu.end());
  int total = std::accumulate(mu.begin(), mu.end(), 0);
  std::vector<int> cur;
  auto rec = [&](auto&& self, int cap, int left) -> void {
    if (static_cast<int>(cur.size()) == m) {
      if (left == 0 && dominance(cur, mu)) out.push_back(cur);
      return;
    }
    for (int v = cap; v >= lo; --v) {
      cur.push_back(v);
      self(self, v, left - v);
      cur.pop_back();
    }
  };
  rec(rec, hi, total);
  return out;
}

}  // namespace phl
