#include "phl/linalg.hpp"

namespace phl {

FMat FMat::identity(int n) {
  FMat x(n, n);
  for (int i = 0; i < n; ++i) x.at(i, i) = 1;
  return x;
}

FVec FMat::column(int j) const {
  FVec v(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) v[static_cast<std::size_t>(i)] = at(i, j);
  return v;
}

FMat mat_mul(const GF& K, const FMat& x, const FMat& y) {
  if (x.cols != y.rows) throw Error(ErrorKind::ShapeMismatch, "matrix product shapes");
  FMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      Elt a = x.at(i, k);
      if (!a) continue;
      for (int j = 0; j < y.cols; ++j)
        if (Elt b = y.at(k, j)) z.at(i, j) = K.add(z.at(i, j), K.mul(a, b));
    }
  return z;
}

FVec mat_vec(const GF& K, const FMat& x, const FVec& v) {
  if (static_cast<int>(v.size()) != x.cols) throw Error(ErrorKind::ShapeMismatch, "matrix-vector shapes");
  FVec out(static_cast<std::size_t>(x.rows), 0);
  for (int i = 0; i < x.rows; ++i) {
    Elt s = 0;
    for (int j = 0; j < x.cols; ++j)
      if (v[static_cast<std::size_t>(j)]) s = K.add(s, K.mul(x.at(i, j), v[static_cast<std::size_t>(j)]));
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

FMat mat_sub(const GF& K, const FMat& x, const FMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw Error(ErrorKind::ShapeMismatch, "matrix difference shapes");
  FMat z = x;
  for (std::size_t k = 0; k < z.a.size(); ++k) z.a[k] = K.sub(x.a[k], y.a[k]);
  return z;
}

std::vector<int> rref(const GF& K, FMat& x) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < x.cols && r < x.rows; ++c) {
    int sel = -1;
    for (int i = r; i < x.rows; ++i)
      if (x.at(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    for (int j = 0; j < x.cols; ++j) std::swap(x.at(r, j), x.at(sel, j));
    Elt inv = K.inv(x.at(r, c));
    for (int j = c; j < x.cols; ++j) x.at(r, j) = K.mul(x.at(r, j), inv);
    for (int i = 0; i < x.rows; ++i) {
      if (i == r) continue;
      Elt f = x.at(i, c);
      if (!f) continue;
      for (int j = c; j < x.cols; ++j) x.at(i, j) = K.sub(x.at(i, j), K.mul(f, x.at(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const GF& K, FMat x) { return static_cast<int>(rref(K, x).size()); }

std::vector<FVec> nullspace(const GF& K, FMat x) {
  auto piv = rref(K, x);
  std::vector<char> is_piv(static_cast<std::size_t>(x.cols), 0);
  for (int c : piv) is_piv[static_cast<std::size_t>(c)] = 1;
  std::vector<FVec> out;
  for (int f = 0; f < x.cols; ++f) {
    if (is_piv[static_cast<std::size_t>(f)]) continue;
    FVec v(static_cast<std::size_t>(x.cols), 0);
    v[static_cast<std::size_t>(f)] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[static_cast<std::size_t>(piv[r])] = K.neg(x.at(static_cast<int>(r), f));
    out.push_back(std::move(v));
  }
  return out;
}

FMat mat_inverse(const GF& K, FMat x) {
  if (x.rows != x.cols) throw Error(ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  int n = x.rows;
  FMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = x.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto piv = rref(K, aug);
  if (static_cast<int>(piv.size()) < n || piv[static_cast<std::size_t>(n - 1)] != n - 1)
    throw Error(ErrorKind::Singular, "matrix is not invertible");
  FMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

FVec Span::reduce(FVec v) const {
  if (static_cast<int>(v.size()) != n_) throw Error(ErrorKind::ShapeMismatch, "vector length");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    Elt f = v[static_cast<std::size_t>(piv_[k])];
    if (!f) continue;
    const FVec& r = rows_[k];
    for (int j = 0; j < n_; ++j)
      if (r[static_cast<std::size_t>(j)]) v[static_cast<std::size_t>(j)] = K_->sub(v[static_cast<std::size_t>(j)], K_->mul(f, r[static_cast<std::size_t>(j)]));
  }
  return v;
}

bool Span::contains(const FVec& v) const {
  FVec r = reduce(v);
  for (Elt x : r)
    if (x) return false;
  return true;
}

bool Span::add(const FVec& v) {
  FVec r = reduce(v);
  int p = -1;
  for (int j = 0; j < n_; ++j)
    if (r[static_cast<std::size_t>(j)]) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Elt inv = K_->inv(r[static_cast<std::size_t>(p)]);
  for (auto& x : r) x = K_->mul(x, inv);
  rows_.push_back(std::move(r));
  piv_.push_back(p);
  return true;
}

}  // namespace phl
