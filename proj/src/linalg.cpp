#include "pathalg/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace pathalg {

bool is_zero(std::span<const std::uint8_t> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
}

void axpy(const GF2m& f, std::uint8_t c, std::span<const std::uint8_t> x, std::span<std::uint8_t> y) {
  assert(x.size() == y.size());
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] ^= x[i];
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] ^= f.mul(c, x[i]);
}

void scale(const GF2m& f, std::uint8_t c, std::span<std::uint8_t> x) {
  if (c == 1) return;
  for (auto& v : x) v = f.mul(c, v);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

bool Matrix::is_zero() const noexcept { return pathalg::is_zero(data_); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::multiply(const GF2m& f, const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint8_t a = (*this)(r, k);
      if (a != 0) axpy(f, a, rhs.row(k), out.row(r));
    }
  return out;
}

Vec Matrix::apply(const GF2m& f, std::span<const std::uint8_t> x) const {
  if (x.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    auto row_r = row(r);
    for (std::size_t c = 0; c < cols_; ++c)
      if (row_r[c] != 0 && x[c] != 0) acc ^= f.mul(row_r[c], x[c]);
    out[r] = acc;
  }
  return out;
}

Matrix& Matrix::add_scaled(const GF2m& f, std::uint8_t c, const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix shape mismatch");
  axpy(f, c, rhs.data_, data_);
  return *this;
}

void Matrix::append_rows(const Matrix& other) {
  if (rows_ == 0 && cols_ == 0) {
    *this = other;
    return;
  }
  if (other.cols_ != cols_) throw std::invalid_argument("matrix shape mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

std::vector<std::size_t> rref(const GF2m& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(r).begin());
    scale(f, f.inv(m(r, c)), m.row(r));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c) != 0) axpy(f, m(i, c), m.row(r), m.row(i));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const GF2m& f, Matrix m) { return rref(f, m).size(); }

std::vector<Vec> nullspace(const GF2m& f, Matrix m) {
  auto pivots = rref(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = m(i, free);  // char 2: -x = x
    out.push_back(std::move(v));
  }
  return out;
}

Subspace::Subspace(const GF2m& f, std::size_t ambient, const std::vector<Vec>& spanning)
    : ambient_(ambient) {
  for (const auto& v : spanning) insert(f, v);
}

Subspace Subspace::whole(std::size_t ambient) {
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vec v(ambient, 0);
    v[i] = 1;
    s.basis_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Vec Subspace::reduce(const GF2m& f, Vec v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector length mismatch");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    std::uint8_t c = v[pivots_[i]];
    if (c != 0) axpy(f, c, basis_[i], v);
  }
  return v;
}

bool Subspace::insert(const GF2m& f, Vec v) {
  v = reduce(f, std::move(v));
  auto it = std::find_if(v.begin(), v.end(), [](std::uint8_t x) { return x != 0; });
  if (it == v.end()) return false;
  std::size_t p = static_cast<std::size_t>(it - v.begin());
  scale(f, f.inv(v[p]), v);
  for (auto& b : basis_)
    if (b[p] != 0) axpy(f, b[p], v, b);
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  basis_.insert(basis_.begin() + idx, std::move(v));
  return true;
}

bool Subspace::contains(const GF2m& f, Vec v) const { return pathalg::is_zero(reduce(f, std::move(v))); }

bool Subspace::contains(const GF2m& f, const Subspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(),
                     [&](const Vec& v) { return contains(f, v); });
}

Matrix Subspace::annihilator(const GF2m& f) const {
  auto ann = nullspace(f, Matrix::from_rows(ambient_, basis_));
  return Matrix::from_rows(ambient_, ann);
}

bool equal(const GF2m& f, const Subspace& a, const Subspace& b) {
  return a.dim() == b.dim() && a.contains(f, b);
}

Subspace intersect(const GF2m& f, const Subspace& a, const Subspace& b) {
  // x in a and annihilated by the annihilator of b.
  Matrix ann_b = b.annihilator(f);
  if (ann_b.rows() == 0) return a;
  if (a.dim() == 0) return Subspace(a.ambient());
  Matrix basis_cols = Matrix::from_columns(a.ambient(), a.basis());
  Matrix cond = ann_b.multiply(f, basis_cols);
  Subspace out(a.ambient());
  for (const auto& coeffs : nullspace(f, cond)) {
    Vec x(a.ambient(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) axpy(f, coeffs[i], a.basis()[i], x);
    out.insert(f, std::move(x));
  }
  return out;
}

Subspace sum(const GF2m& f, const Subspace& a, const Subspace& b) {
  Subspace out = a;
  for (const auto& v : b.basis()) out.insert(f, v);
  return out;
}

}  // namespace pathalg
