#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pathalg/scalars.hpp"

namespace pathalg {

using Vec = std::vector<std::uint8_t>;

bool is_zero(std::span<const std::uint8_t> v) noexcept;
// y += c * x
void axpy(const GF2m& f, std::uint8_t c, std::span<const std::uint8_t> x, std::span<std::uint8_t> y);
void scale(const GF2m& f, std::uint8_t c, std::span<std::uint8_t> x);

// Dense row-major matrix over GF(2^m).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& columns);
  static Matrix from_rows(std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint8_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;

  bool is_zero() const noexcept;
  Matrix transpose() const;

  Matrix multiply(const GF2m& f, const Matrix& rhs) const;
  Vec apply(const GF2m& f, std::span<const std::uint8_t> x) const;
  Matrix& add_scaled(const GF2m& f, std::uint8_t c, const Matrix& rhs);

  // Appends the rows of other (same column count).
  void append_rows(const Matrix& other);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(const GF2m& f, Matrix& m);
std::size_t rank(const GF2m& f, Matrix m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const GF2m& f, Matrix m);

// A subspace of F^n kept as a reduced echelon basis. Pivot of each basis
// vector is its first nonzero coordinate, normalized to 1.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  Subspace(const GF2m& f, std::size_t ambient, const std::vector<Vec>& spanning);

  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool empty() const noexcept { return basis_.empty(); }
  const std::vector<Vec>& basis() const noexcept { return basis_; }

  // Adds v to the span; returns true when the dimension grew.
  bool insert(const GF2m& f, Vec v);
  bool contains(const GF2m& f, Vec v) const;
  bool contains(const GF2m& f, const Subspace& other) const;
  // Reduces v modulo this subspace (canonical coset representative).
  Vec reduce(const GF2m& f, Vec v) const;

  // Rows spanning the annihilator {y : y . x = 0 for all x in this}.
  Matrix annihilator(const GF2m& f) const;

  friend bool equal(const GF2m& f, const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const GF2m& f, const Subspace& a, const Subspace& b);
Subspace sum(const GF2m& f, const Subspace& a, const Subspace& b);

}  // namespace pathalg
