#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mdsarray/gf/field.hpp"

namespace mdsarray {

// Row-major dense matrix over GF(q). Used for the small per-coordinate and
// per-group systems and for test-side materialization of structured matrices.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

DenseMatrix multiply(const Field& f, const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const Field& f, const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix add(const Field& f, const DenseMatrix& a, const DenseMatrix& b);
std::vector<Elem> multiply(const Field& f, const DenseMatrix& a, std::span<const Elem> x);

std::size_t rank(const Field& f, DenseMatrix m);
std::optional<DenseMatrix> inverse(const Field& f, DenseMatrix m);

// Some solution of a (possibly rectangular, possibly underdetermined) system
// a * x = b, free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Elem>> solve_any(const Field& f, DenseMatrix a, std::vector<Elem> b);

// Square Vandermonde system sum_u points[u]^t * x[u] = rhs[t], t < points.size().
// Points must be distinct.
std::vector<Elem> solve_vandermonde(const Field& f, std::span<const Elem> points, std::span<const Elem> rhs);

}  // namespace mdsarray
