#include "mdsarray/gf/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace mdsarray {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool DenseMatrix::is_zero() const {
  for (Elem v : data_) {
    if (v != 0) return false;
  }
  return true;
}

DenseMatrix multiply(const Field& f, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a.at(i, k);
      if (aik == 0) continue;
      auto src = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (src[j] != 0) dst[j] = f.mul_add(aik, src[j], dst[j]);
      }
    }
  }
  return out;
}

DenseMatrix subtract(const Field& f, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("subtract: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = f.sub(a.at(i, j), b.at(i, j));
  return out;
}

DenseMatrix add(const Field& f, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = f.add(a.at(i, j), b.at(i, j));
  return out;
}

std::vector<Elem> multiply(const Field& f, const DenseMatrix& a, std::span<const Elem> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("multiply: shape mismatch");
  std::vector<Elem> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto row = a.row(i);
    Elem acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0 && x[j] != 0) acc = f.mul_add(row[j], x[j], acc);
    }
    y[i] = acc;
  }
  return y;
}

namespace {

// Forward elimination to reduced row echelon form in place. Operations are
// mirrored onto `aug` when given. Returns pivot columns in row order.
std::vector<std::size_t> reduce(const Field& f, DenseMatrix& m, DenseMatrix* aug) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
      if (aug)
        for (std::size_t j = 0; j < aug->cols(); ++j) std::swap(aug->at(pivot, j), aug->at(row, j));
    }
    const Elem scale = f.inv(m.at(row, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) = f.mul(m.at(row, j), scale);
    if (aug)
      for (std::size_t j = 0; j < aug->cols(); ++j) aug->at(row, j) = f.mul(aug->at(row, j), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Elem factor = m.at(r, col);
      if (factor == 0) continue;
      const Elem nf = f.neg(factor);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (m.at(row, j) != 0) m.at(r, j) = f.mul_add(nf, m.at(row, j), m.at(r, j));
      }
      if (aug)
        for (std::size_t j = 0; j < aug->cols(); ++j) {
          if (aug->at(row, j) != 0) aug->at(r, j) = f.mul_add(nf, aug->at(row, j), aug->at(r, j));
        }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Field& f, DenseMatrix m) { return reduce(f, m, nullptr).size(); }

std::optional<DenseMatrix> inverse(const Field& f, DenseMatrix m) {
  if (m.rows() != m.cols()) return std::nullopt;
  DenseMatrix aug = DenseMatrix::identity(m.rows());
  if (reduce(f, m, &aug).size() != m.rows()) return std::nullopt;
  return aug;
}

std::optional<std::vector<Elem>> solve_any(const Field& f, DenseMatrix a, std::vector<Elem> b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_any: shape mismatch");
  DenseMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs.at(i, 0) = b[i];
  const auto pivots = reduce(f, a, &rhs);
  for (std::size_t r = pivots.size(); r < a.rows(); ++r) {
    if (rhs.at(r, 0) != 0) return std::nullopt;
  }
  std::vector<Elem> x(a.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = rhs.at(r, 0);
  return x;
}

std::vector<Elem> solve_vandermonde(const Field& f, std::span<const Elem> points, std::span<const Elem> rhs) {
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j]) throw std::logic_error("solve_vandermonde: repeated evaluation points");
  DenseMatrix v(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    Elem p = 1;
    for (std::size_t t = 0; t < n; ++t) {
      v.at(t, u) = p;
      p = f.mul(p, points[u]);
    }
  }
  return *solve_any(f, std::move(v), std::vector<Elem>(rhs.begin(), rhs.end()));
}

}  // namespace mdsarray
