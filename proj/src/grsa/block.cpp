#include "mdsarray/grsa/block.hpp"

#include <stdexcept>

#include "mdsarray/error.hpp"

namespace mdsarray {

BlockMatrix::BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t l)
    : rows_(block_rows), cols_(block_cols), l_(l), blocks_(block_rows * block_cols, DenseMatrix(l, l)) {}

DenseMatrix BlockMatrix::flatten() const {
  DenseMatrix out(rows_ * l_, cols_ * l_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const DenseMatrix& b = block(i, j);
      for (std::size_t r = 0; r < l_; ++r) {
        for (std::size_t c = 0; c < l_; ++c) out.at(i * l_ + r, j * l_ + c) = b.at(r, c);
      }
    }
  }
  return out;
}

bool commute_check(const StructuredOp& a, const StructuredOp& b) {
  if (a.size() != b.size()) return false;
  const Field& f = a.field();
  // Monomial rows compose directly: row x of AB is a's coefficient times row col of B.
  for (std::uint64_t x = 0; x < a.size(); ++x) {
    const MonomialEntry a1 = a.row(x, 1);
    const MonomialEntry ab = b.row(a1.col, 1);
    const MonomialEntry b1 = b.row(x, 1);
    const MonomialEntry ba = a.row(b1.col, 1);
    const Elem lhs = f.mul(a1.coef, ab.coef);
    const Elem rhs = f.mul(b1.coef, ba.coef);
    if (lhs != rhs) return false;
    if (lhs != 0 && ab.col != ba.col) return false;
  }
  return true;
}

bool commute_check(const Field& f, const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols()) return false;
  return multiply(f, a, b) == multiply(f, b, a);
}

bool difference_invertible(const Field& f, const DenseMatrix& a, const DenseMatrix& b) {
  return rank(f, subtract(f, a, b)) == a.rows();
}

bool difference_invertible(const StructuredOp& a, const StructuredOp& b) {
  if (a.size() != b.size()) return false;
  return difference_invertible(a.field(), a.materialize(), b.materialize());
}

BlockMatrix block_vandermonde(const Field& f, const std::vector<DenseMatrix>& ops, std::size_t rows) {
  const std::size_t l = ops.empty() ? 0 : ops.front().rows();
  BlockMatrix m(rows, ops.size(), l);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    DenseMatrix power = DenseMatrix::identity(l);
    for (std::size_t t = 0; t < rows; ++t) {
      m.block(t, i) = power;
      if (t + 1 < rows) power = multiply(f, power, ops[i]);
    }
  }
  return m;
}

BlockMatrix block_vandermonde(const std::vector<StructuredOp>& ops, std::size_t rows) {
  const std::size_t l = ops.empty() ? 0 : ops.front().size();
  BlockMatrix m(rows, ops.size(), l);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t t = 0; t < rows; ++t) m.block(t, i) = ops[i].materialize(t);
  }
  return m;
}

std::vector<DenseMatrix> materialize(const std::vector<StructuredOp>& ops) {
  std::vector<DenseMatrix> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(op.materialize());
  return out;
}

namespace {

DenseMatrix inverse_or_throw(const Field& f, DenseMatrix m, const std::string& what) {
  auto inv = inverse(f, std::move(m));
  if (!inv) throw Error(ErrorCode::SingularDifference, what);
  return std::move(*inv);
}

DenseMatrix difference_product(const Field& f, const std::vector<DenseMatrix>& ops, std::size_t i,
                               const std::vector<int>& over) {
  DenseMatrix p = DenseMatrix::identity(ops[i].rows());
  for (int j : over) {
    if (static_cast<std::size_t>(j) == i) continue;
    p = multiply(f, p, subtract(f, ops[static_cast<std::size_t>(j)], ops[i]));
  }
  return p;
}

std::vector<int> all_indices(std::size_t n) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
  return v;
}

}  // namespace

std::vector<DenseMatrix> cramer_coefficients(const Field& f, const std::vector<DenseMatrix>& ops) {
  const auto all = all_indices(ops.size());
  std::vector<DenseMatrix> b;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    b.push_back(inverse_or_throw(f, difference_product(f, ops, i, all),
                                 "product of differences for node " + std::to_string(i + 1) + " is singular"));
  }
  return b;
}

std::vector<DenseMatrix> dual_coefficients(const Field& f, const std::vector<DenseMatrix>& ops,
                                           const std::vector<DenseMatrix>& v) {
  return restricted_dual(f, ops, v, all_indices(ops.size()));
}

std::vector<DenseMatrix> restricted_dual(const Field& f, const std::vector<DenseMatrix>& ops,
                                         const std::vector<DenseMatrix>& v, const std::vector<int>& delta) {
  if (v.size() != ops.size()) throw std::invalid_argument("restricted_dual: one multiplier per op");
  std::vector<DenseMatrix> w;
  for (int j : delta) {
    const auto ju = static_cast<std::size_t>(j);
    const DenseMatrix b = inverse_or_throw(f, difference_product(f, ops, ju, delta),
                                           "product of differences for node " + std::to_string(j + 1) +
                                               " is singular");
    const DenseMatrix vinv = inverse_or_throw(f, v[ju], "multiplier of node " + std::to_string(j + 1) +
                                                            " is singular");
    w.push_back(multiply(f, vinv, b));
  }
  return w;
}

namespace {

BlockMatrix powers_times(const Field& f, const std::vector<DenseMatrix>& ops, const std::vector<DenseMatrix>& x,
                         std::size_t rows) {
  const BlockMatrix vm = block_vandermonde(f, ops, rows);
  BlockMatrix out(rows, ops.size(), vm.block_size());
  for (std::size_t t = 0; t < rows; ++t) {
    for (std::size_t i = 0; i < ops.size(); ++i) out.block(t, i) = multiply(f, vm.block(t, i), x[i]);
  }
  return out;
}

}  // namespace

BlockMatrix grsa_generator(const Field& f, const std::vector<DenseMatrix>& ops, const std::vector<DenseMatrix>& v,
                           std::size_t k) {
  return powers_times(f, ops, v, k);
}

BlockMatrix grsa_parity(const Field& f, const std::vector<DenseMatrix>& ops, const std::vector<DenseMatrix>& w,
                        std::size_t r) {
  return powers_times(f, ops, w, r);
}

bool annihilates(const Field& f, const BlockMatrix& h, const BlockMatrix& g) {
  if (h.block_cols() != g.block_cols()) return false;
  for (std::size_t t = 0; t < h.block_rows(); ++t) {
    for (std::size_t m = 0; m < g.block_rows(); ++m) {
      DenseMatrix acc(h.block_size(), h.block_size());
      for (std::size_t i = 0; i < h.block_cols(); ++i) acc = add(f, acc, multiply(f, h.block(t, i), g.block(m, i)));
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::vector<Elem>> grsa_encode(const Field& f, const BlockMatrix& g,
                                           const std::vector<std::vector<Elem>>& message) {
  if (message.size() != g.block_rows()) throw std::invalid_argument("grsa_encode: message length");
  std::vector<std::vector<Elem>> c(g.block_cols(), std::vector<Elem>(g.block_size(), 0));
  for (std::size_t i = 0; i < g.block_cols(); ++i) {
    for (std::size_t m = 0; m < g.block_rows(); ++m) {
      const auto part = multiply(f, g.block(m, i), message[m]);
      for (std::size_t a = 0; a < part.size(); ++a) c[i][a] = f.add(c[i][a], part[a]);
    }
  }
  return c;
}

}  // namespace mdsarray
