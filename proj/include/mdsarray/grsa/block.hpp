#pragma once

#include <cstddef>
#include <vector>

#include "mdsarray/gf/matrix.hpp"
#include "mdsarray/grsa/structured_op.hpp"

namespace mdsarray {

// Grid of l x l dense blocks.
class BlockMatrix {
 public:
  BlockMatrix() = default;
  BlockMatrix(std::size_t block_rows, std::size_t block_cols, std::size_t l);

  std::size_t block_rows() const noexcept { return rows_; }
  std::size_t block_cols() const noexcept { return cols_; }
  std::size_t block_size() const noexcept { return l_; }

  DenseMatrix& block(std::size_t i, std::size_t j) { return blocks_[i * cols_ + j]; }
  const DenseMatrix& block(std::size_t i, std::size_t j) const { return blocks_[i * cols_ + j]; }

  DenseMatrix flatten() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t l_ = 0;
  std::vector<DenseMatrix> blocks_;
};

bool commute_check(const StructuredOp& a, const StructuredOp& b);
bool commute_check(const Field& f, const DenseMatrix& a, const DenseMatrix& b);

// ker(A - B) == {0}, by exact rank of the dense difference.
bool difference_invertible(const StructuredOp& a, const StructuredOp& b);
bool difference_invertible(const Field& f, const DenseMatrix& a, const DenseMatrix& b);

// Block (t, i) = A_i^t for t < rows.
BlockMatrix block_vandermonde(const Field& f, const std::vector<DenseMatrix>& ops, std::size_t rows);
BlockMatrix block_vandermonde(const std::vector<StructuredOp>& ops, std::size_t rows);

std::vector<DenseMatrix> materialize(const std::vector<StructuredOp>& ops);

// B_i = (prod_{j != i} (A_j - A_i))^{-1}, products in ascending j.
// Throws SingularDifference if some product is singular.
std::vector<DenseMatrix> cramer_coefficients(const Field& f, const std::vector<DenseMatrix>& ops);

// W_i = V_i^{-1} B_i. Throws SingularDifference.
std::vector<DenseMatrix> dual_coefficients(const Field& f, const std::vector<DenseMatrix>& ops,
                                           const std::vector<DenseMatrix>& v);

// Dual coefficients of the code restricted to the nodes in `delta`:
// W_j = V_j^{-1} (prod_{m in delta, m != j} (A_m - A_j))^{-1}, one per entry of delta.
std::vector<DenseMatrix> restricted_dual(const Field& f, const std::vector<DenseMatrix>& ops,
                                         const std::vector<DenseMatrix>& v, const std::vector<int>& delta);

// Block (m, i) = A_i^m V_i for m < k.
BlockMatrix grsa_generator(const Field& f, const std::vector<DenseMatrix>& ops,
                           const std::vector<DenseMatrix>& v, std::size_t k);
// Block (t, i) = A_i^t W_i for t < r.
BlockMatrix grsa_parity(const Field& f, const std::vector<DenseMatrix>& ops,
                        const std::vector<DenseMatrix>& w, std::size_t r);

// sum_i H(t, i) G(m, i) == 0 for every block row t of H and m of G.
bool annihilates(const Field& f, const BlockMatrix& h, const BlockMatrix& g);

// C_i = sum_m G(m, i) M_m.
std::vector<std::vector<Elem>> grsa_encode(const Field& f, const BlockMatrix& g,
                                           const std::vector<std::vector<Elem>>& message);

}  // namespace mdsarray
