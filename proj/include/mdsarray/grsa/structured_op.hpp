#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mdsarray/gf/field.hpp"
#include "mdsarray/gf/matrix.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray {

enum class OpKind { Identity, Diagonal, ShiftScale };

// Single nonzero entry of one row of a monomial matrix: row a of A^t is
// coef * e_col^T.
struct MonomialEntry {
  std::uint64_t col;
  Elem coef;
};

// One l x l parity matrix A_i, applied in O(l) without materialization.
//   Diagonal:   A = sum_a lambda[a_p] e_a e_a^T
//   ShiftScale: A = sum_a lambda[a_p] e_a e_{a(p, a_p + 1 mod s)}^T
// Every power of either kind is again monomial, so A^t is described row by row.
class StructuredOp {
 public:
  StructuredOp() = default;
  StructuredOp(OpKind kind, int digit, std::vector<Elem> lambda, Radix radix, Field field);

  static StructuredOp identity(Radix radix, Field field) {
    return StructuredOp(OpKind::Identity, -1, {}, radix, field);
  }

  OpKind kind() const noexcept { return kind_; }
  int digit() const noexcept { return digit_; }
  const std::vector<Elem>& lambda() const noexcept { return lambda_; }
  std::uint64_t size() const noexcept { return radix_.size(); }
  const Radix& radix() const noexcept { return radix_; }
  const Field& field() const noexcept { return field_; }

  // beta(u, t) = prod_{v=0}^{t-1} lambda[(u + v) mod s]; beta(u, 0) = 1.
  Elem beta(std::uint32_t u, std::uint64_t t) const;

  MonomialEntry row(std::uint64_t a, std::uint64_t t) const {
    switch (kind_) {
      case OpKind::Identity:
        return {a, 1};
      case OpKind::Diagonal:
        return {a, diag_power(radix_.digit(a, digit_), t)};
      case OpKind::ShiftScale: {
        const std::uint32_t u = radix_.digit(a, digit_);
        return {radix_.shift_digit(a, digit_, t), beta(u, t)};
      }
    }
    return {a, 0};
  }

  std::vector<Elem> apply(std::span<const Elem> x, std::uint64_t t = 1) const;
  DenseMatrix materialize(std::uint64_t t = 1) const;

 private:
  Elem diag_power(std::uint32_t u, std::uint64_t t) const;

  OpKind kind_ = OpKind::Identity;
  int digit_ = -1;
  std::vector<Elem> lambda_;
  Radix radix_;
  Field field_{2};
  // Cached tables for t < table_t_: beta_[u * table_t_ + t] and lambda^t.
  std::uint64_t table_t_ = 0;
  std::vector<Elem> table_;
};

// A_i of node i for the given spec.
StructuredOp node_op(const CodeSpec& spec, int node);
std::vector<StructuredOp> node_ops(const CodeSpec& spec);

}  // namespace mdsarray
