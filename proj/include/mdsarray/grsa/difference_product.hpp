#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mdsarray/grsa/group_system.hpp"
#include "mdsarray/grsa/structured_op.hpp"

namespace mdsarray {

// W = prod_{m in others} (A_m - A_j) for the ops of one spec, applied
// factor by factor in ascending m. With no factors W = I.
class DifferenceProduct {
 public:
  DifferenceProduct(const std::vector<StructuredOp>& ops, int j, std::vector<int> others);

  bool is_identity() const noexcept { return others_.empty(); }
  const std::vector<int>& others() const noexcept { return others_; }

  std::vector<Elem> apply(std::span<const Elem> x) const;
  std::vector<Elem> apply_inverse(std::span<const Elem> y) const;

  // Coordinates of x that rows `rows` of W x depend on, as a mask over [0, l).
  std::vector<bool> support(const std::vector<bool>& rows) const;

  DenseMatrix materialize() const;

 private:
  const StructuredOp& op(int m) const { return ops_[static_cast<std::size_t>(m)]; }
  std::vector<Elem> apply_factor(int m, std::span<const Elem> x) const;

  std::vector<StructuredOp> ops_;
  int j_;
  std::vector<int> others_;
  // Inverse of each factor, one per entry of others_.
  std::vector<std::shared_ptr<const GroupSystem>> factor_inverse_;
};

}  // namespace mdsarray
