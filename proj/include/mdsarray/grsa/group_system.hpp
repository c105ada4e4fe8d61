#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mdsarray/gf/field.hpp"
#include "mdsarray/gf/matrix.hpp"
#include "mdsarray/spec/digit_groups.hpp"

namespace mdsarray {

// One coefficient of an equation: coef * x_unknown[coord].
struct Term {
  std::size_t unknown;
  std::uint64_t coord;
  Elem coef;
};

// A square linear system that repeats identically over every class of a
// DigitGroups partition. Equation families f and unknown columns u are each
// replicated once per class member; the coefficient pattern is read from the
// class of coordinate 0 and inverted once.
class GroupSystem {
 public:
  using RowFn = std::function<void(std::size_t family, std::uint64_t a, std::vector<Term>& out)>;

  GroupSystem(const Field& field, DigitGroups groups, std::size_t families, std::size_t unknowns,
              const RowFn& row);

  const DigitGroups& groups() const noexcept { return groups_; }
  std::size_t families() const noexcept { return families_; }

  // rhs[f * g + member] -> x[u * g + member] with g = groups().size().
  std::vector<Elem> solve(std::span<const Elem> rhs) const;

 private:
  Field field_;
  DigitGroups groups_;
  std::size_t families_;
  DenseMatrix inverse_;
};

}  // namespace mdsarray
