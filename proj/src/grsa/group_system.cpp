#include "mdsarray/grsa/group_system.hpp"

#include <stdexcept>

namespace mdsarray {

GroupSystem::GroupSystem(const Field& field, DigitGroups groups, std::size_t families,
                         std::size_t unknowns, const RowFn& row)
    : field_(field), groups_(std::move(groups)), families_(families) {
  if (families != unknowns) throw std::logic_error("group system is not square");
  const std::size_t g = groups_.size();
  DenseMatrix m(families * g, unknowns * g);
  std::vector<Term> terms;
  for (std::size_t f = 0; f < families; ++f) {
    for (std::size_t e = 0; e < g; ++e) {
      terms.clear();
      row(f, groups_.offset(e), terms);
      for (const Term& t : terms) {
        const auto col = groups_.member(t.coord);
        if (!col || groups_.base_of(t.coord) != 0 || t.unknown >= unknowns) {
          throw std::logic_error("group system term leaves its class");
        }
        Elem& cell = m.at(f * g + e, t.unknown * g + *col);
        cell = field_.add(cell, t.coef);
      }
    }
  }
  auto inv = inverse(field_, std::move(m));
  if (!inv) throw std::logic_error("singular group system");
  inverse_ = std::move(*inv);
}

std::vector<Elem> GroupSystem::solve(std::span<const Elem> rhs) const { return multiply(field_, inverse_, rhs); }

}  // namespace mdsarray
