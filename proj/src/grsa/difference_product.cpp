#include "mdsarray/grsa/difference_product.hpp"

#include <algorithm>
#include <stdexcept>

namespace mdsarray {

namespace {

std::vector<int> digits_touched(const StructuredOp& a, const StructuredOp& b) {
  std::vector<int> out;
  if (a.kind() != OpKind::Identity) out.push_back(a.digit());
  if (b.kind() != OpKind::Identity && b.digit() != a.digit()) out.push_back(b.digit());
  return out;
}

}  // namespace

DifferenceProduct::DifferenceProduct(const std::vector<StructuredOp>& ops, int j, std::vector<int> others)
    : ops_(ops), j_(j), others_(std::move(others)) {
  std::sort(others_.begin(), others_.end());
  const StructuredOp& aj = op(j_);
  for (int m : others_) {
    if (m == j_) throw std::invalid_argument("DifferenceProduct: factor A_j - A_j");
    const StructuredOp& am = op(m);
    DigitGroups groups(aj.radix(), digits_touched(am, aj));
    const Field& f = aj.field();
    auto row = [&](std::size_t, std::uint64_t a, std::vector<Term>& out) {
      const MonomialEntry x = am.row(a, 1);
      const MonomialEntry y = aj.row(a, 1);
      out.push_back({0, x.col, x.coef});
      out.push_back({0, y.col, f.neg(y.coef)});
    };
    factor_inverse_.push_back(std::make_shared<GroupSystem>(f, std::move(groups), 1, 1, row));
  }
}

std::vector<Elem> DifferenceProduct::apply_factor(int m, std::span<const Elem> x) const {
  const StructuredOp& am = op(m);
  const StructuredOp& aj = op(j_);
  const Field& f = aj.field();
  std::vector<Elem> y(x.size());
  for (std::uint64_t a = 0; a < x.size(); ++a) {
    const MonomialEntry p = am.row(a, 1);
    const MonomialEntry q = aj.row(a, 1);
    y[a] = f.sub(f.mul(p.coef, x[p.col]), f.mul(q.coef, x[q.col]));
  }
  return y;
}

std::vector<Elem> DifferenceProduct::apply(std::span<const Elem> x) const {
  std::vector<Elem> cur(x.begin(), x.end());
  // W x = F_1 (F_2 (... F_k x)); all factors commute, so the order only fixes intermediates.
  for (auto it = others_.rbegin(); it != others_.rend(); ++it) cur = apply_factor(*it, cur);
  return cur;
}

std::vector<Elem> DifferenceProduct::apply_inverse(std::span<const Elem> y) const {
  std::vector<Elem> cur(y.begin(), y.end());
  const std::uint64_t l = cur.size();
  for (std::size_t idx = 0; idx < others_.size(); ++idx) {
    const GroupSystem& sys = *factor_inverse_[idx];
    const DigitGroups& groups = sys.groups();
    const std::size_t g = groups.size();
    std::vector<Elem> next(l);
    std::vector<Elem> rhs(g);
    for (std::uint64_t base : groups.bases()) {
      for (std::size_t e = 0; e < g; ++e) rhs[e] = cur[base + groups.offset(e)];
      const auto x = sys.solve(rhs);
      for (std::size_t e = 0; e < g; ++e) next[base + groups.offset(e)] = x[e];
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<bool> DifferenceProduct::support(const std::vector<bool>& rows) const {
  std::vector<bool> cur = rows;
  for (int m : others_) {
    const StructuredOp& am = op(m);
    const StructuredOp& aj = op(j_);
    std::vector<bool> next(cur.size(), false);
    for (std::uint64_t a = 0; a < cur.size(); ++a) {
      if (!cur[a]) continue;
      next[am.row(a, 1).col] = true;
      next[aj.row(a, 1).col] = true;
    }
    cur = std::move(next);
  }
  return cur;
}

DenseMatrix DifferenceProduct::materialize() const {
  const StructuredOp& aj = op(j_);
  const Field& f = aj.field();
  DenseMatrix w = DenseMatrix::identity(aj.size());
  for (int m : others_) w = multiply(f, w, subtract(f, op(m).materialize(), aj.materialize()));
  return w;
}

}  // namespace mdsarray
