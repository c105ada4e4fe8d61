#include "mdsarray/grsa/structured_op.hpp"

#include <stdexcept>
#include <utility>

namespace mdsarray {

StructuredOp::StructuredOp(OpKind kind, int digit, std::vector<Elem> lambda, Radix radix, Field field)
    : kind_(kind), digit_(digit), lambda_(std::move(lambda)), radix_(radix), field_(field) {
  if (kind_ == OpKind::Identity) return;
  if (digit_ < 0 || digit_ >= radix_.width() || lambda_.size() != radix_.base()) {
    throw std::invalid_argument("StructuredOp: digit or lambda table does not match the radix");
  }
  // Powers up to 2s cover every row evaluation the codec and repair paths make
  // for desk-scale r; larger t falls back to direct products.
  const std::uint32_t s = radix_.base();
  table_t_ = 2 * std::uint64_t{s} + 8;
  table_.assign(s * table_t_, 0);
  for (std::uint32_t u = 0; u < s; ++u) {
    Elem acc = 1;
    for (std::uint64_t t = 0; t < table_t_; ++t) {
      table_[u * table_t_ + t] = acc;
      if (kind_ == OpKind::ShiftScale) {
        acc = field_.mul(acc, lambda_[(u + t) % s]);
      } else {
        acc = field_.mul(acc, lambda_[u]);
      }
    }
  }
}

Elem StructuredOp::beta(std::uint32_t u, std::uint64_t t) const {
  if (kind_ == OpKind::Identity) return 1;
  if (t < table_t_) return table_[u * table_t_ + t];
  const std::uint32_t s = radix_.base();
  // Each full cycle contributes the product of all lambdas.
  Elem cycle = 1;
  for (Elem v : lambda_) cycle = field_.mul(cycle, v);
  Elem out = field_.pow(cycle, t / s);
  for (std::uint64_t v = 0; v < t % s; ++v) out = field_.mul(out, lambda_[(u + v) % s]);
  return out;
}

Elem StructuredOp::diag_power(std::uint32_t u, std::uint64_t t) const {
  if (t < table_t_) return table_[u * table_t_ + t];
  return field_.pow(lambda_[u], t);
}

std::vector<Elem> StructuredOp::apply(std::span<const Elem> x, std::uint64_t t) const {
  if (x.size() != size()) throw std::invalid_argument("StructuredOp::apply: length mismatch");
  std::vector<Elem> y(x.size());
  for (std::uint64_t a = 0; a < x.size(); ++a) {
    const MonomialEntry e = row(a, t);
    y[a] = field_.mul(e.coef, x[e.col]);
  }
  return y;
}

DenseMatrix StructuredOp::materialize(std::uint64_t t) const {
  DenseMatrix m(size(), size());
  for (std::uint64_t a = 0; a < size(); ++a) {
    const MonomialEntry e = row(a, t);
    m.at(a, e.col) = e.coef;
  }
  return m;
}

StructuredOp node_op(const CodeSpec& spec, int node) {
  if (node < 0 || node >= spec.n) throw std::out_of_range("node_op: node index");
  if (spec.is_identity(node)) return StructuredOp::identity(spec.radix, spec.field);
  return StructuredOp(spec.diagonal() ? OpKind::Diagonal : OpKind::ShiftScale, spec.digit_of(node),
                      spec.lambda[node], spec.radix, spec.field);
}

std::vector<StructuredOp> node_ops(const CodeSpec& spec) {
  std::vector<StructuredOp> ops;
  ops.reserve(spec.n);
  for (int i = 0; i < spec.n; ++i) ops.push_back(node_op(spec, i));
  return ops;
}

}  // namespace mdsarray
