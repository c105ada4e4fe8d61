#include <algorithm>

#include "engines.hpp"
#include "mdsarray/error.hpp"
#include "mdsarray/grsa/difference_product.hpp"

namespace mdsarray::detail {

EngineResult run_subspace(const CodeSpec& spec, HelperChannel& ch, int failed, const std::vector<int>& helpers) {
  const auto ops = node_ops(spec);
  const Field& f = spec.field;
  const Radix& rx = spec.radix;
  const int d = static_cast<int>(helpers.size());
  const std::uint32_t sd = stage_arity(spec, d, 0);

  std::vector<int> outside;
  for (int m = 0; m < spec.n; ++m) {
    if (m != failed && std::find(helpers.begin(), helpers.end(), m) == helpers.end()) outside.push_back(m);
  }

  // sigma(a) = sum of the helper digits; only meaningful for the identity node.
  auto sigma = [&](std::uint64_t a) {
    std::uint64_t acc = 0;
    for (int v : helpers) {
      if (!spec.is_identity(v)) acc += rx.digit(a, spec.digit_of(v));
    }
    return acc;
  };
  const bool identity = spec.is_identity(failed);
  std::vector<bool> view(spec.l, false);
  for (std::uint64_t a = 0; a < spec.l; ++a) {
    view[a] = identity ? sigma(a) % sd == 0 : rx.digit(a, spec.digit_of(failed)) % sd == 0;
  }

  // Each helper computes W_j C_j from the coordinates those rows touch and
  // sends the rows in view.
  Codeword sent = zero_codeword(spec);
  for (int j : helpers) {
    const DifferenceProduct w(ops, j, outside);
    const std::vector<bool> touch = w.support(view);
    Column local(spec.l, 0);
    for (std::uint64_t a = 0; a < spec.l; ++a) {
      if (touch[a]) local[a] = ch.read(j, a);
    }
    const Column y = w.apply(local);
    for (std::uint64_t a = 0; a < spec.l; ++a) {
      if (view[a]) sent[j][a] = y[a];
    }
    ch.send(j, static_cast<std::uint64_t>(std::count(view.begin(), view.end(), true)));
  }

  // The restricted code: sum_{j in Delta} A_j^t (W_j C_j) = 0 for t < s_d.
  Column y(spec.l, 0);
  auto solve_at = [&](std::uint64_t a, std::uint64_t tt) {
    const MonomialEntry self = ops[failed].row(a, tt);
    Elem acc = 0;
    for (int j : helpers) {
      const MonomialEntry e = ops[j].row(a, tt);
      if (!view[e.col]) throw std::logic_error("restricted repair reads outside the view");
      acc = f.mul_add(e.coef, sent[j][e.col], acc);
    }
    y[self.col] = f.neg(f.div(acc, self.coef));
  };
  for (std::uint64_t a = 0; a < spec.l; ++a) {
    if (identity) {
      solve_at(a, (sd - sigma(a) % sd) % sd);
    } else if (view[a]) {
      for (std::uint32_t tt = 0; tt < sd; ++tt) solve_at(a, tt);
    }
  }
  EngineResult out;
  out.recovered.push_back(DifferenceProduct(ops, failed, outside).apply_inverse(y));
  return out;
}

EngineResult run_decode(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                        const std::vector<int>& helpers) {
  if (helpers.size() < static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::TooFewHelpers, "decoding needs k helpers");
  }
  Codeword cw = zero_codeword(spec);
  std::vector<bool> have(spec.n, false);
  for (int i = 0; i < spec.k; ++i) {
    const int v = helpers[i];
    have[v] = true;
    for (std::uint64_t a = 0; a < spec.l; ++a) cw[v][a] = ch.fetch(v, a);
  }
  std::vector<int> erased;
  for (int v = 0; v < spec.n; ++v) {
    if (!have[v]) erased.push_back(v);
  }
  ErasureDecoder(spec, erased).decode(cw);
  EngineResult out;
  for (int v : failed) out.recovered.push_back(cw[v]);
  return out;
}

}  // namespace mdsarray::detail
