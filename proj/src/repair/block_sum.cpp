#include <algorithm>
#include <string>

#include "engines.hpp"
#include "mdsarray/error.hpp"
#include "mdsarray/gf/matrix.hpp"

namespace mdsarray::detail {

std::uint32_t stage_arity(const CodeSpec& spec, int d, int stage) {
  const int si = d + stage + 1 - spec.k;
  if (si < 1 || spec.s % static_cast<std::uint32_t>(si) != 0) {
    std::string list;
    for (int x : supported_d(spec)) list += (list.empty() ? "" : ",") + std::to_string(x);
    throw Error(ErrorCode::UnsupportedSpec, "stage " + std::to_string(stage + 1) + " needs " +
                                                std::to_string(d + stage) + " helpers, and " + std::to_string(si) +
                                                " does not divide s=" + std::to_string(spec.s) +
                                                "; supported d: {" + list + "}");
  }
  return static_cast<std::uint32_t>(si);
}

namespace {

// Per-helper block sums for every stage. Table w of helper v holds, at index
// a(f_w, j), the sum of c_{v, a(f_w, u)} over block j of stage w (a_{f_w} = 0).
class BlockSums {
 public:
  BlockSums(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed, std::vector<std::uint32_t> arity)
      : spec_(spec), ch_(ch), failed_(failed), arity_(std::move(arity)) {}

  void begin_stage(const std::vector<int>& helpers) {
    tables_.emplace_back(spec_.n);
    have_.emplace_back(spec_.n);
    for (int v : helpers) {
      tables_.back()[v].assign(spec_.l, 0);
      have_.back()[v].assign(spec_.l, false);
    }
  }

  // Stage i value of helper v for block j, at a group member a with a_{f_i} = 0.
  Elem value(std::size_t i, int v, std::uint64_t a, std::uint32_t j) {
    const Radix& rx = spec_.radix;
    const int fi = failed_[i];
    const std::uint64_t key = rx.with_digit(a, fi, j);
    if (have_[i][v][key]) return tables_[i][v][key];
    const Field& f = spec_.field;
    const std::uint32_t si = arity_[i];
    Elem out = 0;
    std::size_t w = i;
    for (std::size_t x = 0; x < i; ++x) {
      if (rx.digit(a, failed_[x]) % arity_[x] == 0) {
        w = x;
        break;
      }
    }
    if (w == i) {
      for (std::uint32_t u = 0; u < si; ++u) out = f.add(out, ch_.read(v, rx.with_digit(a, fi, j * si + u)));
      ch_.send(v);
    } else {
      // a_{f_w} opens a block of stage w: the stage-w sums over that block,
      // minus the other members of the block at stage i.
      const int fw = failed_[w];
      const std::uint32_t aw = rx.digit(a, fw);
      const std::uint32_t sw = arity_[w];
      for (std::uint32_t u = 0; u < si; ++u) {
        const std::uint64_t b = rx.with_digit(rx.with_digit(a, fi, j * si + u), fw, aw / sw);
        out = f.add(out, tables_[w][v][b]);
      }
      for (std::uint32_t u = 1; u < sw; ++u) out = f.sub(out, value(i, v, rx.with_digit(a, fw, aw + u), j));
    }
    have_[i][v][key] = true;
    tables_[i][v][key] = out;
    return out;
  }

 private:
  const CodeSpec& spec_;
  HelperChannel& ch_;
  const std::vector<int>& failed_;
  std::vector<std::uint32_t> arity_;
  // [stage][node][index]
  std::vector<std::vector<std::vector<Elem>>> tables_;
  std::vector<std::vector<std::vector<bool>>> have_;
};

}  // namespace

EngineResult run_block_sum(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                           const std::vector<int>& helpers, int t, const GrsDecoder& decoder) {
  const Field& f = spec.field;
  const Radix& rx = spec.radix;
  const std::size_t h = failed.size();
  const int d = static_cast<int>(helpers.size()) - 2 * t;
  std::vector<std::uint32_t> arity;
  for (std::size_t i = 0; i < h; ++i) arity.push_back(stage_arity(spec, d, static_cast<int>(i)));

  BlockSums sums(spec, ch, failed, arity);
  EngineResult out;
  out.recovered.assign(h, Column(spec.l, 0));
  std::vector<int> stage_of(spec.n, -1);
  std::vector<bool> is_helper(spec.n, false);
  for (int v : helpers) is_helper[v] = true;

  for (std::size_t i = 0; i < h; ++i) {
    const int fi = failed[i];
    const std::uint32_t si = arity[i];
    sums.begin_stage(helpers);

    std::vector<int> pos;
    std::vector<std::size_t> known;
    for (int v = 0; v < spec.n; ++v) {
      if (v == fi) continue;
      if (is_helper[v] || stage_of[v] >= 0) known.push_back(pos.size());
      pos.push_back(v);
    }
    const std::size_t m = pos.size();
    std::vector<Elem> x(m), spread(m), mult(m), values(known.size()), rhs(si), points(si);
    Column& target = out.recovered[i];

    for (std::uint64_t a = 0; a < spec.l; ++a) {
      if (rx.digit(a, fi) != 0) continue;
      for (std::size_t p = 0; p < m; ++p) x[p] = spec.lambda[pos[p]][rx.digit(a, pos[p])];
      for (std::size_t p = 0; p < m; ++p) {
        Elem prod = 1;
        for (std::size_t q = 0; q < m; ++q) {
          if (q != p) prod = f.mul(prod, f.sub(x[p], x[q]));
        }
        spread[p] = prod;
      }
      for (std::uint32_t j = 0; j < spec.s / si; ++j) {
        for (std::uint32_t u = 0; u < si; ++u) points[u] = spec.lambda[fi][j * si + u];
        for (std::size_t p = 0; p < m; ++p) {
          Elem p0 = 1;
          for (std::uint32_t u = 0; u < si; ++u) p0 = f.mul(p0, f.sub(x[p], points[u]));
          mult[p] = f.inv(f.mul(p0, spread[p]));
        }
        for (std::size_t q = 0; q < known.size(); ++q) {
          const int v = pos[known[q]];
          if (is_helper[v]) {
            values[q] = sums.value(i, v, a, j);
          } else {
            const Column& col = out.recovered[static_cast<std::size_t>(stage_of[v])];
            Elem acc = 0;
            for (std::uint32_t u = 0; u < si; ++u) acc = f.add(acc, col[rx.with_digit(a, fi, j * si + u)]);
            values[q] = acc;
          }
        }
        const GrsInput in{x, mult, known, values, static_cast<std::size_t>(d) + i, static_cast<std::size_t>(t)};
        const GrsResult res = decoder ? decoder(f, in) : grs_decode(f, in);
        for (std::size_t e : res.errors) {
          if (is_helper[pos[e]]) out.errors.insert(pos[e]);
        }
        for (std::uint32_t tt = 0; tt < si; ++tt) {
          Elem acc = 0;
          for (std::size_t p = 0; p < m; ++p) acc = f.mul_add(f.pow(x[p], tt), res.codeword[p], acc);
          rhs[tt] = f.neg(acc);
        }
        const auto sol = solve_vandermonde(f, points, rhs);
        for (std::uint32_t u = 0; u < si; ++u) target[rx.with_digit(a, fi, j * si + u)] = sol[u];
      }
    }
    stage_of[fi] = static_cast<int>(i);
  }
  return out;
}

}  // namespace mdsarray::detail
