#include "mdsarray/codec/codec.hpp"

#include <algorithm>
#include <string>

#include "mdsarray/error.hpp"
#include "mdsarray/gf/matrix.hpp"

namespace mdsarray {

namespace {

void check_shape(const CodeSpec& spec, const Codeword& cw) {
  if (cw.size() != static_cast<std::size_t>(spec.n)) {
    throw Error(ErrorCode::BadParameters, "codeword has " + std::to_string(cw.size()) + " columns, expected " +
                                              std::to_string(spec.n));
  }
  for (const Column& c : cw) {
    if (c.size() != spec.l) throw Error(ErrorCode::BadParameters, "column length differs from l");
  }
}

}  // namespace

Elem beta(const CodeSpec& spec, int node, std::uint32_t u, std::uint64_t t) {
  if (spec.diagonal()) throw Error(ErrorCode::UnsupportedSpec, "beta is defined for the shift families");
  if (node < 0 || node >= spec.n) throw Error(ErrorCode::BadIndex, "node index out of range");
  if (u >= spec.s) throw Error(ErrorCode::OutOfRange, "digit value out of range");
  if (spec.is_identity(node)) return 1;
  const Field& f = spec.field;
  Elem out = 1;
  for (std::uint64_t v = 0; v < t; ++v) out = f.mul(out, spec.lambda[node][(u + v) % spec.s]);
  return out;
}

std::optional<Violation> verify(const CodeSpec& spec, const Codeword& cw) {
  check_shape(spec, cw);
  const auto ops = node_ops(spec);
  const Field& f = spec.field;
  for (int t = 0; t < spec.r; ++t) {
    for (std::uint64_t a = 0; a < spec.l; ++a) {
      Elem acc = 0;
      for (int i = 0; i < spec.n; ++i) {
        const MonomialEntry e = ops[i].row(a, static_cast<std::uint64_t>(t));
        acc = f.mul_add(e.coef, cw[i][e.col], acc);
      }
      if (acc != 0) return Violation{t, a};
    }
  }
  return std::nullopt;
}

ErasureDecoder::ErasureDecoder(const CodeSpec& spec, std::vector<int> erased)
    : spec_(&spec), ops_(node_ops(spec)), erased_(std::move(erased)) {
  std::sort(erased_.begin(), erased_.end());
  for (std::size_t i = 0; i < erased_.size(); ++i) {
    if (erased_[i] < 0 || erased_[i] >= spec.n) throw Error(ErrorCode::BadIndex, "erased node out of range");
    if (i > 0 && erased_[i] == erased_[i - 1]) throw Error(ErrorCode::BadIndex, "erased node listed twice");
  }
  if (erased_.size() > static_cast<std::size_t>(spec.r)) {
    throw Error(ErrorCode::TooManyErasures, std::to_string(erased_.size()) + " erasures exceed r=" +
                                                std::to_string(spec.r));
  }
  std::vector<bool> gone(spec.n, false);
  for (int e : erased_) gone[e] = true;
  for (int i = 0; i < spec.n; ++i) {
    if (!gone[i]) known_.push_back(i);
  }
  if (spec.diagonal() || erased_.empty()) return;

  std::vector<int> positions;
  for (int e : erased_) {
    if (!spec.is_identity(e)) positions.push_back(spec.digit_of(e));
  }
  const std::size_t count = erased_.size();
  auto row = [this](std::size_t t, std::uint64_t a, std::vector<Term>& out) {
    for (std::size_t u = 0; u < erased_.size(); ++u) {
      const MonomialEntry e = ops_[erased_[u]].row(a, t);
      out.push_back({u, e.col, e.coef});
    }
  };
  system_ = std::make_shared<GroupSystem>(spec.field, DigitGroups(spec.radix, positions), count, count, row);
}

void ErasureDecoder::decode(Codeword& cw) const {
  check_shape(*spec_, cw);
  if (erased_.empty()) return;
  if (spec_->diagonal()) {
    decode_diagonal(cw);
  } else {
    decode_shift(cw);
  }
}

void ErasureDecoder::decode_diagonal(Codeword& cw) const {
  const CodeSpec& spec = *spec_;
  const Field& f = spec.field;
  const std::size_t e = erased_.size();
  std::vector<Elem> points(e);
  std::vector<Elem> rhs(e);
  for (std::uint64_t a = 0; a < spec.l; ++a) {
    for (std::size_t u = 0; u < e; ++u) points[u] = spec.lambda[erased_[u]][spec.radix.digit(a, erased_[u])];
    std::fill(rhs.begin(), rhs.end(), 0);
    for (int j : known_) {
      const Elem x = spec.lambda[j][spec.radix.digit(a, j)];
      const Elem c = cw[j][a];
      Elem p = 1;
      for (std::size_t t = 0; t < e; ++t) {
        rhs[t] = f.sub(rhs[t], f.mul(p, c));
        p = f.mul(p, x);
      }
    }
    const auto sol = solve_vandermonde(f, points, rhs);
    for (std::size_t u = 0; u < e; ++u) cw[erased_[u]][a] = sol[u];
  }
}

void ErasureDecoder::decode_shift(Codeword& cw) const {
  const CodeSpec& spec = *spec_;
  const Field& f = spec.field;
  const DigitGroups& groups = system_->groups();
  const std::size_t g = groups.size();
  const std::size_t e = erased_.size();
  std::vector<Elem> rhs(e * g);
  for (std::uint64_t base : groups.bases()) {
    for (std::size_t t = 0; t < e; ++t) {
      for (std::size_t m = 0; m < g; ++m) {
        const std::uint64_t a = base + groups.offset(m);
        Elem acc = 0;
        for (int j : known_) {
          const MonomialEntry x = ops_[j].row(a, t);
          acc = f.mul_add(x.coef, cw[j][x.col], acc);
        }
        rhs[t * g + m] = f.neg(acc);
      }
    }
    const auto sol = system_->solve(rhs);
    for (std::size_t u = 0; u < e; ++u) {
      for (std::size_t m = 0; m < g; ++m) cw[erased_[u]][base + groups.offset(m)] = sol[u * g + m];
    }
  }
}

Codeword decode_erasures(const CodeSpec& spec, Codeword cw, const std::vector<int>& erased) {
  ErasureDecoder(spec, erased).decode(cw);
  return cw;
}

Message zero_message(const CodeSpec& spec) { return Message(spec.k, Column(spec.l, 0)); }
Codeword zero_codeword(const CodeSpec& spec) { return Codeword(spec.n, Column(spec.l, 0)); }

Codeword encode_systematic(const CodeSpec& spec, const Message& msg) {
  if (msg.size() != static_cast<std::size_t>(spec.k)) {
    throw Error(ErrorCode::BadParameters, "message has " + std::to_string(msg.size()) + " columns, expected " +
                                              std::to_string(spec.k));
  }
  Codeword cw = zero_codeword(spec);
  for (int i = 0; i < spec.k; ++i) {
    if (msg[i].size() != spec.l) throw Error(ErrorCode::BadParameters, "message column length differs from l");
    for (Elem v : msg[i]) {
      if (v >= spec.field.modulus()) throw Error(ErrorCode::OutOfRange, "message symbol not reduced mod q");
    }
    cw[i] = msg[i];
  }
  std::vector<int> parity;
  for (int i = spec.k; i < spec.n; ++i) parity.push_back(i);
  ErasureDecoder(spec, parity).decode(cw);
  return cw;
}

std::size_t update_symbol_in_place(const CodeSpec& spec, Codeword& cw, int node, std::uint64_t a, Elem value) {
  if (!spec.diagonal()) throw Error(ErrorCode::UnsupportedSpec, "in-place update needs a diagonal family");
  if (node < 0 || node >= spec.k) throw Error(ErrorCode::BadIndex, "update target must be a data node");
  if (a >= spec.l) throw Error(ErrorCode::BadIndex, "coordinate out of range");
  if (value >= spec.field.modulus()) throw Error(ErrorCode::OutOfRange, "symbol not reduced mod q");
  check_shape(spec, cw);
  const Field& f = spec.field;
  const Elem delta = f.sub(value, cw[node][a]);
  if (delta == 0) return 0;
  const std::size_t r = static_cast<std::size_t>(spec.r);
  std::vector<Elem> points(r);
  std::vector<Elem> rhs(r);
  const Elem x = spec.lambda[node][spec.radix.digit(a, node)];
  Elem p = 1;
  for (std::size_t t = 0; t < r; ++t) {
    points[t] = spec.lambda[spec.k + t][spec.radix.digit(a, spec.k + static_cast<int>(t))];
    rhs[t] = f.neg(f.mul(p, delta));
    p = f.mul(p, x);
  }
  const auto change = solve_vandermonde(f, points, rhs);
  cw[node][a] = value;
  std::size_t changed = 1;
  for (std::size_t t = 0; t < r; ++t) {
    Elem& c = cw[spec.k + t][a];
    if (change[t] != 0) ++changed;
    c = f.add(c, change[t]);
  }
  return changed;
}

Codeword update_symbol(const CodeSpec& spec, Codeword cw, int node, std::uint64_t a, Elem value) {
  update_symbol_in_place(spec, cw, node, a, value);
  return cw;
}

}  // namespace mdsarray
