#include "mdsarray/repair/grs.hpp"

#include <string>

#include "mdsarray/error.hpp"
#include "mdsarray/gf/matrix.hpp"

namespace mdsarray {

Elem poly_eval(const Field& f, std::span<const Elem> p, Elem x) {
  Elem acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = f.mul_add(acc, x, p[i]);
  return acc;
}

namespace {

void trim(std::vector<Elem>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// num = quot * den + rem; den monic or at least with nonzero lead.
bool divide_exact(const Field& f, std::vector<Elem> num, std::vector<Elem> den, std::vector<Elem>& quot) {
  trim(num);
  trim(den);
  quot.clear();
  if (num.empty()) return true;
  if (num.size() < den.size()) return false;
  const Elem lead_inv = f.inv(den.back());
  quot.assign(num.size() - den.size() + 1, 0);
  for (std::size_t i = quot.size(); i-- > 0;) {
    const Elem c = f.mul(num[i + den.size() - 1], lead_inv);
    quot[i] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] = f.sub(num[i + j], f.mul(c, den[j]));
  }
  trim(num);
  return num.empty();
}

}  // namespace

GrsResult grs_decode(const Field& f, const GrsInput& in) {
  const std::size_t n_known = in.known.size();
  const std::size_t k = in.dimension;
  const std::size_t t = in.max_errors;
  if (in.values.size() != n_known || in.points.size() != in.multipliers.size()) {
    throw std::invalid_argument("grs_decode: shape mismatch");
  }
  if (n_known < k + 2 * t) {
    throw Error(ErrorCode::TooFewHelpers, "need " + std::to_string(k + 2 * t) + " received positions, got " +
                                              std::to_string(n_known));
  }
  // Unknowns: Q_0..Q_{k+t-1}, then E_0..E_{t-1}; E is monic of degree t.
  const std::size_t nq = k + t;
  DenseMatrix sys(n_known, nq + t);
  std::vector<Elem> rhs(n_known);
  for (std::size_t row = 0; row < n_known; ++row) {
    const std::size_t v = in.known[row];
    const Elem x = in.points[v];
    const Elem w = f.div(in.values[row], in.multipliers[v]);
    Elem p = 1;
    for (std::size_t c = 0; c < nq; ++c) {
      sys.at(row, c) = p;
      if (c < t) sys.at(row, nq + c) = f.neg(f.mul(w, p));
      if (c == t) rhs[row] = f.mul(w, p);
      p = f.mul(p, x);
    }
    if (t >= nq) rhs[row] = f.mul(w, f.pow(x, t));
  }
  const auto sol = solve_any(f, std::move(sys), std::move(rhs));
  if (!sol) throw Error(ErrorCode::DecodingFailure, "no error locator of degree " + std::to_string(t));
  std::vector<Elem> q(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nq));
  std::vector<Elem> e(sol->begin() + static_cast<std::ptrdiff_t>(nq), sol->end());
  e.push_back(1);
  std::vector<Elem> p;
  if (!divide_exact(f, q, e, p) || p.size() > k) {
    throw Error(ErrorCode::DecodingFailure, "error locator does not divide the interpolant");
  }
  GrsResult out;
  out.codeword.resize(in.points.size());
  for (std::size_t v = 0; v < in.points.size(); ++v) {
    out.codeword[v] = f.mul(in.multipliers[v], poly_eval(f, p, in.points[v]));
  }
  for (std::size_t row = 0; row < n_known; ++row) {
    if (out.codeword[in.known[row]] != in.values[row]) out.errors.push_back(in.known[row]);
  }
  if (out.errors.size() > t) {
    throw Error(ErrorCode::DecodingFailure, std::to_string(out.errors.size()) + " mismatches exceed t=" +
                                                std::to_string(t));
  }
  return out;
}

}  // namespace mdsarray
