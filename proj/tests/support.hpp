#pragma once

// Test-side oracles. Nothing here calls into the structured operators or
// solvers under test; matrices are built from the lambda table by hand.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "mdsarray/codec/codec.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace oracle {

using mdsarray::CodeSpec;
using mdsarray::Codeword;
using mdsarray::Elem;
using mdsarray::Message;

using Dense = std::vector<std::vector<std::uint64_t>>;

inline std::uint64_t digit(std::uint64_t a, std::uint64_t s, int pos) {
  for (int p = 0; p < pos; ++p) a /= s;
  return a % s;
}

inline std::uint64_t set_digit(std::uint64_t a, std::uint64_t s, int pos, std::uint64_t u) {
  std::uint64_t w = 1;
  for (int p = 0; p < pos; ++p) w *= s;
  return a - digit(a, s, pos) * w + u * w;
}

// A_i as a dense l x l matrix, straight from the family definition.
inline Dense node_matrix(const CodeSpec& spec, int i) {
  const std::uint64_t l = spec.l, s = spec.s;
  Dense m(l, std::vector<std::uint64_t>(l, 0));
  for (std::uint64_t a = 0; a < l; ++a) {
    if (spec.is_identity(i)) {
      m[a][a] = 1;
    } else if (spec.diagonal()) {
      m[a][a] = spec.lambda[i][digit(a, s, i)];
    } else {
      const std::uint64_t u = digit(a, s, i);
      m[a][set_digit(a, s, i, (u + 1) % s)] = spec.lambda[i][u];
    }
  }
  return m;
}

inline Dense mul(const Dense& x, const Dense& y, std::uint64_t q) {
  const std::size_t n = x.size();
  Dense z(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < n; ++j) z[i][j] = (z[i][j] + x[i][k] * y[k][j]) % q;
  return z;
}

inline Dense eye(std::size_t n) {
  Dense m(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// sum_i A_i^t C_i == 0 for all t < r, by dense products.
inline bool parity_holds(const CodeSpec& spec, const Codeword& cw) {
  const std::uint64_t q = spec.field.modulus();
  std::vector<Dense> power(spec.n, eye(spec.l));
  std::vector<Dense> a(spec.n);
  for (int i = 0; i < spec.n; ++i) a[i] = node_matrix(spec, i);
  for (int t = 0; t < spec.r; ++t) {
    std::vector<std::uint64_t> acc(spec.l, 0);
    for (int i = 0; i < spec.n; ++i)
      for (std::uint64_t row = 0; row < spec.l; ++row)
        for (std::uint64_t c = 0; c < spec.l; ++c) acc[row] = (acc[row] + power[i][row][c] * cw[i][c]) % q;
    for (auto v : acc)
      if (v) return false;
    for (int i = 0; i < spec.n; ++i) power[i] = mul(power[i], a[i], q);
  }
  return true;
}

inline Message random_message(const CodeSpec& spec, std::mt19937_64& rng) {
  Message m(spec.k, mdsarray::Column(spec.l));
  for (auto& col : m)
    for (auto& v : col) v = static_cast<Elem>(rng() % spec.field.modulus());
  return m;
}

inline std::vector<std::vector<int>> subsets(const std::vector<int>& pool, std::size_t size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == size) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<int> range(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline std::vector<int> without(const std::vector<int>& pool, const std::vector<int>& drop) {
  std::vector<int> out;
  for (int v : pool)
    if (std::find(drop.begin(), drop.end(), v) == drop.end()) out.push_back(v);
  return out;
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  for (std::uint64_t i = 0; i < e; ++i) r = r * a % q;
  return r;
}

// Inverse by exhaustive search.
inline std::uint64_t inverse(std::uint64_t a, std::uint64_t q) {
  for (std::uint64_t x = 1; x < q; ++x)
    if (a * x % q == 1) return x;
  return 0;
}

// Lagrange interpolation through (xs, ys), evaluated at x.
inline std::uint64_t lagrange(const std::vector<std::uint64_t>& xs, const std::vector<std::uint64_t>& ys,
                              std::uint64_t x, std::uint64_t q) {
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::uint64_t num = 1, den = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num = num * ((x + q - xs[j]) % q) % q;
      den = den * ((xs[i] + q - xs[j]) % q) % q;
    }
    sum = (sum + ys[i] * num % q * inverse(den, q)) % q;
  }
  return sum;
}

}  // namespace oracle
