#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mdsarray/gf/field.hpp"

namespace mdsarray {

// A generalized Reed-Solomon code of length points.size(): codewords are
// (u_v * P(x_v)) for deg P < dimension.
struct GrsInput {
  std::span<const Elem> points;
  std::span<const Elem> multipliers;
  // Positions holding received values, and those values.
  std::span<const std::size_t> known;
  std::span<const Elem> values;
  std::size_t dimension;
  std::size_t max_errors;
};

struct GrsResult {
  std::vector<Elem> codeword;
  // Known positions whose received value differs from the decoded codeword.
  std::vector<std::size_t> errors;
};

// Berlekamp-Welch. Throws DecodingFailure when no codeword lies within
// max_errors of the received values.
GrsResult grs_decode(const Field& f, const GrsInput& in);

using GrsDecoder = std::function<GrsResult(const Field&, const GrsInput&)>;

// Polynomial helpers, coefficients lowest degree first.
Elem poly_eval(const Field& f, std::span<const Elem> p, Elem x);

}  // namespace mdsarray
