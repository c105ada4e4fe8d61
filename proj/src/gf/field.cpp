#include "mdsarray/gf/field.hpp"

#include <string>

#include "mdsarray/error.hpp"

namespace mdsarray {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::TooManyErasures: return "TooManyErasures";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
    case ErrorCode::TooFewHelpers: return "TooFewHelpers";
    case ErrorCode::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorCode::DecodingFailure: return "DecodingFailure";
    case ErrorCode::NotIntegral: return "NotIntegral";
    case ErrorCode::SingularDifference: return "SingularDifference";
    case ErrorCode::Format: return "Format";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value < 4) return true;
  if (value % 2 == 0 || value % 3 == 0) return false;
  for (std::uint64_t d = 5; d * d <= value; d += 6) {
    if (value % d == 0 || value % (d + 2) == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t at_least) {
  std::uint64_t p = at_least < 2 ? 2 : at_least;
  while (!is_prime(p)) ++p;
  return p;
}

Field::Field(std::uint64_t q) {
  if (q < 2 || q > 0xFFFFFFFFull || !is_prime(q)) {
    throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime below 2^32");
  }
  q_ = static_cast<std::uint32_t>(q);
}

Elem Field::pow(Elem a, std::uint64_t t) const noexcept {
  Elem result = 1 % q_;
  Elem base = a;
  while (t != 0) {
    if (t & 1) result = mul(result, base);
    base = mul(base, base);
    t >>= 1;
  }
  return result;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  // Extended Euclid on (a, q).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q_, new_r = a;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<Elem>(t);
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

std::uint64_t Field::order(Elem a) const {
  if (a % q_ == 0) throw Error(ErrorCode::DivisionByZero, "order of zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t p : prime_factors(q_ - 1)) {
    while (ord % p == 0 && pow(a, ord / p) == 1) ord /= p;
  }
  return ord;
}

Elem Field::primitive_element() const {
  if (q_ == 2) return 1;
  const auto factors = prime_factors(q_ - 1);
  for (Elem g = 1; g < q_; ++g) {
    bool generator = true;
    for (std::uint64_t p : factors) {
      if (pow(g, (q_ - 1) / p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // unreachable for prime q
}

std::vector<Elem> Field::enumerate(std::uint64_t m) const {
  if (m > q_) {
    throw Error(ErrorCode::FieldTooSmall,
                "need " + std::to_string(m) + " distinct elements, field has " + std::to_string(q_));
  }
  std::vector<Elem> out(m);
  for (std::uint64_t i = 0; i < m; ++i) out[i] = static_cast<Elem>(i);
  return out;
}

}  // namespace mdsarray
