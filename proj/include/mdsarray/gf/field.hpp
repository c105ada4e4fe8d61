#pragma once

#include <cstdint>
#include <vector>

namespace mdsarray {

// A field element is its canonical residue in [0, q). The modulus lives in the
// Field context, never in the element.
using Elem = std::uint32_t;

bool is_prime(std::uint64_t value);
std::uint64_t next_prime(std::uint64_t at_least);

class Field {
 public:
  // Throws NotPrime unless q is a prime below 2^32.
  explicit Field(std::uint64_t q);

  std::uint32_t modulus() const noexcept { return q_; }

  Elem add(Elem a, Elem b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= q_ ? s - q_ : s);
  }
  Elem sub(Elem a, Elem b) const noexcept {
    return a >= b ? a - b : static_cast<Elem>(std::uint64_t{a} + q_ - b);
  }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>((std::uint64_t{a} * b) % q_);
  }
  // a * b + c, the inner step of every dot product.
  Elem mul_add(Elem a, Elem b, Elem c) const noexcept {
    return static_cast<Elem>((std::uint64_t{a} * b + c) % q_);
  }

  // Throws DivisionByZero for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  // Square-and-multiply; pow(0, 0) == 1.
  Elem pow(Elem a, std::uint64_t t) const noexcept;

  Elem reduce(std::uint64_t v) const noexcept { return static_cast<Elem>(v % q_); }

  // Multiplicative order of a nonzero element.
  std::uint64_t order(Elem a) const;

  // Smallest generator of the multiplicative group in residue order 1, 2, ...
  // For q == 2 this is 1.
  Elem primitive_element() const;

  // Canonical list 0, 1, ..., m-1. Throws FieldTooSmall for m > q.
  std::vector<Elem> enumerate(std::uint64_t m) const;

  friend bool operator==(const Field& a, const Field& b) { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
};

}  // namespace mdsarray
