#include <random>

#include "doctest.h"
#include "mdsarray/error.hpp"
#include "mdsarray/gf/field.hpp"
#include "mdsarray/gf/matrix.hpp"
#include "support.hpp"

using namespace mdsarray;

TEST_CASE("field construction") {
  CHECK(Field(7).modulus() == 7);
  CHECK(Field(2).modulus() == 2);
  CHECK_THROWS_AS(Field(8), Error);
  try {
    Field f(8);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  CHECK(is_prime(257));
  CHECK_FALSE(is_prime(1));
  CHECK(next_prime(8) == 11);
}

TEST_CASE("gf7 arithmetic") {
  const Field f(7);
  CHECK(f.add(3, 5) == 1);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.inv(3) == oracle::inverse(3, 7));
  CHECK(f.inv(3) == 5);
  CHECK(f.inv(1) == 1);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK(f.pow(3, 2) == 2);
  CHECK(f.pow(0, 0) == 1);
  CHECK(f.pow(5, 6) == oracle::powmod(5, 6, 7));
}

TEST_CASE("inverse agrees with exhaustive search") {
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 257u}) {
    const Field f(q);
    for (Elem a = 1; a < q; ++a) CHECK(f.inv(a) == oracle::inverse(a, q));
  }
}

TEST_CASE("primitive element is the smallest of full order") {
  auto brute = [](std::uint64_t q) -> std::uint64_t {
    if (q == 2) return 1;
    for (std::uint64_t g = 1; g < q; ++g) {
      std::uint64_t x = 1, ord = 0;
      do {
        x = x * g % q;
        ++ord;
      } while (x != 1);
      if (ord == q - 1) return g;
    }
    return 0;
  };
  CHECK(Field(7).primitive_element() == 3);
  CHECK(Field(5).primitive_element() == 2);
  CHECK(Field(2).primitive_element() == 1);
  for (std::uint64_t q : {3u, 11u, 13u, 17u, 23u, 29u, 31u, 257u, 263u}) {
    const Field f(q);
    const Elem g = f.primitive_element();
    CHECK(g == brute(q));
    CHECK(f.pow(g, q - 1) == 1);
    for (std::uint64_t d = 1; d < q - 1; ++d)
      if ((q - 1) % d == 0) CHECK(f.pow(g, d) != 1);
  }
}

TEST_CASE("enumerate") {
  CHECK(Field(11).enumerate(4) == std::vector<Elem>{0, 1, 2, 3});
  CHECK_THROWS_AS(Field(7).enumerate(8), Error);
  CHECK(Field(13).enumerate(13).size() == 13);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(3);
  const Field f(263);
  for (int i = 0; i < 2000; ++i) {
    const Elem a = rng() % 263, b = rng() % 263, c = rng() % 263;
    CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    if (a) CHECK(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("dense solves") {
  const Field f(11);
  DenseMatrix m(2, 2);
  m.at(0, 0) = 1, m.at(0, 1) = 2, m.at(1, 0) = 2, m.at(1, 1) = 4;
  CHECK(rank(f, m) == 1);
  CHECK_FALSE(inverse(f, m).has_value());
  m.at(1, 1) = 5;
  auto inv = inverse(f, m);
  REQUIRE(inv.has_value());
  CHECK(multiply(f, m, *inv) == DenseMatrix::identity(2));
  const std::vector<Elem> pts{1, 2, 3};
  const std::vector<Elem> x{4, 0, 9};
  std::vector<Elem> rhs(3, 0);
  for (int t = 0; t < 3; ++t)
    for (int u = 0; u < 3; ++u) rhs[t] = (rhs[t] + oracle::powmod(pts[u], t, 11) * x[u]) % 11;
  CHECK(solve_vandermonde(f, pts, rhs) == x);
}
