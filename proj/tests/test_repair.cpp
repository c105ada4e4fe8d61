#include <random>

#include "doctest.h"
#include "mdsarray/error.hpp"
#include "mdsarray/repair/repair.hpp"
#include "mdsarray/sim/cluster.hpp"
#include "support.hpp"

using namespace mdsarray;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

Codeword random_codeword(const CodeSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return encode_systematic(spec, oracle::random_message(spec, rng));
}

// Brute-force decoder for the pluggable GRS hook.
GrsResult brute_grs(const Field& f, const GrsInput& in) {
  const std::uint64_t q = f.modulus();
  const int m = static_cast<int>(in.known.size());
  for (std::size_t w = 0; w <= in.max_errors; ++w)
    for (const auto& bad : oracle::subsets(oracle::range(m), w)) {
      const auto good = oracle::without(oracle::range(m), bad);
      std::vector<std::uint64_t> xs, ys;
      for (std::size_t g = 0; g < in.dimension; ++g) {
        const auto p = in.known[good[g]];
        xs.push_back(in.points[p]);
        ys.push_back(std::uint64_t{in.values[good[g]]} * oracle::inverse(in.multipliers[p], q) % q);
      }
      GrsResult r;
      for (std::size_t p = 0; p < in.points.size(); ++p)
        r.codeword.push_back(static_cast<Elem>(in.multipliers[p] * oracle::lagrange(xs, ys, in.points[p], q) % q));
      bool ok = true;
      for (int g : good) ok = ok && r.codeword[in.known[g]] == in.values[g];
      if (!ok) continue;
      for (int g = 0; g < m; ++g)
        if (r.codeword[in.known[g]] != in.values[g]) r.errors.push_back(in.known[g]);
      return r;
    }
  throw Error(ErrorCode::DecodingFailure, "brute force found nothing");
}

}  // namespace

TEST_CASE("bound") {
  CHECK(bound_bandwidth(1, 3, 2, 16, 0) == 24);
  CHECK(bound_bandwidth(2, 4, 4, 64, 0) == 256);
  CHECK(bound_bandwidth(1, 3, 3, 5, 0) == 15);
  CHECK(bound_bandwidth(1, 3, 2, 64, 1) == 160);
  CHECK(code_of([] { bound_bandwidth(1, 3, 2, 5, 0); }) == ErrorCode::NotIntegral);
  CHECK(code_of([] { bound_bandwidth(1, 2, 3, 8, 0); }) == ErrorCode::BadParameters);
}

TEST_CASE("single repair, C1") {
  const auto spec = build(Construction::C1, 4, 2);
  const auto zero = repair_single(spec, zero_codeword(spec), 1);
  CHECK(zero.recovered.front() == Column(spec.l, 0));
  CHECK(zero.transmitted_symbols == 24);
  const auto cw = random_codeword(spec, 1);
  for (int i = 0; i < spec.n; ++i) {
    auto broken = cw;
    broken[i].assign(spec.l, 0);
    const auto tr = repair_single(spec, broken, i);
    CHECK(tr.recovered.front() == decode_erasures(spec, broken, {i})[i]);
    CHECK(tr.recovered.front() == cw[i]);
    CHECK(tr.transmitted_symbols == 24);
    CHECK(tr.accessed_symbols == 48);
    CHECK(tr.optimal);
    const auto same = repair_d(spec, broken, i, oracle::without(oracle::range(4), {i}));
    CHECK(same.transmitted_symbols == tr.transmitted_symbols);
    CHECK(same.recovered == tr.recovered);
    for (const auto& u : tr.usage) {
      CHECK(u.transmitted == spec.l / spec.r);
      CHECK(u.accessed == spec.l);
    }
  }
  const auto c4 = build(Construction::C4, 4, 2);
  CHECK(repair_single(c4, zero_codeword(c4), 0).transmitted_symbols == 12);
}

TEST_CASE("d-helper repair, C2") {
  const auto spec = build(Construction::C2, 6, 2, {.d_set = {3}});
  CHECK(spec.l == 64);
  const auto cw = random_codeword(spec, 2);
  const auto tr = repair_d(spec, cw, 0, {1, 2, 3});
  CHECK(tr.transmitted_symbols == 96);
  CHECK(tr.recovered.front() == cw[0]);
  CHECK(tr.plan.strategy == Strategy::D);
}

TEST_CASE("error-resilient repair localizes and matches the brute-force decoder") {
  const auto spec = build(Construction::C2, 6, 2, {.d_set = {3}});
  const auto cw = random_codeword(spec, 3);
  RepairOptions opts;
  opts.grs_decoder = brute_grs;
  for (int bad : {2, 4}) {
    auto stored = cw;
    stored[bad] = corrupted_column(spec, cw[bad], 99);
    const auto tr = repair_d(spec, stored, 0, {1, 2, 3, 4, 5}, 1);
    CHECK(tr.recovered.front() == cw[0]);
    CHECK(tr.transmitted_symbols == 160);
    CHECK(tr.error_locations == std::vector<int>{bad});
    const auto alt = repair_d(spec, stored, 0, {1, 2, 3, 4, 5}, 1, opts);
    CHECK(alt.recovered == tr.recovered);
    CHECK(alt.error_locations == tr.error_locations);
  }
  // Two liars with t = 1 never yield a clean, correct claim.
  int detected = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto stored = cw;
    stored[1] = corrupted_column(spec, cw[1], seed);
    stored[3] = corrupted_column(spec, cw[3], seed + 100);
    try {
      const auto tr = repair_d(spec, stored, 0, {1, 2, 3, 4, 5}, 1);
      if (tr.recovered.front() != cw[0]) ++detected;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DecodingFailure);
      ++detected;
    }
  }
  CHECK(detected == 10);
}

TEST_CASE("multi-failure repair") {
  const auto c6 = build(Construction::C6, 6, 4);
  const auto cw = random_codeword(c6, 4);
  const auto one = repair_multi(c6, cw, {2}, {0, 1, 3, 4});
  const auto d = repair(c6, cw, {{2}, {0, 1, 3, 4}, 0, Strategy::Access});
  CHECK(one.transmitted_symbols == d.transmitted_symbols);
  CHECK(one.recovered == d.recovered);
  const auto two = repair_multi(c6, cw, {1, 4}, {0, 2, 3, 5});
  CHECK(two.transmitted_symbols == 256);
  CHECK(two.accessed_symbols == 256);
  CHECK(two.recovered[0] == cw[1]);
  CHECK(two.recovered[1] == cw[4]);

  const auto c3 = build(Construction::C3, 4, 2);
  const auto cw3 = random_codeword(c3, 5);
  const auto tr = repair_multi(c3, cw3, {0, 3}, {1, 2});
  CHECK(tr.transmitted_symbols <= bound_bandwidth(2, 2, 2, c3.l));
  CHECK(tr.recovered[0] == cw3[0]);
  CHECK(tr.recovered[1] == cw3[3]);
}

TEST_CASE("optimal access, C4") {
  const auto spec = build(Construction::C4, 4, 2);
  CHECK(spec.l == 8);
  const auto cw = random_codeword(spec, 6);
  for (int i = 0; i < spec.n; ++i) {
    const auto tr = repair_access(spec, cw, i, oracle::without(oracle::range(4), {i}));
    CHECK(tr.recovered.front() == cw[i]);
    CHECK(tr.transmitted_symbols == 12);
    CHECK(tr.accessed_symbols == 12);
    for (const auto& acc : tr.plan.access) CHECK(acc.size() == 4);
  }
  // Identity node: reads follow the digit sum.
  const auto tr = repair_access(spec, cw, 3, {0, 1, 2});
  for (std::size_t h = 0; h < tr.plan.helpers.size(); ++h)
    for (auto a : tr.plan.access[h]) {
      std::uint64_t sum = 0;
      for (int p = 0; p < 3; ++p) sum += oracle::digit(a, spec.s, p);
      CHECK(sum % spec.s == 0);
    }
  CHECK(auto_strategy(spec, 2) == Strategy::Decode);
}

TEST_CASE("access repair with a corrupted helper, C5") {
  const auto spec = build(Construction::C5, 6, 2, {.d_set = {3}});
  const auto cw = random_codeword(spec, 7);
  auto stored = cw;
  stored[4] = corrupted_column(spec, cw[4], 5);
  const auto tr = repair_access(spec, stored, 0, {1, 2, 3, 4, 5}, 1);
  CHECK(tr.recovered.front() == cw[0]);
  CHECK(tr.error_locations == std::vector<int>{4});
  CHECK(tr.transmitted_symbols == 160);
  CHECK(tr.accessed_symbols == 160);
}

TEST_CASE("C7 repair including the identity node") {
  const auto spec = build(Construction::C7, 5, 3, {.d_set = {4}});
  const auto cw = random_codeword(spec, 8);
  for (int i = 0; i < spec.n; ++i) {
    const auto tr = repair(spec, cw, {{i}, oracle::without(oracle::range(5), {i}), 0, Strategy::Auto});
    CHECK(tr.recovered.front() == cw[i]);
    CHECK(tr.transmitted_symbols == tr.bound);
  }
}

TEST_CASE("decode fallback is flagged") {
  const auto spec = build(Construction::C4, 6, 3);
  const auto cw = random_codeword(spec, 9);
  const auto tr = repair(spec, cw, {{0, 2}, {1, 3, 4, 5}, 0, Strategy::Auto});
  CHECK(tr.plan.strategy == Strategy::Decode);
  CHECK(tr.transmitted_symbols == 3 * spec.l);
  CHECK(tr.bound == 648);
  CHECK_FALSE(tr.optimal);
  CHECK(tr.recovered[0] == cw[0]);
  CHECK(tr.recovered[1] == cw[2]);
}

TEST_CASE("request validation") {
  const auto spec = build(Construction::C1, 6, 2);
  const auto cw = zero_codeword(spec);
  CHECK(code_of([&] { repair(spec, cw, {{6}, {0, 1}, 0}); }) == ErrorCode::BadIndex);
  CHECK(code_of([&] { repair(spec, cw, {{0, 1, 2, 3, 4}, {5}, 0}); }) == ErrorCode::TooManyFailures);
  CHECK(code_of([&] { repair(spec, cw, {{0}, {1}, 0}); }) == ErrorCode::TooFewHelpers);
  CHECK(code_of([&] { repair(spec, cw, {{0}, {1, 2, 3, 4}, 0}); }) == ErrorCode::BadParameters);
  try {
    repair(spec, cw, {{0}, {1, 2, 3, 4}, 0});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("{2,3,5}") != std::string::npos);
  }
  CHECK(code_of([&] { repair(spec, cw, {{0}, {1, 2}, 0, Strategy::Access}); }) == ErrorCode::UnsupportedSpec);
  CHECK(strategy_from_string("multi") == Strategy::Multi);
  CHECK(to_string(Strategy::Access) == "access");
}
