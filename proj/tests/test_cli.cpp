#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mdsarray/cli/commands.hpp"
#include "mdsarray/cli/shard.hpp"
#include "mdsarray/error.hpp"

using namespace mdsarray;
using namespace mdsarray::cli;
namespace fs = std::filesystem;

#ifndef GOLDEN_DIR
#define GOLDEN_DIR "tests/golden"
#endif

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mdsarray_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::vector<std::uint8_t> random_bytes(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

void write(const fs::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream(p, std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CodeArgs code(int c, int n, int k, std::vector<int> d = {}) {
  CodeArgs a;
  a.construction = c;
  a.n = n;
  a.k = k;
  a.d = std::move(d);
  return a;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("golden shard header") {
  const auto spec = file_spec(code(2, 6, 2, {3}));
  CHECK(spec.field.modulus() == 257);
  const auto bytes = encode_header(header_for(spec, 3, 1000));
  std::ifstream in(fs::path(GOLDEN_DIR) / "c2_n6_k2_d3_node4.hex");
  std::vector<std::uint8_t> golden;
  unsigned v;
  while (in >> std::hex >> v) golden.push_back(static_cast<std::uint8_t>(v));
  CHECK(golden.size() == 38);
  CHECK(bytes == golden);
  std::size_t used = 0;
  const auto back = decode_header(bytes, used);
  CHECK(used == bytes.size());
  CHECK(back == header_for(spec, 3, 1000));
  CHECK(spec_from_header(back) == spec);
  auto broken = bytes;
  broken[0] = 'X';
  CHECK_THROWS_AS(decode_header(broken, used), Error);
}

TEST_CASE("symbol packing") {
  CHECK(bytes_per_symbol(257) == 1);
  CHECK(bytes_per_symbol(65537) == 2);
  CHECK(bytes_per_symbol(16777259) == 3);
  CHECK_THROWS_AS(bytes_per_symbol(251), Error);
  const auto bytes = random_bytes(1001, 1);
  for (int b : {1, 2, 3}) {
    auto out = unpack_symbols(pack_symbols(bytes, b), b);
    out.resize(bytes.size());
    CHECK(out == bytes);
  }
  CHECK(pack_symbols(std::vector<std::uint8_t>{0x01, 0x02}, 2) == std::vector<Elem>{0x0201});
}

TEST_CASE("encode, lose r shards, decode") {
  TempDir dir("roundtrip");
  const auto data = random_bytes(5000, 2);
  write(dir.path / "in.bin", data);
  std::ostringstream out;
  REQUIRE(cmd_encode(dir.path / "in.bin", code(5, 5, 3, {4}), dir.path / "s", out) == 0);
  for (int i = 0; i < 5; ++i) CHECK(fs::exists(dir.path / "s" / shard_path("", i)));
  CHECK(cmd_verify(dir.path / "s", out) == 0);
  fs::remove(dir.path / "s" / "node001.shard");
  fs::remove(dir.path / "s" / "node004.shard");
  CHECK(cmd_decode(dir.path / "s", dir.path / "out.bin", out) == 0);
  CHECK(slurp(dir.path / "out.bin") == data);
  std::ostringstream v;
  CHECK(cmd_verify(dir.path / "s", v) == 0);
  CHECK(contains(v.str(), "verified via re-encode"));
  fs::remove(dir.path / "s" / "node002.shard");
  std::ostringstream e;
  CHECK(cmd_verify(dir.path / "s", e) == kExitIo);
  CHECK(cmd_decode(dir.path / "s", dir.path / "out2.bin", e) == kExitDecode);
}

TEST_CASE("empty file") {
  TempDir dir("empty");
  write(dir.path / "in.bin", {});
  std::ostringstream out;
  REQUIRE(cmd_encode(dir.path / "in.bin", code(1, 4, 2), dir.path / "s", out) == 0);
  const auto shard = read_shard(dir.path / "s" / "node003.shard");
  CHECK(shard.header.payload_bytes == 0);
  CHECK(shard.symbols == std::vector<Elem>(shard.header.l, 0));
  CHECK(cmd_decode(dir.path / "s", dir.path / "out.bin", out) == 0);
  CHECK(slurp(dir.path / "out.bin").empty());
}

TEST_CASE("repair reports") {
  TempDir dir("repair");
  write(dir.path / "in.bin", random_bytes(3000, 3));
  std::ostringstream sink;
  REQUIRE(cmd_encode(dir.path / "in.bin", code(4, 5, 3), dir.path / "c4", sink) == 0);
  REQUIRE(cmd_encode(dir.path / "in.bin", code(1, 5, 3), dir.path / "c1", sink) == 0);
  const auto before = slurp(dir.path / "c4" / "node002.shard");
  fs::remove(dir.path / "c4" / "node002.shard");

  RepairArgs args;
  args.failed = {2};
  std::ostringstream c4;
  CHECK(cmd_repair(dir.path / "c4", args, c4) == 0);
  CHECK(contains(c4.str(), "bandwidth ratio 1.000"));
  CHECK(contains(c4.str(), "access ratio 1.000"));
  CHECK(slurp(dir.path / "c4" / "node002.shard") == before);

  std::ostringstream c1;
  CHECK(cmd_repair(dir.path / "c1", args, c1) == 0);
  CHECK(contains(c1.str(), "bandwidth ratio 1.000"));
  CHECK(contains(c1.str(), "access ratio 2.000"));

  TempDir six("repair6");
  write(six.path / "in.bin", random_bytes(100, 4));
  REQUIRE(cmd_encode(six.path / "in.bin", code(1, 6, 2), six.path / "s", sink) == 0);
  args.d = 4;
  std::ostringstream bad;
  CHECK(cmd_repair(six.path / "s", args, bad) == kExitParams);
  CHECK(contains(bad.str(), "BadParameters"));
  CHECK(contains(bad.str(), "{2,3,5}"));
}

TEST_CASE("corrupt then verify, then repair with t=1") {
  TempDir dir("corrupt");
  write(dir.path / "in.bin", random_bytes(700, 5));
  std::ostringstream out;
  REQUIRE(cmd_encode(dir.path / "in.bin", code(2, 6, 2, {3}), dir.path / "s", out) == 0);
  const auto good = slurp(dir.path / "s" / "node001.shard");
  CHECK(cmd_corrupt(dir.path / "s", 5, 11, out) == 0);
  std::ostringstream v;
  CHECK(cmd_verify(dir.path / "s", v) == kExitDecode);
  CHECK(contains(v.str(), "stripe 0: parity equation t=0"));
  fs::remove(dir.path / "s" / "node001.shard");
  RepairArgs args;
  args.failed = {1};
  args.t = 1;
  std::ostringstream r;
  CHECK(cmd_repair(dir.path / "s", args, r) == 0);
  CHECK(contains(r.str(), "errors located: 5"));
  CHECK(slurp(dir.path / "s" / "node001.shard") == good);
}

TEST_CASE("bench") {
  BenchArgs args;
  args.with_timing = false;
  std::ostringstream a, b;
  CHECK(cmd_bench(args, a) == 0);
  CHECK(cmd_bench(args, b) == 0);
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == kBenchHeader);
  bool saw_c3 = false;
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 13);
    if (f[0] == "C3" && f[1] == "5" && f[2] == "2") saw_c3 = saw_c3 || f[6] == "7776";
    CHECK(f[8] == f[10]);
  }
  CHECK(saw_c3);
}

TEST_CASE("replay") {
  TempDir dir("replay");
  std::ofstream(dir.path / "log.txt") << "FAIL 1\nREPAIR F=1 R=2,3,4,5 t=0 strategy=auto\n";
  std::ostringstream a, b;
  CHECK(cmd_replay(dir.path / "log.txt", code(1, 5, 3), 4, a) == 0);
  CHECK(cmd_replay(dir.path / "log.txt", code(1, 5, 3), 4, b) == 0);
  CHECK(a.str() == b.str());
  CHECK(contains(a.str(), "verify: pass"));
  std::ofstream(dir.path / "bad.txt") << "FAIL 1\nFAIL 2\nFAIL 3\n";
  std::ostringstream c;
  CHECK(cmd_replay(dir.path / "bad.txt", code(1, 5, 3), 4, c) == kExitParams);
}
