#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mdsarray/error.hpp"
#include "mdsarray/repair/repair.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray::cli {

// 0 ok, 2 parameters, 3 decoding or verification failure, 4 I/O.
int exit_code(ErrorCode code);
inline constexpr int kExitOk = 0;
inline constexpr int kExitParams = 2;
inline constexpr int kExitDecode = 3;
inline constexpr int kExitIo = 4;

struct CodeArgs {
  int construction = 1;
  int n = 0;
  int k = 0;
  std::vector<int> d;  // helper counts for C2/C5/C7
  std::optional<std::uint64_t> field;
  bool force_large_l = false;
};

// File shards default to the smallest admissible prime >= 257.
CodeSpec file_spec(const CodeArgs& args);

// Each command returns the process exit code. Node numbers are 1-based.
int cmd_encode(const std::filesystem::path& input, const CodeArgs& code, const std::filesystem::path& out_dir,
               std::ostream& out);
int cmd_decode(const std::filesystem::path& dir, const std::filesystem::path& output, std::ostream& out);

struct RepairArgs {
  std::vector<int> failed;   // 1-based
  std::vector<int> helpers;  // 1-based; empty = every other shard present
  int t = 0;
  std::optional<int> d;      // with no helper list, use the first d + 2t survivors
  std::string strategy = "auto";
};
int cmd_repair(const std::filesystem::path& dir, const RepairArgs& args, std::ostream& out);
int cmd_verify(const std::filesystem::path& dir, std::ostream& out);
int cmd_corrupt(const std::filesystem::path& dir, int node, std::uint64_t seed, std::ostream& out);

struct BenchArgs {
  // Empty construction list means the built-in grid.
  std::optional<CodeArgs> code;
  int failures = 1;
  int t = 0;
  bool with_timing = true;
  std::uint64_t seed = 1;
};
inline constexpr const char* kBenchHeader =
    "construction,n,k,d,h,t,l,q,transmitted,accessed,bound,encode_ms,repair_ms";
int cmd_bench(const BenchArgs& args, std::ostream& out);

// Builds a cluster with a seeded random message and runs the event log.
int cmd_replay(const std::filesystem::path& log_file, const CodeArgs& code, std::uint64_t seed, std::ostream& out);

}  // namespace mdsarray::cli
