#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdsarray/codec/codec.hpp"
#include "mdsarray/repair/grs.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray {

// h(d + 2t)l / (h + d - k). Throws NotIntegral if the division is inexact,
// BadParameters if d < k.
std::uint64_t bound_bandwidth(int h, int d, int k, std::uint64_t l, int t = 0);

enum class Strategy {
  Auto,
  Single,  // d = n-1 block-sum repair, diagonal families
  D,       // d-helper repair: block sums (diagonal) or subspace projection (C4/C7)
  Multi,   // sequential repair of several nodes
  Access,  // raw-read repair (shift families)
  Decode,  // read k whole columns and erasure-decode; never bandwidth-optimal
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct RepairRequest {
  std::vector<int> failed;
  std::vector<int> helpers;
  int t = 0;
  Strategy strategy = Strategy::Auto;
};

struct RepairPlan {
  std::vector<int> failed;   // ascending; stages run in this order
  std::vector<int> helpers;  // ascending
  int t = 0;
  int d = 0;
  Strategy strategy = Strategy::Auto;  // engine that actually ran
  // Coordinates read from each helper, ascending; parallel to helpers.
  std::vector<std::vector<std::uint64_t>> access;
};

struct HelperUsage {
  int node;
  std::uint64_t accessed;
  std::uint64_t transmitted;
};

struct RepairTrace {
  RepairPlan plan;
  std::vector<HelperUsage> usage;
  std::uint64_t transmitted_symbols = 0;
  std::uint64_t accessed_symbols = 0;
  std::uint64_t bound = 0;
  // Parallel to plan.failed.
  std::vector<Column> recovered;
  // Helpers found to be sending values inconsistent with the code.
  std::vector<int> error_locations;
  bool optimal = false;
};

struct RepairOptions {
  // Replaces Berlekamp-Welch in the block-sum engines (tests plug in a brute-force decoder).
  GrsDecoder grs_decoder;
};

// `stored` holds every node's current column; failed columns are never read
// and corrupted helpers simply hold wrong data.
RepairTrace repair(const CodeSpec& spec, const Codeword& stored, const RepairRequest& request,
                   const RepairOptions& options = {});

RepairTrace repair_single(const CodeSpec& spec, const Codeword& stored, int failed);
RepairTrace repair_d(const CodeSpec& spec, const Codeword& stored, int failed, const std::vector<int>& helpers,
                     int t = 0, const RepairOptions& options = {});
RepairTrace repair_multi(const CodeSpec& spec, const Codeword& stored, const std::vector<int>& failed,
                         const std::vector<int>& helpers, int t = 0, const RepairOptions& options = {});
RepairTrace repair_access(const CodeSpec& spec, const Codeword& stored, int failed, const std::vector<int>& helpers,
                          int t = 0);

// Strategy that repair() picks for this request under Strategy::Auto.
Strategy auto_strategy(const CodeSpec& spec, std::size_t failures);

}  // namespace mdsarray
