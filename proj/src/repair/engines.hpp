#pragma once

#include <set>
#include <vector>

#include "channel.hpp"
#include "mdsarray/repair/repair.hpp"

namespace mdsarray::detail {

struct EngineResult {
  std::vector<Column> recovered;  // parallel to the sorted failed list
  std::set<int> errors;
};

// Stage size s_i = d + i + 1 - k for the 0-based stage i; throws UnsupportedSpec
// naming the supported helper counts when it does not divide s.
std::uint32_t stage_arity(const CodeSpec& spec, int d, int stage);

// Block sums over digit groups, GRS decoding of the sums (diagonal families).
EngineResult run_block_sum(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                           const std::vector<int>& helpers, int t, const GrsDecoder& decoder);

// Raw reads and the projected code (full-shift families C5/C6).
EngineResult run_raw_access(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                            const std::vector<int>& helpers, int t);

// Helpers send rows of prod (A_m - A_j) C_j (C4/C7, one failure, t = 0).
EngineResult run_subspace(const CodeSpec& spec, HelperChannel& ch, int failed, const std::vector<int>& helpers);

// k whole columns and an erasure decode.
EngineResult run_decode(const CodeSpec& spec, HelperChannel& ch, const std::vector<int>& failed,
                        const std::vector<int>& helpers);

}  // namespace mdsarray::detail
