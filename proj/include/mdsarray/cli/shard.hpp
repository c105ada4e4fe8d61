#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mdsarray/gf/field.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray::cli {

inline constexpr std::uint8_t kShardVersion = 1;

// Little-endian on disk:
//   "MDSA" | version u8 | construction u8 | q u32 | n u16 | k u16 | s u16 |
//   d_set count u16, entries u16 | node_index u16 (1-based) | l u64 | payload_bytes u64
// followed by stripes * l symbols, each u32.
struct ShardHeader {
  Construction construction = Construction::C1;
  std::uint32_t q = 0;
  std::uint16_t n = 0;
  std::uint16_t k = 0;
  std::uint16_t s = 0;
  std::vector<std::uint16_t> d_set;
  std::uint16_t node_index = 0;
  std::uint64_t l = 0;
  std::uint64_t payload_bytes = 0;

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

struct Shard {
  ShardHeader header;
  std::vector<Elem> symbols;  // stripe-major, l per stripe
};

std::vector<std::uint8_t> encode_header(const ShardHeader& h);
// Throws Format. `consumed` receives the header length.
ShardHeader decode_header(std::span<const std::uint8_t> bytes, std::size_t& consumed);

ShardHeader header_for(const CodeSpec& spec, int node, std::uint64_t payload_bytes);
// Rebuilds the spec a header describes; throws Format if it disagrees.
CodeSpec spec_from_header(const ShardHeader& h);

std::filesystem::path shard_path(const std::filesystem::path& dir, int node);
void write_shard(const std::filesystem::path& path, const Shard& shard);
Shard read_shard(const std::filesystem::path& path);

// Largest b with 2^(8b) <= q; throws FieldTooSmall below 256.
int bytes_per_symbol(std::uint32_t q);
std::vector<Elem> pack_symbols(std::span<const std::uint8_t> bytes, int b);
std::vector<std::uint8_t> unpack_symbols(std::span<const Elem> symbols, int b);

}  // namespace mdsarray::cli
