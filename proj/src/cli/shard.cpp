#include "mdsarray/cli/shard.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

#include "mdsarray/error.hpp"

namespace mdsarray::cli {

namespace {

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
  template <class T>
  T get() {
    if (pos_ + sizeof(T) > b_.size()) throw Error(ErrorCode::Format, "shard header truncated");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{b_[pos_ + i]} << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_header(const ShardHeader& h) {
  std::vector<std::uint8_t> out{'M', 'D', 'S', 'A', kShardVersion, static_cast<std::uint8_t>(h.construction)};
  put(out, h.q);
  put(out, h.n);
  put(out, h.k);
  put(out, h.s);
  put(out, static_cast<std::uint16_t>(h.d_set.size()));
  for (std::uint16_t d : h.d_set) put(out, d);
  put(out, h.node_index);
  put(out, h.l);
  put(out, h.payload_bytes);
  return out;
}

ShardHeader decode_header(std::span<const std::uint8_t> bytes, std::size_t& consumed) {
  Reader in(bytes);
  const char magic[4] = {'M', 'D', 'S', 'A'};
  for (char c : magic) {
    if (in.get<std::uint8_t>() != static_cast<std::uint8_t>(c)) throw Error(ErrorCode::Format, "bad shard magic");
  }
  const auto version = in.get<std::uint8_t>();
  if (version != kShardVersion) {
    throw Error(ErrorCode::Format, "unsupported shard version " + std::to_string(version));
  }
  ShardHeader h;
  const auto c = in.get<std::uint8_t>();
  if (c < 1 || c > 7) throw Error(ErrorCode::Format, "bad construction id " + std::to_string(c));
  h.construction = static_cast<Construction>(c);
  h.q = in.get<std::uint32_t>();
  h.n = in.get<std::uint16_t>();
  h.k = in.get<std::uint16_t>();
  h.s = in.get<std::uint16_t>();
  const auto count = in.get<std::uint16_t>();
  for (std::uint16_t i = 0; i < count; ++i) h.d_set.push_back(in.get<std::uint16_t>());
  h.node_index = in.get<std::uint16_t>();
  h.l = in.get<std::uint64_t>();
  h.payload_bytes = in.get<std::uint64_t>();
  if (h.node_index < 1 || h.node_index > h.n) throw Error(ErrorCode::Format, "node index outside 1..n");
  consumed = in.pos();
  return h;
}

ShardHeader header_for(const CodeSpec& spec, int node, std::uint64_t payload_bytes) {
  ShardHeader h;
  h.construction = spec.construction;
  h.q = spec.field.modulus();
  h.n = static_cast<std::uint16_t>(spec.n);
  h.k = static_cast<std::uint16_t>(spec.k);
  h.s = static_cast<std::uint16_t>(spec.s);
  for (int d : spec.d_set) h.d_set.push_back(static_cast<std::uint16_t>(d));
  h.node_index = static_cast<std::uint16_t>(node + 1);
  h.l = spec.l;
  h.payload_bytes = payload_bytes;
  return h;
}

CodeSpec spec_from_header(const ShardHeader& h) {
  BuildOptions o;
  for (std::uint16_t d : h.d_set) o.d_set.push_back(d);
  o.q = h.q;
  o.force_large_l = true;
  CodeSpec spec;
  try {
    spec = build(h.construction, h.n, h.k, o);
  } catch (const Error& e) {
    throw Error(ErrorCode::Format, std::string("shard header describes no valid code: ") + e.what());
  }
  if (spec.s != h.s || spec.l != h.l) throw Error(ErrorCode::Format, "shard header s or l disagrees with the code");
  return spec;
}

std::filesystem::path shard_path(const std::filesystem::path& dir, int node) {
  char name[32];
  std::snprintf(name, sizeof name, "node%03d.shard", node + 1);
  return dir / name;
}

void write_shard(const std::filesystem::path& path, const Shard& shard) {
  std::vector<std::uint8_t> bytes = encode_header(shard.header);
  bytes.reserve(bytes.size() + 4 * shard.symbols.size());
  for (Elem v : shard.symbols) put(bytes, v);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + path.string());
}

Shard read_shard(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Shard shard;
  std::size_t pos = 0;
  shard.header = decode_header(bytes, pos);
  const std::size_t body = bytes.size() - pos;
  if (shard.header.l == 0 || body % (4 * shard.header.l) != 0 || body == 0) {
    throw Error(ErrorCode::Format, path.string() + ": body is not a whole number of stripes");
  }
  shard.symbols.resize(body / 4);
  for (std::size_t i = 0; i < shard.symbols.size(); ++i) {
    Elem v = 0;
    for (int b = 0; b < 4; ++b) v |= Elem{bytes[pos + 4 * i + b]} << (8 * b);
    if (v >= shard.header.q) throw Error(ErrorCode::Format, path.string() + ": symbol not reduced mod q");
    shard.symbols[i] = v;
  }
  return shard;
}

int bytes_per_symbol(std::uint32_t q) {
  int b = 0;
  while (b < 3 && (std::uint64_t{1} << (8 * (b + 1))) <= q) ++b;
  if (b == 0) throw Error(ErrorCode::FieldTooSmall, "file shards need q >= 257, got q=" + std::to_string(q));
  return b;
}

std::vector<Elem> pack_symbols(std::span<const std::uint8_t> bytes, int b) {
  std::vector<Elem> out((bytes.size() + b - 1) / b, 0);
  for (std::size_t i = 0; i < bytes.size(); ++i) out[i / b] |= Elem{bytes[i]} << (8 * (i % b));
  return out;
}

std::vector<std::uint8_t> unpack_symbols(std::span<const Elem> symbols, int b) {
  std::vector<std::uint8_t> out;
  out.reserve(symbols.size() * b);
  for (Elem v : symbols) {
    for (int i = 0; i < b; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  return out;
}

}  // namespace mdsarray::cli
