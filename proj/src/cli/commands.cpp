#include "mdsarray/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "mdsarray/cli/shard.hpp"
#include "mdsarray/codec/codec.hpp"
#include "mdsarray/sim/cluster.hpp"

namespace mdsarray::cli {

namespace fs = std::filesystem;

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::DecodingFailure: return kExitDecode;
    case ErrorCode::Io:
    case ErrorCode::Format: return kExitIo;
    default: return kExitParams;
  }
}

CodeSpec file_spec(const CodeArgs& args) {
  BuildOptions o;
  o.d_set = args.d;
  o.q = args.field;
  o.min_q = 257;
  o.force_large_l = args.force_large_l;
  CodeSpec spec = build(construction_from_int(args.construction), args.n, args.k, o);
  bytes_per_symbol(spec.field.modulus());
  return spec;
}

namespace {

CodeSpec library_spec(const CodeArgs& args) {
  BuildOptions o;
  o.d_set = args.d;
  o.q = args.field;
  o.force_large_l = args.force_large_l;
  return build(construction_from_int(args.construction), args.n, args.k, o);
}

template <class Fn>
int guarded(std::ostream& out, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    out << "error: Io: " << e.what() << "\n";
    return kExitIo;
  }
}

std::string node_list(const std::vector<int>& nodes) {
  std::string s;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? "," : "") + std::to_string(nodes[i] + 1);
  return s.empty() ? "-" : s;
}

std::vector<std::uint8_t> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, std::span<const std::uint8_t> bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::Io, "short write to " + p.string());
}

// Every shard found in a directory, checked for a common header.
struct ShardSet {
  CodeSpec spec;
  ShardHeader header;  // node_index of the first shard found
  std::vector<std::optional<Shard>> shards;
  std::uint64_t stripes = 0;

  std::vector<int> present() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < shards.size(); ++i) {
      if (shards[i]) out.push_back(static_cast<int>(i));
    }
    return out;
  }
  Codeword stripe(std::uint64_t st) const {
    Codeword cw = zero_codeword(spec);
    for (std::size_t i = 0; i < shards.size(); ++i) {
      if (!shards[i]) continue;
      const auto& sym = shards[i]->symbols;
      std::copy(sym.begin() + static_cast<std::ptrdiff_t>(st * spec.l),
                sym.begin() + static_cast<std::ptrdiff_t>((st + 1) * spec.l), cw[i].begin());
    }
    return cw;
  }
};

ShardSet load(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  static const std::regex name(R"(node(\d+)\.shard)");
  std::map<int, Shard> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string file = entry.path().filename().string();
    if (!entry.is_regular_file() || !std::regex_match(file, m, name)) continue;
    Shard s = read_shard(entry.path());
    if (s.header.node_index != std::stoi(m[1].str())) {
      throw Error(ErrorCode::Format, file + " carries node index " + std::to_string(s.header.node_index));
    }
    found.emplace(s.header.node_index - 1, std::move(s));
  }
  if (found.empty()) throw Error(ErrorCode::Io, "no shards in " + dir.string());
  ShardSet set;
  set.header = found.begin()->second.header;
  set.spec = spec_from_header(set.header);
  set.shards.resize(set.spec.n);
  set.stripes = found.begin()->second.symbols.size() / set.spec.l;
  for (auto& [node, shard] : found) {
    ShardHeader h = shard.header;
    h.node_index = set.header.node_index;
    if (!(h == set.header)) {
      throw Error(ErrorCode::Format, "shard " + std::to_string(node + 1) + " header disagrees with the others");
    }
    if (shard.symbols.size() != set.stripes * set.spec.l) {
      throw Error(ErrorCode::Format, "shard " + std::to_string(node + 1) + " has a different stripe count");
    }
    set.shards[node] = std::move(shard);
  }
  return set;
}

std::vector<int> to_zero_based(const std::vector<int>& nodes, int n) {
  std::vector<int> out;
  for (int v : nodes) {
    if (v < 1 || v > n) throw Error(ErrorCode::BadIndex, "node " + std::to_string(v) + " outside 1.." + std::to_string(n));
    out.push_back(v - 1);
  }
  return out;
}

Message random_message(const CodeSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Message m = zero_message(spec);
  for (auto& col : m) {
    for (auto& v : col) v = static_cast<Elem>(rng() % spec.field.modulus());
  }
  return m;
}

std::string ratio(std::uint64_t num, std::uint64_t den) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << (den ? static_cast<double>(num) / static_cast<double>(den) : 0.0);
  return os.str();
}

}  // namespace

int cmd_encode(const fs::path& input, const CodeArgs& code, const fs::path& out_dir, std::ostream& out) {
  return guarded(out, [&] {
    const CodeSpec spec = file_spec(code);
    const int b = bytes_per_symbol(spec.field.modulus());
    const auto bytes = read_file(input);
    const auto symbols = pack_symbols(bytes, b);
    const std::uint64_t per_stripe = static_cast<std::uint64_t>(spec.k) * spec.l;
    const std::uint64_t stripes = std::max<std::uint64_t>(1, (symbols.size() + per_stripe - 1) / per_stripe);

    std::vector<Shard> shards(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      shards[i].header = header_for(spec, i, bytes.size());
      shards[i].symbols.reserve(stripes * spec.l);
    }
    std::vector<int> parity;
    for (int i = spec.k; i < spec.n; ++i) parity.push_back(i);
    const ErasureDecoder encoder(spec, parity);
    for (std::uint64_t st = 0; st < stripes; ++st) {
      Codeword cw = zero_codeword(spec);
      for (int i = 0; i < spec.k; ++i) {
        for (std::uint64_t a = 0; a < spec.l; ++a) {
          const std::uint64_t idx = st * per_stripe + static_cast<std::uint64_t>(i) * spec.l + a;
          cw[i][a] = idx < symbols.size() ? symbols[idx] : 0;
        }
      }
      encoder.decode(cw);
      for (int i = 0; i < spec.n; ++i) shards[i].symbols.insert(shards[i].symbols.end(), cw[i].begin(), cw[i].end());
    }
    fs::create_directories(out_dir);
    for (int i = 0; i < spec.n; ++i) write_shard(shard_path(out_dir, i), shards[i]);
    out << "encoded " << bytes.size() << " bytes as " << describe(spec) << ", " << stripes << " stripe"
        << (stripes == 1 ? "" : "s") << ", " << b << " byte" << (b == 1 ? "" : "s") << " per symbol\n";
    return kExitOk;
  });
}

int cmd_decode(const fs::path& dir, const fs::path& output, std::ostream& out) {
  return guarded(out, [&] {
    ShardSet set = load(dir);
    const CodeSpec& spec = set.spec;
    const auto present = set.present();
    if (present.size() < static_cast<std::size_t>(spec.k)) {
      throw Error(ErrorCode::DecodingFailure, std::to_string(present.size()) + " shards present, need k=" +
                                                  std::to_string(spec.k));
    }
    std::vector<int> erased;
    for (int i = 0; i < spec.n; ++i) {
      if (!set.shards[i]) erased.push_back(i);
    }
    const ErasureDecoder decoder(spec, erased);
    std::vector<Elem> symbols;
    symbols.reserve(set.stripes * spec.k * spec.l);
    for (std::uint64_t st = 0; st < set.stripes; ++st) {
      Codeword cw = set.stripe(st);
      decoder.decode(cw);
      for (int i = 0; i < spec.k; ++i) symbols.insert(symbols.end(), cw[i].begin(), cw[i].end());
    }
    auto bytes = unpack_symbols(symbols, bytes_per_symbol(spec.field.modulus()));
    if (bytes.size() < set.header.payload_bytes) throw Error(ErrorCode::Format, "payload longer than the stripes");
    bytes.resize(set.header.payload_bytes);
    write_file(output, bytes);
    out << "decoded " << bytes.size() << " bytes from shards " << node_list(present) << "\n";
    return kExitOk;
  });
}

int cmd_repair(const fs::path& dir, const RepairArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    ShardSet set = load(dir);
    const CodeSpec& spec = set.spec;
    RepairRequest req;
    req.failed = to_zero_based(args.failed, spec.n);
    req.t = args.t;
    req.strategy = strategy_from_string(args.strategy);
    if (!args.helpers.empty()) {
      req.helpers = to_zero_based(args.helpers, spec.n);
    } else {
      for (int v : set.present()) {
        if (std::find(req.failed.begin(), req.failed.end(), v) == req.failed.end()) req.helpers.push_back(v);
      }
      if (args.d) {
        const std::size_t want = static_cast<std::size_t>(*args.d + 2 * args.t);
        if (req.helpers.size() < want) {
          throw Error(ErrorCode::TooFewHelpers, "only " + std::to_string(req.helpers.size()) + " shards available");
        }
        req.helpers.resize(want);
      }
    }
    for (int v : req.helpers) {
      if (!set.shards[v]) throw Error(ErrorCode::BadParameters, "helper shard " + std::to_string(v + 1) + " is missing");
    }

    std::vector<HelperUsage> usage;
    std::vector<Column> rebuilt;
    std::set<int> errors;
    std::uint64_t bound = 0;
    std::uint64_t transmitted = 0;
    std::uint64_t accessed = 0;
    RepairPlan plan;
    for (std::uint64_t st = 0; st < set.stripes; ++st) {
      const RepairTrace tr = repair(spec, set.stripe(st), req);
      if (st == 0) {
        plan = tr.plan;
        usage = tr.usage;
        for (auto& u : usage) u.accessed = u.transmitted = 0;
        rebuilt.assign(tr.recovered.size(), Column{});
      }
      for (std::size_t x = 0; x < tr.usage.size(); ++x) {
        usage[x].accessed += tr.usage[x].accessed;
        usage[x].transmitted += tr.usage[x].transmitted;
      }
      for (std::size_t x = 0; x < tr.recovered.size(); ++x) {
        rebuilt[x].insert(rebuilt[x].end(), tr.recovered[x].begin(), tr.recovered[x].end());
      }
      errors.insert(tr.error_locations.begin(), tr.error_locations.end());
      bound += tr.bound;
      transmitted += tr.transmitted_symbols;
      accessed += tr.accessed_symbols;
    }
    for (std::size_t x = 0; x < plan.failed.size(); ++x) {
      Shard s;
      s.header = set.header;
      s.header.node_index = static_cast<std::uint16_t>(plan.failed[x] + 1);
      s.symbols = std::move(rebuilt[x]);
      write_shard(shard_path(dir, plan.failed[x]), s);
    }

    out << "repair " << describe(spec) << "\n";
    out << "failed " << node_list(plan.failed) << " from helpers " << node_list(plan.helpers) << " (d=" << plan.d
        << ", t=" << plan.t << "), strategy " << to_string(plan.strategy) << ", " << set.stripes << " stripe"
        << (set.stripes == 1 ? "" : "s") << "\n";
    out << std::setw(6) << "node" << std::setw(12) << "accessed" << std::setw(13) << "transmitted" << "\n";
    for (const auto& u : usage) {
      out << std::setw(6) << u.node + 1 << std::setw(12) << u.accessed << std::setw(13) << u.transmitted << "\n";
    }
    out << std::setw(6) << "total" << std::setw(12) << accessed << std::setw(13) << transmitted << "\n";
    out << "bound " << bound << "\n";
    out << "bandwidth ratio " << ratio(transmitted, bound) << "\n";
    out << "access ratio " << ratio(accessed, bound) << "\n";
    std::vector<int> err(errors.begin(), errors.end());
    out << "errors located: " << (err.empty() ? "none" : node_list(err)) << "\n";
    for (int v : plan.failed) out << "wrote " << shard_path(dir, v).filename().string() << "\n";
    return kExitOk;
  });
}

int cmd_verify(const fs::path& dir, std::ostream& out) {
  return guarded(out, [&] {
    ShardSet set = load(dir);
    const CodeSpec& spec = set.spec;
    const auto present = set.present();
    if (present.size() < static_cast<std::size_t>(spec.k)) {
      throw Error(ErrorCode::Io, std::to_string(present.size()) + " shards present, need at least k=" +
                                     std::to_string(spec.k));
    }
    std::uint64_t bad = 0;
    if (present.size() == static_cast<std::size_t>(spec.n)) {
      for (std::uint64_t st = 0; st < set.stripes; ++st) {
        if (const auto v = verify(spec, set.stripe(st))) {
          ++bad;
          out << "stripe " << st << ": parity equation t=" << v->t << " fails at coordinate a=" << v->a << "\n";
        }
      }
      out << set.stripes << " stripes checked, " << bad << " failed\n";
    } else {
      // Rebuild the missing columns from the first k shards and compare the rest.
      std::vector<int> base(present.begin(), present.begin() + spec.k);
      std::vector<int> erased;
      for (int i = 0; i < spec.n; ++i) {
        if (std::find(base.begin(), base.end(), i) == base.end()) erased.push_back(i);
      }
      const ErasureDecoder decoder(spec, erased);
      for (std::uint64_t st = 0; st < set.stripes; ++st) {
        const Codeword got = set.stripe(st);
        Codeword cw = got;
        decoder.decode(cw);
        for (std::size_t x = spec.k; x < present.size(); ++x) {
          const int v = present[x];
          if (cw[v] != got[v]) {
            ++bad;
            out << "stripe " << st << ": shard " << v + 1 << " differs from the re-encoded column\n";
            break;
          }
        }
      }
      out << "verified via re-encode from shards " << node_list(base) << ": " << set.stripes << " stripes, "
          << bad << " failed\n";
    }
    out << (bad == 0 ? "PASS" : "FAIL") << "\n";
    return bad == 0 ? kExitOk : kExitDecode;
  });
}

int cmd_corrupt(const fs::path& dir, int node, std::uint64_t seed, std::ostream& out) {
  return guarded(out, [&] {
    ShardSet set = load(dir);
    const CodeSpec& spec = set.spec;
    const int v = to_zero_based({node}, spec.n).front();
    if (!set.shards[v]) throw Error(ErrorCode::Io, "shard " + std::to_string(node) + " is missing");
    Shard& s = *set.shards[v];
    for (std::uint64_t st = 0; st < set.stripes; ++st) {
      const auto first = s.symbols.begin() + static_cast<std::ptrdiff_t>(st * spec.l);
      const Column col(first, first + static_cast<std::ptrdiff_t>(spec.l));
      const Column bad = corrupted_column(spec, col, seed + st);
      std::copy(bad.begin(), bad.end(), first);
    }
    write_shard(shard_path(dir, v), s);
    out << "corrupted shard " << node << " (" << set.stripes << " stripes, seed " << seed << ")\n";
    return kExitOk;
  });
}

namespace {

struct BenchRow {
  CodeArgs code;
  int d;
  int h;
  int t;
};

std::vector<BenchRow> default_grid() {
  auto c = [](int id, int n, int k, std::vector<int> ds = {}) {
    CodeArgs a;
    a.construction = id;
    a.n = n;
    a.k = k;
    a.d = std::move(ds);
    return a;
  };
  return {
      {c(1, 5, 3), 4, 1, 0},      {c(1, 5, 3), 3, 1, 0},      {c(1, 6, 2), 3, 1, 1},
      {c(2, 5, 2, {3}), 3, 1, 0}, {c(2, 6, 2, {3}), 3, 1, 1}, {c(3, 5, 2), 4, 1, 0},
      {c(3, 5, 2), 2, 1, 0},      {c(3, 5, 2), 2, 2, 0},      {c(4, 5, 3), 4, 1, 0},
      {c(5, 5, 3, {4}), 4, 1, 0}, {c(5, 6, 2, {3}), 3, 1, 1}, {c(6, 6, 4), 5, 1, 0},
      {c(6, 6, 4), 4, 2, 0},      {c(7, 5, 3, {4}), 4, 1, 0}, {c(7, 5, 3, {4}), 3, 1, 0},
  };
}

}  // namespace

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    std::vector<BenchRow> rows;
    if (args.code) {
      const CodeSpec spec = library_spec(*args.code);
      for (int d : supported_d(spec)) {
        if (d + 2 * args.t + args.failures <= spec.n) rows.push_back({*args.code, d, args.failures, args.t});
      }
    } else {
      rows = default_grid();
    }
    out << kBenchHeader << "\n";
    using clock = std::chrono::steady_clock;
    auto ms = [](clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
    for (const BenchRow& row : rows) {
      const CodeSpec spec = library_spec(row.code);
      const Message msg = random_message(spec, args.seed);
      const auto t0 = clock::now();
      Codeword cw = encode_systematic(spec, msg);
      const auto t1 = clock::now();
      RepairRequest req;
      for (int i = 0; i < row.h; ++i) req.failed.push_back(i);
      for (int i = row.h; i < row.h + row.d + 2 * row.t; ++i) req.helpers.push_back(i);
      req.t = row.t;
      if (row.t > 0) cw[req.helpers.front()] = corrupted_column(spec, cw[req.helpers.front()], args.seed);
      const RepairTrace tr = repair(spec, cw, req);
      const auto t2 = clock::now();
      const Codeword truth = encode_systematic(spec, msg);
      for (std::size_t x = 0; x < tr.recovered.size(); ++x) {
        if (tr.recovered[x] != truth[tr.plan.failed[x]]) {
          throw Error(ErrorCode::DecodingFailure, "bench repair of " + describe(spec) + " returned a wrong column");
        }
      }
      out << to_string(spec.construction) << "," << spec.n << "," << spec.k << "," << row.d << "," << row.h << ","
          << row.t << "," << spec.l << "," << spec.field.modulus() << "," << tr.transmitted_symbols << ","
          << tr.accessed_symbols << "," << tr.bound << "," << std::fixed << std::setprecision(3)
          << (args.with_timing ? ms(t1 - t0) : 0.0) << "," << (args.with_timing ? ms(t2 - t1) : 0.0) << "\n";
      out.unsetf(std::ios::fixed);
    }
    return kExitOk;
  });
}

int cmd_replay(const fs::path& log_file, const CodeArgs& code, std::uint64_t seed, std::ostream& out) {
  return guarded(out, [&] {
    const auto bytes = read_file(log_file);
    const auto log = parse_log(std::string(bytes.begin(), bytes.end()));
    const CodeSpec spec = library_spec(code);
    Cluster cluster(spec, random_message(spec, seed));
    out << "cluster " << describe(spec) << ", message seed " << seed << "\n";
    for (const Event& e : log) {
      out << format_event(e);
      if (e.kind == Event::Kind::Repair) {
        const RepairTrace tr = cluster.run_repair(e.repair);
        out << " -> transmitted " << tr.transmitted_symbols << ", accessed " << tr.accessed_symbols << ", bound "
            << tr.bound << ", errors " << node_list(tr.error_locations) << "\n";
      } else {
        cluster.apply(e);
        out << " -> ok\n";
      }
    }
    out << std::setw(6) << "node" << std::setw(11) << "state" << std::setw(12) << "accessed" << std::setw(13)
        << "transmitted" << "\n";
    bool corrupted = false;
    for (int i = 0; i < spec.n; ++i) {
      corrupted |= cluster.state(i) != NodeState::Healthy;
      out << std::setw(6) << i + 1 << std::setw(11) << to_string(cluster.state(i)) << std::setw(12)
          << cluster.meters()[i].accessed << std::setw(13) << cluster.meters()[i].transmitted << "\n";
    }
    if (corrupted) {
      out << "verify: skipped, some nodes are not healthy\n";
      return kExitOk;
    }
    const bool ok = is_codeword(spec, cluster.columns());
    out << "verify: " << (ok ? "pass" : "fail") << "\n";
    return ok ? kExitOk : kExitDecode;
  });
}

}  // namespace mdsarray::cli
