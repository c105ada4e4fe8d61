#include "mdsarray/sim/cluster.hpp"

#include <algorithm>
#include <sstream>

#include "mdsarray/error.hpp"

namespace mdsarray {

std::string to_string(NodeState s) {
  switch (s) {
    case NodeState::Healthy: return "healthy";
    case NodeState::Failed: return "failed";
    case NodeState::Corrupted: return "corrupted";
  }
  return "healthy";
}

namespace {

std::string join_nodes(const std::vector<int>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) out += (i ? "," : "") + std::to_string(nodes[i] + 1);
  return out;
}

[[noreturn]] void bad_line(const std::string& line, const std::string& why) {
  throw Error(ErrorCode::Format, "event '" + line + "': " + why);
}

long long parse_int(const std::string& line, const std::string& tok) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    bad_line(line, "'" + tok + "' is not an integer");
  }
  if (used != tok.size()) bad_line(line, "'" + tok + "' is not an integer");
  return v;
}

int parse_node(const std::string& line, const std::string& tok) {
  const long long v = parse_int(line, tok);
  if (v < 1 || v > 65535) bad_line(line, "node numbers start at 1");
  return static_cast<int>(v - 1);
}

std::vector<int> parse_nodes(const std::string& line, const std::string& list) {
  std::vector<int> out;
  if (list.empty()) return out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_node(line, tok));
  return out;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string format_event(const Event& e) {
  switch (e.kind) {
    case Event::Kind::Fail: return "FAIL " + std::to_string(e.node + 1);
    case Event::Kind::Corrupt: return "CORRUPT " + std::to_string(e.node + 1) + " " + std::to_string(e.seed);
    case Event::Kind::Repair:
      return "REPAIR F=" + join_nodes(e.repair.failed) + " R=" + join_nodes(e.repair.helpers) +
             " t=" + std::to_string(e.repair.t) + " strategy=" + to_string(e.repair.strategy);
  }
  return {};
}

Event parse_event(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  for (std::string w; in >> w;) tok.push_back(w);
  if (tok.empty()) bad_line(line, "empty");
  Event e;
  if (tok[0] == "FAIL") {
    if (tok.size() != 2) bad_line(line, "expected FAIL <node>");
    e.kind = Event::Kind::Fail;
    e.node = parse_node(line, tok[1]);
  } else if (tok[0] == "CORRUPT") {
    if (tok.size() != 3) bad_line(line, "expected CORRUPT <node> <seed>");
    e.kind = Event::Kind::Corrupt;
    e.node = parse_node(line, tok[1]);
    const long long seed = parse_int(line, tok[2]);
    if (seed < 0) bad_line(line, "seed must be non-negative");
    e.seed = static_cast<std::uint64_t>(seed);
  } else if (tok[0] == "REPAIR") {
    e.kind = Event::Kind::Repair;
    bool have_f = false;
    bool have_r = false;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto eq = tok[i].find('=');
      if (eq == std::string::npos) bad_line(line, "expected key=value, got '" + tok[i] + "'");
      const std::string key = tok[i].substr(0, eq);
      const std::string val = tok[i].substr(eq + 1);
      if (key == "F") {
        e.repair.failed = parse_nodes(line, val);
        have_f = true;
      } else if (key == "R") {
        e.repair.helpers = parse_nodes(line, val);
        have_r = true;
      } else if (key == "t") {
        e.repair.t = static_cast<int>(parse_int(line, val));
      } else if (key == "strategy") {
        try {
          e.repair.strategy = strategy_from_string(val);
        } catch (const Error&) {
          bad_line(line, "unknown strategy '" + val + "'");
        }
      } else {
        bad_line(line, "unknown key '" + key + "'");
      }
    }
    if (!have_f || !have_r) bad_line(line, "REPAIR needs F= and R=");
  } else {
    bad_line(line, "unknown event '" + tok[0] + "'");
  }
  return e;
}

std::string format_log(const std::vector<Event>& log) {
  std::string out;
  for (const Event& e : log) out += format_event(e) + "\n";
  return out;
}

std::vector<Event> parse_log(const std::string& text) {
  std::vector<Event> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(parse_event(line.substr(first, last - first + 1)));
  }
  return out;
}

Column corrupted_column(const CodeSpec& spec, const Column& original, std::uint64_t seed) {
  const std::uint32_t q = spec.field.modulus();
  std::uint64_t state = seed;
  Column out(original.size());
  do {
    for (Elem& v : out) v = static_cast<Elem>(splitmix64(state) % q);
  } while (out == original);
  return out;
}

Cluster::Cluster(CodeSpec spec, const Message& message)
    : spec_(std::move(spec)), states_(spec_.n, NodeState::Healthy), meters_(spec_.n) {
  columns_ = encode_systematic(spec_, message);
}

int Cluster::failed_count() const {
  return static_cast<int>(std::count(states_.begin(), states_.end(), NodeState::Failed));
}

void Cluster::check_node(int node) const {
  if (node < 0 || node >= spec_.n) {
    throw Error(ErrorCode::BadIndex, "node " + std::to_string(node + 1) + " does not exist");
  }
}

void Cluster::fail(int node) {
  check_node(node);
  if (states_[node] == NodeState::Failed) {
    throw Error(ErrorCode::BadParameters, "node " + std::to_string(node + 1) + " already failed");
  }
  if (failed_count() + 1 > spec_.r) {
    throw Error(ErrorCode::TooManyFailures, "failing node " + std::to_string(node + 1) + " would exceed r=" +
                                                std::to_string(spec_.r) + " simultaneous failures");
  }
  states_[node] = NodeState::Failed;
  std::fill(columns_[node].begin(), columns_[node].end(), 0);
  log_.push_back({Event::Kind::Fail, node, 0, {}});
}

void Cluster::corrupt(int node, std::uint64_t seed) {
  check_node(node);
  if (states_[node] == NodeState::Failed) {
    throw Error(ErrorCode::BadParameters, "node " + std::to_string(node + 1) + " is failed");
  }
  columns_[node] = corrupted_column(spec_, columns_[node], seed);
  states_[node] = NodeState::Corrupted;
  log_.push_back({Event::Kind::Corrupt, node, seed, {}});
}

RepairTrace Cluster::run_repair(const RepairRequest& request, const RepairOptions& options) {
  for (int v : request.failed) {
    check_node(v);
    if (states_[v] == NodeState::Healthy) {
      throw Error(ErrorCode::BadParameters, "node " + std::to_string(v + 1) + " is healthy");
    }
  }
  for (int v : request.helpers) {
    check_node(v);
    if (states_[v] == NodeState::Failed) {
      throw Error(ErrorCode::BadParameters, "helper " + std::to_string(v + 1) + " is failed");
    }
  }
  RepairTrace trace = repair(spec_, columns_, request, options);
  for (std::size_t x = 0; x < trace.plan.failed.size(); ++x) {
    const int v = trace.plan.failed[x];
    columns_[v] = trace.recovered[x];
    states_[v] = NodeState::Healthy;
  }
  for (const HelperUsage& u : trace.usage) {
    meters_[u.node].accessed += u.accessed;
    meters_[u.node].transmitted += u.transmitted;
  }
  Event e;
  e.kind = Event::Kind::Repair;
  e.repair = request;
  log_.push_back(e);
  return trace;
}

void Cluster::apply(const Event& e) {
  switch (e.kind) {
    case Event::Kind::Fail: fail(e.node); break;
    case Event::Kind::Corrupt: corrupt(e.node, e.seed); break;
    case Event::Kind::Repair: run_repair(e.repair); break;
  }
}

Cluster Cluster::replay(const CodeSpec& spec, const Message& message, const std::vector<Event>& log) {
  Cluster c(spec, message);
  for (const Event& e : log) c.apply(e);
  return c;
}

}  // namespace mdsarray
