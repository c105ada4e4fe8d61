#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdsarray/codec/codec.hpp"
#include "mdsarray/repair/repair.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray {

enum class NodeState { Healthy, Failed, Corrupted };
std::string to_string(NodeState s);

struct NodeMeter {
  std::uint64_t accessed = 0;
  std::uint64_t transmitted = 0;
  friend bool operator==(const NodeMeter&, const NodeMeter&) = default;
};

struct Event {
  enum class Kind { Fail, Corrupt, Repair };
  Kind kind = Kind::Fail;
  int node = 0;  // 0-based; Fail and Corrupt
  std::uint64_t seed = 0;
  RepairRequest repair;
};

// Text form with 1-based nodes: "FAIL 3", "CORRUPT 2 17",
// "REPAIR F=1,3 R=2,4,5 t=0 strategy=auto".
std::string format_event(const Event& e);
Event parse_event(const std::string& line);
std::string format_log(const std::vector<Event>& log);
// Blank lines and lines starting with '#' are skipped. Throws Format.
std::vector<Event> parse_log(const std::string& text);

// Deterministic replacement column for a corrupted node: a splitmix64 stream
// from `seed` reduced mod q, redrawn until it differs from `original`.
Column corrupted_column(const CodeSpec& spec, const Column& original, std::uint64_t seed);

class Cluster {
 public:
  Cluster(CodeSpec spec, const Message& message);

  const CodeSpec& spec() const noexcept { return spec_; }
  NodeState state(int node) const { return states_.at(static_cast<std::size_t>(node)); }
  // Stored column; zeros for a failed node.
  const Column& column(int node) const { return columns_.at(static_cast<std::size_t>(node)); }
  const Codeword& columns() const noexcept { return columns_; }
  const std::vector<NodeMeter>& meters() const noexcept { return meters_; }
  const std::vector<Event>& log() const noexcept { return log_; }
  int failed_count() const;

  // Throws TooManyFailures past r simultaneous failures, BadParameters if already failed.
  void fail(int node);
  void corrupt(int node, std::uint64_t seed);
  // Restores every node in request.failed (Failed or Corrupted). Helpers may be
  // Corrupted but not Failed. Meters grow by exactly the trace's per-helper counts.
  RepairTrace run_repair(const RepairRequest& request, const RepairOptions& options = {});

  void apply(const Event& e);
  static Cluster replay(const CodeSpec& spec, const Message& message, const std::vector<Event>& log);

  friend bool operator==(const Cluster& a, const Cluster& b) {
    return a.spec_ == b.spec_ && a.states_ == b.states_ && a.columns_ == b.columns_ && a.meters_ == b.meters_;
  }

 private:
  void check_node(int node) const;

  CodeSpec spec_;
  std::vector<NodeState> states_;
  Codeword columns_;
  std::vector<NodeMeter> meters_;
  std::vector<Event> log_;
};

}  // namespace mdsarray
