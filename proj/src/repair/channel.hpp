#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdsarray/codec/codec.hpp"

namespace mdsarray::detail {

// The only path from a repair engine to helper storage. Counts distinct
// coordinates read and scalars sent per helper.
class HelperChannel {
 public:
  HelperChannel(const Codeword& stored, const std::vector<int>& helpers, std::uint64_t l)
      : stored_(&stored), helpers_(helpers), slot_(stored.size(), -1), read_(helpers.size()),
        sent_raw_(helpers.size()), sent_(helpers.size(), 0) {
    for (std::size_t h = 0; h < helpers.size(); ++h) {
      slot_[helpers[h]] = static_cast<int>(h);
      read_[h].assign(l, false);
      sent_raw_[h].assign(l, false);
    }
  }

  // Local read at helper `node`.
  Elem read(int node, std::uint64_t a) {
    const std::size_t h = slot(node);
    read_[h][a] = true;
    return (*stored_)[node][a];
  }
  // Helper sends one computed scalar.
  void send(int node, std::uint64_t count = 1) { sent_[slot(node)] += count; }
  // Helper sends its raw symbol at a; repeats of the same coordinate are free.
  Elem fetch(int node, std::uint64_t a) {
    const std::size_t h = slot(node);
    if (!sent_raw_[h][a]) {
      sent_raw_[h][a] = true;
      ++sent_[h];
    }
    return read(node, a);
  }

  std::uint64_t accessed(std::size_t h) const {
    std::uint64_t c = 0;
    for (bool b : read_[h]) c += b;
    return c;
  }
  std::uint64_t transmitted(std::size_t h) const { return sent_[h]; }
  std::vector<std::uint64_t> access_list(std::size_t h) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = 0; a < read_[h].size(); ++a) {
      if (read_[h][a]) out.push_back(a);
    }
    return out;
  }

 private:
  std::size_t slot(int node) const {
    if (node < 0 || static_cast<std::size_t>(node) >= slot_.size() || slot_[node] < 0) {
      throw std::logic_error("repair engine touched a non-helper node");
    }
    return static_cast<std::size_t>(slot_[node]);
  }

  const Codeword* stored_;
  std::vector<int> helpers_;
  std::vector<int> slot_;
  std::vector<std::vector<bool>> read_;
  std::vector<std::vector<bool>> sent_raw_;
  std::vector<std::uint64_t> sent_;
};

}  // namespace mdsarray::detail
