#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mdsarray/gf/field.hpp"
#include "mdsarray/grsa/group_system.hpp"
#include "mdsarray/grsa/structured_op.hpp"
#include "mdsarray/spec/code_spec.hpp"

namespace mdsarray {

using Column = std::vector<Elem>;
// n columns of l symbols. Erased columns are tracked separately; their
// contents are ignored and overwritten.
using Codeword = std::vector<Column>;
// k columns of l symbols.
using Message = std::vector<Column>;

// beta(i, u, t) = prod_{v=u}^{u+t-1 mod s} lambda_{i,v}. Shift families only.
Elem beta(const CodeSpec& spec, int node, std::uint32_t u, std::uint64_t t);

struct Violation {
  int t;
  std::uint64_t a;
};

// First violated parity equation in (t, a) order, or nullopt if cw is a codeword.
std::optional<Violation> verify(const CodeSpec& spec, const Codeword& cw);
inline bool is_codeword(const CodeSpec& spec, const Codeword& cw) { return !verify(spec, cw).has_value(); }

// Reusable solver for one erasure pattern: the coefficient systems depend only
// on which nodes are missing, so repeated decodes (stripes, MDS sweeps) share them.
class ErasureDecoder {
 public:
  // Throws TooManyErasures for more than r, BadIndex for bad or repeated nodes.
  ErasureDecoder(const CodeSpec& spec, std::vector<int> erased);

  const std::vector<int>& erased() const noexcept { return erased_; }

  // Fills the erased columns of cw in place.
  void decode(Codeword& cw) const;

 private:
  void decode_diagonal(Codeword& cw) const;
  void decode_shift(Codeword& cw) const;

  const CodeSpec* spec_;
  std::vector<StructuredOp> ops_;
  std::vector<int> erased_;
  std::vector<int> known_;
  std::shared_ptr<const GroupSystem> system_;
};

Codeword decode_erasures(const CodeSpec& spec, Codeword cw, const std::vector<int>& erased);

Codeword encode_systematic(const CodeSpec& spec, const Message& msg);

// Replaces data symbol c_{i,a} (i < k) and patches the r parity symbols at
// coordinate a. Diagonal families only. Returns the number of symbols changed.
std::size_t update_symbol_in_place(const CodeSpec& spec, Codeword& cw, int node, std::uint64_t a, Elem value);
Codeword update_symbol(const CodeSpec& spec, Codeword cw, int node, std::uint64_t a, Elem value);

// Zero-filled containers of the right shape.
Message zero_message(const CodeSpec& spec);
Codeword zero_codeword(const CodeSpec& spec);

}  // namespace mdsarray
