#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdsarray/gf/field.hpp"
#include "mdsarray/spec/radix.hpp"

namespace mdsarray {

// The seven array-code families. C1-C3 use diagonal parity matrices, C4-C7
// weighted cyclic shifts; C4 and C7 keep the last node as the identity.
enum class Construction : std::uint8_t { C1 = 1, C2, C3, C4, C5, C6, C7 };

std::string to_string(Construction c);
Construction construction_from_int(int id);

// Largest allowed l * n without the force flag.
inline constexpr std::uint64_t kDeskScaleSymbols = std::uint64_t{1} << 26;

struct BuildOptions {
  // Helper counts for C2, C5, C7 (s = lcm(d + 1 - k)); ignored elsewhere.
  std::vector<int> d_set;
  // Field modulus; defaults to the smallest prime meeting the family bound.
  std::optional<std::uint64_t> q;
  // Lower bound applied to the default modulus (shard I/O needs q >= 257).
  std::uint64_t min_q = 0;
  bool force_large_l = false;
};

// Immutable description of one code instance. Nodes are indexed 0..n-1.
struct CodeSpec {
  Construction construction = Construction::C1;
  int n = 0;
  int k = 0;
  int r = 0;
  std::uint32_t s = 1;
  std::uint64_t l = 1;
  Field field{2};
  Elem gamma = 1;
  std::vector<int> d_set;
  // lambda[i][u] for u < s. Empty row for the identity node of C4/C7.
  std::vector<std::vector<Elem>> lambda;
  Radix radix;

  bool diagonal() const noexcept {
    return construction == Construction::C1 || construction == Construction::C2 ||
           construction == Construction::C3;
  }
  // C4 and C7: node n-1 carries A = I and there are n-1 digits.
  bool has_identity_node() const noexcept {
    return construction == Construction::C4 || construction == Construction::C7;
  }
  bool is_identity(int node) const noexcept { return has_identity_node() && node == n - 1; }
  // Digit position driven by `node`, or -1 for the identity node.
  int digit_of(int node) const noexcept { return is_identity(node) ? -1 : node; }

  friend bool operator==(const CodeSpec& a, const CodeSpec& b) {
    return a.construction == b.construction && a.n == b.n && a.k == b.k && a.s == b.s &&
           a.l == b.l && a.field == b.field && a.gamma == b.gamma && a.d_set == b.d_set &&
           a.lambda == b.lambda;
  }
};

// lcm(d + 1 - k) over d_set. Throws BadParameters for an empty set or d < k.
std::uint32_t lcm_s(const std::vector<int>& d_set, int k);

// Field-size bound of each family for a given s.
std::uint64_t min_field_size(Construction c, int n, int k, std::uint32_t s);

// Throws FieldTooSmall, BadParameters, NotPrime.
CodeSpec build(Construction c, int n, int k, const BuildOptions& options = {});

// Every d in [k, n-1] with (d + 1 - k) dividing s.
std::vector<int> supported_d(const CodeSpec& spec);
bool supports_d(const CodeSpec& spec, int d);

std::string describe(const CodeSpec& spec);

}  // namespace mdsarray
