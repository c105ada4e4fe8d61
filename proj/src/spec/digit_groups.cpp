#include "mdsarray/spec/digit_groups.hpp"

#include <stdexcept>

namespace mdsarray {

DigitGroups::DigitGroups(const Radix& radix, std::vector<int> positions,
                         std::vector<std::vector<std::uint32_t>> values)
    : radix_(radix), positions_(std::move(positions)), values_(std::move(values)) {
  values_.resize(positions_.size());
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    if (positions_[p] < 0 || positions_[p] >= radix_.width()) {
      throw std::invalid_argument("DigitGroups: position out of range");
    }
    for (std::size_t q = 0; q < p; ++q) {
      if (positions_[q] == positions_[p]) throw std::invalid_argument("DigitGroups: repeated position");
    }
    if (values_[p].empty()) {
      for (std::uint32_t u = 0; u < radix_.base(); ++u) values_[p].push_back(u);
    }
    lookup_.emplace_back(radix_.base(), -1);
    for (std::size_t v = 0; v < values_[p].size(); ++v) lookup_[p][values_[p][v]] = static_cast<int>(v);
    stride_.push_back(size_);
    size_ *= values_[p].size();
  }
  offsets_.resize(size_);
  for (std::size_t g = 0; g < size_; ++g) {
    std::uint64_t off = 0;
    for (std::size_t p = 0; p < positions_.size(); ++p) {
      const std::size_t v = (g / stride_[p]) % values_[p].size();
      off += std::uint64_t{values_[p][v]} * radix_.weight(positions_[p]);
    }
    offsets_[g] = off;
  }
}

std::optional<std::size_t> DigitGroups::member(std::uint64_t a) const {
  std::size_t g = 0;
  for (std::size_t p = 0; p < positions_.size(); ++p) {
    const int v = lookup_[p][radix_.digit(a, positions_[p])];
    if (v < 0) return std::nullopt;
    g += static_cast<std::size_t>(v) * stride_[p];
  }
  return g;
}

std::uint64_t DigitGroups::base_of(std::uint64_t a) const {
  for (int pos : positions_) a = radix_.with_digit(a, pos, 0);
  return a;
}

std::vector<std::uint64_t> DigitGroups::bases() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 0; a < radix_.size(); ++a) {
    bool zero = true;
    for (int pos : positions_) {
      if (radix_.digit(a, pos) != 0) {
        zero = false;
        break;
      }
    }
    if (zero) out.push_back(a);
  }
  return out;
}

}  // namespace mdsarray
