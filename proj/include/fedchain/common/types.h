#ifndef FEDCHAIN_COMMON_TYPES_H_
#define FEDCHAIN_COMMON_TYPES_H_

#include <compare>
#include <cstdint>

namespace fedchain {

// Data owners are numbered 0..n-1; the same ids name their miner role.
using OwnerId = std::uint32_t;
using MinerId = std::uint32_t;

// Unordered pair of owners, stored with lo < hi.
struct OwnerPair {
  OwnerId lo;
  OwnerId hi;

  static OwnerPair Of(OwnerId a, OwnerId b) {
    return a < b ? OwnerPair{a, b} : OwnerPair{b, a};
  }
  auto operator<=>(const OwnerPair&) const = default;
};

}  // namespace fedchain

#endif  // FEDCHAIN_COMMON_TYPES_H_
