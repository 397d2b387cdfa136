// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "parentt/wide_uint.hpp"

namespace parentt {

/// SplitMix64. split() derives an independent stream, so each block / channel / polynomial
/// can be regenerated from the printed seed alone.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  SplitMix64 split() { return SplitMix64((*this)() ^ 0x6a09e667f3bcc909ULL); }

  /// Uniform in [0, bound) by rejection on the bound's bit length.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    unsigned bits = 64U - static_cast<unsigned>(__builtin_clzll(bound - 1));
    std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    for (;;) {
      std::uint64_t x = (*this)() & mask;
      if (x < bound) return x;
    }
  }

  WideUint below(const WideUint& bound) {
    std::size_t bits = bound.bit_length();
    if (bits == 0) return {};
    for (;;) {
      WideUint x;
      for (std::size_t i = 0; i * 64 < bits; ++i) x.limb(i) = (*this)();
      std::size_t top = bits % 64;
      if (top != 0) x.limb((bits - 1) / 64) &= (std::uint64_t{1} << top) - 1;
      if (x < bound) return x;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace parentt
