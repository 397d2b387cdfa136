// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test binaries. GMP is the independent big-integer oracle; the
// library itself never links it.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "parentt/rng.hpp"
#include "parentt/wide_uint.hpp"

namespace testsupport {

inline mpz_class to_mpz(const parentt::WideUint& x) { return mpz_class(x.to_hex(), 16); }

inline mpz_class to_mpz_u64(std::uint64_t x) {
  mpz_class r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
  return r;
}

inline parentt::WideUint from_mpz(const mpz_class& x) { return parentt::WideUint::from_hex(x.get_str(16)); }

inline std::uint64_t mpz_u64(const mpz_class& x) {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof out, 0, 0, x.get_mpz_t());
  return out;
}

/// Uniform value with exactly `bits` or fewer bits.
inline parentt::WideUint random_bits(parentt::SplitMix64& rng, std::size_t bits) {
  return rng.below(parentt::WideUint::power_of_two(bits));
}

inline mpz_class mpz_pow2(unsigned k) {
  mpz_class r = 1;
  r <<= k;
  return r;
}

}  // namespace testsupport
