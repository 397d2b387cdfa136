// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "parentt/pot_form.hpp"
#include "parentt/wide_uint.hpp"

namespace parentt::modint {

/// Operation tallies for datapath instrumentation. Every counter is optional:
/// functions take an `OpCounter*` that may be null.
struct OpCounter {
  std::uint64_t barrett = 0;        // Barrett reductions (each includes one a*epsilon product)
  std::uint64_t mod_mul = 0;        // modular multiplications
  std::uint64_t general_mul = 0;    // integer multiplications outside Barrett's epsilon product
  std::uint64_t sau = 0;            // shift-add multiplications by a low-Hamming-weight constant
  std::uint64_t sau_shift_adds = 0; // individual shift/add/sub steps inside SAUs
  std::uint64_t mod_half = 0;

  void reset() { *this = OpCounter{}; }
};

/// Barrett constants for a fixed modulus q and input word-length mu,
/// epsilon = floor(2^mu / q).
class BarrettParams {
 public:
  BarrettParams() = default;
  BarrettParams(std::uint64_t q, unsigned mu);

  /// mu = 2 * bitlen(q): enough for any product of two residues.
  static BarrettParams for_multiplication(std::uint64_t q);

  std::uint64_t q() const { return q_; }
  unsigned mu() const { return mu_; }
  const WideUint& epsilon() const { return epsilon_; }
  /// ceil(log2(epsilon))
  unsigned epsilon_bits() const;

 private:
  std::uint64_t q_ = 0;
  unsigned mu_ = 0;
  WideUint epsilon_{};
  bool small_epsilon_ = false;  // epsilon < 2^64 and mu <= 128: 128-bit fast path

  friend std::uint64_t barrett_reduce(unsigned __int128 a, const BarrettParams& p, OpCounter* ops);
};

unsigned bit_length(std::uint64_t x);

/// a - ((a * epsilon) >> mu) * q, followed by at most two conditional subtractions.
/// Throws std::domain_error when a >= 2^mu.
std::uint64_t barrett_reduce(const WideUint& a, const BarrettParams& p, OpCounter* ops = nullptr);
std::uint64_t barrett_reduce(unsigned __int128 a, const BarrettParams& p, OpCounter* ops = nullptr);

inline std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  std::uint64_t s = a + b;  // a, b < q < 2^63
  return s >= q ? s - q : s;
}

inline std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return a >= b ? a - b : a + q - b;
}

/// a * b mod q through barrett_reduce. `p.mu()` must cover the double-width product.
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, const BarrettParams& p, OpCounter* ops = nullptr);

/// x * 2^-1 mod q using one shift and, for odd x, one addition of (q + 1) / 2.
/// Throws std::invalid_argument for even q.
std::uint64_t mod_half(std::uint64_t x, std::uint64_t q, OpCounter* ops = nullptr);

/// base^exp mod q (square and multiply on mod_mul).
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, const BarrettParams& p);

/// Inverse modulo a prime q via Fermat. Throws std::domain_error for x == 0 mod q.
std::uint64_t inv_mod_prime(std::uint64_t x, const BarrettParams& p);

/// z * beta using only shifts, additions and subtractions. Positive and negative
/// partial sums are accumulated separately and subtracted once.
WideUint sau_multiply(const WideUint& z, const SignedPotForm& pot, OpCounter* ops = nullptr);
WideUint sau_multiply(std::uint64_t z, const SignedPotForm& pot, OpCounter* ops = nullptr);

}  // namespace parentt::modint
