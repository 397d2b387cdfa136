// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parentt/modint.hpp"
#include "parentt/pot_form.hpp"

namespace parentt::primeforge {

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t x);

/// q prime and (q - 1) divisible by 2n.
bool is_ntt_compatible(std::uint64_t q, std::uint64_t n);

/// Fewest-term signed power-of-two form of beta + 1 (exponents >= 1, so beta + 1 must
/// be even), ties broken by smallest leading exponent and then lexicographically.
/// std::nullopt when more than max_terms - 2 explicit terms are needed.
std::optional<SignedPotForm> signed_pot_decompose(std::uint64_t beta, int max_terms);

/// Smallest psi with multiplicative order exactly two_n. Throws std::invalid_argument
/// if q is not NTT-compatible for two_n / 2.
std::uint64_t find_psi(std::uint64_t q, std::uint64_t two_n);

/// Largest leading exponent v1 such that a chain of n_beta SAUs starting from a v-bit
/// word plus one accumulation stays within mu bits: v + n_beta * (v1 + 1) + 1 <= mu.
/// Returns -1 when no exponent qualifies.
int max_leading_exponent(unsigned v, unsigned mu, unsigned n_beta);

struct SpecialPrime {
  std::uint64_t q = 0;
  unsigned v = 0;
  std::uint64_t beta = 0;
  SignedPotForm pot;
  modint::BarrettParams barrett;
  unsigned n_beta = 0;

  /// Re-checks every invariant for transform size n; throws std::domain_error.
  void validate(std::uint64_t n) const;
};

struct SearchParams {
  unsigned v = 0;
  std::uint64_t n = 0;
  unsigned mu = 0;
  int max_pot_terms = 4;
  unsigned n_beta = 1;
};

/// Every prime 2^{v-1} < q = 2^v - beta < 2^v with (q - 1) divisible by 2n whose beta
/// has an admissible form with at most max_pot_terms - 2 explicit terms. Sorted by q.
std::vector<SpecialPrime> search_special_primes(const SearchParams& params);

struct Table3Row {
  unsigned t;
  unsigned v;
  unsigned mu;
  int pot_terms;
  std::uint64_t n;
  std::size_t published;
};

/// The eight published configurations (t, v, mu, #PoT, n) and their prime counts.
const std::vector<Table3Row>& table3_rows();

}  // namespace parentt::primeforge
