// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parentt {

/// One explicit signed power-of-two term, sign * 2^exponent.
struct PotTerm {
  int sign = 1;  // +1 or -1
  unsigned exponent = 0;

  friend bool operator==(const PotTerm&, const PotTerm&) = default;
};

/// beta = sum(sign_j * 2^{e_j}) - 1 with strictly decreasing exponents and a
/// leading positive term. The trailing -1 is implicit and never stored.
///
/// For q = 2^v - beta the number of signed power-of-two terms of q is
/// terms.size() + 2.
struct SignedPotForm {
  std::vector<PotTerm> terms;

  std::size_t explicit_terms() const { return terms.size(); }
  std::size_t prime_pot_terms() const { return terms.size() + 2; }
  unsigned leading_exponent() const { return terms.empty() ? 0 : terms.front().exponent; }

  /// Reconstructed beta; throws std::domain_error if the form breaks its invariants.
  std::uint64_t value() const;

  /// Throws std::domain_error unless exponents strictly decrease, the first sign is
  /// positive, every exponent is >= 1 and the value is positive and below 2^63.
  void validate() const;

  /// e.g. "2^16 - 2^13 - 1"
  std::string to_string() const;

  friend bool operator==(const SignedPotForm&, const SignedPotForm&) = default;
};

}  // namespace parentt
