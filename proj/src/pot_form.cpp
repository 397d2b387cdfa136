// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/pot_form.hpp"

#include <stdexcept>

namespace parentt {

void SignedPotForm::validate() const {
  if (terms.empty()) throw std::domain_error("SignedPotForm: no explicit terms");
  if (terms.front().sign != 1) throw std::domain_error("SignedPotForm: leading term must be positive");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (t.sign != 1 && t.sign != -1) throw std::domain_error("SignedPotForm: sign must be +1 or -1");
    if (t.exponent < 1 || t.exponent > 62) throw std::domain_error("SignedPotForm: exponent out of range");
    if (i > 0 && terms[i - 1].exponent <= t.exponent) {
      throw std::domain_error("SignedPotForm: exponents must strictly decrease");
    }
  }
  // Leading term dominates the rest, so the sum is >= 2 and beta >= 1.
}

std::uint64_t SignedPotForm::value() const {
  validate();
  __int128 sum = -1;
  for (const auto& t : terms) sum += static_cast<__int128>(t.sign) * (static_cast<__int128>(1) << t.exponent);
  if (sum <= 0 || sum >= (static_cast<__int128>(1) << 63)) throw std::domain_error("SignedPotForm: value out of range");
  return static_cast<std::uint64_t>(sum);
}

std::string SignedPotForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (i == 0) {
      out += t.sign < 0 ? "-" : "";
    } else {
      out += t.sign < 0 ? " - " : " + ";
    }
    out += "2^" + std::to_string(t.exponent);
  }
  out += " - 1";
  return out;
}

}  // namespace parentt
