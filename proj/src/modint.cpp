// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/modint.hpp"

#include <stdexcept>
#include <string>

namespace parentt::modint {

unsigned bit_length(std::uint64_t x) {
  return x == 0 ? 0U : 64U - static_cast<unsigned>(__builtin_clzll(x));
}

BarrettParams::BarrettParams(std::uint64_t q, unsigned mu) : q_(q), mu_(mu) {
  if (q < 2) throw std::invalid_argument("BarrettParams: modulus must be >= 2");
  if (mu < bit_length(q)) throw std::invalid_argument("BarrettParams: mu shorter than the modulus");
  if (mu + 64 > WideUint::kBits) throw std::invalid_argument("BarrettParams: mu too large");
  epsilon_ = WideUint::power_of_two(mu) / WideUint(q);
  // Recomputed independently: epsilon * q <= 2^mu < (epsilon + 1) * q.
  WideUint lo = epsilon_ * WideUint(q);
  WideUint hi = lo + WideUint(q);
  if (lo > WideUint::power_of_two(mu) || hi <= WideUint::power_of_two(mu)) {
    throw std::logic_error("BarrettParams: epsilon check failed");
  }
  // a < 2^mu times epsilon must fit the wide word.
  if (mu + epsilon_.bit_length() > WideUint::kBits) {
    throw std::invalid_argument("BarrettParams: mu too large for this modulus");
  }
  small_epsilon_ = mu <= 128 && epsilon_.bit_length() <= 64;
}

BarrettParams BarrettParams::for_multiplication(std::uint64_t q) { return {q, 2 * bit_length(q)}; }

unsigned BarrettParams::epsilon_bits() const {
  std::size_t bits = epsilon_.bit_length();
  bool power_of_two = epsilon_ == WideUint::power_of_two(bits - 1);
  return static_cast<unsigned>(power_of_two ? bits - 1 : bits);
}

namespace {

[[noreturn]] void throw_width(unsigned mu) {
  throw std::domain_error("barrett_reduce: input is not below 2^" + std::to_string(mu));
}

std::uint64_t finish(unsigned __int128 r, std::uint64_t q) {
  // The quotient estimate undershoots by at most 2.
  for (int i = 0; i < 2 && r >= q; ++i) r -= q;
  if (r >= q) throw std::logic_error("barrett_reduce: remainder out of range");
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t barrett_reduce(unsigned __int128 a, const BarrettParams& p, OpCounter* ops) {
  if (!p.small_epsilon_) return barrett_reduce(WideUint::from_u128(a), p, ops);
  if (p.mu_ < 128 && (a >> p.mu_) != 0) throw_width(p.mu_);
  if (ops != nullptr) ++ops->barrett;
  // (a * epsilon) >> mu with a 128x64 -> 192-bit product.
  std::uint64_t eps = p.epsilon_.limb(0);
  unsigned __int128 lo = static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) * eps;
  unsigned __int128 hi = static_cast<unsigned __int128>(static_cast<std::uint64_t>(a >> 64)) * eps;
  BasicWideUint<3> prod;
  prod.limb(0) = static_cast<std::uint64_t>(lo);
  unsigned __int128 mid = (lo >> 64) + static_cast<std::uint64_t>(hi);
  prod.limb(1) = static_cast<std::uint64_t>(mid);
  prod.limb(2) = static_cast<std::uint64_t>(hi >> 64) + static_cast<std::uint64_t>(mid >> 64);
  BasicWideUint<3> quot = prod >> p.mu_;
  unsigned __int128 estimate =
      static_cast<unsigned __int128>(quot.limb(0)) | (static_cast<unsigned __int128>(quot.limb(1)) << 64);
  unsigned __int128 r = a - estimate * p.q_;
  return finish(r, p.q_);
}

std::uint64_t barrett_reduce(const WideUint& a, const BarrettParams& p, OpCounter* ops) {
  if (a.bit_length() > p.mu()) throw_width(p.mu());
  if (ops != nullptr) ++ops->barrett;
  WideUint estimate = (a * p.epsilon()) >> p.mu();
  WideUint r = a - estimate * WideUint(p.q());
  if (r.bit_length() > 128) throw std::logic_error("barrett_reduce: remainder out of range");
  unsigned __int128 rr = static_cast<unsigned __int128>(r.limb(0)) | (static_cast<unsigned __int128>(r.limb(1)) << 64);
  return finish(rr, p.q());
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, const BarrettParams& p, OpCounter* ops) {
  if (ops != nullptr) ++ops->mod_mul;
  return barrett_reduce(static_cast<unsigned __int128>(a) * b, p, ops);
}

std::uint64_t mod_half(std::uint64_t x, std::uint64_t q, OpCounter* ops) {
  if ((q & 1U) == 0) throw std::invalid_argument("mod_half: modulus must be odd");
  if (ops != nullptr) ++ops->mod_half;
  std::uint64_t h = x >> 1;
  if ((x & 1U) == 0) return h;
  return mod_add(h, (q >> 1) + 1, q);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, const BarrettParams& p) {
  std::uint64_t result = 1 % p.q();
  std::uint64_t b = base % p.q();
  while (exp != 0) {
    if ((exp & 1U) != 0) result = mod_mul(result, b, p);
    b = mod_mul(b, b, p);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod_prime(std::uint64_t x, const BarrettParams& p) {
  if (x % p.q() == 0) throw std::domain_error("inv_mod_prime: zero has no inverse");
  return pow_mod(x, p.q() - 2, p);
}

WideUint sau_multiply(const WideUint& z, const SignedPotForm& pot, OpCounter* ops) {
  if (ops != nullptr) ++ops->sau;
  WideUint pos;
  WideUint neg = z;  // the implicit trailing -1
  for (const auto& term : pot.terms) {
    if (term.sign > 0) {
      pos += z << term.exponent;
    } else {
      neg += z << term.exponent;
    }
    if (ops != nullptr) ++ops->sau_shift_adds;
  }
  if (ops != nullptr) ++ops->sau_shift_adds;
  if (pos < neg) throw std::logic_error("sau_multiply: negative partial sum exceeds positive");
  return pos - neg;
}

WideUint sau_multiply(std::uint64_t z, const SignedPotForm& pot, OpCounter* ops) {
  return sau_multiply(WideUint(z), pot, ops);
}

}  // namespace parentt::modint
