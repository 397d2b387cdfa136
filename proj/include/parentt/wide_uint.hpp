// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace parentt {

/// Fixed-capacity unsigned integer stored as little-endian 64-bit limbs.
///
/// Arithmetic that would exceed the capacity throws std::overflow_error
/// instead of wrapping; subtraction below zero throws std::underflow_error.
template <std::size_t Limbs>
class BasicWideUint {
 public:
  static constexpr std::size_t kLimbs = Limbs;
  static constexpr std::size_t kBits = Limbs * 64;

  constexpr BasicWideUint() = default;
  constexpr BasicWideUint(std::uint64_t v) { limbs_[0] = v; }  // NOLINT

  static constexpr BasicWideUint from_u128(unsigned __int128 v) {
    BasicWideUint r;
    r.limbs_[0] = static_cast<std::uint64_t>(v);
    if constexpr (Limbs > 1) {
      r.limbs_[1] = static_cast<std::uint64_t>(v >> 64);
    } else if ((v >> 64) != 0) {
      throw std::overflow_error("WideUint: value exceeds capacity");
    }
    return r;
  }

  static BasicWideUint power_of_two(std::size_t k) {
    if (k >= kBits) throw std::overflow_error("WideUint: 2^k exceeds capacity");
    BasicWideUint r;
    r.limbs_[k / 64] = std::uint64_t{1} << (k % 64);
    return r;
  }

  /// Parses hexadecimal digits, most significant first. An optional 0x prefix is accepted.
  static BasicWideUint from_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.empty()) throw std::invalid_argument("WideUint: empty hex string");
    BasicWideUint r;
    for (char c : s) {
      std::uint64_t d;
      if (c >= '0' && c <= '9') {
        d = static_cast<std::uint64_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        d = static_cast<std::uint64_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        d = static_cast<std::uint64_t>(c - 'A' + 10);
      } else {
        throw std::invalid_argument("WideUint: invalid hex digit '" + std::string(1, c) + "'");
      }
      if (r.limbs_[Limbs - 1] >> 60) throw std::overflow_error("WideUint: hex value exceeds capacity");
      r = (r << 4);
      r.limbs_[0] |= d;
    }
    return r;
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    std::size_t bits = bit_length();
    if (bits == 0) return "0";
    std::size_t nibbles = (bits + 3) / 4;
    out.reserve(nibbles);
    for (std::size_t i = nibbles; i-- > 0;) {
      std::size_t bit = i * 4;
      out.push_back(kDigits[(limbs_[bit / 64] >> (bit % 64)) & 0xF]);
    }
    return out;
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    std::string out;
    BasicWideUint v = *this;
    while (!v.is_zero()) {
      auto [qt, rem] = v.divmod_u64(10);
      out.push_back(static_cast<char>('0' + rem));
      v = qt;
    }
    return {out.rbegin(), out.rend()};
  }

  constexpr std::uint64_t limb(std::size_t i) const { return limbs_[i]; }
  constexpr std::uint64_t& limb(std::size_t i) { return limbs_[i]; }
  constexpr const std::array<std::uint64_t, Limbs>& limbs() const { return limbs_; }

  constexpr bool is_zero() const {
    for (auto l : limbs_) {
      if (l != 0) return false;
    }
    return true;
  }

  constexpr std::size_t bit_length() const {
    for (std::size_t i = Limbs; i-- > 0;) {
      if (limbs_[i] != 0) return i * 64 + (64 - static_cast<std::size_t>(__builtin_clzll(limbs_[i])));
    }
    return 0;
  }

  constexpr bool bit(std::size_t k) const {
    return k < kBits && ((limbs_[k / 64] >> (k % 64)) & 1U) != 0;
  }

  /// Low 64 bits; throws if the value does not fit.
  std::uint64_t to_u64() const {
    for (std::size_t i = 1; i < Limbs; ++i) {
      if (limbs_[i] != 0) throw std::overflow_error("WideUint: value exceeds 64 bits");
    }
    return limbs_[0];
  }

  friend constexpr bool operator==(const BasicWideUint&, const BasicWideUint&) = default;
  friend constexpr std::strong_ordering operator<=>(const BasicWideUint& a, const BasicWideUint& b) {
    for (std::size_t i = Limbs; i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

  BasicWideUint& operator+=(const BasicWideUint& o) {
    unsigned __int128 carry = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      carry += static_cast<unsigned __int128>(limbs_[i]) + o.limbs_[i];
      limbs_[i] = static_cast<std::uint64_t>(carry);
      carry >>= 64;
    }
    if (carry != 0) throw std::overflow_error("WideUint: addition overflow");
    return *this;
  }

  BasicWideUint& operator-=(const BasicWideUint& o) {
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      std::uint64_t a = limbs_[i];
      std::uint64_t d = a - o.limbs_[i] - borrow;
      borrow = (a < o.limbs_[i] || (a - o.limbs_[i]) < borrow) ? 1 : 0;
      limbs_[i] = d;
    }
    if (borrow != 0) throw std::underflow_error("WideUint: subtraction underflow");
    return *this;
  }

  friend BasicWideUint operator+(BasicWideUint a, const BasicWideUint& b) { return a += b; }
  friend BasicWideUint operator-(BasicWideUint a, const BasicWideUint& b) { return a -= b; }

  friend BasicWideUint operator*(const BasicWideUint& a, const BasicWideUint& b) {
    BasicWideUint r;
    std::size_t la = a.used_limbs();
    std::size_t lb = b.used_limbs();
    if (la + lb > Limbs + 1) throw std::overflow_error("WideUint: multiplication overflow");
    for (std::size_t i = 0; i < la; ++i) {
      unsigned __int128 carry = 0;
      for (std::size_t j = 0; j < lb; ++j) {
        std::size_t k = i + j;
        unsigned __int128 cur = static_cast<unsigned __int128>(a.limbs_[i]) * b.limbs_[j] + carry;
        if (k < Limbs) {
          cur += r.limbs_[k];
          r.limbs_[k] = static_cast<std::uint64_t>(cur);
        } else if (static_cast<std::uint64_t>(cur) != 0) {
          throw std::overflow_error("WideUint: multiplication overflow");
        }
        carry = cur >> 64;
      }
      std::size_t k = i + lb;
      if (carry != 0) {
        if (k >= Limbs) throw std::overflow_error("WideUint: multiplication overflow");
        r.limbs_[k] = static_cast<std::uint64_t>(carry);
      }
    }
    return r;
  }
  BasicWideUint& operator*=(const BasicWideUint& o) { return *this = *this * o; }

  friend BasicWideUint operator<<(const BasicWideUint& a, std::size_t k) {
    if (k == 0) return a;
    if (k >= kBits) {
      if (!a.is_zero()) throw std::overflow_error("WideUint: shift overflow");
      return {};
    }
    if (a.bit_length() + k > kBits) throw std::overflow_error("WideUint: shift overflow");
    BasicWideUint r;
    std::size_t ls = k / 64;
    std::size_t bs = k % 64;
    for (std::size_t i = Limbs; i-- > ls;) {
      std::uint64_t v = a.limbs_[i - ls] << bs;
      if (bs != 0 && i - ls > 0) v |= a.limbs_[i - ls - 1] >> (64 - bs);
      r.limbs_[i] = v;
    }
    return r;
  }

  friend constexpr BasicWideUint operator>>(const BasicWideUint& a, std::size_t k) {
    BasicWideUint r;
    if (k >= kBits) return r;
    std::size_t ls = k / 64;
    std::size_t bs = k % 64;
    for (std::size_t i = 0; i + ls < Limbs; ++i) {
      std::uint64_t v = a.limbs_[i + ls] >> bs;
      if (bs != 0 && i + ls + 1 < Limbs) v |= a.limbs_[i + ls + 1] << (64 - bs);
      r.limbs_[i] = v;
    }
    return r;
  }

  /// Quotient and remainder by a nonzero 64-bit divisor.
  std::pair<BasicWideUint, std::uint64_t> divmod_u64(std::uint64_t d) const {
    if (d == 0) throw std::domain_error("WideUint: division by zero");
    BasicWideUint q;
    unsigned __int128 rem = 0;
    for (std::size_t i = Limbs; i-- > 0;) {
      rem = (rem << 64) | limbs_[i];
      q.limbs_[i] = static_cast<std::uint64_t>(rem / d);
      rem %= d;
    }
    return {q, static_cast<std::uint64_t>(rem)};
  }

  /// Shift-subtract long division. Used for precomputation, never on a hot path.
  std::pair<BasicWideUint, BasicWideUint> divmod(const BasicWideUint& d) const {
    if (d.is_zero()) throw std::domain_error("WideUint: division by zero");
    BasicWideUint q;
    BasicWideUint r;
    for (std::size_t i = bit_length(); i-- > 0;) {
      // r = 2r + bit; r < d keeps this within capacity whenever d fits.
      bool top = r.bit(kBits - 1);
      r = shl1_unchecked(r);
      if (bit(i)) r.limbs_[0] |= 1U;
      if (top || r >= d) {
        r = sub_unchecked(r, d);
        q.limbs_[i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
    return {q, r};
  }

  BasicWideUint operator%(const BasicWideUint& d) const { return divmod(d).second; }
  BasicWideUint operator/(const BasicWideUint& d) const { return divmod(d).first; }

 private:
  constexpr std::size_t used_limbs() const {
    for (std::size_t i = Limbs; i-- > 0;) {
      if (limbs_[i] != 0) return i + 1;
    }
    return 0;
  }

  static BasicWideUint shl1_unchecked(const BasicWideUint& a) {
    BasicWideUint r;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      r.limbs_[i] = (a.limbs_[i] << 1) | carry;
      carry = a.limbs_[i] >> 63;
    }
    return r;
  }

  // Modular (wrapping) subtraction; callers guarantee the true result is non-negative
  // once the dropped top bit is accounted for.
  static BasicWideUint sub_unchecked(const BasicWideUint& a, const BasicWideUint& b) {
    BasicWideUint r;
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < Limbs; ++i) {
      std::uint64_t x = a.limbs_[i];
      std::uint64_t d = x - b.limbs_[i] - borrow;
      borrow = (x < b.limbs_[i] || (x - b.limbs_[i]) < borrow) ? 1 : 0;
      r.limbs_[i] = d;
    }
    return r;
  }

  std::array<std::uint64_t, Limbs> limbs_{};
};

/// 384-bit default: q up to 180 bits plus products and accumulation slack.
using WideUint = BasicWideUint<6>;

}  // namespace parentt
