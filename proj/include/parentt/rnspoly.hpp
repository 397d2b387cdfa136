// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "parentt/modint.hpp"
#include "parentt/nttref.hpp"
#include "parentt/primeforge.hpp"
#include "parentt/wide_uint.hpp"

namespace parentt::rnspoly {

/// Per-modulus state of the residue channel.
struct Channel {
  primeforge::SpecialPrime prime;  // prime.barrett is the mu-bit reducer of the residual unit
  nttref::NttParams ntt;
  std::vector<std::uint64_t> block_constants;  // [beta^{t' rho}]_{q_i}, rho = 0 .. d-1
  bool interior_barrett = false;               // flat path: reduce the deepest chain once
  std::string approach1_error;                 // why the flat path does not fit in mu bits, if it does not
};

struct ContextConfig {
  unsigned v = 0;
  unsigned t = 0;
  unsigned t_prime = 0;  // 0 selects t' = t (d = 1, one flat block)
  std::uint64_t n = 0;
  unsigned mu = 0;       // 0 selects 2v
  int pot_terms = 4;
  std::optional<unsigned> n_beta;       // default: SAU depth of the residual unit
  std::vector<std::uint64_t> primes;    // explicit moduli; empty = ascending prefix of the search
};

class RnsContext {
 public:
  unsigned t() const { return t_; }
  unsigned t_prime() const { return t_prime_; }
  unsigned d() const { return d_; }
  unsigned v() const { return v_; }
  std::uint64_t n() const { return n_; }
  unsigned mu() const { return mu_; }
  unsigned n_beta() const { return n_beta_; }
  const WideUint& base() const { return base_; }  // B = 2^v
  const WideUint& q() const { return q_; }
  std::size_t q_bits() const { return q_.bit_length(); }
  const std::vector<Channel>& channels() const { return channels_; }
  const std::vector<WideUint>& q_star() const { return q_star_; }
  const std::vector<std::uint64_t>& q_tilde() const { return q_tilde_; }
  const std::vector<WideUint>& e() const { return e_; }

  /// Re-checks every CRT invariant; throws std::logic_error.
  void validate() const;

 private:
  friend RnsContext build_context(const ContextConfig& cfg);

  unsigned t_ = 0, t_prime_ = 0, d_ = 0, v_ = 0, mu_ = 0, n_beta_ = 0;
  std::uint64_t n_ = 0;
  WideUint base_, q_;
  std::vector<Channel> channels_;
  std::vector<WideUint> q_star_;
  std::vector<std::uint64_t> q_tilde_;
  std::vector<WideUint> e_;
};

/// Throws ConfigError when fewer than t primes qualify or the residual datapath would
/// exceed mu bits.
RnsContext build_context(const ContextConfig& cfg);

using SegmentVector = std::vector<std::uint64_t>;

/// Base-B digits of a, zero-padded to t digits. Throws std::domain_error if a >= B^t.
SegmentVector decompose_segments(const WideUint& a, const RnsContext& ctx);

/// a mod q_i by shift-add chains on the digits and one Barrett reduction.
std::uint64_t residual_coeff(const WideUint& a, std::size_t i, const RnsContext& ctx,
                             modint::OpCounter* ops = nullptr);
/// a mod q_i blockwise over t = d * t' digits with one constant multiplication per block.
std::uint64_t residual_coeff_factored(const WideUint& a, std::size_t i, const RnsContext& ctx,
                                      modint::OpCounter* ops = nullptr);

struct BigPoly {
  std::vector<WideUint> coeffs;
  friend bool operator==(const BigPoly&, const BigPoly&) = default;
};

/// Coefficient-wise residues; the factored path is used when ctx.d() >= 2.
std::vector<nttref::ResiduePoly> to_residues(const BigPoly& a, const RnsContext& ctx,
                                             modint::OpCounter* ops = nullptr);
/// CRT recombination sum_i [p_i * q~_i]_{q_i} * q*_i, reduced by conditional subtraction.
BigPoly from_residues(const std::vector<nttref::ResiduePoly>& parts, const RnsContext& ctx);

enum class ChannelEngine { reference, simulator };

struct MultiplyOptions {
  ChannelEngine engine = ChannelEngine::reference;
  bool parallel = true;  // one thread per residue channel
};

/// a * b mod (x^n + 1, q) through t independent residue channels.
BigPoly parentt_multiply(const BigPoly& a, const BigPoly& b, const RnsContext& ctx, const MultiplyOptions& opts = {});

/// O(n^2) negacyclic product over the full modulus, accumulated without intermediate
/// reduction and reduced once per coefficient.
BigPoly schoolbook_negacyclic_wide(const BigPoly& a, const BigPoly& b, const WideUint& q);

/// Exactly n lines of hexadecimal coefficients, most significant nibble first.
BigPoly read_hex_poly(std::istream& in, std::size_t n);
void write_hex_poly(std::ostream& out, const BigPoly& p);

}  // namespace parentt::rnspoly
