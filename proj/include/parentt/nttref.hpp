// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "parentt/modint.hpp"

namespace parentt::nttref {

enum class Domain { time, ntt };

struct ResiduePoly {
  std::vector<std::uint64_t> coeffs;
  Domain domain = Domain::time;

  friend bool operator==(const ResiduePoly&, const ResiduePoly&) = default;
};

std::uint64_t bitrev(std::uint64_t x, unsigned bits);

/// Transform context for one modulus. Twiddles are stored in bit-reversed order:
/// psi_rev[k] = psi^{rev_m(k)} and inv_psi_rev[k] = psi^{-rev_m(k)}, so stage s of the
/// forward transform reads psi_rev[2^s + g] and stage s of the inverse reads
/// inv_psi_rev[n / 2^{s+1} + g] for butterfly group g.
class NttParams {
 public:
  NttParams() = default;
  /// psi == 0 selects the smallest primitive 2n-th root.
  NttParams(std::uint64_t n, std::uint64_t q, std::uint64_t psi = 0);

  std::uint64_t n() const { return n_; }
  unsigned m() const { return m_; }
  std::uint64_t q() const { return q_; }
  std::uint64_t psi() const { return psi_; }
  std::uint64_t half() const { return half_; }
  const modint::BarrettParams& barrett() const { return barrett_; }

  std::uint64_t fwd_twiddle(unsigned stage, std::uint64_t group) const {
    return psi_rev_[(std::uint64_t{1} << stage) + group];
  }
  std::uint64_t inv_twiddle(unsigned stage, std::uint64_t group) const {
    return inv_psi_rev_[(n_ >> (stage + 1)) + group];
  }
  const std::vector<std::uint64_t>& psi_rev() const { return psi_rev_; }
  const std::vector<std::uint64_t>& inv_psi_rev() const { return inv_psi_rev_; }

 private:
  std::uint64_t n_ = 0;
  unsigned m_ = 0;
  std::uint64_t q_ = 0;
  std::uint64_t psi_ = 0;
  std::uint64_t half_ = 0;
  modint::BarrettParams barrett_;
  std::vector<std::uint64_t> psi_rev_;
  std::vector<std::uint64_t> inv_psi_rev_;
};

/// One stage of merged DIT butterflies (u + W*w, u - W*w) at distance n / 2^{s+1}.
void forward_stage(std::vector<std::uint64_t>& a, unsigned s, const NttParams& p, modint::OpCounter* ops = nullptr);
/// One stage of merged DIF butterflies ((u + w) / 2, ((u - w) / 2) * W) at distance 2^s.
void inverse_stage(std::vector<std::uint64_t>& a, unsigned s, const NttParams& p, modint::OpCounter* ops = nullptr);

/// Natural-order input, bit-reversed output: position x holds A~_{rev(x)}.
void forward_inplace_bitrev(std::vector<std::uint64_t>& a, const NttParams& p, modint::OpCounter* ops = nullptr);
/// Bit-reversed input, natural-order output. Exact inverse of forward_inplace_bitrev.
void inverse_inplace_bitrev(std::vector<std::uint64_t>& a, const NttParams& p, modint::OpCounter* ops = nullptr);

/// A~_k = sum_j a_j psi^{j(2k+1)}, natural order in and out.
ResiduePoly ntt_forward(const ResiduePoly& a, const NttParams& p, modint::OpCounter* ops = nullptr);
ResiduePoly ntt_inverse(const ResiduePoly& a, const NttParams& p, modint::OpCounter* ops = nullptr);
ResiduePoly pointwise_mul(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p,
                          modint::OpCounter* ops = nullptr);

/// a * b mod (x^n + 1, q) through the merged transforms.
ResiduePoly polymul_ntt(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p,
                        modint::OpCounter* ops = nullptr);

/// O(n^2) negacyclic product. Shares no code with the transforms.
ResiduePoly schoolbook_negacyclic(const ResiduePoly& a, const ResiduePoly& b, std::uint64_t q);

/// Textbook path: weight by psi^j, cyclic transform with omega = psi^2, pointwise,
/// inverse cyclic transform, scale by n^-1 psi^-j.
ResiduePoly nwc_reference(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p);

}  // namespace parentt::nttref
