// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/nttref.hpp"

#include <stdexcept>
#include <string>

#include "parentt/primeforge.hpp"

namespace parentt::nttref {

using modint::mod_add;
using modint::mod_half;
using modint::mod_mul;
using modint::mod_sub;

std::uint64_t bitrev(std::uint64_t x, unsigned bits) {
  if (bits < 64 && (x >> bits) != 0) throw std::invalid_argument("bitrev: value does not fit in the bit width");
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1U);
    x >>= 1;
  }
  return r;
}

NttParams::NttParams(std::uint64_t n, std::uint64_t q, std::uint64_t psi) : n_(n), q_(q) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("NttParams: n must be a power of two >= 2");
  if (!primeforge::is_ntt_compatible(q, n)) {
    throw std::invalid_argument("NttParams: q=" + std::to_string(q) + " is not NTT-compatible for n=" +
                                std::to_string(n));
  }
  m_ = static_cast<unsigned>(__builtin_ctzll(n));
  barrett_ = modint::BarrettParams::for_multiplication(q);
  psi_ = psi == 0 ? primeforge::find_psi(q, 2 * n) : psi % q;
  if (modint::pow_mod(psi_, n, barrett_) != q - 1) throw std::invalid_argument("NttParams: psi^n != -1 mod q");
  half_ = (q + 1) / 2;

  std::uint64_t psi_inv = modint::inv_mod_prime(psi_, barrett_);
  std::vector<std::uint64_t> pw(n), ipw(n);
  pw[0] = ipw[0] = 1;
  for (std::uint64_t k = 1; k < n; ++k) {
    pw[k] = mod_mul(pw[k - 1], psi_, barrett_);
    ipw[k] = mod_mul(ipw[k - 1], psi_inv, barrett_);
  }
  psi_rev_.resize(n);
  inv_psi_rev_.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    psi_rev_[k] = pw[bitrev(k, m_)];
    inv_psi_rev_[k] = ipw[bitrev(k, m_)];
  }
}

void forward_stage(std::vector<std::uint64_t>& a, unsigned s, const NttParams& p, modint::OpCounter* ops) {
  const std::uint64_t q = p.q();
  const std::uint64_t h = p.n() >> (s + 1);
  const std::uint64_t groups = std::uint64_t{1} << s;
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t w_tw = p.fwd_twiddle(s, g);
    const std::uint64_t base = 2 * h * g;
    for (std::uint64_t j = base; j < base + h; ++j) {
      std::uint64_t u = a[j];
      std::uint64_t v = mod_mul(a[j + h], w_tw, p.barrett(), ops);
      a[j] = mod_add(u, v, q);
      a[j + h] = mod_sub(u, v, q);
    }
  }
}

void inverse_stage(std::vector<std::uint64_t>& a, unsigned s, const NttParams& p, modint::OpCounter* ops) {
  const std::uint64_t q = p.q();
  const std::uint64_t d = std::uint64_t{1} << s;
  const std::uint64_t groups = p.n() >> (s + 1);
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t w_tw = p.inv_twiddle(s, g);
    const std::uint64_t base = 2 * d * g;
    for (std::uint64_t j = base; j < base + d; ++j) {
      std::uint64_t u = a[j];
      std::uint64_t v = a[j + d];
      a[j] = mod_half(mod_add(u, v, q), q, ops);
      a[j + d] = mod_mul(mod_half(mod_sub(u, v, q), q, ops), w_tw, p.barrett(), ops);
    }
  }
}

void forward_inplace_bitrev(std::vector<std::uint64_t>& a, const NttParams& p, modint::OpCounter* ops) {
  for (unsigned s = 0; s < p.m(); ++s) forward_stage(a, s, p, ops);
}

void inverse_inplace_bitrev(std::vector<std::uint64_t>& a, const NttParams& p, modint::OpCounter* ops) {
  for (unsigned s = 0; s < p.m(); ++s) inverse_stage(a, s, p, ops);
}

namespace {

void check_poly(const ResiduePoly& a, const NttParams& p, Domain want, const char* what) {
  if (a.coeffs.size() != p.n()) {
    throw std::invalid_argument(std::string(what) + ": polynomial length " + std::to_string(a.coeffs.size()) +
                                " != n=" + std::to_string(p.n()));
  }
  if (a.domain != want) throw std::invalid_argument(std::string(what) + ": wrong domain tag");
  for (auto c : a.coeffs) {
    if (c >= p.q()) throw std::invalid_argument(std::string(what) + ": coefficient not reduced");
  }
}

std::vector<std::uint64_t> permute_bitrev(const std::vector<std::uint64_t>& a, unsigned m) {
  std::vector<std::uint64_t> out(a.size());
  for (std::uint64_t i = 0; i < a.size(); ++i) out[bitrev(i, m)] = a[i];
  return out;
}

}  // namespace

ResiduePoly ntt_forward(const ResiduePoly& a, const NttParams& p, modint::OpCounter* ops) {
  check_poly(a, p, Domain::time, "ntt_forward");
  std::vector<std::uint64_t> x = a.coeffs;
  forward_inplace_bitrev(x, p, ops);
  return {permute_bitrev(x, p.m()), Domain::ntt};
}

ResiduePoly ntt_inverse(const ResiduePoly& a, const NttParams& p, modint::OpCounter* ops) {
  check_poly(a, p, Domain::ntt, "ntt_inverse");
  std::vector<std::uint64_t> x = permute_bitrev(a.coeffs, p.m());
  inverse_inplace_bitrev(x, p, ops);
  return {std::move(x), Domain::time};
}

ResiduePoly pointwise_mul(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p, modint::OpCounter* ops) {
  check_poly(a, p, Domain::ntt, "pointwise_mul");
  check_poly(b, p, Domain::ntt, "pointwise_mul");
  ResiduePoly c{std::vector<std::uint64_t>(p.n()), Domain::ntt};
  for (std::uint64_t k = 0; k < p.n(); ++k) c.coeffs[k] = mod_mul(a.coeffs[k], b.coeffs[k], p.barrett(), ops);
  return c;
}

ResiduePoly polymul_ntt(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p, modint::OpCounter* ops) {
  check_poly(a, p, Domain::time, "polymul_ntt");
  check_poly(b, p, Domain::time, "polymul_ntt");
  // Pointwise products are order-agnostic, so the bit-reversed spectra feed the
  // inverse directly.
  std::vector<std::uint64_t> x = a.coeffs;
  std::vector<std::uint64_t> y = b.coeffs;
  forward_inplace_bitrev(x, p, ops);
  forward_inplace_bitrev(y, p, ops);
  for (std::uint64_t k = 0; k < p.n(); ++k) x[k] = mod_mul(x[k], y[k], p.barrett(), ops);
  inverse_inplace_bitrev(x, p, ops);
  return {std::move(x), Domain::time};
}

ResiduePoly schoolbook_negacyclic(const ResiduePoly& a, const ResiduePoly& b, std::uint64_t q) {
  const std::size_t n = a.coeffs.size();
  if (b.coeffs.size() != n) throw std::invalid_argument("schoolbook_negacyclic: length mismatch");
  using u128 = unsigned __int128;
  std::vector<u128> pos(n, 0), neg(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      u128 prod = static_cast<u128>(a.coeffs[i] % q) * (b.coeffs[j] % q) % q;
      std::size_t k = i + j;
      if (k < n) {
        pos[k] += prod;
      } else {
        neg[k - n] += prod;
      }
    }
  }
  ResiduePoly out{std::vector<std::uint64_t>(n), Domain::time};
  for (std::size_t k = 0; k < n; ++k) {
    u128 p = pos[k] % q;
    u128 m = neg[k] % q;
    out.coeffs[k] = static_cast<std::uint64_t>((p + q - m) % q);
  }
  return out;
}

namespace {

// Iterative radix-2 cyclic transform, natural order in and out.
void cyclic_ntt(std::vector<std::uint64_t>& a, std::uint64_t root, const modint::BarrettParams& bp) {
  const std::uint64_t n = a.size();
  const std::uint64_t q = bp.q();
  unsigned m = static_cast<unsigned>(__builtin_ctzll(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint64_t r = bitrev(i, m);
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::uint64_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w_len = modint::pow_mod(root, n / len, bp);
    for (std::uint64_t start = 0; start < n; start += len) {
      std::uint64_t w = 1;
      for (std::uint64_t j = 0; j < len / 2; ++j) {
        std::uint64_t u = a[start + j];
        std::uint64_t v = mod_mul(a[start + j + len / 2], w, bp);
        a[start + j] = mod_add(u, v, q);
        a[start + j + len / 2] = mod_sub(u, v, q);
        w = mod_mul(w, w_len, bp);
      }
    }
  }
}

}  // namespace

ResiduePoly nwc_reference(const ResiduePoly& a, const ResiduePoly& b, const NttParams& p) {
  check_poly(a, p, Domain::time, "nwc_reference");
  check_poly(b, p, Domain::time, "nwc_reference");
  const auto& bp = p.barrett();
  const std::uint64_t n = p.n();
  std::uint64_t omega = mod_mul(p.psi(), p.psi(), bp);
  std::uint64_t omega_inv = modint::inv_mod_prime(omega, bp);
  std::uint64_t psi_inv = modint::inv_mod_prime(p.psi(), bp);
  std::uint64_t n_inv = modint::inv_mod_prime(n % p.q(), bp);

  std::vector<std::uint64_t> x(n), y(n);
  std::uint64_t w = 1;
  for (std::uint64_t j = 0; j < n; ++j) {
    x[j] = mod_mul(a.coeffs[j], w, bp);
    y[j] = mod_mul(b.coeffs[j], w, bp);
    w = mod_mul(w, p.psi(), bp);
  }
  cyclic_ntt(x, omega, bp);
  cyclic_ntt(y, omega, bp);
  for (std::uint64_t k = 0; k < n; ++k) x[k] = mod_mul(x[k], y[k], bp);
  cyclic_ntt(x, omega_inv, bp);
  w = n_inv;
  for (std::uint64_t j = 0; j < n; ++j) {
    x[j] = mod_mul(x[j], w, bp);
    w = mod_mul(w, psi_inv, bp);
  }
  return {std::move(x), Domain::time};
}

}  // namespace parentt::nttref
