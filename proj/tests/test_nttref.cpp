// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "parentt/nttref.hpp"
#include "parentt/primeforge.hpp"
#include "support.hpp"

using namespace parentt;
using namespace parentt::nttref;

namespace {

ResiduePoly time_poly(std::vector<std::uint64_t> c) { return {std::move(c), Domain::time}; }

ResiduePoly random_poly(SplitMix64& rng, std::uint64_t n, std::uint64_t q) {
  ResiduePoly p{std::vector<std::uint64_t>(n), Domain::time};
  for (auto& x : p.coeffs) x = rng.below(q);
  return p;
}

ResiduePoly monomial(std::uint64_t n, std::uint64_t k) {
  ResiduePoly p{std::vector<std::uint64_t>(n, 0), Domain::time};
  p.coeffs[k] = 1;
  return p;
}

// A~_k = sum_j a_j psi^{j(2k+1)} evaluated with GMP.
std::vector<std::uint64_t> brute_force_ntt(const std::vector<std::uint64_t>& a, std::uint64_t q, std::uint64_t psi) {
  const std::size_t n = a.size();
  mpz_class Q = testsupport::to_mpz_u64(q), P = testsupport::to_mpz_u64(psi);
  std::vector<std::uint64_t> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      mpz_class w;
      mpz_powm_ui(w.get_mpz_t(), P.get_mpz_t(), j * (2 * k + 1), Q.get_mpz_t());
      acc += testsupport::to_mpz_u64(a[j]) * w;
    }
    acc %= Q;
    out[k] = testsupport::mpz_u64(acc);
  }
  return out;
}

std::vector<std::uint64_t> moduli_for(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2 * n + 1; out.size() < 2; q += 2 * n) {
    if (primeforge::is_prime(q)) out.push_back(q);
  }
  // Two special primes of the 180-bit contexts.
  out.push_back(primeforge::search_special_primes({30, 4096, 75, 4, 2}).front().q);
  out.push_back(primeforge::search_special_primes({45, 4096, 105, 4, 2}).back().q);
  return out;
}

}  // namespace

TEST_SUITE("nttref") {
  TEST_CASE("NttParams defaults and validation") {
    NttParams p(8, 17);
    CHECK(p.psi() == 3);
    CHECK(p.half() == 9);
    CHECK(p.m() == 3);
    CHECK_THROWS_AS(NttParams(12, 17), std::invalid_argument);
    CHECK_THROWS_AS(NttParams(16, 17), std::invalid_argument);
    CHECK_THROWS_AS(NttParams(8, 17, 2), std::invalid_argument);  // 2^8 = 1, not -1
  }

  TEST_CASE("forward transform examples") {
    NttParams p(8, 17);
    CHECK(ntt_forward(time_poly({1, 0, 0, 0, 0, 0, 0, 0}), p).coeffs == std::vector<std::uint64_t>(8, 1));
    CHECK(ntt_forward(time_poly(std::vector<std::uint64_t>(8, 0)), p).coeffs == std::vector<std::uint64_t>(8, 0));
    auto got = ntt_forward(time_poly({1, 1, 0, 0, 0, 0, 0, 0}), p);
    CHECK(got.domain == Domain::ntt);
    CHECK(got.coeffs == brute_force_ntt({1, 1, 0, 0, 0, 0, 0, 0}, 17, 3));
  }

  TEST_CASE("inverse transform examples") {
    NttParams p(8, 17);
    ResiduePoly ones{std::vector<std::uint64_t>(8, 1), Domain::ntt};
    CHECK(ntt_inverse(ones, p).coeffs == std::vector<std::uint64_t>{1, 0, 0, 0, 0, 0, 0, 0});
    ResiduePoly zeros{std::vector<std::uint64_t>(8, 0), Domain::ntt};
    CHECK(ntt_inverse(zeros, p).coeffs == zeros.coeffs);
  }

  TEST_CASE("forward transform equals direct evaluation") {
    SplitMix64 rng(21);
    for (std::uint64_t n : {4ULL, 8ULL, 16ULL, 64ULL}) {
      for (std::uint64_t q : moduli_for(n)) {
        NttParams p(n, q);
        auto a = random_poly(rng, n, q);
        CHECK(ntt_forward(a, p).coeffs == brute_force_ntt(a.coeffs, q, p.psi()));
      }
    }
  }

  TEST_CASE("domain tags and reduced inputs are enforced") {
    NttParams p(8, 17);
    ResiduePoly spectral{std::vector<std::uint64_t>(8, 0), Domain::ntt};
    CHECK_THROWS_AS(ntt_forward(spectral, p), std::invalid_argument);
    CHECK_THROWS_AS(ntt_inverse(time_poly(std::vector<std::uint64_t>(8, 0)), p), std::invalid_argument);
    CHECK_THROWS_AS(ntt_forward(time_poly({17, 0, 0, 0, 0, 0, 0, 0}), p), std::invalid_argument);
    CHECK_THROWS_AS(ntt_forward(time_poly({0, 0, 0}), p), std::invalid_argument);
  }

  TEST_CASE("pointwise examples") {
    NttParams p(8, 17);
    SplitMix64 rng(2);
    ResiduePoly a{std::vector<std::uint64_t>(8), Domain::ntt}, b = a;
    for (auto& x : a.coeffs) x = rng.below(17);
    for (auto& x : b.coeffs) x = rng.below(17);
    ResiduePoly ones{std::vector<std::uint64_t>(8, 1), Domain::ntt};
    CHECK(pointwise_mul(a, ones, p) == a);
    ResiduePoly zeros{std::vector<std::uint64_t>(8, 0), Domain::ntt};
    CHECK(pointwise_mul(zeros, b, p) == zeros);
    auto c = pointwise_mul(a, b, p);
    for (std::size_t i = 0; i < 8; ++i) CHECK(c.coeffs[i] == a.coeffs[i] * b.coeffs[i] % 17);
  }

  TEST_CASE("polymul examples") {
    const std::uint64_t n = 8, q = 17;
    NttParams p(n, q);
    auto wrap = polymul_ntt(monomial(n, 1), monomial(n, n - 1), p);
    CHECK(wrap.coeffs == std::vector<std::uint64_t>{16, 0, 0, 0, 0, 0, 0, 0});
    SplitMix64 rng(8);
    auto a = random_poly(rng, n, q);
    CHECK(polymul_ntt(a, monomial(n, 0), p) == a);
    auto b = random_poly(rng, n, q);
    CHECK(polymul_ntt(a, b, p) == schoolbook_negacyclic(a, b, q));
  }

  TEST_CASE("schoolbook examples") {
    CHECK(schoolbook_negacyclic(monomial(4, 0), monomial(4, 0), 17).coeffs == std::vector<std::uint64_t>{1, 0, 0, 0});
    CHECK(schoolbook_negacyclic(monomial(4, 1), monomial(4, 1), 17).coeffs == std::vector<std::uint64_t>{0, 0, 1, 0});
    auto ones = time_poly({1, 1, 1, 1});
    CHECK(schoolbook_negacyclic(ones, ones, 17).coeffs == std::vector<std::uint64_t>{15, 0, 2, 4});
  }

  TEST_CASE("nwc_reference examples and agreement") {
    const std::uint64_t n = 16, q = 97;
    NttParams p(n, q);
    SplitMix64 rng(4);
    auto a = random_poly(rng, n, q);
    CHECK(nwc_reference(a, time_poly(std::vector<std::uint64_t>(n, 0)), p).coeffs == std::vector<std::uint64_t>(n, 0));
    CHECK(nwc_reference(a, monomial(n, 0), p) == a);
    for (int k = 0; k < 50; ++k) {
      auto x = random_poly(rng, n, q), y = random_poly(rng, n, q);
      REQUIRE(nwc_reference(x, y, p) == schoolbook_negacyclic(x, y, q));
    }
  }

  TEST_CASE("linearity") {
    SplitMix64 rng(31);
    const std::uint64_t n = 64;
    for (std::uint64_t q : moduli_for(n)) {
      NttParams p(n, q);
      for (int k = 0; k < 50; ++k) {
        auto a = random_poly(rng, n, q), b = random_poly(rng, n, q);
        std::uint64_t alpha = rng.below(q), beta = rng.below(q);
        ResiduePoly mix{std::vector<std::uint64_t>(n), Domain::time};
        for (std::size_t i = 0; i < n; ++i) {
          mix.coeffs[i] = modint::mod_add(modint::mod_mul(alpha, a.coeffs[i], p.barrett()),
                                          modint::mod_mul(beta, b.coeffs[i], p.barrett()), q);
        }
        auto fa = ntt_forward(a, p), fb = ntt_forward(b, p), fm = ntt_forward(mix, p);
        for (std::size_t i = 0; i < n; ++i) {
          REQUIRE(fm.coeffs[i] == modint::mod_add(modint::mod_mul(alpha, fa.coeffs[i], p.barrett()),
                                                  modint::mod_mul(beta, fb.coeffs[i], p.barrett()), q));
        }
      }
    }
  }

  TEST_CASE("multiplying by x rotates with a negated wrap") {
    SplitMix64 rng(6);
    const std::uint64_t n = 128;
    std::uint64_t q = moduli_for(n)[0];
    NttParams p(n, q);
    for (int k = 0; k < 50; ++k) {
      auto a = random_poly(rng, n, q);
      auto r = polymul_ntt(a, monomial(n, 1), p);
      REQUIRE(r.coeffs[0] == (q - a.coeffs[n - 1]) % q);
      for (std::size_t i = 1; i < n; ++i) REQUIRE(r.coeffs[i] == a.coeffs[i - 1]);
    }
  }

  TEST_CASE("each stage spends exactly n/2 modular multiplications") {
    for (std::uint64_t n : {8ULL, 256ULL, 4096ULL}) {
      std::uint64_t q = moduli_for(n)[0];
      NttParams p(n, q);
      SplitMix64 rng(n);
      auto a = random_poly(rng, n, q).coeffs;
      for (unsigned s = 0; s < p.m(); ++s) {
        modint::OpCounter ops;
        forward_stage(a, s, p, &ops);
        CHECK(ops.mod_mul == n / 2);
      }
      for (unsigned s = 0; s < p.m(); ++s) {
        modint::OpCounter ops;
        inverse_stage(a, s, p, &ops);
        CHECK(ops.mod_mul == n / 2);
        CHECK(ops.mod_half == n);
      }
    }
  }

  TEST_CASE("bit-reversed in-place transforms round trip") {
    SplitMix64 rng(12);
    for (std::uint64_t n : {4ULL, 32ULL, 1024ULL}) {
      std::uint64_t q = moduli_for(n)[1];
      NttParams p(n, q);
      auto a = random_poly(rng, n, q).coeffs;
      auto b = a;
      forward_inplace_bitrev(b, p);
      auto natural = ntt_forward(time_poly(a), p).coeffs;
      for (std::size_t x = 0; x < n; ++x) REQUIRE(b[x] == natural[bitrev(x, p.m())]);
      inverse_inplace_bitrev(b, p);
      CHECK(b == a);
    }
  }

  TEST_CASE("polymul at n=4096 against the schoolbook, sampled") {
    SplitMix64 rng(4096);
    for (std::uint64_t q : moduli_for(4096)) {
      NttParams p(4096, q);
      auto a = random_poly(rng, 4096, q), b = random_poly(rng, 4096, q);
      CHECK(polymul_ntt(a, b, p) == schoolbook_negacyclic(a, b, q));
    }
  }
}
