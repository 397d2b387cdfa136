// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "parentt/modint.hpp"
#include "parentt/primeforge.hpp"
#include "support.hpp"

using namespace parentt;
using namespace parentt::modint;
using testsupport::from_mpz;
using testsupport::to_mpz;

TEST_SUITE("modint") {
  TEST_CASE("barrett_reduce small examples") {
    BarrettParams p(17, 10);
    CHECK(barrett_reduce(WideUint(0), p) == 0);
    CHECK(barrett_reduce(WideUint(16), p) == 16);
    CHECK(barrett_reduce(WideUint(100), p) == 15);
    CHECK(barrett_reduce(static_cast<unsigned __int128>(100), p) == 15);
  }

  TEST_CASE("barrett rejects inputs at or above 2^mu") {
    BarrettParams p(17, 10);
    CHECK(barrett_reduce(WideUint(1023), p) == 1023 % 17);
    CHECK_THROWS_AS(barrett_reduce(WideUint(1024), p), std::domain_error);
    CHECK_THROWS_AS(barrett_reduce(static_cast<unsigned __int128>(1024), p), std::domain_error);
  }

  TEST_CASE("BarrettParams validation") {
    CHECK_THROWS_AS(BarrettParams(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(BarrettParams(17, 4), std::invalid_argument);
    CHECK_THROWS_AS(BarrettParams(17, 400), std::invalid_argument);
    CHECK_THROWS_AS(BarrettParams(17, 200), std::invalid_argument);  // a * epsilon would need 396 bits
    CHECK_NOTHROW(BarrettParams(17, 190));
    BarrettParams p(17, 10);
    // floor(2^10 / 17) = 60
    CHECK(p.epsilon() == WideUint(60));
    CHECK(p.epsilon_bits() == 6);
    CHECK(BarrettParams::for_multiplication(17).mu() == 10);
  }

  TEST_CASE("modular add, sub, mul examples") {
    CHECK(mod_add(16, 1, 17) == 0);
    CHECK(mod_sub(0, 1, 17) == 16);
    BarrettParams p = BarrettParams::for_multiplication(17);
    CHECK(mod_mul(5, 7, p) == 1);
  }

  TEST_CASE("mod_half examples") {
    CHECK(mod_half(6, 17) == 3);
    CHECK(mod_half(0, 17) == 0);
    CHECK(mod_half(5, 17) == 11);
    CHECK_THROWS_AS(mod_half(3, 16), std::invalid_argument);
  }

  TEST_CASE("sau_multiply examples") {
    SignedPotForm fifteen{{{1, 4}}};  // 2^4 - 1
    CHECK(sau_multiply(1, fifteen) == WideUint(15));
    CHECK(sau_multiply(0, fifteen) == WideUint(0));
    CHECK(sau_multiply(100, fifteen) == WideUint(1500));
    OpCounter ops;
    sau_multiply(100, fifteen, &ops);
    CHECK(ops.general_mul == 0);
    CHECK(ops.sau == 1);
  }

  TEST_CASE("pow_mod and inverse") {
    BarrettParams p = BarrettParams::for_multiplication(12289);
    CHECK(pow_mod(11, 12288, p) == 1);
    for (std::uint64_t x : {1ULL, 2ULL, 3ULL, 12288ULL, 4321ULL}) CHECK(mod_mul(x, inv_mod_prime(x, p), p) == 1);
    CHECK_THROWS_AS(inv_mod_prime(0, p), std::domain_error);
  }

  TEST_CASE("Barrett over wide inputs matches GMP for special primes") {
    SplitMix64 rng(11);
    struct Cfg {
      unsigned v, mu;
    };
    for (Cfg c : {Cfg{45, 105}, Cfg{45, 120}, Cfg{30, 75}, Cfg{30, 90}}) {
      auto primes = primeforge::search_special_primes({c.v, 4096, c.mu, 4, 2});
      REQUIRE(!primes.empty());
      for (const auto& sp : primes) {
        const mpz_class q = testsupport::to_mpz_u64(sp.q);
        for (int k = 0; k < 500; ++k) {
          WideUint a = testsupport::random_bits(rng, c.mu);
          mpz_class want = to_mpz(a) % q;
          REQUIRE(barrett_reduce(a, sp.barrett) == testsupport::mpz_u64(want));
        }
        WideUint top = WideUint::power_of_two(c.mu) - WideUint(1);
        CHECK(barrett_reduce(top, sp.barrett) == testsupport::mpz_u64(to_mpz(top) % q));
      }
    }
  }

  TEST_CASE("Barrett takes at most two correction steps") {
    // The correction count is internal; the observable bound is that every input up to
    // 2^mu - 1 reduces, including the worst case right below a multiple of q.
    BarrettParams p(257, 20);
    for (std::uint64_t a = (1ULL << 20) - 3 * 257; a < (1ULL << 20); ++a) CHECK(barrett_reduce(WideUint(a), p) == a % 257);
  }

  TEST_CASE("ring axioms on residues") {
    SplitMix64 rng(5);
    for (std::uint64_t q : {17ULL, 12289ULL, 1073479681ULL, 35184358850561ULL}) {
      BarrettParams p = BarrettParams::for_multiplication(q);
      for (int k = 0; k < 2000; ++k) {
        std::uint64_t a = rng.below(q), b = rng.below(q), c = rng.below(q);
        REQUIRE(mod_mul(a, b, p) == mod_mul(b, a, p));
        REQUIRE(mod_add(a, b, q) == mod_add(b, a, q));
        REQUIRE(mod_mul(mod_mul(a, b, p), c, p) == mod_mul(a, mod_mul(b, c, p), p));
        REQUIRE(mod_mul(a, mod_add(b, c, q), p) == mod_add(mod_mul(a, b, p), mod_mul(a, c, p), q));
        REQUIRE(mod_sub(mod_add(a, b, q), b, q) == a);
        REQUIRE(mod_mul(a, b, p) == static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q));
      }
    }
  }

  TEST_CASE("sau_multiply equals the general product for every searched form") {
    SplitMix64 rng(99);
    for (auto [v, mu, pot] : {std::tuple{45U, 120U, 5}, std::tuple{30U, 90U, 5}}) {
      for (const auto& sp : primeforge::search_special_primes({v, 4096, mu, pot, 2})) {
        for (int k = 0; k < 20; ++k) {
          WideUint z = testsupport::random_bits(rng, v);
          mpz_class want = to_mpz(z) * testsupport::to_mpz_u64(sp.beta);
          REQUIRE(to_mpz(sau_multiply(z, sp.pot)) == want);
        }
      }
    }
  }

  TEST_CASE("WideUint arithmetic agrees with GMP") {
    SplitMix64 rng(3);
    for (int k = 0; k < 2000; ++k) {
      WideUint a = testsupport::random_bits(rng, 1 + rng.below(190));
      WideUint b = testsupport::random_bits(rng, 1 + rng.below(190));
      mpz_class A = to_mpz(a), B = to_mpz(b);
      REQUIRE(to_mpz(a + b) == A + B);
      REQUIRE(to_mpz(a * b) == A * B);
      if (!b.is_zero()) {
        REQUIRE(to_mpz(a / b) == A / B);
        REQUIRE(to_mpz(a % b) == A % B);
      }
      if (a >= b) REQUIRE(to_mpz(a - b) == A - B);
      REQUIRE(from_mpz(A) == a);
      REQUIRE(WideUint::from_hex(a.to_hex()) == a);
      REQUIRE(a.to_decimal() == A.get_str(10));
      std::size_t sh = rng.below(150);
      REQUIRE(to_mpz(a << sh) == (A << sh));
      REQUIRE(to_mpz(a >> sh) == (A >> sh));
    }
  }

  TEST_CASE("WideUint refuses to wrap") {
    WideUint top = WideUint::power_of_two(WideUint::kBits - 1);
    CHECK_THROWS_AS(top + top, std::overflow_error);
    CHECK_THROWS_AS(top * WideUint(2), std::overflow_error);
    CHECK_THROWS_AS(WideUint(1) - WideUint(2), std::underflow_error);
    CHECK_THROWS_AS(WideUint::from_hex("xyz"), std::invalid_argument);
    CHECK_THROWS_AS(WideUint(5) % WideUint(0), std::domain_error);
  }
}
