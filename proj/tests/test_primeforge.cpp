// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "parentt/primeforge.hpp"
#include "support.hpp"

using namespace parentt;
using namespace parentt::primeforge;

namespace {

std::set<std::uint64_t> q_set(const std::vector<SpecialPrime>& v) {
  std::set<std::uint64_t> s;
  for (const auto& p : v) s.insert(p.q);
  return s;
}

// Every value sum(s_j 2^{e_j}) with up to k terms, bound >= e_1 > e_2 > ... >= 1 and a
// positive leading sign. Written without the library's enumerator.
void all_forms(unsigned bound, unsigned k, std::int64_t acc, unsigned below, bool first, std::set<std::int64_t>& out) {
  if (!first) out.insert(acc);
  if (k == 0) return;
  for (unsigned e = 1; e < below && e <= bound; ++e) {
    all_forms(bound, k - 1, acc + (std::int64_t{1} << e), e, false, out);
    if (!first) all_forms(bound, k - 1, acc - (std::int64_t{1} << e), e, false, out);
  }
}

// Independent search: scan every q in (2^{v-1}, 2^v) with 2n | q - 1, test primality with
// GMP and look beta + 1 up in the precomputed form set.
std::set<std::uint64_t> brute_force_search(unsigned v, std::uint64_t n, unsigned mu, int pot, unsigned n_beta) {
  std::set<std::uint64_t> out;
  int bound = static_cast<int>((mu - v - 1) / n_beta) - 1;
  if (bound < 1) return out;
  std::set<std::int64_t> forms;
  all_forms(static_cast<unsigned>(bound), static_cast<unsigned>(pot - 2), 0, 64, true, forms);
  const std::uint64_t lo = std::uint64_t{1} << (v - 1);
  const std::uint64_t hi = std::uint64_t{1} << v;
  for (std::uint64_t q = lo + 1; q < hi; q += 1) {
    if ((q - 1) % (2 * n) != 0) continue;
    if (mpz_probab_prime_p(testsupport::to_mpz_u64(q).get_mpz_t(), 40) == 0) continue;
    std::int64_t beta = static_cast<std::int64_t>(hi - q);
    if (forms.count(beta + 1) != 0) out.insert(q);
  }
  return out;
}

}  // namespace

TEST_SUITE("primeforge") {
  TEST_CASE("is_ntt_compatible examples") {
    CHECK(is_ntt_compatible(17, 8));
    CHECK_FALSE(is_ntt_compatible(17, 16));
    CHECK(is_ntt_compatible(12289, 1024));
    CHECK_FALSE(is_ntt_compatible(12290, 1));
  }

  TEST_CASE("is_prime agrees with GMP") {
    for (std::uint64_t x : {0ULL, 1ULL, 2ULL, 3ULL, 4ULL, 3215031751ULL, 2305843009213693951ULL,
                            18446744073709551557ULL, 3825123056546413051ULL}) {
      bool want = mpz_probab_prime_p(testsupport::to_mpz_u64(x).get_mpz_t(), 50) != 0;
      CHECK(is_prime(x) == want);
    }
    SplitMix64 rng(17);
    for (int k = 0; k < 20000; ++k) {
      std::uint64_t x = rng() | 1U;
      if (k % 2 == 0) x >>= rng.below(60);
      bool want = mpz_probab_prime_p(testsupport::to_mpz_u64(x).get_mpz_t(), 50) != 0;
      REQUIRE(is_prime(x) == want);
    }
  }

  TEST_CASE("signed_pot_decompose examples") {
    auto f15 = signed_pot_decompose(15, 4);
    REQUIRE(f15);
    CHECK(f15->terms == std::vector<PotTerm>{{1, 4}});
    CHECK(f15->to_string() == "2^4 - 1");

    auto f4095 = signed_pot_decompose(4095, 4);
    REQUIRE(f4095);
    CHECK(f4095->terms == std::vector<PotTerm>{{1, 12}});

    // 3 = 2^1 + 2^0 would need 2^0, which collides with the trailing -1.
    CHECK_FALSE(signed_pot_decompose(2, 4).has_value());
    CHECK_THROWS_AS(signed_pot_decompose(0, 4), std::invalid_argument);
  }

  TEST_CASE("canonical form prefers fewer terms, then a smaller leading exponent") {
    // beta + 1 = 2^7 - 2^1 = 2^6 + 2^5 + ... would need many terms
    auto f = signed_pot_decompose(125, 5);
    REQUIRE(f);
    CHECK(f->terms == std::vector<PotTerm>{{1, 7}, {-1, 1}});
    // 2^3 + 2^1 has leading exponent 3; 2^4 - 2^2 - 2^1 needs three terms
    auto g = signed_pot_decompose(9, 5);
    REQUIRE(g);
    CHECK(g->terms == std::vector<PotTerm>{{1, 3}, {1, 1}});
    // 12 = 2^3 + 2^2 = 2^4 - 2^2: same length, smaller leading exponent wins
    auto h = signed_pot_decompose(11, 4);
    REQUIRE(h);
    CHECK(h->terms == std::vector<PotTerm>{{1, 3}, {1, 2}});
  }

  TEST_CASE("find_psi examples") {
    CHECK(find_psi(17, 16) == 3);
    CHECK(find_psi(17, 8) == 2);
    CHECK_THROWS_AS(find_psi(17, 32), std::invalid_argument);
  }

  TEST_CASE("find_psi returns the smallest element of exact order 2n") {
    for (auto [q, two_n] : {std::pair{97ULL, 32ULL}, std::pair{12289ULL, 2048ULL}, std::pair{7681ULL, 512ULL}}) {
      std::uint64_t want = 0;
      for (std::uint64_t c = 2; c < q && want == 0; ++c) {
        mpz_class cc = testsupport::to_mpz_u64(c), qq = testsupport::to_mpz_u64(q), r;
        mpz_powm_ui(r.get_mpz_t(), cc.get_mpz_t(), two_n / 2, qq.get_mpz_t());
        if (r == qq - 1) want = c;  // c^n = -1 forces order exactly 2n
      }
      CHECK(find_psi(q, two_n) == want);
    }
  }

  TEST_CASE("max_leading_exponent") {
    // v + n_beta * (v1 + 1) + 1 <= mu
    CHECK(max_leading_exponent(45, 105, 2) == 28);
    CHECK(max_leading_exponent(45, 120, 2) == 36);
    CHECK(max_leading_exponent(30, 75, 2) == 21);
    CHECK(max_leading_exponent(30, 90, 2) == 28);
    CHECK(max_leading_exponent(5, 6, 2) == -1);
  }

  TEST_CASE("toy search contains 17") {
    auto primes = search_special_primes({5, 8, 25, 4, 3});
    REQUIRE(!primes.empty());
    CHECK(primes.front().q == 17);
    CHECK(primes.front().beta == 15);
    CHECK(primes.front().pot.terms == std::vector<PotTerm>{{1, 4}});
  }

  TEST_CASE("search agrees with a brute-force scan") {
    struct Cfg {
      unsigned v;
      std::uint64_t n;
      unsigned mu;
      int pot;
      unsigned nb;
    };
    for (Cfg c : {Cfg{5, 8, 25, 4, 3}, Cfg{12, 8, 30, 4, 2}, Cfg{16, 16, 40, 5, 2}, Cfg{18, 32, 44, 4, 2},
                  Cfg{20, 64, 60, 5, 3}, Cfg{22, 512, 58, 5, 2}}) {
      CAPTURE(c.v);
      CAPTURE(c.mu);
      CHECK(q_set(search_special_primes({c.v, c.n, c.mu, c.pot, c.nb})) == brute_force_search(c.v, c.n, c.mu, c.pot, c.nb));
    }
  }

  TEST_CASE("every returned prime satisfies its invariants, checked without library code") {
    for (const auto& row : table3_rows()) {
      const unsigned nb = 2;
      auto primes = search_special_primes({row.v, row.n, row.mu, row.pot_terms, nb});
      std::uint64_t prev = 0;
      for (const auto& p : primes) {
        mpz_class q = testsupport::to_mpz_u64(p.q);
        REQUIRE(mpz_probab_prime_p(q.get_mpz_t(), 40) != 0);
        // beta from the raw terms
        mpz_class beta = -1;
        for (const auto& t : p.pot.terms) beta += mpz_class(t.sign) * testsupport::mpz_pow2(t.exponent);
        REQUIRE(testsupport::mpz_pow2(row.v) - beta == q);
        REQUIRE(q > testsupport::mpz_pow2(row.v - 1));
        REQUIRE(mpz_class(q - 1) % (2 * row.n) == 0);
        REQUIRE(static_cast<int>(p.pot.terms.size()) + 2 <= row.pot_terms);
        REQUIRE(p.pot.terms.front().sign == 1);
        REQUIRE(row.v + nb * (p.pot.terms.front().exponent + 1) + 1 <= row.mu);
        REQUIRE(p.q > prev);
        prev = p.q;
        p.validate(row.n);
      }
    }
  }

  TEST_CASE("published prime counts under the two-stage width rule") {
    for (const auto& row : table3_rows()) {
      CAPTURE(row.t);
      CAPTURE(row.mu);
      CAPTURE(row.pot_terms);
      CHECK(search_special_primes({row.v, row.n, row.mu, row.pot_terms, 2}).size() == row.published);
    }
  }

  TEST_CASE("enlarging mu or the term budget never shrinks the result") {
    for (unsigned v : {30U, 45U}) {
      auto base = q_set(search_special_primes({v, 4096, 2 * v + 15, 4, 2}));
      auto more_mu = q_set(search_special_primes({v, 4096, 2 * v + 30, 4, 2}));
      auto more_pot = q_set(search_special_primes({v, 4096, 2 * v + 15, 5, 2}));
      auto both = q_set(search_special_primes({v, 4096, 2 * v + 30, 5, 2}));
      CHECK(std::includes(more_mu.begin(), more_mu.end(), base.begin(), base.end()));
      CHECK(std::includes(more_pot.begin(), more_pot.end(), base.begin(), base.end()));
      CHECK(std::includes(both.begin(), both.end(), more_mu.begin(), more_mu.end()));
      CHECK(std::includes(both.begin(), both.end(), more_pot.begin(), more_pot.end()));
    }
  }

  TEST_CASE("search rejects bad parameters") {
    CHECK_THROWS_AS(search_special_primes({2, 8, 25, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(search_special_primes({5, 12, 25, 4, 2}), std::invalid_argument);
    CHECK_THROWS_AS(search_special_primes({5, 8, 25, 7, 2}), std::invalid_argument);
    CHECK_THROWS_AS(search_special_primes({5, 8, 25, 4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(search_special_primes({30, 8, 25, 4, 2}), std::invalid_argument);
  }

  TEST_CASE("SignedPotForm validation") {
    CHECK_THROWS_AS(SignedPotForm{}.validate(), std::domain_error);
    CHECK_THROWS_AS((SignedPotForm{{{-1, 4}}}.validate()), std::domain_error);
    CHECK_THROWS_AS((SignedPotForm{{{1, 4}, {1, 4}}}.validate()), std::domain_error);
    CHECK_THROWS_AS((SignedPotForm{{{1, 0}}}.validate()), std::domain_error);
    CHECK((SignedPotForm{{{1, 16}, {-1, 13}}}.to_string()) == "2^16 - 2^13 - 1");
    CHECK((SignedPotForm{{{1, 16}, {-1, 13}}}.value()) == 65536 - 8192 - 1);
  }
}
