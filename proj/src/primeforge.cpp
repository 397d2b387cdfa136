// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/primeforge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace parentt::primeforge {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

// Lexicographic comparison used to pick one representative among equal-value forms.
bool canonical_less(const SignedPotForm& a, const SignedPotForm& b) {
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].exponent != b.terms[i].exponent) return a.terms[i].exponent < b.terms[i].exponent;
    if (a.terms[i].sign != b.terms[i].sign) return a.terms[i].sign < b.terms[i].sign;
  }
  return false;
}

void decompose_dfs(i128 target, int left, unsigned max_exp_excl, std::vector<PotTerm>& cur,
                   std::vector<SignedPotForm>& found) {
  if (left == 0) {
    if (target == 0) found.push_back({cur});
    return;
  }
  bool first = cur.empty();
  for (unsigned e = 1; e < max_exp_excl; ++e) {
    for (int sign : {1, -1}) {
      if (first && sign < 0) continue;
      i128 next = target - static_cast<i128>(sign) * (static_cast<i128>(1) << e);
      // Remaining left-1 terms below 2^e reach at most 2^e - 2 in magnitude.
      i128 reach = left > 1 ? (static_cast<i128>(1) << e) - 2 : 0;
      if (next > reach || next < -reach) continue;
      cur.push_back({sign, e});
      decompose_dfs(next, left - 1, e, cur, found);
      cur.pop_back();
    }
  }
}

}  // namespace

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (x % p == 0) return x == p;
  }
  std::uint64_t d = x - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_ntt_compatible(std::uint64_t q, std::uint64_t n) {
  if (n == 0 || q < 3) return false;
  return (q - 1) % (2 * n) == 0 && is_prime(q);
}

std::optional<SignedPotForm> signed_pot_decompose(std::uint64_t beta, int max_terms) {
  if (beta == 0) throw std::invalid_argument("signed_pot_decompose: beta must be >= 1");
  if (beta >= (std::uint64_t{1} << 62)) throw std::invalid_argument("signed_pot_decompose: beta too large");
  i128 target = static_cast<i128>(beta) + 1;
  if ((target & 1) != 0) return std::nullopt;
  for (int k = 1; k <= max_terms - 2; ++k) {
    std::vector<SignedPotForm> found;
    std::vector<PotTerm> cur;
    decompose_dfs(target, k, 63, cur, found);
    if (!found.empty()) return *std::min_element(found.begin(), found.end(), canonical_less);
  }
  return std::nullopt;
}

std::uint64_t find_psi(std::uint64_t q, std::uint64_t two_n) {
  if (!is_power_of_two(two_n) || two_n < 2) throw std::invalid_argument("find_psi: 2n must be a power of two");
  if (!is_ntt_compatible(q, two_n / 2)) {
    throw std::invalid_argument("find_psi: q=" + std::to_string(q) + " is not NTT-compatible for 2n=" +
                                std::to_string(two_n));
  }
  std::uint64_t n = two_n / 2;
  std::uint64_t cofactor = (q - 1) / two_n;
  std::uint64_t root = 0;
  for (std::uint64_t g = 2; g < q; ++g) {
    std::uint64_t c = powmod(g, cofactor, q);
    if (powmod(c, n, q) == q - 1) {
      root = c;
      break;
    }
  }
  if (root == 0) throw std::logic_error("find_psi: no primitive root found");
  // The primitive 2n-th roots are exactly root^k for odd k.
  std::uint64_t best = root;
  std::uint64_t sq = mulmod(root, root, q);
  std::uint64_t cur = root;
  for (std::uint64_t k = 1; k < n; ++k) {
    cur = mulmod(cur, sq, q);
    best = std::min(best, cur);
  }
  return best;
}

int max_leading_exponent(unsigned v, unsigned mu, unsigned n_beta) {
  if (n_beta == 0) throw std::invalid_argument("max_leading_exponent: n_beta must be >= 1");
  if (mu < v + 1) return -1;
  long long budget = static_cast<long long>(mu) - v - 1;
  return static_cast<int>(budget / n_beta) - 1;
}

void SpecialPrime::validate(std::uint64_t n) const {
  auto fail = [this](const std::string& why) {
    throw std::domain_error("SpecialPrime q=" + std::to_string(q) + ": " + why);
  };
  if (v < 2 || v > 62) fail("word-length out of range");
  if (!is_prime(q)) fail("not prime");
  if (q != (std::uint64_t{1} << v) - beta) fail("q != 2^v - beta");
  if (pot.value() != beta) fail("PoT form does not reconstruct beta");
  if (q <= (std::uint64_t{1} << (v - 1))) fail("q is not a full v-bit word");
  if ((q - 1) % (2 * n) != 0) fail("(q - 1) not divisible by 2n");
  if (barrett.q() != q) fail("Barrett constants belong to another modulus");
  if (n_beta == 0) fail("n_beta must be positive");
  unsigned mu = barrett.mu();
  unsigned ceil_bound = (mu - 1 + n_beta - 1) / n_beta;
  if (!(ceil_bound > pot.leading_exponent())) fail("leading exponent violates the mu / n_beta bound");
  if (pot.terms.size() > 1 && !(pot.terms[0].exponent > pot.terms[1].exponent)) fail("v1 <= v2");
}

std::vector<SpecialPrime> search_special_primes(const SearchParams& p) {
  if (p.v < 3 || p.v > 62) throw std::invalid_argument("search_special_primes: v must be in [3, 62]");
  if (!is_power_of_two(p.n)) throw std::invalid_argument("search_special_primes: n must be a power of two");
  if (p.max_pot_terms < 3 || p.max_pot_terms > 5) {
    throw std::invalid_argument("search_special_primes: max_pot_terms must be 3, 4 or 5");
  }
  if (p.n_beta < 1) throw std::invalid_argument("search_special_primes: n_beta must be >= 1");
  if (p.mu < p.v) throw std::invalid_argument("search_special_primes: mu shorter than v");

  int bound = std::min(max_leading_exponent(p.v, p.mu, p.n_beta), 61);
  int max_explicit = p.max_pot_terms - 2;
  std::uint64_t top = std::uint64_t{1} << p.v;
  std::uint64_t half = top >> 1;
  std::map<std::uint64_t, SignedPotForm> best;

  std::vector<PotTerm> cur;
  // Exponents strictly decrease, so each step picks the next one below the previous.
  auto visit = [&](auto&& self, unsigned below, int left, i128 sum) -> void {
    if (!cur.empty()) {
      i128 beta = sum - 1;
      if (beta >= 1 && beta < static_cast<i128>(half)) {
        std::uint64_t q = top - static_cast<std::uint64_t>(beta);
        if ((q - 1) % (2 * p.n) == 0 && is_prime(q)) {
          SignedPotForm form{cur};
          auto it = best.find(q);
          if (it == best.end()) {
            best.emplace(q, form);
          } else if (canonical_less(form, it->second)) {
            it->second = form;
          }
        }
      }
    }
    if (left == 0) return;
    for (unsigned e = 1; e < below; ++e) {
      for (int sign : {1, -1}) {
        if (cur.empty() && sign < 0) continue;
        cur.push_back({sign, e});
        self(self, e, left - 1, sum + static_cast<i128>(sign) * (static_cast<i128>(1) << e));
        cur.pop_back();
      }
    }
  };
  if (bound >= 1) visit(visit, static_cast<unsigned>(bound) + 1, max_explicit, 0);

  std::vector<SpecialPrime> out;
  out.reserve(best.size());
  for (auto& [q, form] : best) {
    SpecialPrime sp;
    sp.q = q;
    sp.v = p.v;
    sp.beta = top - q;
    sp.pot = form;
    sp.barrett = modint::BarrettParams(q, p.mu);
    sp.n_beta = p.n_beta;
    out.push_back(std::move(sp));
  }
  return out;
}

const std::vector<Table3Row>& table3_rows() {
  static const std::vector<Table3Row> rows = {
      {4, 45, 105, 4, 4096, 12}, {4, 45, 120, 4, 4096, 33},  {4, 45, 105, 5, 4096, 126},
      {4, 45, 120, 5, 4096, 480}, {6, 30, 75, 4, 4096, 8},   {6, 30, 90, 4, 4096, 26},
      {6, 30, 75, 5, 4096, 23},   {6, 30, 90, 5, 4096, 169},
  };
  return rows;
}

}  // namespace parentt::primeforge
