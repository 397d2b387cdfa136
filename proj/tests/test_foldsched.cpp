// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "doctest.h"
#include "parentt/foldsched.hpp"

using namespace parentt::foldsched;
using Row = std::vector<std::uint64_t>;

TEST_SUITE("foldsched") {
  TEST_CASE("bitrev examples") {
    CHECK(bitrev(1, 3) == 4);
    CHECK(bitrev(0, 5) == 0);
    CHECK(bitrev(5, 3) == 5);
    CHECK(bitrev(6, 3) == 3);
    CHECK_THROWS_AS(bitrev(8, 3), std::invalid_argument);
  }

  TEST_CASE("16-point forward folding rows") {
    auto f = ntt_schedule(4);
    CHECK(f.orders[0] == Row{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(f.orders[1] == Row{4, 5, 6, 7, 0, 1, 2, 3});
    CHECK(f.orders[2] == Row{2, 3, 4, 5, 6, 7, 0, 1});
    CHECK(f.orders[3] == Row{1, 2, 3, 4, 5, 6, 7, 0});
    CHECK(f.dsd_sizes == Row{4, 2, 1});
  }

  TEST_CASE("16-point inverse folding rows") {
    auto f = intt_schedule(4);
    CHECK(f.orders[0] == Row{4, 2, 6, 1, 5, 3, 7, 0});
    CHECK(f.orders[1] == Row{0, 4, 2, 6, 1, 5, 3, 7});
    CHECK(f.orders[2] == Row{3, 7, 0, 4, 2, 6, 1, 5});
    CHECK(f.orders[3] == Row{2, 6, 1, 5, 3, 7, 0, 4});
    CHECK(f.dsd_sizes == Row{1, 2, 4});
  }

  TEST_CASE("every stage is a permutation of the butterfly nodes") {
    for (unsigned m = 2; m <= 12; ++m) {
      CHECK_NOTHROW(ntt_schedule(m).validate());
      CHECK_NOTHROW(intt_schedule(m).validate());
    }
    auto bad = ntt_schedule(4);
    bad.orders[2][0] = bad.orders[2][1];
    CHECK_THROWS_AS(bad.validate(), std::logic_error);
    CHECK_THROWS_AS(ntt_schedule(1), std::invalid_argument);
    CHECK_THROWS_AS(intt_schedule(17), std::invalid_argument);
  }

  TEST_CASE("register totals per lane form a geometric series") {
    for (unsigned m = 2; m <= 12; ++m) {
      auto f = ntt_schedule(m);
      auto g = intt_schedule(m);
      std::uint64_t want = (std::uint64_t{1} << (m - 1)) - 1;
      CHECK(std::accumulate(f.dsd_sizes.begin(), f.dsd_sizes.end(), std::uint64_t{0}) == want);
      CHECK(std::accumulate(g.dsd_sizes.begin(), g.dsd_sizes.end(), std::uint64_t{0}) == want);
    }
  }

  TEST_CASE("closed forms match schedules extracted from the dataflow graph") {
    for (unsigned m = 2; m <= 12; ++m) {
      CAPTURE(m);
      CHECK(extract_schedule(Kind::ntt, m) == ntt_schedule(m));
      CHECK(extract_schedule(Kind::intt, m) == intt_schedule(m));
    }
  }

  TEST_CASE("node positions are butterfly pairs and invert") {
    for (unsigned m = 2; m <= 8; ++m) {
      const std::uint64_t half = std::uint64_t{1} << (m - 1);
      for (Kind kind : {Kind::ntt, Kind::intt}) {
        for (unsigned s = 0; s < m; ++s) {
          std::vector<bool> covered(2 * half, false);
          for (std::uint64_t node = 0; node < half; ++node) {
            auto [x0, x1] = node_positions(kind, m, s, node);
            REQUIRE(x0 < x1);
            REQUIRE(node_of_position(kind, m, s, x0) == node);
            REQUIRE_FALSE(covered[x0]);
            REQUIRE_FALSE(covered[x1]);
            covered[x0] = covered[x1] = true;
          }
        }
      }
    }
    // forward stage 0 pairs x with x + n/2
    CHECK(node_positions(Kind::ntt, 4, 0, 3) == std::pair<std::uint64_t, std::uint64_t>{3, 11});
    // inverse stage 0 pairs neighbours
    CHECK(node_positions(Kind::intt, 4, 0, 0) == std::pair<std::uint64_t, std::uint64_t>{0, 1});
  }

  TEST_CASE("cascade condition") {
    CHECK(verify_cascade(4));
    CHECK(verify_cascade(3));
    for (unsigned m = 2; m <= 12; ++m) CHECK(verify_cascade(m));
    // negative control: the forward schedule standing in for the inverse one
    CHECK_FALSE(verify_cascade(ntt_schedule(4), ntt_schedule(4)));
    CHECK_FALSE(verify_cascade(ntt_schedule(4), intt_schedule(5)));
    auto shifted = intt_schedule(6);
    std::rotate(shifted.orders[0].begin(), shifted.orders[0].begin() + 1, shifted.orders[0].end());
    CHECK_FALSE(verify_cascade(ntt_schedule(6), shifted));
  }
}
