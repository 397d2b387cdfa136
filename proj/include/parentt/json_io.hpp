// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "json.hpp"
#include "parentt/foldsched.hpp"
#include "parentt/pipesim.hpp"
#include "parentt/primeforge.hpp"
#include "parentt/rnspoly.hpp"

namespace parentt::json_io {

using nlohmann::json;

/// [[sign, exponent], ...] for q itself: 2^v, then the negated terms of beta, then +2^0.
json prime_pot_terms(const primeforge::SpecialPrime& p);
json prime_to_json(const primeforge::SpecialPrime& p);
json primes_to_json(const primeforge::SearchParams& params, const std::vector<primeforge::SpecialPrime>& primes);

/// All eight published rows searched under n_beta = 2, 3 and 5.
json table3_json();

json schedule_to_json(const foldsched::FoldingSchedule& f);
/// Both schedules for one m plus the cascade check.
json schedules_json(unsigned m);

json report_to_json(const pipesim::CycleReport& r);
json context_to_json(const rnspoly::RnsContext& ctx);

}  // namespace parentt::json_io
