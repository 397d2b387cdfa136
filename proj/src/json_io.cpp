// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/json_io.hpp"

#include <string>

namespace parentt::json_io {

json prime_pot_terms(const primeforge::SpecialPrime& p) {
  json out = json::array();
  out.push_back({1, p.v});
  for (const auto& term : p.pot.terms) out.push_back({-term.sign, term.exponent});
  out.push_back({1, 0});
  return out;
}

json prime_to_json(const primeforge::SpecialPrime& p) {
  return {
      {"q", p.q},
      {"beta", p.beta},
      {"beta_form", p.pot.to_string()},
      {"pot", prime_pot_terms(p)},
      {"epsilon_bits", p.barrett.epsilon_bits()},
  };
}

json primes_to_json(const primeforge::SearchParams& params, const std::vector<primeforge::SpecialPrime>& primes) {
  json list = json::array();
  for (const auto& p : primes) list.push_back(prime_to_json(p));
  return {
      {"v", params.v},
      {"n", params.n},
      {"mu", params.mu},
      {"n_beta", params.n_beta},
      {"max_pot_terms", params.max_pot_terms},
      {"v1_bound", primeforge::max_leading_exponent(params.v, params.mu, params.n_beta)},
      {"count", primes.size()},
      {"primes", list},
  };
}

json table3_json() {
  static constexpr unsigned kCandidates[] = {2, 3, 5};
  json rows = json::array();
  bool t4_stated = true, t6_nb2 = true, t6_nb5 = true, all_nb2 = true;
  for (const auto& row : primeforge::table3_rows()) {
    json counts = json::object();
    for (unsigned nb : kCandidates) {
      primeforge::SearchParams sp{row.v, row.n, row.mu, row.pot_terms, nb};
      counts[std::to_string(nb)] = primeforge::search_special_primes(sp).size();
    }
    const std::size_t c2 = counts["2"], c3 = counts["3"], c5 = counts["5"];
    if (row.t == 4) {
      t4_stated = t4_stated && c3 == row.published;
    } else {
      t6_nb2 = t6_nb2 && c2 == row.published;
      t6_nb5 = t6_nb5 && c5 == row.published;
    }
    all_nb2 = all_nb2 && c2 == row.published;
    rows.push_back({
        {"t", row.t},
        {"v", row.v},
        {"mu", row.mu},
        {"pot", row.pot_terms},
        {"n", row.n},
        {"published", row.published},
        {"counts_by_n_beta", counts},
        {"match_n_beta_2", c2 == row.published},
    });
  }
  return {
      {"rows", rows},
      {"admission_rule", "v + n_beta * (v1 + 1) + 1 <= mu, v1 = leading exponent of the signed form of beta + 1"},
      {"interpretation",
       "n_beta = 2 for every row: two shift-add stages on a v-bit word plus one accumulation bit must fit "
       "in mu bits. This reproduces all eight published counts."},
      {"t4_match_n_beta_3", t4_stated},
      {"t6_match_n_beta_2", t6_nb2},
      {"t6_match_n_beta_5", t6_nb5},
      {"all_match_n_beta_2", all_nb2},
  };
}

json schedule_to_json(const foldsched::FoldingSchedule& f) {
  return {
      {"kind", f.kind == foldsched::Kind::ntt ? "ntt" : "intt"},
      {"m", f.m},
      {"orders", f.orders},
      {"dsd_sizes", f.dsd_sizes},
  };
}

json schedules_json(unsigned m) {
  auto ntt = foldsched::ntt_schedule(m);
  auto intt = foldsched::intt_schedule(m);
  return {
      {"m", m},
      {"n", std::uint64_t{1} << m},
      {"ntt", schedule_to_json(ntt)},
      {"intt", schedule_to_json(intt)},
      {"cascade_verified", foldsched::verify_cascade(ntt, intt)},
  };
}

json report_to_json(const pipesim::CycleReport& r) {
  json dsd = json::object();
  for (const auto& [id, peak] : r.dsd_peak_occupancy) {
    auto cap = r.dsd_capacity.find(id);
    dsd[id] = {{"peak", peak}, {"capacity", cap == r.dsd_capacity.end() ? 0 : cap->second}};
  }
  return {
      {"n", r.n},
      {"t_pipe", r.t_pipe},
      {"mode", r.mode},
      {"blocks", r.blocks},
      {"latency", r.latency},
      {"bpp", r.bpp},
      {"total_cycles", r.total_cycles},
      {"window", {r.window_begin, r.window_end}},
      // An empty window (too few blocks to reach steady state) reports no utilization.
      {"utilization", r.window_end > r.window_begin ? json(r.utilization) : json::object()},
      {"dsd", dsd},
      {"pe_count", r.pe_count},
      {"dsd_count", r.dsd_count},
      {"violations", r.violations},
  };
}

json context_to_json(const rnspoly::RnsContext& ctx) {
  json channels = json::array();
  for (const auto& ch : ctx.channels()) {
    json c = prime_to_json(ch.prime);
    c["psi"] = ch.ntt.psi();
    c["interior_barrett"] = ch.interior_barrett;
    channels.push_back(c);
  }
  return {
      {"v", ctx.v()},
      {"t", ctx.t()},
      {"t_prime", ctx.t_prime()},
      {"d", ctx.d()},
      {"n", ctx.n()},
      {"mu", ctx.mu()},
      {"n_beta", ctx.n_beta()},
      {"q", ctx.q().to_hex()},
      {"q_bits", ctx.q_bits()},
      {"channels", channels},
  };
}

}  // namespace parentt::json_io
