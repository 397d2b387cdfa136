// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/foldsched.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace parentt::foldsched {

namespace {

void check_m(unsigned m, const char* what) {
  if (m < 2 || m > 16) throw std::invalid_argument(std::string(what) + ": m must be in [2, 16]");
}

std::uint64_t insert_zero_bit(std::uint64_t v, unsigned pos) {
  std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return ((v >> pos) << (pos + 1)) | low;
}

std::uint64_t remove_bit(std::uint64_t v, unsigned pos) {
  std::uint64_t low = v & ((std::uint64_t{1} << pos) - 1);
  return ((v >> (pos + 1)) << pos) | low;
}

unsigned pair_bit(Kind kind, unsigned m, unsigned s) { return kind == Kind::ntt ? m - 1 - s : s; }

}  // namespace

std::uint64_t bitrev(std::uint64_t x, unsigned bits) {
  if (bits < 64 && (x >> bits) != 0) throw std::invalid_argument("bitrev: value does not fit in the bit width");
  std::uint64_t r = 0;
  for (unsigned i = 0; i < bits; ++i) {
    r = (r << 1) | (x & 1U);
    x >>= 1;
  }
  return r;
}

void FoldingSchedule::validate() const {
  check_m(m, "FoldingSchedule");
  const std::uint64_t half = half_n();
  if (orders.size() != m) throw std::logic_error("FoldingSchedule: expected one order row per stage");
  if (dsd_sizes.size() != m - 1) throw std::logic_error("FoldingSchedule: expected m-1 DSD sizes");
  for (unsigned s = 0; s < m; ++s) {
    if (orders[s].size() != half) throw std::logic_error("FoldingSchedule: row length != n/2");
    std::vector<bool> seen(half, false);
    for (auto node : orders[s]) {
      if (node >= half || seen[node]) {
        throw std::logic_error("FoldingSchedule: stage " + std::to_string(s) + " is not a permutation");
      }
      seen[node] = true;
    }
  }
}

FoldingSchedule ntt_schedule(unsigned m) {
  check_m(m, "ntt_schedule");
  FoldingSchedule f;
  f.kind = Kind::ntt;
  f.m = m;
  const std::uint64_t half = f.half_n();
  f.orders.assign(m, std::vector<std::uint64_t>(half));
  for (unsigned s = 0; s < m; ++s) {
    const std::uint64_t off = std::uint64_t{1} << (m - s - 1);
    for (std::uint64_t l = 0; l < half; ++l) f.orders[s][l] = (off + l) % half;
  }
  for (unsigned s = 0; s + 1 < m; ++s) f.dsd_sizes.push_back(std::uint64_t{1} << (m - s - 2));
  f.validate();
  return f;
}

FoldingSchedule intt_schedule(unsigned m) {
  check_m(m, "intt_schedule");
  FoldingSchedule f;
  f.kind = Kind::intt;
  f.m = m;
  const std::uint64_t half = f.half_n();
  const auto h = static_cast<long long>(half);
  f.orders.assign(m, std::vector<std::uint64_t>(half));
  for (unsigned s = 0; s < m; ++s) {
    const long long base = 2 - (1LL << s);
    for (std::uint64_t l = 0; l < half; ++l) {
      long long r = ((base + static_cast<long long>(l)) % h + h) % h;  // non-negative mod
      f.orders[s][l] = bitrev(static_cast<std::uint64_t>(r), m - 1);
    }
  }
  for (unsigned s = 0; s + 1 < m; ++s) f.dsd_sizes.push_back(std::uint64_t{1} << s);
  f.validate();
  return f;
}

std::pair<std::uint64_t, std::uint64_t> node_positions(Kind kind, unsigned m, unsigned s, std::uint64_t node) {
  check_m(m, "node_positions");
  if (s >= m) throw std::invalid_argument("node_positions: stage out of range");
  const std::uint64_t half = std::uint64_t{1} << (m - 1);
  if (node >= half) throw std::invalid_argument("node_positions: node out of range");
  unsigned b = pair_bit(kind, m, s);
  std::uint64_t idx = kind == Kind::ntt ? node : bitrev(node, m - 1);
  std::uint64_t x = insert_zero_bit(idx, b);
  return {x, x + (std::uint64_t{1} << b)};
}

std::uint64_t node_of_position(Kind kind, unsigned m, unsigned s, std::uint64_t x) {
  check_m(m, "node_of_position");
  if (s >= m || x >= (std::uint64_t{1} << m)) throw std::invalid_argument("node_of_position: out of range");
  unsigned b = pair_bit(kind, m, s);
  if ((x >> b) & 1U) throw std::invalid_argument("node_of_position: not the lower input of a butterfly");
  std::uint64_t idx = remove_bit(x, b);
  return kind == Kind::ntt ? idx : bitrev(idx, m - 1);
}

bool verify_cascade(const FoldingSchedule& ntt, const FoldingSchedule& intt) {
  if (ntt.m != intt.m || ntt.m < 2) return false;
  if (ntt.orders.size() != ntt.m || intt.orders.size() != intt.m) return false;
  const unsigned m = ntt.m;
  const std::uint64_t half = ntt.half_n();
  const auto& last = ntt.orders[m - 1];
  const auto& first = intt.orders[0];
  if (last.size() != half || first.size() != half) return false;
  for (std::uint64_t l = 0; l < half; ++l) {
    if (last[l] >= half || first[l] >= half) return false;
    auto produced = node_positions(Kind::ntt, m, m - 1, last[l]);
    auto consumed = node_positions(Kind::intt, m, 0, first[l]);
    if (produced != consumed) return false;
  }
  return true;
}

bool verify_cascade(unsigned m) { return verify_cascade(ntt_schedule(m), intt_schedule(m)); }

namespace {

using Tag = std::optional<std::uint64_t>;

struct Lanes {
  Tag l0;
  Tag l1;
};

// Structural delay-switch-delay: delay lane 1 by K, swap lanes in every odd K-cycle
// window counted from the first arrival, then delay lane 0 by K.
std::vector<Lanes> structural_dsd(const std::vector<Lanes>& in, std::uint64_t k, std::uint64_t first) {
  const std::size_t len = in.size() + 2 * k;
  auto at = [&](long long t) -> Lanes {
    if (t < 0 || static_cast<std::size_t>(t) >= in.size()) return {};
    return in[static_cast<std::size_t>(t)];
  };
  std::vector<Lanes> mid(len);
  for (std::size_t t = 0; t < len; ++t) {
    Lanes y{at(static_cast<long long>(t)).l0, at(static_cast<long long>(t) - static_cast<long long>(k)).l1};
    if (t >= first && ((t - first) / k) % 2 == 1) std::swap(y.l0, y.l1);
    mid[t] = y;
  }
  std::vector<Lanes> out(len);
  for (std::size_t t = 0; t < len; ++t) {
    out[t].l1 = mid[t].l1;
    if (t >= k) out[t].l0 = mid[t - k].l0;
  }
  return out;
}

// Feeds one stage of PEs: checks each received pair is a node of that stage and records
// its slot. Returns the first valid cycle.
std::uint64_t run_stage(Kind kind, unsigned m, unsigned s, const std::vector<Lanes>& in,
                        std::vector<std::uint64_t>& row) {
  const std::uint64_t half = std::uint64_t{1} << (m - 1);
  std::vector<bool> filled(half, false);
  std::optional<std::uint64_t> first;
  std::uint64_t count = 0;
  for (std::size_t t = 0; t < in.size(); ++t) {
    const auto& p = in[t];
    if (!p.l0 && !p.l1) continue;
    if (!p.l0 || !p.l1) {
      throw std::logic_error("extract_schedule: stage " + std::to_string(s) + " received a half-valid pair");
    }
    std::uint64_t node = node_of_position(kind, m, s, *p.l0);
    if (node_positions(kind, m, s, node).second != *p.l1) {
      throw std::logic_error("extract_schedule: stage " + std::to_string(s) + " received a non-butterfly pair");
    }
    std::uint64_t slot = t % half;
    if (filled[slot]) throw std::logic_error("extract_schedule: slot executed twice");
    filled[slot] = true;
    row[slot] = node;
    if (!first) first = t;
    ++count;
  }
  if (count != half) throw std::logic_error("extract_schedule: stage did not execute n/2 nodes");
  return *first;
}

}  // namespace

FoldingSchedule extract_schedule(Kind kind, unsigned m) {
  check_m(m, "extract_schedule");
  const std::uint64_t half = std::uint64_t{1} << (m - 1);
  std::vector<Lanes> stream(half);
  for (std::uint64_t c = 0; c < half; ++c) stream[c] = {c, c + half};

  FoldingSchedule ntt;
  ntt.kind = Kind::ntt;
  ntt.m = m;
  ntt.orders.assign(m, std::vector<std::uint64_t>(half));
  for (unsigned s = 0; s < m; ++s) {
    std::uint64_t first = run_stage(Kind::ntt, m, s, stream, ntt.orders[s]);
    if (s + 1 < m) {
      std::uint64_t k = std::uint64_t{1} << (m - s - 2);
      ntt.dsd_sizes.push_back(k);
      stream = structural_dsd(stream, k, first);
    }
  }
  ntt.validate();
  if (kind == Kind::ntt) return ntt;

  // In-place transforms keep position tags, so the last NTT stage's output stream is
  // the first iNTT stage's input stream with no element in between.
  FoldingSchedule intt;
  intt.kind = Kind::intt;
  intt.m = m;
  intt.orders.assign(m, std::vector<std::uint64_t>(half));
  for (unsigned s = 0; s < m; ++s) {
    std::uint64_t first = run_stage(Kind::intt, m, s, stream, intt.orders[s]);
    if (s + 1 < m) {
      std::uint64_t k = std::uint64_t{1} << s;
      intt.dsd_sizes.push_back(k);
      stream = structural_dsd(stream, k, first);
    }
  }
  intt.validate();
  return intt;
}

}  // namespace parentt::foldsched
