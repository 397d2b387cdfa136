// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace parentt::foldsched {

enum class Kind { ntt, intt };

/// orders[s][l] is the node executed by PE_s in folding slot l (slot = cycle mod n/2,
/// counted from the first input cycle of a block). dsd_sizes[s] is the register-set
/// size of the DSD between PE_s and PE_{s+1}.
struct FoldingSchedule {
  Kind kind = Kind::ntt;
  unsigned m = 0;
  std::vector<std::vector<std::uint64_t>> orders;
  std::vector<std::uint64_t> dsd_sizes;

  std::uint64_t half_n() const { return std::uint64_t{1} << (m - 1); }
  /// Throws std::logic_error unless every row is a permutation and sizes match m.
  void validate() const;

  friend bool operator==(const FoldingSchedule&, const FoldingSchedule&) = default;
};

std::uint64_t bitrev(std::uint64_t x, unsigned bits);

/// orders[s][l] = (2^{m-s-1} + l) mod n/2, dsd_sizes[s] = 2^{m-s-2}.
FoldingSchedule ntt_schedule(unsigned m);
/// orders[s][l] = rev_{m-1}((2 - 2^s + l) mod n/2) with a non-negative mod, dsd_sizes[s] = 2^s.
FoldingSchedule intt_schedule(unsigned m);

/// Coefficient positions (x, x + h) combined by node `node` of stage s. NTT stages use
/// h = n / 2^{s+1}; iNTT stages work in place on the bit-reversed spectrum with h = 2^s,
/// and their node labels are the bit-reversal of the position-domain index.
std::pair<std::uint64_t, std::uint64_t> node_positions(Kind kind, unsigned m, unsigned s, std::uint64_t node);
/// Inverse of node_positions on the lower position; throws if x is not a lower input.
std::uint64_t node_of_position(Kind kind, unsigned m, unsigned s, std::uint64_t x);

/// Zero-buffer condition between the last NTT stage and the first iNTT stage: in every
/// slot the iNTT node consumes exactly the two positions the NTT node produces.
bool verify_cascade(const FoldingSchedule& ntt, const FoldingSchedule& intt);
bool verify_cascade(unsigned m);

/// Schedule derived without the closed forms: position tags are streamed through the
/// transform's dataflow graph and structural delay-switch-delay elements of the given
/// register sizes, and each PE's node is read off from the pair it receives. The iNTT
/// is fed directly by the NTT's last stage, exactly as in the cascade.
FoldingSchedule extract_schedule(Kind kind, unsigned m);

}  // namespace parentt::foldsched
