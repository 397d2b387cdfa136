// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "parentt/foldsched.hpp"
#include "parentt/nttref.hpp"

namespace parentt::pipesim {

/// Pipeline registers per PE in stream order: m NTT PEs, the pointwise PE, m iNTT PEs.
/// The second NTT chain of the dual-chain mode mirrors the first chain's registers.
struct PipeConfig {
  std::vector<unsigned> pe_registers;

  unsigned t_pipe() const;
  /// Spreads `total` registers as evenly as possible over `pes` PEs, front-loaded.
  static PipeConfig uniform(unsigned total, std::size_t pes);
};

enum class Mode {
  cascade,     // one NTT chain, b supplied as a pre-transformed stream
  dual_chain,  // two NTT chains feeding the pointwise PE
  baseline,    // cascade plus an n/4 reorder buffer in front of the iNTT
};

enum class PeKind { dit, dif, pointwise };

struct Element {
  enum class Type { pe, dsd };
  Type type = Type::pe;
  std::string id;
  PeKind pe_kind = PeKind::dit;
  unsigned stage = 0;
  unsigned pipe_depth = 0;      // PEs only
  std::uint64_t dsd_size = 0;   // DSDs only: registers per register set
  long long start = 0;          // cycle at which block 0 reaches the element's input
  long long phase = 0;          // slot of cycle c is (c - phase) mod n/2
};

class PipelineModel {
 public:
  PipelineModel(const nttref::NttParams& params, PipeConfig pipe, Mode mode = Mode::cascade);

  const nttref::NttParams& params() const { return params_; }
  const PipeConfig& pipe() const { return pipe_; }
  Mode mode() const { return mode_; }
  const foldsched::FoldingSchedule& ntt() const { return ntt_; }
  const foldsched::FoldingSchedule& intt() const { return intt_; }

  /// Main path in stream order: NTT chain, pointwise PE, optional junction DSD, iNTT chain.
  const std::vector<Element>& elements() const { return elements_; }
  /// Second NTT chain (dual-chain mode only).
  const std::vector<Element>& b_chain() const { return b_chain_; }

  std::size_t pe_count() const;
  std::size_t dsd_count() const;
  /// True when nothing sits between the last NTT PE and the pointwise PE, nor between
  /// the pointwise PE and the first iNTT PE.
  bool junction_free() const;

 private:
  nttref::NttParams params_;
  PipeConfig pipe_;
  Mode mode_;
  foldsched::FoldingSchedule ntt_;
  foldsched::FoldingSchedule intt_;
  std::vector<Element> elements_;
  std::vector<Element> b_chain_;
};

PipelineModel build_cascade(const nttref::NttParams& params, const PipeConfig& pipe, Mode mode = Mode::cascade);

/// Hardware counts for the three ways of counting a per-modulus datapath.
struct ElementCounts {
  std::size_t pes = 0;
  std::size_t dsds = 0;
};
ElementCounts transform_chain_counts(unsigned m);  // one NTT or iNTT chain
ElementCounts cascade_counts(unsigned m);          // NTT, pointwise, iNTT
ElementCounts dual_chain_counts(unsigned m);       // two NTTs, pointwise, iNTT

/// perm[2k + lane] = coefficient index carried on `lane` in the k-th cycle of a block.
using StreamPermutation = std::vector<std::uint64_t>;
/// Input order demanded by the first NTT stage, read off its folding row from slot 0.
StreamPermutation input_permutation(const foldsched::FoldingSchedule& ntt);
/// Output order of the last iNTT stage starting at folding slot `first_slot`.
StreamPermutation output_permutation(const foldsched::FoldingSchedule& intt, std::uint64_t first_slot);
StreamPermutation invert(const StreamPermutation& perm);

struct SimInput {
  std::vector<nttref::ResiduePoly> a;  // one polynomial per block, time domain
  std::vector<nttref::ResiduePoly> b;  // same length as a
  std::uint64_t trailing_idle_cycles = 0;
  bool trace = false;
  // Replaces the register capacity of the named DSDs. Only useful to show that the
  // capacity assertion can fire.
  std::map<std::string, std::uint64_t> dsd_capacity_override;
};

/// What an element sees on its two input lanes in one cycle. The sink is traced as "out".
struct TraceRow {
  long long cycle;
  std::string element;
  bool valid0;
  std::uint64_t lane0;
  bool valid1;
  std::uint64_t lane1;
};

struct CycleReport {
  std::uint64_t n = 0;
  unsigned t_pipe = 0;
  std::string mode;
  std::size_t blocks = 0;
  long long latency = 0;       // first input cycle to first output cycle
  long long bpp = 0;           // cycles per block at the output
  long long total_cycles = 0;  // first input cycle to the cycle after the last output
  long long window_begin = 0;  // utilization window [begin, end)
  long long window_end = 0;
  std::map<std::string, double> utilization;  // PEs only
  std::map<std::string, std::uint64_t> dsd_peak_occupancy;
  std::map<std::string, std::uint64_t> dsd_capacity;
  std::size_t pe_count = 0;
  std::size_t dsd_count = 0;
  std::uint64_t violations = 0;
};

struct SimResult {
  std::vector<nttref::ResiduePoly> outputs;  // natural order, one per block
  CycleReport report;
  std::vector<TraceRow> trace;
};

/// Steps every element once per cycle. Throws ScheduleViolation on the first sample that
/// arrives out of schedule, a starved demand, or a DSD over its register capacity.
SimResult simulate(const PipelineModel& model, const SimInput& input);

/// Same inputs through the baseline variant of `model`'s parameters.
SimResult simulate_shuffled_baseline(const PipelineModel& model, const SimInput& input);

/// Per-PE busy fraction over [begin, end), recomputed from a trace: a PE is busy in a
/// cycle when both of its input lanes carry valid samples.
std::map<std::string, double> utilization_report(const PipelineModel& model, const std::vector<TraceRow>& trace,
                                                 long long begin, long long end);

std::string mode_name(Mode mode);

}  // namespace parentt::pipesim
