// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/pipesim.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <tuple>
#include <stdexcept>

#include "parentt/errors.hpp"

namespace parentt::pipesim {

using foldsched::Kind;
using nttref::ResiduePoly;

unsigned PipeConfig::t_pipe() const { return std::accumulate(pe_registers.begin(), pe_registers.end(), 0U); }

PipeConfig PipeConfig::uniform(unsigned total, std::size_t pes) {
  if (pes == 0) throw std::invalid_argument("PipeConfig::uniform: no PEs");
  PipeConfig c;
  c.pe_registers.assign(pes, static_cast<unsigned>(total / pes));
  for (std::size_t i = 0; i < total % pes; ++i) ++c.pe_registers[i];
  return c;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::cascade: return "cascade";
    case Mode::dual_chain: return "dual_chain";
    case Mode::baseline: return "baseline";
  }
  return "unknown";
}

ElementCounts transform_chain_counts(unsigned m) { return {m, m - 1}; }
ElementCounts cascade_counts(unsigned m) { return {2 * m + 1, 2 * m - 2}; }
ElementCounts dual_chain_counts(unsigned m) { return {3 * m + 1, 3 * m - 3}; }

PipelineModel::PipelineModel(const nttref::NttParams& params, PipeConfig pipe, Mode mode)
    : params_(params), pipe_(std::move(pipe)), mode_(mode) {
  const unsigned m = params_.m();
  if (m < 2) throw std::invalid_argument("PipelineModel: n must be >= 4");
  const std::size_t pes = 2 * static_cast<std::size_t>(m) + 1;
  if (pipe_.pe_registers.empty()) pipe_.pe_registers.assign(pes, 0);
  if (pipe_.pe_registers.size() != pes) {
    throw std::invalid_argument("PipelineModel: expected " + std::to_string(pes) + " PE register counts");
  }
  ntt_ = foldsched::ntt_schedule(m);
  intt_ = foldsched::intt_schedule(m);
  const long long half = static_cast<long long>(params_.n() / 2);

  // Block 0 enters PE_0 at cycle 0. A DSD delays by its register-set size, a PE by its
  // pipeline registers; pipeline registers shift the folding phase of everything after.
  auto build_ntt_chain = [&](const std::string& prefix, std::vector<Element>& out, long long& t, long long& phase) {
    for (unsigned s = 0; s < m; ++s) {
      Element pe;
      pe.type = Element::Type::pe;
      pe.id = prefix + ".pe" + std::to_string(s);
      pe.pe_kind = PeKind::dit;
      pe.stage = s;
      pe.pipe_depth = pipe_.pe_registers[s];
      pe.start = t;
      pe.phase = phase;
      out.push_back(pe);
      t += pe.pipe_depth;
      phase += pe.pipe_depth;
      if (s + 1 < m) {
        Element d;
        d.type = Element::Type::dsd;
        d.id = prefix + ".dsd" + std::to_string(s);
        d.stage = s;
        d.dsd_size = ntt_.dsd_sizes[s];
        d.start = t;
        out.push_back(d);
        t += static_cast<long long>(d.dsd_size);
      }
    }
  };

  long long t = 0;
  long long phase = 0;
  build_ntt_chain("ntt", elements_, t, phase);
  if (mode_ == Mode::dual_chain) {
    long long tb = 0;
    long long pb = 0;
    build_ntt_chain("ntt_b", b_chain_, tb, pb);
  }

  Element pw;
  pw.type = Element::Type::pe;
  pw.id = "pw";
  pw.pe_kind = PeKind::pointwise;
  pw.stage = m - 1;
  pw.pipe_depth = pipe_.pe_registers[m];
  pw.start = t;
  pw.phase = phase;
  elements_.push_back(pw);
  t += pw.pipe_depth;
  phase += pw.pipe_depth;

  if (mode_ == Mode::baseline) {
    // Reorder buffer of the conventional design: n/4 registers per set, and the iNTT
    // runs n/4 cycles behind.
    Element j;
    j.type = Element::Type::dsd;
    j.id = "junction";
    j.dsd_size = static_cast<std::uint64_t>(half / 2);
    j.start = t;
    elements_.push_back(j);
    t += half / 2;
    phase += half / 2;
  }

  for (unsigned s = 0; s < m; ++s) {
    Element pe;
    pe.type = Element::Type::pe;
    pe.id = "intt.pe" + std::to_string(s);
    pe.pe_kind = PeKind::dif;
    pe.stage = s;
    pe.pipe_depth = pipe_.pe_registers[m + 1 + s];
    pe.start = t;
    pe.phase = phase;
    elements_.push_back(pe);
    t += pe.pipe_depth;
    phase += pe.pipe_depth;
    if (s + 1 < m) {
      Element d;
      d.type = Element::Type::dsd;
      d.id = "intt.dsd" + std::to_string(s);
      d.stage = s;
      d.dsd_size = intt_.dsd_sizes[s];
      d.start = t;
      elements_.push_back(d);
      t += static_cast<long long>(d.dsd_size);
    }
  }
}

std::size_t PipelineModel::pe_count() const {
  auto is_pe = [](const Element& e) { return e.type == Element::Type::pe; };
  return static_cast<std::size_t>(std::count_if(elements_.begin(), elements_.end(), is_pe) +
                                  std::count_if(b_chain_.begin(), b_chain_.end(), is_pe));
}

std::size_t PipelineModel::dsd_count() const {
  auto is_dsd = [](const Element& e) { return e.type == Element::Type::dsd; };
  return static_cast<std::size_t>(std::count_if(elements_.begin(), elements_.end(), is_dsd) +
                                  std::count_if(b_chain_.begin(), b_chain_.end(), is_dsd));
}

bool PipelineModel::junction_free() const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].id != "pw") continue;
    if (i == 0 || i + 1 >= elements_.size()) return false;
    return elements_[i - 1].id == "ntt.pe" + std::to_string(params_.m() - 1) && elements_[i + 1].id == "intt.pe0";
  }
  return false;
}

PipelineModel build_cascade(const nttref::NttParams& params, const PipeConfig& pipe, Mode mode) {
  return PipelineModel(params, pipe, mode);
}

StreamPermutation input_permutation(const foldsched::FoldingSchedule& ntt) {
  const std::uint64_t half = ntt.half_n();
  StreamPermutation perm(2 * half);
  for (std::uint64_t l = 0; l < half; ++l) {
    auto [x0, x1] = foldsched::node_positions(Kind::ntt, ntt.m, 0, ntt.orders[0][l]);
    perm[2 * l] = x0;
    perm[2 * l + 1] = x1;
  }
  return perm;
}

StreamPermutation output_permutation(const foldsched::FoldingSchedule& intt, std::uint64_t first_slot) {
  const std::uint64_t half = intt.half_n();
  const unsigned last = intt.m - 1;
  StreamPermutation perm(2 * half);
  for (std::uint64_t k = 0; k < half; ++k) {
    auto [x0, x1] = foldsched::node_positions(Kind::intt, intt.m, last, intt.orders[last][(first_slot + k) % half]);
    perm[2 * k] = x0;
    perm[2 * k + 1] = x1;
  }
  return perm;
}

StreamPermutation invert(const StreamPermutation& perm) {
  StreamPermutation inv(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || inv[perm[i]] != perm.size()) {
      throw std::invalid_argument("invert: not a permutation");
    }
    inv[perm[i]] = i;
  }
  return inv;
}

namespace {

struct Sample {
  bool valid = false;
  std::uint32_t block = 0;
  std::uint32_t pos = 0;
  std::uint64_t value = 0;
};

struct Lanes {
  Sample l0;
  Sample l1;
};

long long floor_mod(long long a, long long b) { return ((a % b) + b) % b; }

// The schedule an element follows: which positions of which block it handles in a cycle.
struct Expectation {
  Kind kind;
  unsigned m;
  unsigned stage;
  const std::vector<std::uint64_t>* row;
  long long start;
  long long phase;
  long long half;
  std::size_t blocks;

  // nullopt when the element is idle in cycle c.
  std::optional<std::tuple<std::uint32_t, std::uint64_t, std::uint64_t>> at(long long c) const {
    if (c < start || c >= start + half * static_cast<long long>(blocks)) return std::nullopt;
    auto block = static_cast<std::uint32_t>((c - start) / half);
    std::uint64_t node = (*row)[static_cast<std::size_t>(floor_mod(c - phase, half))];
    auto [x0, x1] = foldsched::node_positions(kind, m, stage, node);
    return std::make_tuple(block, x0, x1);
  }
};

class Node {
 public:
  explicit Node(std::string id) : id_(std::move(id)) {}
  virtual ~Node() = default;
  const std::string& id() const { return id_; }

 protected:
  [[noreturn]] void violation(long long c, const std::string& what) const { throw ScheduleViolation(id_, c, what); }

 private:
  std::string id_;
};

class Pe : public Node {
 public:
  Pe(const Element& e, Expectation expect, const nttref::NttParams& params)
      : Node(e.id), kind_(e.pe_kind), expect_(expect), params_(params), depth_(e.pipe_depth) {
    // Twiddle ROM addressed by folding slot.
    if (kind_ != PeKind::pointwise) {
      rom_.resize(static_cast<std::size_t>(expect_.half));
      for (std::size_t l = 0; l < rom_.size(); ++l) {
        auto [x0, x1] = foldsched::node_positions(expect_.kind, expect_.m, expect_.stage, (*expect_.row)[l]);
        std::uint64_t dist = x1 - x0;
        std::uint64_t group = x0 / (2 * dist);
        rom_[l] = kind_ == PeKind::dit ? params_.fwd_twiddle(expect_.stage, group)
                                        : params_.inv_twiddle(expect_.stage, group);
      }
    }
    line_.assign(depth_, Lanes{});
  }

  // `aux` carries the b operand for the pointwise PE.
  Lanes step(const Lanes& in, const Lanes* aux, long long c) {
    auto want = expect_.at(c);
    Lanes out;
    if (!want) {
      if (in.l0.valid || in.l1.valid) violation(c, "sample arrived outside the scheduled window");
    } else {
      auto [block, x0, x1] = *want;
      check(in.l0, block, x0, c, "lane 0");
      check(in.l1, block, x1, c, "lane 1");
      out = in;
      const std::uint64_t q = params_.q();
      const auto& bp = params_.barrett();
      switch (kind_) {
        case PeKind::dit: {
          std::uint64_t slot = static_cast<std::uint64_t>(floor_mod(c - expect_.phase, expect_.half));
          std::uint64_t v = modint::mod_mul(in.l1.value, rom_[slot], bp);
          out.l0.value = modint::mod_add(in.l0.value, v, q);
          out.l1.value = modint::mod_sub(in.l0.value, v, q);
          break;
        }
        case PeKind::dif: {
          std::uint64_t slot = static_cast<std::uint64_t>(floor_mod(c - expect_.phase, expect_.half));
          out.l0.value = modint::mod_half(modint::mod_add(in.l0.value, in.l1.value, q), q);
          out.l1.value =
              modint::mod_mul(modint::mod_half(modint::mod_sub(in.l0.value, in.l1.value, q), q), rom_[slot], bp);
          break;
        }
        case PeKind::pointwise: {
          if (aux == nullptr) violation(c, "no b operand stream");
          check(aux->l0, block, x0, c, "b lane 0");
          check(aux->l1, block, x1, c, "b lane 1");
          out.l0.value = modint::mod_mul(in.l0.value, aux->l0.value, bp);
          out.l1.value = modint::mod_mul(in.l1.value, aux->l1.value, bp);
          break;
        }
      }
      ++busy_;
      if (c >= window_begin_ && c < window_end_) ++busy_in_window_;
    }
    if (depth_ == 0) return out;
    line_.push_back(out);
    Lanes front = line_.front();
    line_.pop_front();
    return front;
  }

  void set_window(long long begin, long long end) {
    window_begin_ = begin;
    window_end_ = end;
  }
  std::uint64_t busy_in_window() const { return busy_in_window_; }

 private:
  void check(const Sample& s, std::uint32_t block, std::uint64_t pos, long long c, const char* lane) const {
    if (!s.valid) violation(c, std::string(lane) + ": scheduled sample missing");
    if (s.block != block || s.pos != pos) {
      violation(c, std::string(lane) + ": expected block " + std::to_string(block) + " position " +
                       std::to_string(pos) + ", got block " + std::to_string(s.block) + " position " +
                       std::to_string(s.pos));
    }
  }

  PeKind kind_;
  Expectation expect_;
  const nttref::NttParams& params_;
  unsigned depth_;
  std::vector<std::uint64_t> rom_;
  std::deque<Lanes> line_;
  std::uint64_t busy_ = 0;
  std::uint64_t busy_in_window_ = 0;
  long long window_begin_ = 0;
  long long window_end_ = 0;
};

// Register file with two register sets of `size` entries. It releases a pair exactly when
// the downstream PE's schedule asks for it.
class Dsd : public Node {
 public:
  Dsd(const Element& e, Expectation downstream, std::uint64_t n, std::uint64_t capacity)
      : Node(e.id), capacity_(capacity), downstream_(downstream), n_(n), store_(kBlockWindow * n) {}

  Lanes step(const Lanes& in, long long c) {
    put(in.l0, c);
    put(in.l1, c);
    Lanes out;
    if (auto want = downstream_.at(c)) {
      auto [block, x0, x1] = *want;
      out.l0 = take(block, x0, c);
      out.l1 = take(block, x1, c);
    }
    if (held_ > capacity_) {
      violation(c, "holds " + std::to_string(held_) + " samples, capacity " + std::to_string(capacity_));
    }
    peak_ = std::max(peak_, held_);
    return out;
  }

  std::uint64_t peak() const { return peak_; }
  std::uint64_t capacity() const { return capacity_; }

 private:
  static constexpr std::uint64_t kBlockWindow = 4;

  std::size_t index(std::uint32_t block, std::uint64_t pos) const {
    return static_cast<std::size_t>((block % kBlockWindow) * n_ + pos);
  }

  void put(const Sample& s, long long c) {
    if (!s.valid) return;
    auto& slot = store_[index(s.block, s.pos)];
    if (slot.valid) violation(c, "register collision at position " + std::to_string(s.pos));
    slot = s;
    ++held_;
  }

  Sample take(std::uint32_t block, std::uint64_t pos, long long c) {
    auto& slot = store_[index(block, pos)];
    if (!slot.valid || slot.block != block) {
      violation(c, "downstream demands block " + std::to_string(block) + " position " + std::to_string(pos) +
                       " before it arrived");
    }
    Sample s = slot;
    slot = Sample{};
    --held_;
    return s;
  }

  std::uint64_t capacity_;
  Expectation downstream_;
  std::uint64_t n_;
  std::vector<Sample> store_;
  std::uint64_t held_ = 0;
  std::uint64_t peak_ = 0;
};

struct Chain {
  std::vector<std::unique_ptr<Pe>> pes;
  std::vector<std::unique_ptr<Dsd>> dsds;
  // Element order: index into pes (>= 0) or ~index into dsds.
  std::vector<long long> order;
};

Expectation expectation_for(const Element& e, const PipelineModel& model, std::size_t blocks) {
  const unsigned m = model.params().m();
  const auto half = static_cast<long long>(model.params().n() / 2);
  if (e.pe_kind == PeKind::dif) {
    return {Kind::intt, m, e.stage, &model.intt().orders[e.stage], e.start, e.phase, half, blocks};
  }
  // The pointwise PE inherits the last NTT stage's pattern.
  return {Kind::ntt, m, e.stage, &model.ntt().orders[e.stage], e.start, e.phase, half, blocks};
}

Chain make_chain(const std::vector<Element>& elems, std::size_t first, std::size_t last, const PipelineModel& model,
                 std::size_t blocks, const std::map<std::string, std::uint64_t>& overrides) {
  Chain ch;
  for (std::size_t i = first; i < last; ++i) {
    const Element& e = elems[i];
    if (e.type == Element::Type::pe) {
      ch.order.push_back(static_cast<long long>(ch.pes.size()));
      ch.pes.push_back(std::make_unique<Pe>(e, expectation_for(e, model, blocks), model.params()));
    } else {
      if (i + 1 >= elems.size() || elems[i + 1].type != Element::Type::pe) {
        throw std::logic_error("DSD " + e.id + " is not followed by a PE");
      }
      ch.order.push_back(~static_cast<long long>(ch.dsds.size()));
      auto ov = overrides.find(e.id);
      std::uint64_t cap = ov != overrides.end() ? ov->second : 2 * e.dsd_size;
      ch.dsds.push_back(std::make_unique<Dsd>(e, expectation_for(elems[i + 1], model, blocks), model.params().n(), cap));
    }
  }
  return ch;
}

struct Tracer {
  bool on;
  std::vector<TraceRow>* rows;
  void add(long long c, const std::string& id, const Lanes& in) const {
    if (!on) return;
    rows->push_back({c, id, in.l0.valid, in.l0.value, in.l1.valid, in.l1.value});
  }
};

Lanes run_chain(Chain& ch, const std::vector<Element>& elems, std::size_t first, Lanes in, long long c,
                const Tracer& tr) {
  for (std::size_t k = 0; k < ch.order.size(); ++k) {
    long long idx = ch.order[k];
    tr.add(c, elems[first + k].id, in);
    if (idx >= 0) {
      in = ch.pes[static_cast<std::size_t>(idx)]->step(in, nullptr, c);
    } else {
      in = ch.dsds[static_cast<std::size_t>(~idx)]->step(in, c);
    }
  }
  return in;
}

// Streams one polynomial per block in the first NTT stage's order.
class Source {
 public:
  Source(const std::vector<std::vector<std::uint64_t>>& blocks, StreamPermutation perm, long long half)
      : blocks_(blocks), perm_(std::move(perm)), half_(half) {}

  Lanes at(long long c) const {
    Lanes out;
    if (c < 0 || c >= half_ * static_cast<long long>(blocks_.size())) return out;
    auto b = static_cast<std::size_t>(c / half_);
    auto k = static_cast<std::size_t>(c % half_);
    std::uint64_t p0 = perm_[2 * k];
    std::uint64_t p1 = perm_[2 * k + 1];
    out.l0 = {true, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(p0), blocks_[b][p0]};
    out.l1 = {true, static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(p1), blocks_[b][p1]};
    return out;
  }

 private:
  const std::vector<std::vector<std::uint64_t>>& blocks_;
  StreamPermutation perm_;
  long long half_;
};

}  // namespace

SimResult simulate(const PipelineModel& model, const SimInput& input) {
  const auto& params = model.params();
  const std::uint64_t n = params.n();
  const unsigned m = params.m();
  const auto half = static_cast<long long>(n / 2);
  const std::size_t blocks = input.a.size();
  if (blocks == 0) throw std::invalid_argument("simulate: at least one block is required");
  if (input.b.size() != blocks) throw std::invalid_argument("simulate: a and b must have the same block count");
  for (std::size_t i = 0; i < blocks; ++i) {
    for (const auto* p : {&input.a[i], &input.b[i]}) {
      if (p->coeffs.size() != n || p->domain != nttref::Domain::time) {
        throw std::invalid_argument("simulate: inputs must be time-domain polynomials of length n");
      }
      for (auto x : p->coeffs) {
        if (x >= params.q()) throw std::invalid_argument("simulate: coefficient not reduced");
      }
    }
  }

  std::vector<std::vector<std::uint64_t>> a_blocks(blocks), b_blocks(blocks), b_spectra(blocks);
  for (std::size_t i = 0; i < blocks; ++i) {
    a_blocks[i] = input.a[i].coeffs;
    b_blocks[i] = input.b[i].coeffs;
    b_spectra[i] = input.b[i].coeffs;
    nttref::forward_inplace_bitrev(b_spectra[i], params);
  }

  const auto& elems = model.elements();
  std::size_t pw_index = 0;
  while (pw_index < elems.size() && elems[pw_index].pe_kind != PeKind::pointwise) ++pw_index;
  if (pw_index == elems.size()) throw std::logic_error("simulate: model has no pointwise PE");

  Chain front = make_chain(elems, 0, pw_index, model, blocks, input.dsd_capacity_override);
  Pe pw(elems[pw_index], expectation_for(elems[pw_index], model, blocks), params);
  Chain back = make_chain(elems, pw_index + 1, elems.size(), model, blocks, input.dsd_capacity_override);
  std::optional<Chain> bchain;
  if (model.mode() == Mode::dual_chain) {
    bchain = make_chain(model.b_chain(), 0, model.b_chain().size(), model, blocks, input.dsd_capacity_override);
  }

  Source src_a(a_blocks, input_permutation(model.ntt()), half);
  Source src_b(b_blocks, input_permutation(model.ntt()), half);
  // Pre-transformed b: delivered in the pattern the pointwise PE expects.
  Expectation pw_expect = expectation_for(elems[pw_index], model, blocks);
  auto b_spectrum_at = [&](long long c) {
    Lanes out;
    if (auto want = pw_expect.at(c)) {
      auto [block, x0, x1] = *want;
      out.l0 = {true, block, static_cast<std::uint32_t>(x0), b_spectra[block][x0]};
      out.l1 = {true, block, static_cast<std::uint32_t>(x1), b_spectra[block][x1]};
    }
    return out;
  };

  const long long source_end = half * static_cast<long long>(blocks) + static_cast<long long>(input.trailing_idle_cycles);
  const Element& sink = elems.back();
  const long long expected_first_out = sink.start + sink.pipe_depth;
  // The utilization window opens when the output PE first produces data.
  const long long window_begin = sink.start;
  const long long window_end = source_end;
  for (auto* ch : {&front, &back}) {
    for (auto& pe : ch->pes) pe->set_window(window_begin, window_end);
  }
  pw.set_window(window_begin, window_end);
  if (bchain) {
    for (auto& pe : bchain->pes) pe->set_window(window_begin, window_end);
  }

  SimResult result;
  result.outputs.assign(blocks, ResiduePoly{std::vector<std::uint64_t>(n), nttref::Domain::time});
  Tracer tr{input.trace, &result.trace};
  std::vector<long long> first_out(blocks, -1), last_out(blocks, -1);
  std::vector<std::uint64_t> received(blocks, 0);
  std::uint64_t total_received = 0;
  const long long limit = std::max(source_end, expected_first_out + half * static_cast<long long>(blocks)) + 4 * static_cast<long long>(n);

  for (long long c = 0; c < limit; ++c) {
    Lanes a_in = src_a.at(c);
    Lanes a_ntt = run_chain(front, elems, 0, a_in, c, tr);
    Lanes b_ntt;
    if (bchain) {
      b_ntt = run_chain(*bchain, model.b_chain(), 0, src_b.at(c), c, tr);
    } else {
      b_ntt = b_spectrum_at(c);
    }
    tr.add(c, "pw", a_ntt);
    Lanes prod = pw.step(a_ntt, &b_ntt, c);
    Lanes out = run_chain(back, elems, pw_index + 1, prod, c, tr);
    tr.add(c, "out", out);
    for (const Sample* s : {&out.l0, &out.l1}) {
      if (!s->valid) continue;
      if (s->block >= blocks || s->pos >= n) throw ScheduleViolation("out", c, "sample tag out of range");
      result.outputs[s->block].coeffs[s->pos] = s->value;
      if (first_out[s->block] < 0) first_out[s->block] = c;
      last_out[s->block] = c;
      ++received[s->block];
      ++total_received;
    }
    if (total_received == n * blocks && c + 1 >= source_end) break;
  }
  if (total_received != n * blocks) {
    throw ScheduleViolation("out", limit, "only " + std::to_string(total_received) + " of " +
                                              std::to_string(n * blocks) + " outputs were produced");
  }

  CycleReport& r = result.report;
  r.n = n;
  r.t_pipe = model.pipe().t_pipe();
  r.mode = mode_name(model.mode());
  r.blocks = blocks;
  r.latency = first_out[0];
  if (blocks >= 2) {
    r.bpp = (first_out[blocks - 1] - first_out[0]) / static_cast<long long>(blocks - 1);
    for (std::size_t b = 1; b < blocks; ++b) {
      if (first_out[b] - first_out[b - 1] != r.bpp) {
        throw ScheduleViolation("out", first_out[b], "uneven block spacing at the output");
      }
    }
  } else {
    r.bpp = last_out[0] - first_out[0] + 1;
  }
  r.total_cycles = last_out[blocks - 1] + 1;
  r.window_begin = window_begin;
  r.window_end = window_end;
  const long long window = std::max<long long>(0, window_end - window_begin);
  auto record = [&](const Pe& pe) {
    r.utilization[pe.id()] = window > 0 ? static_cast<double>(pe.busy_in_window()) / static_cast<double>(window) : 0.0;
  };
  auto record_dsd = [&](const Dsd& d) {
    r.dsd_peak_occupancy[d.id()] = d.peak();
    r.dsd_capacity[d.id()] = d.capacity();
  };
  for (auto* ch : {&front, &back}) {
    for (auto& pe : ch->pes) record(*pe);
    for (auto& d : ch->dsds) record_dsd(*d);
  }
  record(pw);
  if (bchain) {
    for (auto& pe : bchain->pes) record(*pe);
    for (auto& d : bchain->dsds) record_dsd(*d);
  }
  r.pe_count = model.pe_count();
  r.dsd_count = model.dsd_count();
  r.violations = 0;
  (void)m;
  return result;
}

SimResult simulate_shuffled_baseline(const PipelineModel& model, const SimInput& input) {
  PipelineModel baseline(model.params(), model.pipe(), Mode::baseline);
  return simulate(baseline, input);
}

std::map<std::string, double> utilization_report(const PipelineModel& model, const std::vector<TraceRow>& trace,
                                                 long long begin, long long end) {
  std::map<std::string, std::uint64_t> busy;
  std::map<std::string, double> out;
  auto add_pes = [&](const std::vector<Element>& elems) {
    for (const auto& e : elems) {
      if (e.type == Element::Type::pe) busy[e.id] = 0;
    }
  };
  add_pes(model.elements());
  add_pes(model.b_chain());
  for (const auto& row : trace) {
    if (row.cycle < begin || row.cycle >= end) continue;
    auto it = busy.find(row.element);
    if (it != busy.end() && row.valid0 && row.valid1) ++it->second;
  }
  const long long window = std::max<long long>(0, end - begin);
  for (const auto& [id, count] : busy) {
    out[id] = window > 0 ? static_cast<double>(count) / static_cast<double>(window) : 0.0;
  }
  return out;
}

}  // namespace parentt::pipesim
