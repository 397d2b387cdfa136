// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/parentt.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parentt/errors.hpp"
#include "parentt/json_io.hpp"
#include "parentt/nttref.hpp"
#include "parentt/pipesim.hpp"
#include "parentt/primeforge.hpp"
#include "parentt/rng.hpp"
#include "parentt/rnspoly.hpp"

using namespace parentt;

struct parentt_context {
  rnspoly::RnsContext ctx;
};

struct parentt_poly {
  rnspoly::BigPoly poly;
};

namespace {

thread_local std::string g_last_error;

parentt_status fail(parentt_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class F>
parentt_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return PARENTT_OK;
  } catch (const ConfigError& e) {
    return fail(PARENTT_E_CONFIG, e.what());
  } catch (const ScheduleViolation& e) {
    return fail(PARENTT_E_SCHEDULE, e.what());
  } catch (const IoError& e) {
    return fail(PARENTT_E_IO, e.what());
  } catch (const VerifyError& e) {
    return fail(PARENTT_E_VERIFY, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PARENTT_E_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(PARENTT_E_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(PARENTT_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PARENTT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PARENTT_E_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json_io::json& j, char** out) {
  require(out, "out_json");
  *out = dup_string(j.dump(2));
}

primeforge::SearchParams search_params(const parentt_prime_query* q) {
  require(q, "query");
  if (q->n_beta == 0) throw std::invalid_argument("n_beta must be >= 1");
  return {q->v, q->n, q->mu, q->pot_terms, q->n_beta};
}

std::string hex_text(const rnspoly::BigPoly& p) {
  std::ostringstream os;
  rnspoly::write_hex_poly(os, p);
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

rnspoly::BigPoly random_poly(const rnspoly::RnsContext& ctx, SplitMix64& rng) {
  rnspoly::BigPoly p;
  p.coeffs.resize(ctx.n());
  for (auto& c : p.coeffs) c = rng.below(ctx.q());
  return p;
}

std::uint64_t smallest_ntt_prime(std::uint64_t n) {
  const std::uint64_t step = 2 * n;
  for (std::uint64_t q = step + 1; q > step; q += step) {
    if (primeforge::is_prime(q)) return q;
  }
  throw std::invalid_argument("no NTT-compatible prime below 2^64");
}

std::string hex_u64(std::uint64_t x) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << x;
  return os.str();
}

// Coefficient k of the negacyclic product, straight from the definition.
WideUint negacyclic_coeff(const rnspoly::BigPoly& a, const rnspoly::BigPoly& b, std::size_t k, const WideUint& q) {
  const std::size_t n = a.coeffs.size();
  WideUint pos, neg;
  for (std::size_t i = 0; i < n; ++i) {
    WideUint term = (a.coeffs[i] * b.coeffs[(k + n - i) % n]) % q;
    if (i <= k) {
      pos = (pos + term) % q;
    } else {
      neg = (neg + term) % q;
    }
  }
  return pos >= neg ? pos - neg : pos + q - neg;
}

void write_trace(const char* path, const std::vector<pipesim::TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError(std::string("cannot open trace file ") + path);
  out << "cycle,element,lane0,lane1,valid\n";
  for (const auto& r : rows) {
    out << r.cycle << ',' << r.element << ',';
    if (r.valid0) out << r.lane0;
    out << ',';
    if (r.valid1) out << r.lane1;
    out << ',' << ((r.valid0 && r.valid1) ? 1 : 0) << '\n';
  }
  if (!out) throw IoError(std::string("failed writing trace file ") + path);
}

pipesim::Mode to_mode(parentt_sim_mode m) {
  switch (m) {
    case PARENTT_SIM_CASCADE:
      return pipesim::Mode::cascade;
    case PARENTT_SIM_DUAL_CHAIN:
      return pipesim::Mode::dual_chain;
    case PARENTT_SIM_BASELINE:
      return pipesim::Mode::baseline;
  }
  throw std::invalid_argument("unknown simulation mode");
}

// Catches mismatches in the pipeline's outputs against the in-order reference.
void check_outputs(const pipesim::SimResult& r, const pipesim::SimInput& in, const nttref::NttParams& params) {
  for (std::size_t blk = 0; blk < in.a.size(); ++blk) {
    if (!(r.outputs[blk] == nttref::polymul_ntt(in.a[blk], in.b[blk], params))) {
      throw VerifyError("simulated product of block " + std::to_string(blk) + " differs from the reference");
    }
  }
}

}  // namespace

extern "C" {

const char* parentt_version(void) { return "0.1.0"; }

const char* parentt_last_error(void) { return g_last_error.c_str(); }

const char* parentt_status_name(parentt_status status) {
  switch (status) {
    case PARENTT_OK:
      return "ok";
    case PARENTT_E_INVALID_ARGUMENT:
      return "invalid_argument";
    case PARENTT_E_CONFIG:
      return "config";
    case PARENTT_E_IO:
      return "io";
    case PARENTT_E_VERIFY:
      return "verify";
    case PARENTT_E_SCHEDULE:
      return "schedule";
    case PARENTT_E_INTERNAL:
      return "internal";
  }
  return "unknown";
}

void parentt_string_free(char* s) { std::free(s); }

parentt_status parentt_primes_json(const parentt_prime_query* query, char** out_json) {
  return guarded([&] {
    auto sp = search_params(query);
    emit(json_io::primes_to_json(sp, primeforge::search_special_primes(sp)), out_json);
  });
}

parentt_status parentt_primes_count(const parentt_prime_query* query, size_t* out_count) {
  return guarded([&] {
    require(out_count, "out_count");
    *out_count = primeforge::search_special_primes(search_params(query)).size();
  });
}

parentt_status parentt_table3_json(char** out_json) {
  return guarded([&] { emit(json_io::table3_json(), out_json); });
}

parentt_status parentt_context_create(const parentt_context_config* cfg, parentt_context** out) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = nullptr;
    rnspoly::ContextConfig c;
    c.v = cfg->v;
    c.t = cfg->t;
    c.t_prime = cfg->t_prime;
    c.n = cfg->n;
    c.mu = cfg->mu;
    c.pot_terms = cfg->pot_terms == 0 ? 4 : cfg->pot_terms;
    if (cfg->n_beta != 0) c.n_beta = cfg->n_beta;
    if (cfg->num_primes != 0) {
      require(cfg->primes, "primes");
      c.primes.assign(cfg->primes, cfg->primes + cfg->num_primes);
    }
    *out = new parentt_context{rnspoly::build_context(c)};
  });
}

void parentt_context_destroy(parentt_context* ctx) { delete ctx; }

parentt_status parentt_context_json(const parentt_context* ctx, char** out_json) {
  return guarded([&] {
    require(ctx, "ctx");
    emit(json_io::context_to_json(ctx->ctx), out_json);
  });
}

uint64_t parentt_context_n(const parentt_context* ctx) { return ctx == nullptr ? 0 : ctx->ctx.n(); }

size_t parentt_context_q_bits(const parentt_context* ctx) { return ctx == nullptr ? 0 : ctx->ctx.q_bits(); }

parentt_status parentt_poly_parse(const parentt_context* ctx, const char* text, parentt_poly** out) {
  return guarded([&] {
    require(ctx, "ctx");
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    std::istringstream in(text);
    auto p = rnspoly::read_hex_poly(in, ctx->ctx.n());
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
      if (p.coeffs[i] >= ctx->ctx.q()) {
        throw std::invalid_argument("line " + std::to_string(i + 1) + ": coefficient >= q");
      }
    }
    *out = new parentt_poly{std::move(p)};
  });
}

parentt_status parentt_poly_read_file(const parentt_context* ctx, const char* path, parentt_poly** out) {
  std::string text;
  auto s = guarded([&] {
    require(path, "path");
    std::ifstream in(path);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  });
  if (s != PARENTT_OK) return s;
  s = parentt_poly_parse(ctx, text.c_str(), out);
  if (s != PARENTT_OK) g_last_error = std::string(path) + ": " + g_last_error;
  return s;
}

parentt_status parentt_poly_write_file(const parentt_poly* p, const char* path) {
  return guarded([&] {
    require(p, "poly");
    require(path, "path");
    std::ofstream out(path);
    if (!out) throw IoError(std::string("cannot open ") + path + " for writing");
    rnspoly::write_hex_poly(out, p->poly);
    out.flush();
    if (!out) throw IoError(std::string("failed writing ") + path);
  });
}

parentt_status parentt_poly_format(const parentt_poly* p, char** out_text) {
  return guarded([&] {
    require(p, "poly");
    require(out_text, "out_text");
    *out_text = dup_string(hex_text(p->poly));
  });
}

parentt_status parentt_poly_random(const parentt_context* ctx, uint64_t seed, parentt_poly** out) {
  return guarded([&] {
    require(ctx, "ctx");
    require(out, "out");
    SplitMix64 rng(seed);
    *out = new parentt_poly{random_poly(ctx->ctx, rng)};
  });
}

void parentt_poly_destroy(parentt_poly* p) { delete p; }

int parentt_poly_equal(const parentt_poly* a, const parentt_poly* b) {
  if (a == nullptr || b == nullptr) return 0;
  return a->poly == b->poly ? 1 : 0;
}

parentt_status parentt_poly_digest(const parentt_poly* p, uint64_t* out) {
  return guarded([&] {
    require(p, "poly");
    require(out, "out");
    *out = fnv1a(hex_text(p->poly));
  });
}

parentt_status parentt_multiply(const parentt_context* ctx, const parentt_poly* a, const parentt_poly* b,
                                parentt_engine engine, parentt_poly** out) {
  return guarded([&] {
    require(ctx, "ctx");
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = nullptr;
    rnspoly::MultiplyOptions opts;
    if (engine == PARENTT_ENGINE_SIMULATOR) {
      opts.engine = rnspoly::ChannelEngine::simulator;
    } else if (engine != PARENTT_ENGINE_REFERENCE) {
      throw std::invalid_argument("unknown engine");
    }
    *out = new parentt_poly{rnspoly::parentt_multiply(a->poly, b->poly, ctx->ctx, opts)};
  });
}

parentt_status parentt_schoolbook(const parentt_context* ctx, const parentt_poly* a, const parentt_poly* b,
                                  parentt_poly** out) {
  return guarded([&] {
    require(ctx, "ctx");
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = nullptr;
    *out = new parentt_poly{rnspoly::schoolbook_negacyclic_wide(a->poly, b->poly, ctx->ctx.q())};
  });
}

parentt_status parentt_simulate_json(const parentt_sim_config* cfg, char** out_json) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out_json, "out_json");
    const std::uint64_t q = cfg->q != 0 ? cfg->q : smallest_ntt_prime(cfg->n);
    nttref::NttParams params(cfg->n, q);
    const std::size_t pes = 2 * params.m() + 1;
    pipesim::PipelineModel model(params, pipesim::PipeConfig::uniform(cfg->t_pipe, pes), to_mode(cfg->mode));

    pipesim::SimInput in;
    SplitMix64 rng(cfg->seed);
    const std::size_t blocks = cfg->blocks == 0 ? 1 : cfg->blocks;
    for (std::size_t blk = 0; blk < blocks; ++blk) {
      SplitMix64 stream = rng.split();
      for (auto* dst : {&in.a, &in.b}) {
        nttref::ResiduePoly p{std::vector<std::uint64_t>(params.n()), nttref::Domain::time};
        for (auto& x : p.coeffs) x = stream.below(q);
        dst->push_back(std::move(p));
      }
    }
    in.trailing_idle_cycles = cfg->idle_cycles;
    in.trace = cfg->trace_csv != nullptr;
    if (cfg->num_capacities > 0) {
      require(cfg->capacity_ids, "capacity_ids");
      require(cfg->capacity_values, "capacity_values");
    }
    std::set<std::string> known;
    for (const auto* chain : {&model.elements(), &model.b_chain()}) {
      for (const auto& e : *chain) {
        if (e.type == pipesim::Element::Type::dsd) known.insert(e.id);
      }
    }
    if (cfg->add_baseline) known.insert("junction");
    for (std::size_t i = 0; i < cfg->num_capacities; ++i) {
      require(cfg->capacity_ids[i], "capacity id");
      if (known.count(cfg->capacity_ids[i]) == 0) {
        throw std::invalid_argument(std::string("simulate: no DSD named ") + cfg->capacity_ids[i]);
      }
      in.dsd_capacity_override[cfg->capacity_ids[i]] = cfg->capacity_values[i];
    }

    auto result = pipesim::simulate(model, in);
    check_outputs(result, in, params);
    if (cfg->trace_csv != nullptr) write_trace(cfg->trace_csv, result.trace);

    auto j = json_io::report_to_json(result.report);
    j["q"] = q;
    j["seed"] = cfg->seed;
    j["verified"] = true;
    j["latency_model"] = static_cast<long long>(params.n()) - 2 + static_cast<long long>(cfg->t_pipe);
    j["junction_free"] = model.junction_free();
    if (cfg->add_baseline) {
      pipesim::SimInput bin = in;
      bin.trace = false;
      auto base = pipesim::simulate_shuffled_baseline(model, bin);
      check_outputs(base, bin, params);
      const long long excess = base.report.latency - result.report.latency;
      j["baseline"] = json_io::report_to_json(base.report);
      j["baseline_excess"] = excess;
      j["baseline_relative_gap"] = static_cast<double>(excess) / static_cast<double>(base.report.latency);
    }
    emit(j, out_json);
  });
}

parentt_status parentt_schedule_json(unsigned m, char** out_json) {
  return guarded([&] { emit(json_io::schedules_json(m), out_json); });
}

parentt_status parentt_bench_json(const parentt_bench_config* cfg, char** out_json) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out_json, "out_json");
    if (cfg->num_sizes == 0) throw std::invalid_argument("bench: at least one size is required");
    require(cfg->sizes, "sizes");
    const unsigned reps = cfg->reps == 0 ? 3 : cfg->reps;
    const unsigned checks = cfg->spot_checks == 0 ? 16 : cfg->spot_checks;

    struct Shape {
      const char* label;
      unsigned v, t, t_prime, mu;
    };
    // Two ways to reach a 180-bit modulus.
    static constexpr Shape kShapes[] = {{"t6_v30", 30, 6, 3, 75}, {"t4_v45", 45, 4, 4, 105}};

    SplitMix64 root(cfg->seed);
    json_io::json results = json_io::json::array();
    bool all_ok = true;
    for (std::size_t si = 0; si < cfg->num_sizes; ++si) {
      for (const auto& shape : kShapes) {
        rnspoly::ContextConfig cc;
        cc.v = shape.v;
        cc.t = shape.t;
        cc.t_prime = shape.t_prime;
        cc.n = cfg->sizes[si];
        cc.mu = shape.mu;
        auto ctx = rnspoly::build_context(cc);
        SplitMix64 rng = root.split();
        auto a = random_poly(ctx, rng);
        auto b = random_poly(ctx, rng);

        std::vector<double> times;
        rnspoly::BigPoly prod;
        for (unsigned r = 0; r < reps; ++r) {
          auto t0 = std::chrono::steady_clock::now();
          prod = rnspoly::parentt_multiply(a, b, ctx);
          auto t1 = std::chrono::steady_clock::now();
          times.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
        }
        std::sort(times.begin(), times.end());

        bool ok = true;
        for (unsigned k = 0; k < checks; ++k) {
          auto idx = static_cast<std::size_t>(rng.below(ctx.n()));
          ok = ok && negacyclic_coeff(a, b, idx, ctx.q()) == prod.coeffs[idx];
        }
        all_ok = all_ok && ok;
        results.push_back({
            {"label", shape.label},
            {"n", ctx.n()},
            {"t", ctx.t()},
            {"t_prime", ctx.t_prime()},
            {"v", ctx.v()},
            {"mu", ctx.mu()},
            {"q_bits", ctx.q_bits()},
            {"reps", reps},
            {"median_us", times[times.size() / 2]},
            {"min_us", times.front()},
            {"digest", hex_u64(fnv1a(hex_text(prod)))},
            {"spot_checks", checks},
            {"verified", ok},
        });
      }
    }
    json_io::json j = {{"seed", cfg->seed}, {"results", results}, {"verified", all_ok}};
    if (!all_ok) {
      *out_json = dup_string(j.dump(2));
      throw VerifyError("bench: a product disagreed with the oracle spot check");
    }
    emit(j, out_json);
  });
}

}  // extern "C"
