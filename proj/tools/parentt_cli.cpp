// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library through the C API only.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "parentt/parentt.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitConfig = 2;

int exit_code(parentt_status s) {
  switch (s) {
    case PARENTT_OK:
      return kExitOk;
    case PARENTT_E_VERIFY:
    case PARENTT_E_SCHEDULE:
      return kExitVerify;
    default:
      return kExitConfig;
  }
}

int report(parentt_status s, const char* what) {
  if (s != PARENTT_OK) {
    std::cerr << "parentt " << what << ": " << parentt_status_name(s) << ": " << parentt_last_error() << "\n";
  }
  return exit_code(s);
}

struct CString {
  char* p = nullptr;
  ~CString() { parentt_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct CtxDeleter {
  void operator()(parentt_context* c) const { parentt_context_destroy(c); }
};
struct PolyDeleter {
  void operator()(parentt_poly* p) const { parentt_poly_destroy(p); }
};
using CtxPtr = std::unique_ptr<parentt_context, CtxDeleter>;
using PolyPtr = std::unique_ptr<parentt_poly, PolyDeleter>;

std::filesystem::path out_dir() {
  const char* env = std::getenv("PARENTT_OUT_DIR");
  if (env == nullptr || *env == '\0') return ".";
  std::error_code ec;  // a failure here surfaces as an IO error on write
  std::filesystem::create_directories(env, ec);
  return env;
}

bool is_pow2(std::uint64_t x) { return x >= 2 && (x & (x - 1)) == 0; }

int config_error(const std::string& msg) {
  std::cerr << "parentt: configuration error: " << msg << "\n";
  return kExitConfig;
}

// ---- primes ----

struct PrimesArgs {
  unsigned v = 0;
  std::uint64_t n = 4096;
  unsigned mu = 0;
  int pot = 4;
  unsigned n_beta = 2;
  bool table3 = false;
  std::string format = "json";
};

void print_table3_text(const json& j) {
  std::cout << "  t   v   mu  PoT     n  published  nb=2  nb=3  nb=5  match(nb=2)\n";
  for (const auto& r : j["rows"]) {
    const auto& c = r["counts_by_n_beta"];
    std::cout << std::setw(3) << r["t"].get<int>() << std::setw(4) << r["v"].get<int>() << std::setw(5)
              << r["mu"].get<int>() << std::setw(5) << r["pot"].get<int>() << std::setw(6) << r["n"].get<long>()
              << std::setw(11) << r["published"].get<long>() << std::setw(6) << c["2"].get<long>() << std::setw(6)
              << c["3"].get<long>() << std::setw(6) << c["5"].get<long>() << "  "
              << (r["match_n_beta_2"].get<bool>() ? "yes" : "NO") << "\n";
  }
  std::cout << "rule: " << j["admission_rule"].get<std::string>() << "\n"
            << j["interpretation"].get<std::string>() << "\n"
            << "t=4 rows match with n_beta=3: " << (j["t4_match_n_beta_3"].get<bool>() ? "yes" : "no") << "\n"
            << "t=6 rows match with n_beta=2: " << (j["t6_match_n_beta_2"].get<bool>() ? "yes" : "no") << "\n"
            << "t=6 rows match with n_beta=5: " << (j["t6_match_n_beta_5"].get<bool>() ? "yes" : "no") << "\n";
}

int cmd_primes(const PrimesArgs& a) {
  CString out;
  if (a.table3) {
    auto s = parentt_table3_json(&out.p);
    if (s != PARENTT_OK) return report(s, "primes");
    if (a.format == "text") {
      print_table3_text(json::parse(out.str()));
    } else {
      std::cout << out.str() << "\n";
    }
    return kExitOk;
  }
  if (a.v == 0 || a.mu == 0) return config_error("--v and --mu are required without --table3");
  if (!is_pow2(a.n)) return config_error("--n must be a power of two");
  parentt_prime_query q{a.v, a.n, a.mu, a.pot, a.n_beta};
  auto s = parentt_primes_json(&q, &out.p);
  if (s != PARENTT_OK) return report(s, "primes");
  if (a.format == "text") {
    auto j = json::parse(out.str());
    for (const auto& p : j["primes"]) {
      std::cout << p["q"].get<std::uint64_t>() << "  2^" << a.v << " - (" << p["beta_form"].get<std::string>()
                << ")\n";
    }
    std::cout << "count " << j["count"].get<std::size_t>() << "\n";
  } else {
    std::cout << out.str() << "\n";
  }
  return kExitOk;
}

// ---- shared context options ----

struct ContextArgs {
  std::uint64_t n = 4096;
  unsigned v = 30;
  unsigned t = 6;
  unsigned t_prime = 3;
  unsigned mu = 75;
  int pot = 4;
  unsigned n_beta = 0;
};

void add_context_options(CLI::App* cmd, ContextArgs& c) {
  cmd->add_option("--n", c.n, "ring dimension")->capture_default_str();
  cmd->add_option("--v", c.v, "bits per special prime")->capture_default_str();
  cmd->add_option("--t", c.t, "number of residue channels")->capture_default_str();
  cmd->add_option("--t-prime", c.t_prime, "digits per block (t = d * t')")->capture_default_str();
  cmd->add_option("--mu", c.mu, "Barrett width")->capture_default_str();
  cmd->add_option("--pot", c.pot, "maximum PoT terms per prime")->capture_default_str();
  cmd->add_option("--n-beta", c.n_beta, "shift-add depth (0 = library default)");
}

int make_context(const ContextArgs& c, CtxPtr& ctx) {
  if (!is_pow2(c.n)) return config_error("--n must be a power of two");
  if (c.t == 0 || c.t_prime == 0 || c.t % c.t_prime != 0) return config_error("--t must be a multiple of --t-prime");
  if (c.mu < 2 * c.v) return config_error("--mu must be at least 2 * --v");
  parentt_context_config cfg{c.v, c.t, c.t_prime, c.n, c.mu, c.pot, c.n_beta, nullptr, 0};
  parentt_context* raw = nullptr;
  auto s = parentt_context_create(&cfg, &raw);
  ctx.reset(raw);
  return report(s, "context");
}

// ---- multiply ----

struct MultiplyArgs {
  ContextArgs ctx;
  std::string a_path, b_path, out_path;
  bool verify = false;
  std::string engine = "reference";
  std::uint64_t seed = 1;
};

int load_or_random(const parentt_context* ctx, const std::string& path, std::uint64_t seed, PolyPtr& out) {
  parentt_poly* raw = nullptr;
  parentt_status s = path.empty() ? parentt_poly_random(ctx, seed, &raw) : parentt_poly_read_file(ctx, path.c_str(), &raw);
  out.reset(raw);
  return report(s, "multiply");
}

int cmd_multiply(const MultiplyArgs& a) {
  CtxPtr ctx;
  if (int rc = make_context(a.ctx, ctx)) return rc;
  PolyPtr pa, pb, prod;
  if (int rc = load_or_random(ctx.get(), a.a_path, a.seed, pa)) return rc;
  if (int rc = load_or_random(ctx.get(), a.b_path, a.seed ^ 0x5bd1e995ULL, pb)) return rc;

  parentt_engine engine = a.engine == "simulator" ? PARENTT_ENGINE_SIMULATOR : PARENTT_ENGINE_REFERENCE;
  parentt_poly* raw = nullptr;
  auto s = parentt_multiply(ctx.get(), pa.get(), pb.get(), engine, &raw);
  prod.reset(raw);
  if (s != PARENTT_OK) return report(s, "multiply");

  std::string out = a.out_path.empty() ? (out_dir() / "product.hex").string() : a.out_path;
  s = parentt_poly_write_file(prod.get(), out.c_str());
  if (s != PARENTT_OK) return report(s, "multiply");

  std::uint64_t digest = 0;
  parentt_poly_digest(prod.get(), &digest);
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << digest;
  json j = {{"n", parentt_context_n(ctx.get())},
            {"q_bits", parentt_context_q_bits(ctx.get())},
            {"engine", a.engine},
            {"out", out},
            {"digest", hex.str()}};
  CString ctx_json;
  if (parentt_context_json(ctx.get(), &ctx_json.p) == PARENTT_OK) j["context"] = json::parse(ctx_json.str());
  int rc = kExitOk;
  if (a.verify) {
    parentt_poly* oracle_raw = nullptr;
    s = parentt_schoolbook(ctx.get(), pa.get(), pb.get(), &oracle_raw);
    PolyPtr oracle(oracle_raw);
    if (s != PARENTT_OK) return report(s, "multiply");
    bool ok = parentt_poly_equal(oracle.get(), prod.get()) != 0;
    j["verified"] = ok;
    if (!ok) {
      std::cerr << "parentt multiply: product differs from the schoolbook oracle\n";
      rc = kExitVerify;
    }
  }
  std::cout << j.dump(2) << "\n";
  return rc;
}

// ---- simulate ----

struct SimulateArgs {
  std::uint64_t n = 4096;
  std::uint64_t q = 0;
  unsigned t_pipe = 0;
  std::size_t blocks = 1;
  std::uint64_t idle = 0;
  bool baseline = false;
  bool dual_chain = false;
  bool dump_schedule = false;
  std::uint64_t seed = 1;
  std::string trace;
  bool trace_given = false;
  std::vector<std::string> capacities;  // ID=N
};

int cmd_simulate(const SimulateArgs& a) {
  if (!is_pow2(a.n) || a.n < 4) return config_error("--n must be a power of two >= 4");
  if (a.blocks == 0) return config_error("--blocks must be >= 1");
  std::string trace_path;
  if (a.trace_given) trace_path = a.trace.empty() ? (out_dir() / "trace.csv").string() : a.trace;

  parentt_sim_config cfg{};
  cfg.n = a.n;
  cfg.q = a.q;
  cfg.t_pipe = a.t_pipe;
  cfg.mode = a.dual_chain ? PARENTT_SIM_DUAL_CHAIN : PARENTT_SIM_CASCADE;
  cfg.blocks = a.blocks;
  cfg.idle_cycles = a.idle;
  cfg.seed = a.seed;
  cfg.add_baseline = a.baseline ? 1 : 0;
  cfg.trace_csv = trace_path.empty() ? nullptr : trace_path.c_str();
  std::vector<std::string> cap_ids;
  std::vector<std::uint64_t> cap_values;
  for (const auto& item : a.capacities) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) return config_error("--dsd-capacity expects ID=N, got " + item);
    try {
      std::size_t used = 0;
      cap_values.push_back(std::stoull(item.substr(eq + 1), &used));
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      return config_error("--dsd-capacity expects ID=N, got " + item);
    }
    cap_ids.push_back(item.substr(0, eq));
  }
  std::vector<const char*> cap_ptrs;
  for (const auto& id : cap_ids) cap_ptrs.push_back(id.c_str());
  cfg.capacity_ids = cap_ptrs.data();
  cfg.capacity_values = cap_values.data();
  cfg.num_capacities = cap_ptrs.size();

  CString out;
  auto s = parentt_simulate_json(&cfg, &out.p);
  if (s != PARENTT_OK) return report(s, "simulate");
  auto j = json::parse(out.str());
  if (a.dump_schedule) {
    unsigned m = 0;
    while ((std::uint64_t{1} << m) < a.n) ++m;
    CString sched;
    s = parentt_schedule_json(m, &sched.p);
    if (s != PARENTT_OK) return report(s, "simulate");
    j["schedule"] = json::parse(sched.str());
  }
  if (!trace_path.empty()) j["trace"] = trace_path;
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::uint64_t> sizes{1024, 2048, 4096};
  unsigned reps = 3;
  unsigned spot_checks = 16;
  std::uint64_t seed = 1;
  std::string out_path;
};

int cmd_bench(const BenchArgs& a) {
  for (auto n : a.sizes) {
    if (!is_pow2(n)) return config_error("--sizes must be powers of two");
  }
  parentt_bench_config cfg{a.sizes.data(), a.sizes.size(), a.reps, a.seed, a.spot_checks};
  CString out;
  auto s = parentt_bench_json(&cfg, &out.p);
  if (out.p != nullptr) {
    if (!a.out_path.empty()) {
      std::FILE* f = std::fopen(a.out_path.c_str(), "w");
      if (f == nullptr) return config_error("cannot write " + a.out_path);
      std::fputs(out.p, f);
      std::fputc('\n', f);
      std::fclose(f);
    }
    std::cout << out.str() << "\n";
  }
  return report(s, "bench");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parentt: RNS polynomial multiplication and NTT pipeline simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", parentt_version());

  PrimesArgs primes;
  auto* p = app.add_subcommand("primes", "search special NTT-compatible primes");
  p->add_option("--v", primes.v, "prime width in bits");
  p->add_option("--n", primes.n, "ring dimension")->capture_default_str();
  p->add_option("--mu", primes.mu, "Barrett width");
  p->add_option("--pot", primes.pot, "maximum PoT terms per prime")->capture_default_str();
  p->add_option("--n-beta", primes.n_beta, "shift-add depth of the residual unit")->capture_default_str();
  p->add_flag("--table3", primes.table3, "run the eight published configurations");
  p->add_option("--format", primes.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  MultiplyArgs mul;
  auto* m = app.add_subcommand("multiply", "multiply two polynomials modulo (x^n + 1, q)");
  add_context_options(m, mul.ctx);
  m->add_option("--a", mul.a_path, "first operand (hex lines); random if omitted");
  m->add_option("--b", mul.b_path, "second operand (hex lines); random if omitted");
  m->add_option("--out", mul.out_path, "product file (default $PARENTT_OUT_DIR/product.hex)");
  m->add_flag("--verify", mul.verify, "check against the schoolbook oracle");
  m->add_option("--engine", mul.engine)->check(CLI::IsMember({"reference", "simulator"}))->capture_default_str();
  m->add_option("--seed", mul.seed, "seed for random operands")->capture_default_str();

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "cycle-level simulation of the NTT-pointwise-iNTT pipeline");
  s->add_option("--n", sim.n)->capture_default_str();
  s->add_option("--q", sim.q, "modulus (default: smallest prime with 2n | q - 1)");
  s->add_option("--t-pipe", sim.t_pipe, "total pipeline registers over all PEs")->capture_default_str();
  s->add_option("--blocks", sim.blocks, "back-to-back input blocks")->capture_default_str();
  s->add_option("--idle", sim.idle, "idle cycles after the last block")->capture_default_str();
  s->add_flag("--baseline", sim.baseline, "also run the design with a reorder buffer");
  s->add_flag("--dual-chain", sim.dual_chain, "transform b with a second simulated NTT chain");
  s->add_flag("--dump-schedule", sim.dump_schedule, "include both folding schedules");
  s->add_option("--seed", sim.seed)->capture_default_str();
  auto* trace_opt = s->add_option("--trace", sim.trace, "write a CSV trace (default $PARENTT_OUT_DIR/trace.csv)")
                        ->expected(0, 1);
  s->add_option("--dsd-capacity", sim.capacities, "override a DSD's register capacity, ID=N (repeatable)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "throughput of the multiplier across sizes");
  b->add_option("--sizes", bench.sizes)->delimiter(',')->capture_default_str();
  b->add_option("--reps", bench.reps)->capture_default_str();
  b->add_option("--spot-checks", bench.spot_checks, "oracle coefficients per product")->capture_default_str();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--out", bench.out_path, "also write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  sim.trace_given = trace_opt->count() > 0;

  if (p->parsed()) return cmd_primes(primes);
  if (m->parsed()) return cmd_multiply(mul);
  if (s->parsed()) return cmd_simulate(sim);
  if (b->parsed()) return cmd_bench(bench);
  return kExitConfig;
}
