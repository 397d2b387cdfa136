// Copyright (C) 2026 The parentt Authors
// SPDX-License-Identifier: Apache-2.0

#include "parentt/rnspoly.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "parentt/errors.hpp"
#include "parentt/pipesim.hpp"

namespace parentt::rnspoly {

using modint::OpCounter;
using nttref::ResiduePoly;

namespace {

WideUint pow_wide(const WideUint& x, unsigned k) {
  WideUint r(1);
  for (unsigned i = 0; i < k; ++i) r *= x;
  return r;
}

unsigned default_n_beta(unsigned t, unsigned t_prime) {
  unsigned d = t / t_prime;
  if (d >= 2) return std::max(1U, t_prime - 1);
  if (t <= 2) return std::max(1U, t - 1);
  return t - 2;  // one interior Barrett splits the deepest chain
}

// Worst-case widths of the shift-add residual unit for one modulus; empty string when
// everything fits in mu bits.
std::string approach1_check(const Channel& ch, unsigned t, unsigned v, unsigned mu) {
  const WideUint digit_max = WideUint::power_of_two(v) - WideUint(1);
  const WideUint limit = WideUint::power_of_two(mu);
  const WideUint beta(ch.prime.beta);
  WideUint sum;
  for (unsigned k = 0; k < t; ++k) {
    WideUint term;
    if (ch.interior_barrett && k == t - 1) {
      WideUint before = digit_max * pow_wide(beta, t - 2);
      if (before >= limit) return "interior Barrett input exceeds mu bits";
      term = WideUint(ch.prime.q - 1) * beta;
    } else {
      term = digit_max * pow_wide(beta, k);
    }
    sum += term;
  }
  if (sum >= limit) return "shift-add accumulation exceeds mu bits";
  return {};
}

std::string approach2_check(const Channel& ch, unsigned t_prime, unsigned d, unsigned v, unsigned mu) {
  const WideUint digit_max = WideUint::power_of_two(v) - WideUint(1);
  const WideUint limit = WideUint::power_of_two(mu);
  const WideUint beta(ch.prime.beta);
  WideUint block;
  for (unsigned j = 0; j < t_prime; ++j) block += digit_max * pow_wide(beta, j);
  if (block >= limit) return "block partial sum exceeds mu bits";
  WideUint qm1(ch.prime.q - 1);
  WideUint total = block;
  for (unsigned r = 1; r < d; ++r) total += qm1 * qm1;
  if (total >= limit) return "block accumulation exceeds mu bits";
  return {};
}

WideUint sau_chain(WideUint z, unsigned depth, const SignedPotForm& pot, OpCounter* ops) {
  for (unsigned k = 0; k < depth; ++k) z = modint::sau_multiply(z, pot, ops);
  return z;
}

}  // namespace

RnsContext build_context(const ContextConfig& cfg) {
  if (cfg.v < 3 || cfg.v > 62) throw ConfigError("build_context: v must be in [3, 62]");
  if (cfg.t < 1) throw ConfigError("build_context: t must be >= 1");
  if (cfg.n < 4 || (cfg.n & (cfg.n - 1)) != 0) throw ConfigError("build_context: n must be a power of two >= 4");
  unsigned t_prime = cfg.t_prime == 0 ? cfg.t : cfg.t_prime;
  if (cfg.t % t_prime != 0) throw ConfigError("build_context: t must be a multiple of t'");
  unsigned mu = cfg.mu == 0 ? 2 * cfg.v : cfg.mu;
  if (mu < 2 * cfg.v) throw ConfigError("build_context: mu must be >= 2v");
  if (static_cast<std::size_t>(cfg.v) * cfg.t + 8 > WideUint::kBits / 2) {
    throw ConfigError("build_context: v * t exceeds the wide-integer capacity");
  }

  RnsContext ctx;
  ctx.t_ = cfg.t;
  ctx.t_prime_ = t_prime;
  ctx.d_ = cfg.t / t_prime;
  ctx.v_ = cfg.v;
  ctx.n_ = cfg.n;
  ctx.mu_ = mu;
  ctx.n_beta_ = cfg.n_beta.value_or(default_n_beta(cfg.t, t_prime));
  ctx.base_ = WideUint::power_of_two(cfg.v);

  auto found = primeforge::search_special_primes({cfg.v, cfg.n, mu, cfg.pot_terms, ctx.n_beta_});
  std::vector<primeforge::SpecialPrime> chosen;
  if (cfg.primes.empty()) {
    if (found.size() < cfg.t) {
      throw ConfigError("build_context: only " + std::to_string(found.size()) + " special primes for v=" +
                        std::to_string(cfg.v) + " n=" + std::to_string(cfg.n) + " mu=" + std::to_string(mu) +
                        " n_beta=" + std::to_string(ctx.n_beta_) + ", need " + std::to_string(cfg.t));
    }
    chosen.assign(found.begin(), found.begin() + cfg.t);
  } else {
    if (cfg.primes.size() != cfg.t) throw ConfigError("build_context: expected t explicit primes");
    for (auto q : cfg.primes) {
      auto it = std::find_if(found.begin(), found.end(), [q](const auto& sp) { return sp.q == q; });
      if (it == found.end()) {
        throw ConfigError("build_context: " + std::to_string(q) + " is not a special prime under this configuration");
      }
      if (std::any_of(chosen.begin(), chosen.end(), [q](const auto& sp) { return sp.q == q; })) {
        throw ConfigError("build_context: duplicate modulus " + std::to_string(q));
      }
      chosen.push_back(*it);
    }
  }

  for (auto& sp : chosen) {
    Channel ch;
    ch.prime = sp;
    ch.ntt = nttref::NttParams(cfg.n, sp.q);
    auto mult = modint::BarrettParams::for_multiplication(sp.q);
    for (unsigned r = 0; r < ctx.d_; ++r) {
      ch.block_constants.push_back(modint::pow_mod(sp.beta % sp.q, static_cast<std::uint64_t>(t_prime) * r, mult));
    }
    unsigned v1 = sp.pot.leading_exponent();
    ch.interior_barrett = cfg.t >= 3 && cfg.v + (cfg.t - 1) * (v1 + 1) + 1 > mu;
    ch.approach1_error = approach1_check(ch, cfg.t, cfg.v, mu);
    std::string why = ctx.d_ >= 2 ? approach2_check(ch, t_prime, ctx.d_, cfg.v, mu) : ch.approach1_error;
    if (!why.empty()) throw ConfigError("build_context: q=" + std::to_string(sp.q) + ": " + why);
    ctx.channels_.push_back(std::move(ch));
  }

  ctx.q_ = WideUint(1);
  for (const auto& ch : ctx.channels_) ctx.q_ *= WideUint(ch.prime.q);
  for (const auto& ch : ctx.channels_) {
    WideUint qs = ctx.q_ / WideUint(ch.prime.q);
    auto bp = modint::BarrettParams::for_multiplication(ch.prime.q);
    std::uint64_t qs_mod = qs.divmod_u64(ch.prime.q).second;
    std::uint64_t qt = modint::inv_mod_prime(qs_mod, bp);
    ctx.q_star_.push_back(qs);
    ctx.q_tilde_.push_back(qt);
    ctx.e_.push_back(qs * WideUint(qt));
  }
  ctx.validate();
  return ctx;
}

void RnsContext::validate() const {
  if (channels_.size() != t_) throw std::logic_error("RnsContext: channel count != t");
  WideUint prod(1);
  for (std::size_t i = 0; i < t_; ++i) {
    const auto qi = channels_[i].prime.q;
    prod *= WideUint(qi);
    for (std::size_t j = i + 1; j < t_; ++j) {
      if (std::gcd(qi, channels_[j].prime.q) != 1) throw std::logic_error("RnsContext: moduli not coprime");
    }
  }
  if (prod != q_) throw std::logic_error("RnsContext: q is not the product of the moduli");
  if (q_ > WideUint::power_of_two(static_cast<std::size_t>(v_) * t_)) throw std::logic_error("RnsContext: q > B^t");
  for (std::size_t i = 0; i < t_; ++i) {
    const auto qi = channels_[i].prime.q;
    auto bp = modint::BarrettParams::for_multiplication(qi);
    if (q_star_[i] * WideUint(qi) != q_) throw std::logic_error("RnsContext: q*_i * q_i != q");
    if (modint::mod_mul(q_tilde_[i], q_star_[i].divmod_u64(qi).second, bp) != 1) {
      throw std::logic_error("RnsContext: q~_i is not the inverse of q*_i");
    }
    for (std::size_t j = 0; j < t_; ++j) {
      std::uint64_t r = e_[i].divmod_u64(channels_[j].prime.q).second;
      if (r != (i == j ? 1U : 0U)) throw std::logic_error("RnsContext: e_i is not a CRT idempotent");
    }
  }
}

SegmentVector decompose_segments(const WideUint& a, const RnsContext& ctx) {
  const std::size_t width = static_cast<std::size_t>(ctx.v()) * ctx.t();
  if (a.bit_length() > width) throw std::domain_error("decompose_segments: a >= B^t");
  const std::uint64_t mask = (std::uint64_t{1} << ctx.v()) - 1;
  SegmentVector z(ctx.t());
  for (unsigned k = 0; k < ctx.t(); ++k) z[k] = (a >> (static_cast<std::size_t>(ctx.v()) * k)).limb(0) & mask;
  return z;
}

std::uint64_t residual_coeff(const WideUint& a, std::size_t i, const RnsContext& ctx, OpCounter* ops) {
  if (i >= ctx.t()) throw std::out_of_range("residual_coeff: channel index");
  if (a >= ctx.q()) throw std::domain_error("residual_coeff: a >= q");
  const Channel& ch = ctx.channels()[i];
  if (!ch.approach1_error.empty()) throw ConfigError("residual_coeff: q=" + std::to_string(ch.prime.q) + ": " + ch.approach1_error);
  const auto z = decompose_segments(a, ctx);
  WideUint sum;
  for (unsigned k = 0; k < ctx.t(); ++k) {
    if (ch.interior_barrett && k == ctx.t() - 1) {
      WideUint r = sau_chain(WideUint(z[k]), k - 1, ch.prime.pot, ops);
      std::uint64_t red = modint::barrett_reduce(r, ch.prime.barrett, ops);
      sum += modint::sau_multiply(red, ch.prime.pot, ops);
    } else {
      sum += sau_chain(WideUint(z[k]), k, ch.prime.pot, ops);
    }
  }
  return modint::barrett_reduce(sum, ch.prime.barrett, ops);
}

std::uint64_t residual_coeff_factored(const WideUint& a, std::size_t i, const RnsContext& ctx, OpCounter* ops) {
  if (ctx.d() == 1) return residual_coeff(a, i, ctx, ops);
  if (i >= ctx.t()) throw std::out_of_range("residual_coeff_factored: channel index");
  if (a >= ctx.q()) throw std::domain_error("residual_coeff_factored: a >= q");
  const Channel& ch = ctx.channels()[i];
  const auto z = decompose_segments(a, ctx);
  const unsigned tp = ctx.t_prime();
  WideUint acc;
  for (unsigned rho = 0; rho < ctx.d(); ++rho) {
    WideUint part;
    for (unsigned j = 0; j < tp; ++j) part += sau_chain(WideUint(z[rho * tp + j]), j, ch.prime.pot, ops);
    if (rho == 0) {
      acc += part;
      continue;
    }
    std::uint64_t red = modint::barrett_reduce(part, ch.prime.barrett, ops);
    if (ops != nullptr) ++ops->general_mul;
    acc += WideUint::from_u128(static_cast<unsigned __int128>(red) * ch.block_constants[rho]);
  }
  return modint::barrett_reduce(acc, ch.prime.barrett, ops);
}

namespace {

void check_big(const BigPoly& a, const RnsContext& ctx, const char* what) {
  if (a.coeffs.size() != ctx.n()) {
    throw std::invalid_argument(std::string(what) + ": polynomial length " + std::to_string(a.coeffs.size()) +
                                " != n=" + std::to_string(ctx.n()));
  }
  for (const auto& c : a.coeffs) {
    if (c >= ctx.q()) throw std::invalid_argument(std::string(what) + ": coefficient >= q");
  }
}

}  // namespace

std::vector<ResiduePoly> to_residues(const BigPoly& a, const RnsContext& ctx, OpCounter* ops) {
  check_big(a, ctx, "to_residues");
  std::vector<ResiduePoly> out(ctx.t(), ResiduePoly{std::vector<std::uint64_t>(ctx.n()), nttref::Domain::time});
  for (std::size_t i = 0; i < ctx.t(); ++i) {
    for (std::size_t j = 0; j < ctx.n(); ++j) {
      out[i].coeffs[j] = ctx.d() >= 2 ? residual_coeff_factored(a.coeffs[j], i, ctx, ops)
                                      : residual_coeff(a.coeffs[j], i, ctx, ops);
    }
  }
  return out;
}

BigPoly from_residues(const std::vector<ResiduePoly>& parts, const RnsContext& ctx) {
  if (parts.size() != ctx.t()) throw std::invalid_argument("from_residues: expected t residue polynomials");
  for (std::size_t i = 0; i < ctx.t(); ++i) {
    if (parts[i].coeffs.size() != ctx.n()) throw std::invalid_argument("from_residues: residue length != n");
  }
  std::vector<modint::BarrettParams> mult;
  for (const auto& ch : ctx.channels()) mult.push_back(modint::BarrettParams::for_multiplication(ch.prime.q));
  BigPoly out{std::vector<WideUint>(ctx.n())};
  for (std::size_t j = 0; j < ctx.n(); ++j) {
    WideUint acc;
    for (std::size_t i = 0; i < ctx.t(); ++i) {
      std::uint64_t p = parts[i].coeffs[j];
      if (p >= ctx.channels()[i].prime.q) throw std::invalid_argument("from_residues: residue not reduced");
      std::uint64_t w = modint::mod_mul(p, ctx.q_tilde()[i], mult[i]);
      acc += ctx.q_star()[i] * WideUint(w);
    }
    // Each term is below q, so at most t - 1 subtractions are needed.
    unsigned subs = 0;
    while (acc >= ctx.q()) {
      acc -= ctx.q();
      if (++subs > ctx.t() - 1) throw std::logic_error("from_residues: too many conditional subtractions");
    }
    out.coeffs[j] = acc;
  }
  return out;
}

BigPoly parentt_multiply(const BigPoly& a, const BigPoly& b, const RnsContext& ctx, const MultiplyOptions& opts) {
  check_big(a, ctx, "parentt_multiply");
  check_big(b, ctx, "parentt_multiply");
  auto ra = to_residues(a, ctx);
  auto rb = to_residues(b, ctx);
  std::vector<ResiduePoly> prod(ctx.t());
  auto run = [&](std::size_t i) {
    const auto& params = ctx.channels()[i].ntt;
    if (opts.engine == ChannelEngine::simulator) {
      pipesim::PipelineModel model(params, pipesim::PipeConfig{}, pipesim::Mode::cascade);
      pipesim::SimInput in;
      in.a = {ra[i]};
      in.b = {rb[i]};
      prod[i] = pipesim::simulate(model, in).outputs[0];
    } else {
      prod[i] = nttref::polymul_ntt(ra[i], rb[i], params);
    }
  };
  if (opts.parallel && ctx.t() > 1) {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(ctx.t());
    for (std::size_t i = 0; i < ctx.t(); ++i) {
      pool.emplace_back([&, i] {
        try {
          run(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t i = 0; i < ctx.t(); ++i) run(i);
  }
  return from_residues(prod, ctx);
}

BigPoly schoolbook_negacyclic_wide(const BigPoly& a, const BigPoly& b, const WideUint& q) {
  const std::size_t n = a.coeffs.size();
  if (b.coeffs.size() != n) throw std::invalid_argument("schoolbook_negacyclic_wide: length mismatch");
  for (const auto* p : {&a, &b}) {
    for (const auto& c : p->coeffs) {
      if (c >= q) throw std::invalid_argument("schoolbook_negacyclic_wide: coefficient >= q");
    }
  }
  std::vector<WideUint> pos(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      WideUint prod = a.coeffs[i] * b.coeffs[j];
      std::size_t k = i + j;
      if (k < n) {
        pos[k] += prod;
      } else {
        neg[k - n] += prod;
      }
    }
  }
  BigPoly out{std::vector<WideUint>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    WideUint p = pos[k] % q;
    WideUint m = neg[k] % q;
    out.coeffs[k] = p >= m ? p - m : p + q - m;
  }
  return out;
}

BigPoly read_hex_poly(std::istream& in, std::size_t n) {
  BigPoly p;
  p.coeffs.reserve(n);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    std::size_t lead = line.find_first_not_of(" \t");
    if (lead == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": empty coefficient");
    }
    if (p.coeffs.size() == n) throw std::invalid_argument("more than " + std::to_string(n) + " coefficients");
    try {
      p.coeffs.push_back(WideUint::from_hex(std::string_view(line).substr(lead)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (p.coeffs.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " coefficients, got " +
                                std::to_string(p.coeffs.size()));
  }
  return p;
}

void write_hex_poly(std::ostream& out, const BigPoly& p) {
  for (const auto& c : p.coeffs) out << c.to_hex() << '\n';
}

}  // namespace parentt::rnspoly
