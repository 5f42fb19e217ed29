#pragma once

/**
 * Analytic resource model for double-factorized (DF) Trotter steps and
 * the two phase-estimation strategies built on them.
 *
 * Cost metrics follow the two-gate-class accounting of metrics.hpp:
 * CX-class and Rz-class counts and depths, with T entries obtained from
 * the Rz rows through a per-rotation synthesis cost t_eps (CSWAPs carry
 * explicit Clifford+T cost instead).
 *
 * Primitive rows (N spin-orbitals, even):
 *   W      basis rotation          CX N(N-1),    depth 4N-6;  Rz N(N-1),   depth 2N-3
 *   W(sb)  spin-block-diagonal W   CX N(N-2)/2,  depth 2N-6;  Rz N(N-2)/2, depth N-3
 *   U0     one-body phases         CX 0,         depth 0;     Rz N,        depth 1
 *   Ul     leaf pair phases        CX N(N-1),    depth 2(N-1);Rz N(N-1)/2, depth N-1
 *   cU0    controlled U0           CX 2N,        depth 2N;    Rz 2N,       depth 2
 *   cUl    controlled Ul           CX 2N(N-1),   depth (N+2)(N-1); Rz N(N-1), depth 2(N-1)
 *   CSWAP pair (serial)            CX 14N, depth 14N; T 14N, T depth 8N
 *   CSWAP pair (cat)               CX 14N+2(N-1), depth 14+2 ceil(log2 N); T 14N, T depth 8
 *
 * Step composition (L leaves):
 *   order 1:  (L+2) W +   U0 + L Ul
 *   order 2: 2(L+1) W + 2 U0 + (2L-1) Ul
 * with U0 -> cU0 and Ul -> cUl (W unchanged) for the controlled step;
 * counts and depths both compose additively.
 */

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqpe/metrics.hpp"

namespace seqpe {

struct PrimitiveCosts {
  CostVector w;
  CostVector u0;
  CostVector ul;
  CostVector cu0;
  CostVector cul;
  CostVector cswap_pair_serial;
  CostVector cswap_pair_cat;
};

inline PrimitiveCosts primitive_costs(unsigned n, bool spin_block = false,
                                      double t_eps = 1.0) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("primitive_costs: n must be even and at least 2");
  }
  const double N = n;
  PrimitiveCosts p;
  auto rot = [&](double cx_count, double cx_depth, double rz_count, double rz_depth) {
    CostVector v;
    v.cx_count = cx_count;
    v.cx_depth = cx_depth;
    v.rz_count = rz_count;
    v.rz_depth = rz_depth;
    v.t_count = rz_count * t_eps;
    v.t_depth = rz_depth * t_eps;
    return v;
  };
  if (spin_block) {
    if (n < 4) throw std::invalid_argument("primitive_costs: spin-block W needs n >= 4");
    p.w = rot(N * (N - 2) / 2, 2 * N - 6, N * (N - 2) / 2, N - 3);
  } else {
    p.w = rot(N * (N - 1), 4 * N - 6, N * (N - 1), 2 * N - 3);
  }
  p.u0 = rot(0, 0, N, 1);
  p.ul = rot(N * (N - 1), 2 * (N - 1), N * (N - 1) / 2, N - 1);
  p.cu0 = rot(2 * N, 2 * N, 2 * N, 2);
  p.cul = rot(2 * N * (N - 1), (N + 2) * (N - 1), N * (N - 1), 2 * (N - 1));

  const double log2n = std::ceil(std::log2(N));
  p.cswap_pair_serial.cx_count = 14 * N;
  p.cswap_pair_serial.cx_depth = 14 * N;
  p.cswap_pair_serial.t_count = 14 * N;
  p.cswap_pair_serial.t_depth = 8 * N;
  p.cswap_pair_cat.cx_count = 14 * N + 2 * (N - 1);
  p.cswap_pair_cat.cx_depth = 14 + 2 * log2n;
  p.cswap_pair_cat.t_count = 14 * N;
  p.cswap_pair_cat.t_depth = 8;
  return p;
}

/** Per-Trotter-step cost by composition of the primitive rows. */
inline CostVector step_cost(int order, unsigned n, unsigned l, bool controlled,
                            bool spin_block = false, double t_eps = 1.0) {
  if (order != 1 && order != 2) throw std::invalid_argument("step_cost: order must be 1 or 2");
  if (l < 1) throw std::invalid_argument("step_cost: l must be at least 1");
  const PrimitiveCosts p = primitive_costs(n, spin_block, t_eps);
  const CostVector& u0 = controlled ? p.cu0 : p.u0;
  const CostVector& ul = controlled ? p.cul : p.ul;
  const double L = l;
  if (order == 1) {
    return (L + 2) * p.w + u0 + L * ul;
  }
  return 2 * (L + 1) * p.w + 2.0 * u0 + (2 * L - 1) * ul;
}

struct OverheadRatios {
  double r_cx_count = 0;  // R_CX
  double r_rz_count = 0;  // R_Rz
  double r_cx_depth = 0;  // r_CX
  double r_rz_depth = 0;  // r_Rz
};

inline OverheadRatios overhead_ratios(unsigned n, unsigned l, int order = 2,
                                      bool spin_block = false) {
  const CostVector base = step_cost(order, n, l, false, spin_block);
  const CostVector ctrl = step_cost(order, n, l, true, spin_block);
  OverheadRatios r;
  r.r_cx_count = ctrl.cx_count / base.cx_count;
  r.r_rz_count = ctrl.rz_count / base.rz_count;
  r.r_cx_depth = ctrl.cx_depth / base.cx_depth;
  r.r_rz_depth = ctrl.rz_depth / base.rz_depth;
  return r;
}

enum class Method { QPE, SEQPE, CatSEQPE };

/**
 * Cost of the phase bit j block. QPE repeats the controlled step 2^j
 * times (pass the controlled per-step cost). SE variants run 2^j
 * uncontrolled steps split across the two lanes plus one CSWAP-pair
 * overhead: counts 2^j c + c_swap, depth 2^{j-1} d + d_swap for j > 0
 * and c + c_swap, d + d_swap for the unbalanced j = 0 block.
 */
inline CostVector block_cost(unsigned j, Method method, const CostVector& per_step,
                             const CostVector& swap = {}) {
  if (j > 62) throw std::invalid_argument("block_cost: j out of range");
  const double pow_j = std::ldexp(1.0, static_cast<int>(j));
  CostVector out;
  if (method == Method::QPE) {
    out = pow_j * per_step;
    return out;
  }
  const double count_reps = pow_j;
  const double depth_reps = j == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(j) - 1);
  out.cx_count = count_reps * per_step.cx_count + swap.cx_count;
  out.rz_count = count_reps * per_step.rz_count + swap.rz_count;
  out.t_count = count_reps * per_step.t_count + swap.t_count;
  out.cx_depth = depth_reps * per_step.cx_depth + swap.cx_depth;
  out.rz_depth = depth_reps * per_step.rz_depth + swap.rz_depth;
  out.t_depth = depth_reps * per_step.t_depth + swap.t_depth;
  return out;
}

namespace detail {

inline double pick(const CostVector& v, GateClass cls, bool depth) {
  switch (cls) {
    case GateClass::CX:
    case GateClass::Total2q:
      return depth ? v.cx_depth : v.cx_count;
    case GateClass::Rz:
      return depth ? v.rz_depth : v.rz_count;
    case GateClass::T:
      return depth ? v.t_depth : v.t_count;
  }
  throw std::logic_error("pick: bad class");
}

}  // namespace detail

/**
 * Smallest phase bit j at which the gadget block beats the controlled
 * block in the chosen metric:
 *   counts: 2^j (R-1) c > c_swap;  depth: 2^{j-1} (2r-1) d > d_swap
 * (j = 0 compares c + c_swap against R c directly). Returns nothing
 * when no j <= 62 satisfies the inequality.
 */
inline std::optional<unsigned> breakeven_bit(const CostVector& per_step,
                                             const CostVector& per_step_ctrl,
                                             const CostVector& swap, GateClass cls,
                                             bool depth) {
  for (unsigned j = 0; j <= 62; ++j) {
    const CostVector gadget = block_cost(j, Method::SEQPE, per_step, swap);
    const CostVector ctrl = block_cost(j, Method::QPE, per_step_ctrl);
    if (detail::pick(gadget, cls, depth) < detail::pick(ctrl, cls, depth)) return j;
  }
  return std::nullopt;
}

struct Gains {
  double cx_count = 0;
  double rz_count = 0;
  double cx_depth = 0;
  double rz_depth = 0;
};

struct TotalsAndGains {
  CostVector qpe;          // exact per-bit sums
  CostVector se;
  Gains exact;             // SE / QPE from the exact sums
  Gains closed_form;       // g^count = (1/R)(1 + (M/K) c_swap/c),
                           // g^depth = (1/2r)(1 + 1/K + (2M/K) d_swap/d)
};

inline TotalsAndGains totals_and_gains(unsigned m, const CostVector& per_step,
                                       const CostVector& per_step_ctrl,
                                       const CostVector& swap) {
  if (m < 1 || m > 62) throw std::invalid_argument("totals_and_gains: bad M");
  TotalsAndGains out;
  for (unsigned j = 0; j < m; ++j) {
    out.qpe += block_cost(j, Method::QPE, per_step_ctrl);
    out.se += block_cost(j, Method::SEQPE, per_step, swap);
  }
  out.exact.cx_count = out.se.cx_count / out.qpe.cx_count;
  out.exact.rz_count = out.se.rz_count / out.qpe.rz_count;
  out.exact.cx_depth = out.se.cx_depth / out.qpe.cx_depth;
  out.exact.rz_depth = out.se.rz_depth / out.qpe.rz_depth;

  const double K = std::ldexp(1.0, static_cast<int>(m)) - 1;
  const double M = m;
  auto count_gain = [&](double c, double big_c, double s) {
    return (c / big_c) * (1 + (M / K) * (s / c));
  };
  auto depth_gain = [&](double d, double big_d, double s) {
    return (d / (2 * big_d)) * (1 + 1 / K + (2 * M / K) * (s / d));
  };
  out.closed_form.cx_count = count_gain(per_step.cx_count, per_step_ctrl.cx_count, swap.cx_count);
  out.closed_form.rz_count = count_gain(per_step.rz_count, per_step_ctrl.rz_count, swap.rz_count);
  out.closed_form.cx_depth = depth_gain(per_step.cx_depth, per_step_ctrl.cx_depth, swap.cx_depth);
  out.closed_form.rz_depth = depth_gain(per_step.rz_depth, per_step_ctrl.rz_depth, swap.rz_depth);
  return out;
}

// ------------------------------------------------------------------ DFSpec

/** Double-factorized Hamiltonian coefficients: one-body eigenvalues
 *  alpha_i and per-leaf pair couplings beta^(l)_ij (N x N, used on the
 *  strict lower triangle i > j). */
struct DFSpec {
  unsigned n = 0;
  std::vector<double> alphas;
  std::vector<std::vector<std::vector<double>>> betas;
  bool spin_block = false;

  unsigned l() const { return static_cast<unsigned>(betas.size()); }
};

inline void validate(const DFSpec& spec) {
  if (spec.n < 2 || spec.n % 2 != 0) {
    throw std::invalid_argument("DFSpec: n must be even and at least 2");
  }
  if (spec.alphas.size() != spec.n) {
    throw std::invalid_argument("DFSpec: alphas must hold n entries");
  }
  if (spec.betas.empty()) throw std::invalid_argument("DFSpec: at least one beta leaf required");
  for (const auto& b : spec.betas) {
    if (b.size() != spec.n) throw std::invalid_argument("DFSpec: beta leaf must be n x n");
    for (const auto& row : b) {
      if (row.size() != spec.n) throw std::invalid_argument("DFSpec: beta leaf must be n x n");
    }
  }
}

inline DFSpec parse_df_spec(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("DFSpec: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "n" && key != "alphas" && key != "betas" && key != "spin_block") {
      throw std::invalid_argument("DFSpec: unknown key '" + key + "'");
    }
  }
  DFSpec spec;
  spec.n = j.at("n").get<unsigned>();
  spec.alphas = j.at("alphas").get<std::vector<double>>();
  spec.betas = j.at("betas").get<std::vector<std::vector<std::vector<double>>>>();
  if (j.contains("spin_block")) spec.spin_block = j.at("spin_block").get<bool>();
  validate(spec);
  return spec;
}

inline std::string format_df_spec(const DFSpec& spec) {
  nlohmann::json j;
  j["n"] = spec.n;
  j["alphas"] = spec.alphas;
  j["betas"] = spec.betas;
  j["spin_block"] = spec.spin_block;
  return j.dump(2);
}

/** Deterministic synthetic coefficients with geometrically decaying
 *  leaf magnitudes, so truncation scans have a nontrivial solution. */
inline DFSpec synthetic_df_spec(unsigned n, unsigned l, std::uint64_t seed = 0,
                                bool spin_block = false) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("synthetic_df_spec: n must be even and at least 2");
  }
  if (l < 1) throw std::invalid_argument("synthetic_df_spec: l must be at least 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
  DFSpec spec;
  spec.n = n;
  spec.spin_block = spin_block;
  spec.alphas.resize(n);
  for (double& a : spec.alphas) a = uniform();
  spec.betas.assign(l, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (unsigned leaf = 0; leaf < l; ++leaf) {
    const double scale = std::pow(0.6, leaf) / static_cast<double>(n);
    for (unsigned i = 0; i < n; ++i) {
      for (unsigned k = 0; k < i; ++k) {
        const double v = scale * uniform();
        spec.betas[leaf][i][k] = v;
        spec.betas[leaf][k][i] = v;
      }
    }
  }
  return spec;
}

/** Retained coefficient-norm bound Lambda_L = sum |alpha_i| +
 *  sum_{l <= L} sum_{i > j} |beta_ij^(l)|. */
inline double lambda_norm(const DFSpec& spec, unsigned l_retained) {
  if (l_retained > spec.l()) {
    throw std::invalid_argument("lambda_norm: more leaves than the spec holds");
  }
  double acc = 0;
  for (double a : spec.alphas) acc += std::abs(a);
  for (unsigned leaf = 0; leaf < l_retained; ++leaf) {
    for (unsigned i = 0; i < spec.n; ++i) {
      for (unsigned k = 0; k < i; ++k) acc += std::abs(spec.betas[leaf][i][k]);
    }
  }
  return acc;
}

// -------------------------------------------------------------------- scan

struct ScanConfig {
  double eps_chem = 1.6e-3;
  double xi = 1.7;
  double delta_ref = 0.01630;
  unsigned n_ref = 12;
  double tau_ref = 1.0;
  int trotter_order = 2;

  double eps_trunc() const { return eps_chem / 4; }
  double eps_ts() const { return eps_chem / 4; }
  double eps_synth() const { return eps_chem / 4; }
  double eps_grid() const { return eps_chem / 4; }
  double c_ts() const {
    return std::sqrt(delta_ref / (tau_ref * tau_ref * tau_ref)) /
           std::pow(static_cast<double>(n_ref), xi);
  }
};

struct MethodTotals {
  CostVector totals;          // CX/Rz rows; T rows filled from t_eps below
  double eps_rot = 0;
  std::uint64_t t_eps = 0;
  double t_count = 0;         // rotation-synthesis T plus explicit CSWAP T
  double t_depth = 0;
};

struct ScanReport {
  unsigned l_retained = 0;
  double lambda_l = 0;
  double tau = 0;
  unsigned m = 0;
  std::uint64_t k = 0;
  std::uint64_t n_trot = 0;
  MethodTotals qpe;
  MethodTotals se;
  Gains gains;                // SE / QPE over the four CX/Rz metrics
  double gain_t_count = 0;
  double gain_t_depth = 0;
};

/**
 * End-to-end resource scan: truncate leaves against eps_trunc, fix tau,
 * M and the Trotter number, then report QPE and SE-QPE (cat CSWAP)
 * totals with per-method rotation-synthesis T costs.
 */
inline ScanReport scan(const DFSpec& spec, const ScanConfig& cfg = {}) {
  validate(spec);
  if (cfg.eps_chem <= 0) throw std::invalid_argument("scan: eps_chem must be positive");
  ScanReport rep;

  const double lambda_full = lambda_norm(spec, spec.l());
  unsigned l_min = spec.l();
  for (unsigned l = 1; l <= spec.l(); ++l) {
    if (lambda_full - lambda_norm(spec, l) <= cfg.eps_trunc()) {
      l_min = l;
      break;
    }
  }
  if (lambda_full - lambda_norm(spec, l_min) > cfg.eps_trunc()) {
    throw std::runtime_error("scan: truncation target unsatisfiable");
  }
  rep.l_retained = l_min;
  rep.lambda_l = lambda_norm(spec, l_min);
  if (rep.lambda_l <= 0) throw std::runtime_error("scan: Lambda_L vanishes");

  rep.tau = std::numbers::pi / rep.lambda_l;
  const double m_raw = std::log2(std::numbers::pi / (cfg.eps_grid() * rep.tau));
  rep.m = static_cast<unsigned>(std::ceil(m_raw)) + 1;
  rep.k = (std::uint64_t{1} << rep.m) - 1;
  rep.n_trot = static_cast<std::uint64_t>(std::ceil(
      cfg.c_ts() * rep.tau * std::pow(static_cast<double>(spec.n), cfg.xi) /
      std::sqrt(cfg.eps_ts())));
  if (rep.n_trot < 1) rep.n_trot = 1;

  const CostVector per_step =
      static_cast<double>(rep.n_trot) *
      step_cost(cfg.trotter_order, spec.n, l_min, false, spec.spin_block);
  const CostVector per_step_ctrl =
      static_cast<double>(rep.n_trot) *
      step_cost(cfg.trotter_order, spec.n, l_min, true, spec.spin_block);
  const CostVector swap = primitive_costs(spec.n, false).cswap_pair_cat;

  const TotalsAndGains tg = totals_and_gains(rep.m, per_step, per_step_ctrl, swap);
  rep.qpe.totals = tg.qpe;
  rep.se.totals = tg.se;
  rep.gains = tg.exact;

  auto finish = [&](MethodTotals& mt, double rz_count, double rz_depth,
                    double swap_t_count, double swap_t_depth) {
    mt.eps_rot = rep.tau * cfg.eps_synth() / rz_count;
    mt.t_eps = static_cast<std::uint64_t>(
        std::ceil(3 * std::log2(1.0 / mt.eps_rot) + 10));
    mt.t_count = rz_count * static_cast<double>(mt.t_eps) + swap_t_count;
    mt.t_depth = rz_depth * static_cast<double>(mt.t_eps) + swap_t_depth;
  };
  finish(rep.qpe, rep.qpe.totals.rz_count, rep.qpe.totals.rz_depth, 0, 0);
  finish(rep.se, rep.se.totals.rz_count, rep.se.totals.rz_depth,
         static_cast<double>(rep.m) * swap.t_count,
         static_cast<double>(rep.m) * swap.t_depth);
  rep.qpe.totals.t_count = rep.qpe.t_count;
  rep.qpe.totals.t_depth = rep.qpe.t_depth;
  rep.se.totals.t_count = rep.se.t_count;
  rep.se.totals.t_depth = rep.se.t_depth;
  rep.gain_t_count = rep.se.t_count / rep.qpe.t_count;
  rep.gain_t_depth = rep.se.t_depth / rep.qpe.t_depth;
  return rep;
}

}  // namespace seqpe
