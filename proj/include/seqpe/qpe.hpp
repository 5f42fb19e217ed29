#pragma once

/**
 * Phase-estimation circuit builders: canonical QPE with controlled
 * Trotter powers, split-evolution QPE where each controlled power is
 * replaced by a CSWAP interference gadget against a reference register
 * (plain / cat fan-out / measure-reset / mixed per-bit policies), and
 * the compute-uncompute baseline.
 *
 * Register layout of a built circuit (little-endian qubit indices):
 *   phase   [0, M)          - phase register, bit j on qubit j
 *   systemA [M, M+N)        - the input-state lane
 *   systemB [M+N, M+2N)     - the reference lane (absent for canonical
 *                             and compute-uncompute circuits)
 *   fanout  [M+2N, M+3N-1)  - cat-variant GHZ register
 *
 * Classical bits: phase readout occupies cbits [0, M) with qubit q
 * measured into cbit M-1-q (the inverse QFT here omits qubit reversal,
 * see inverse_qft); error-detection bits follow from cbit M onward in
 * circuit order.
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpe/circuit.hpp"
#include "seqpe/compile.hpp"
#include "seqpe/ethylene.hpp"
#include "seqpe/pauli.hpp"

namespace seqpe {

/** The reference (vacuum) phase Theta(tau) = (-tau E_vac / 2 pi) mod 1. */
struct ReferencePhase {
  double theta = 0;
  double e_vac = 0;
  double tau = 0;
};

inline ReferencePhase reference_theta(const PauliSum& h, double tau) {
  if (tau <= 0) throw std::invalid_argument("reference_theta: tau must be positive");
  const double e_vac = vacuum_energy(h);
  double theta = std::fmod(-tau * e_vac / (2 * pi), 1.0);
  if (theta < 0) theta += 1.0;
  ReferencePhase out;
  out.theta = theta;
  out.e_vac = e_vac;
  out.tau = tau;
  return out;
}

/** Per-bit block choice: 'c' (controlled power) or 'g' (gadget), index
 *  j ascending, plus the cat-fan-out and measure-reset flags. */
struct VariantPolicy {
  std::string bits;
  bool cat = false;
  bool mr = false;

  static VariantPolicy from_string(const std::string& s, bool cat = false,
                                   bool mr = false) {
    if (s.empty()) throw std::invalid_argument("VariantPolicy: empty policy");
    for (char ch : s) {
      if (ch != 'c' && ch != 'g') {
        throw std::invalid_argument("VariantPolicy: policy chars must be 'c' or 'g'");
      }
    }
    VariantPolicy p;
    p.bits = s;
    p.cat = cat;
    p.mr = mr;
    return p;
  }

  static VariantPolicy all_gadget(unsigned m, bool cat = false, bool mr = false) {
    return from_string(std::string(m, 'g'), cat, mr);
  }

  static VariantPolicy all_controlled(unsigned m) {
    return from_string(std::string(m, 'c'));
  }

  bool gadget_at(unsigned j) const { return bits.at(j) == 'g'; }
  unsigned gadget_rounds() const {
    unsigned r = 0;
    for (char ch : bits) r += ch == 'g';
    return r;
  }
};

/** One gadget block: lane unitaries, phase in turns, variant flags. */
struct GadgetSpec {
  Circuit ua;
  Circuit ub;
  double theta = 0;
  bool use_cat = false;
  bool measure_reset = false;
};

/** Physical placement of a gadget inside a larger frame. */
struct GadgetLayout {
  std::vector<unsigned> lane_a;
  std::vector<unsigned> lane_b;
  std::vector<unsigned> fanout;     // size N-1 when use_cat (empty for N=1)
  unsigned ed_cbit_start = 0;       // first classical bit for measure_reset
};

namespace detail {

/** CX doubling tree sharing `root` across `targets`; depth ceil(log2 N). */
inline void fanout_tree(Circuit& c, unsigned root,
                        const std::vector<unsigned>& targets, bool invert) {
  std::vector<Gate> emitted;
  std::vector<unsigned> frontier{root};
  std::size_t next = 0;
  while (next < targets.size()) {
    const std::size_t sources = frontier.size();
    for (std::size_t s = 0; s < sources && next < targets.size(); ++s, ++next) {
      emitted.push_back({GateKind::CX, {frontier[s], targets[next]}});
      frontier.push_back(targets[next]);
    }
  }
  if (invert) {
    for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) c.add(*it);
  } else {
    for (const auto& g : emitted) c.add(g);
  }
}

}  // namespace detail

/**
 * The interference gadget
 *   |0><0| (x) (UA^dag (x) UB)  +  e^{2 pi i theta} |1><1| (x) (UB (x) UA^dag)
 * on (control, lane A, lane B): CSWAP cascade, UA^dag on lane A in
 * parallel with UB on lane B, Phase(theta) on the control, mirrored
 * cascade. With use_cat the control is fanned out over the fan-out
 * register through a CX tree so the CSWAPs run on distinct keys; with
 * measure_reset the reference and fan-out qubits are measured into
 * classical bits from layout.ed_cbit_start and reset (the reference is
 * checked in the computational basis, i.e. against the vacuum).
 */
inline Circuit cswap_gadget(const GadgetSpec& spec, unsigned control,
                            const GadgetLayout& layout, unsigned n_qubits,
                            unsigned n_cbits = 0) {
  const unsigned N = spec.ub.n_qubits;
  if (spec.ua.n_qubits != N && !spec.ua.gates.empty()) {
    throw std::invalid_argument("cswap_gadget: lane unitaries differ in width");
  }
  if (layout.lane_a.size() != N || layout.lane_b.size() != N) {
    throw std::invalid_argument("cswap_gadget: lane size mismatch");
  }
  if (spec.use_cat && layout.fanout.size() + 1 != N) {
    throw std::invalid_argument("cswap_gadget: fan-out register must hold N-1 qubits");
  }
  Circuit c(n_qubits, n_cbits);
  for (unsigned q : layout.lane_a) c.check_qubit(q);
  for (unsigned q : layout.lane_b) c.check_qubit(q);

  std::vector<unsigned> keys(N, control);
  if (spec.use_cat) {
    detail::fanout_tree(c, control, layout.fanout, false);
    for (unsigned i = 1; i < N; ++i) keys[i] = layout.fanout[i - 1];
  }
  for (unsigned i = 0; i < N; ++i) c.cswap(keys[i], layout.lane_a[i], layout.lane_b[i]);

  if (!spec.ua.gates.empty()) {
    const Circuit ua_dag = embed(inverse(spec.ua), n_qubits, layout.lane_a);
    for (const auto& g : ua_dag.gates) c.add(g);
  }
  const Circuit ub = embed(spec.ub, n_qubits, layout.lane_b);
  for (const auto& g : ub.gates) c.add(g);
  c.phase(control, spec.theta);

  for (unsigned i = N; i-- > 0;) c.cswap(keys[i], layout.lane_a[i], layout.lane_b[i]);
  if (spec.use_cat) detail::fanout_tree(c, control, layout.fanout, true);

  if (spec.measure_reset) {
    unsigned cbit = layout.ed_cbit_start;
    for (unsigned q : layout.lane_b) {
      c.measure(q, cbit++);
      c.reset(q);
    }
    for (unsigned q : layout.fanout) {
      c.measure(q, cbit++);
      c.reset(q);
    }
  }
  return c;
}

/** Base step plus its controlled form (width N+1, control on qubit N). */
struct StepSet {
  Circuit step;
  Circuit controlled_step;
};

struct QpeOptions {
  bool initial_hadamards = true;
  bool apply_inverse_qft = true;
  bool measure = true;
};

namespace detail {

inline std::vector<unsigned> range_map(unsigned start, unsigned size) {
  std::vector<unsigned> out(size);
  for (unsigned i = 0; i < size; ++i) out[i] = start + i;
  return out;
}

inline void append(Circuit& c, const Circuit& part) {
  for (const auto& g : part.gates) c.add(g);
}

inline void finish_phase_readout(Circuit& c, unsigned m, const QpeOptions& opt) {
  if (opt.apply_inverse_qft) {
    append(c, embed(inverse_qft(m), c.n_qubits, range_map(0, m)));
  }
  if (opt.measure) {
    for (unsigned q = 0; q < m; ++q) c.measure(q, m - 1 - q);
  }
}

}  // namespace detail

/**
 * Canonical QPE: Hadamards on the phase register, state preparation on
 * the system register, controlled base-step powers (the controlled step
 * from `steps` repeated 2^j times for bit j), inverse QFT, readout.
 */
inline Circuit canonical_qpe_from_steps(unsigned m, const StepSet& steps,
                                        const Circuit& psi_prep,
                                        const QpeOptions& opt = {}) {
  if (m < 1) throw std::invalid_argument("canonical_qpe: M must be at least 1");
  const unsigned N = psi_prep.n_qubits;
  if (steps.controlled_step.n_qubits != N + 1) {
    throw std::invalid_argument("canonical_qpe: controlled step must span N+1 qubits");
  }
  Circuit c(m + N, opt.measure ? m : 0);
  c.add_register("phase", 0, m);
  c.add_register("systemA", m, N);
  if (opt.initial_hadamards) {
    for (unsigned j = 0; j < m; ++j) c.h(j);
  }
  detail::append(c, embed(psi_prep, c.n_qubits, detail::range_map(m, N)));
  c.barrier();
  for (unsigned j = 0; j < m; ++j) {
    std::vector<unsigned> map = detail::range_map(m, N);
    map.push_back(j);  // control wire of the controlled step
    const Circuit block = embed(steps.controlled_step, c.n_qubits, map);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) detail::append(c, block);
    c.barrier();
  }
  detail::finish_phase_readout(c, m, opt);
  return c;
}

/**
 * Split-evolution QPE. Bits with policy 'g' get the CSWAP gadget with
 * the balanced split UA = UB = U^{2^{j-1}} (bit 0: UA = I, UB = U) and
 * gadget phase (2^j Theta) mod 1; bits with 'c' get the controlled
 * power as in canonical QPE. Error-detection bits: terminal reference
 * (and fan-out) measurements, or per-round measure-reset under the MR
 * flag. A non-vacuum reference preparation is composed onto lane B but
 * is incompatible with the MR flag (the reset re-prepares |0...0>).
 */
inline Circuit se_qpe_from_steps(unsigned m, const StepSet& steps,
                                 const Circuit& psi_prep, const Circuit& ref_prep,
                                 const VariantPolicy& policy,
                                 const ReferencePhase& theta_ref,
                                 const QpeOptions& opt = {}) {
  if (m < 1) throw std::invalid_argument("se_qpe: M must be at least 1");
  if (policy.bits.size() != m) {
    throw std::invalid_argument("se_qpe: policy length must equal M");
  }
  const unsigned N = psi_prep.n_qubits;
  if (steps.step.n_qubits != N) {
    throw std::invalid_argument("se_qpe: step width differs from system width");
  }
  if (!ref_prep.gates.empty() && ref_prep.n_qubits != N) {
    throw std::invalid_argument("se_qpe: reference prep width differs from system");
  }
  if (policy.mr && !ref_prep.gates.empty()) {
    throw std::invalid_argument("se_qpe: measure-reset requires the vacuum reference");
  }
  const unsigned n_fan = policy.cat ? N - 1 : 0;
  const unsigned ed_per_round = N + n_fan;
  const unsigned n_ed =
      policy.mr ? policy.gadget_rounds() * ed_per_round : ed_per_round;
  const unsigned n_qubits = m + 2 * N + n_fan;
  Circuit c(n_qubits, opt.measure ? m + n_ed : 0);
  c.add_register("phase", 0, m);
  c.add_register("systemA", m, N);
  c.add_register("systemB", m + N, N);
  if (policy.cat) c.add_register("fanout", m + 2 * N, n_fan);

  const auto lane_a = detail::range_map(m, N);
  const auto lane_b = detail::range_map(m + N, N);
  const auto fan = detail::range_map(m + 2 * N, n_fan);

  if (opt.initial_hadamards) {
    for (unsigned j = 0; j < m; ++j) c.h(j);
  }
  detail::append(c, embed(psi_prep, n_qubits, lane_a));
  if (!ref_prep.gates.empty()) detail::append(c, embed(ref_prep, n_qubits, lane_b));
  c.barrier();

  unsigned round = 0;
  for (unsigned j = 0; j < m; ++j) {
    if (policy.gadget_at(j)) {
      GadgetSpec spec;
      if (j == 0) {
        spec.ua = Circuit(N);
        spec.ub = steps.step;
      } else {
        spec.ua = repeat(steps.step, 1u << (j - 1));
        spec.ub = spec.ua;
      }
      spec.theta = std::fmod(std::ldexp(theta_ref.theta, static_cast<int>(j)), 1.0);
      spec.use_cat = policy.cat;
      spec.measure_reset = policy.mr && opt.measure;
      GadgetLayout layout;
      layout.lane_a = lane_a;
      layout.lane_b = lane_b;
      layout.fanout = fan;
      layout.ed_cbit_start = m + round * ed_per_round;
      detail::append(c, cswap_gadget(spec, j, layout, n_qubits, c.n_cbits));
      ++round;
    } else {
      if (steps.controlled_step.n_qubits != N + 1) {
        throw std::invalid_argument("se_qpe: policy 'c' needs a controlled step");
      }
      std::vector<unsigned> map = lane_a;
      map.push_back(j);
      const Circuit block = embed(steps.controlled_step, n_qubits, map);
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) detail::append(c, block);
    }
    c.barrier();
  }
  detail::finish_phase_readout(c, m, opt);
  if (opt.measure && !policy.mr) {
    unsigned cbit = m;
    for (unsigned q : lane_b) c.measure(q, cbit++);
    for (unsigned q : fan) c.measure(q, cbit++);
  }
  return c;
}

/**
 * Compute-uncompute baseline: the system register starts in the vacuum;
 * every bit j applies controlled psi_prep, the uncontrolled power
 * U^{2^j}, controlled psi_prep^dag, and Phase((2^j Theta) mod 1) on the
 * phase qubit.
 */
inline Circuit cu_qpe_from_steps(unsigned m, const StepSet& steps,
                                 const Circuit& psi_prep,
                                 const ReferencePhase& theta_ref,
                                 const QpeOptions& opt = {}) {
  if (m < 1) throw std::invalid_argument("cu_qpe: M must be at least 1");
  const unsigned N = psi_prep.n_qubits;
  if (steps.step.n_qubits != N) {
    throw std::invalid_argument("cu_qpe: step width differs from system width");
  }
  const unsigned n_qubits = m + N;
  Circuit c(n_qubits, opt.measure ? m : 0);
  c.add_register("phase", 0, m);
  c.add_register("systemA", m, N);
  if (opt.initial_hadamards) {
    for (unsigned j = 0; j < m; ++j) c.h(j);
  }
  c.barrier();
  const Circuit prep = embed(psi_prep, n_qubits, detail::range_map(m, N));
  const Circuit step = embed(steps.step, n_qubits, detail::range_map(m, N));
  for (unsigned j = 0; j < m; ++j) {
    detail::append(c, controlled_circuit(prep, j));
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << j); ++k) detail::append(c, step);
    detail::append(c, controlled_circuit(inverse(prep), j));
    c.phase(j, std::fmod(std::ldexp(theta_ref.theta, static_cast<int>(j)), 1.0));
    c.barrier();
  }
  detail::finish_phase_readout(c, m, opt);
  return c;
}

/** Ethylene step pair for a schedule. */
inline StepSet ethylene_steps(const TrotterSchedule& sched, const PPPParams& p = {}) {
  StepSet s;
  s.step = trotter_step_circuit(sched, p);
  s.controlled_step = controlled_trotter_step_circuit(sched, p);
  return s;
}

inline Circuit canonical_qpe(unsigned m, const TrotterSchedule& sched,
                             const Circuit& psi_prep, const PPPParams& p = {}) {
  return canonical_qpe_from_steps(m, ethylene_steps(sched, p), psi_prep);
}

inline Circuit se_qpe(unsigned m, const TrotterSchedule& sched,
                      const Circuit& psi_prep, const Circuit& ref_prep,
                      const VariantPolicy& policy, const ReferencePhase& theta_ref,
                      const PPPParams& p = {}) {
  return se_qpe_from_steps(m, ethylene_steps(sched, p), psi_prep, ref_prep, policy,
                           theta_ref);
}

inline Circuit cu_qpe(unsigned m, const TrotterSchedule& sched,
                      const Circuit& psi_prep, const ReferencePhase& theta_ref,
                      const PPPParams& p = {}) {
  return cu_qpe_from_steps(m, ethylene_steps(sched, p), psi_prep, theta_ref);
}

}  // namespace seqpe
