#pragma once

/**
 * The four-qubit PPP ethylene model: Hamiltonian construction, the
 * two-parameter singlet ansatz circuit, the Strang-splitting bias
 * correction lambda, evolution schedules, and exact second-order
 * Trotter-step circuits (plain and singly controlled).
 *
 * Site labels 1..4 of the model map to qubit indices 0..3. The constant
 * energy shift c_tot is reporting-only and never enters a circuit: an
 * identity term contributes an unobservable global phase.
 */

#include <cmath>
#include <stdexcept>
#include <utility>

#include "seqpe/circuit.hpp"
#include "seqpe/compile.hpp"
#include "seqpe/pauli.hpp"

namespace seqpe {

struct PPPParams {
  double alpha = -0.055557;
  double beta1 = 0.067525;
  double beta2 = 0.104616;
  double c_tot = -0.347936;
};

struct TrotterSchedule {
  double tau = 0;
  double s1 = 0;
  double s2 = 0;
  double lambda = 0;
  unsigned M = 1;

  /** Energy grid resolution pi / (2^M tau). */
  double delta_e() const { return pi / (std::ldexp(1.0, static_cast<int>(M)) * tau); }
};

/** Hopping part H1 and interaction part H2 of the PPP Hamiltonian. */
inline std::pair<PauliSum, PauliSum> build_ppp(const PPPParams& p = {}) {
  auto two = [](unsigned a, unsigned b, PauliOp op, double coeff) {
    return PauliString({{a, op}, {b, op}}, coeff);
  };
  PauliSum h1;
  h1 += two(0, 1, PauliOp::X, p.alpha);
  h1 += two(0, 1, PauliOp::Y, p.alpha);
  h1 += two(2, 3, PauliOp::X, p.alpha);
  h1 += two(2, 3, PauliOp::Y, p.alpha);
  PauliSum h2;
  h2 += two(0, 3, PauliOp::Z, p.beta1);
  h2 += two(1, 2, PauliOp::Z, p.beta1);
  h2 += two(0, 2, PauliOp::Z, p.beta2);
  h2 += two(1, 3, PauliOp::Z, p.beta2);
  return {h1, h2};
}

/** Mixing angle whose ansatz is the mean-field singlet. */
inline constexpr double mean_field_theta = pi / 4;

/** Mixing angle reproducing the exact singlet ground state. */
inline constexpr double ground_state_theta = 0.94648805;

/**
 * Two-determinant singlet ansatz on 4 qubits:
 *   H q0; Ry(2 theta) q2; CX 0->2; CX 0->1; CX 2->3; X q1; X q3,
 * preparing cos(theta)/sqrt(2) (|0101> + |1010>) +
 * sin(theta)/sqrt(2) (|0110> + |1001>) over basis labels q3q2q1q0.
 */
inline Circuit ansatz_circuit(double theta) {
  Circuit c(4);
  c.h(0);
  c.ry(2, 2 * theta);
  c.cx(0, 2);
  c.cx(0, 1);
  c.cx(2, 3);
  c.x(1);
  c.x(3);
  return c;
}

/**
 * Strang bias correction lambda = -(1/2) <psi|D|psi> / <psi|h1|psi>
 * with D = (1/24)[h1,[h1,h2]] - (1/12)[h2,[h2,h1]].
 */
inline double lambda_correction(const PauliSum& h1, const PauliSum& h2,
                                const DenseState& psi) {
  const double denom = expectation(h1, psi);
  if (std::abs(denom) < 1e-12) {
    throw std::invalid_argument("lambda_correction: <psi|h1|psi> vanishes");
  }
  const PauliSum d = (Complex{1.0 / 24, 0} * commutator(h1, commutator(h1, h2))) +
                     (Complex{-1.0 / 12, 0} * commutator(h2, commutator(h2, h1)));
  return -0.5 * expectation(d.normalized(), psi) / denom;
}

/** lambda for the model's default parameters and a given ansatz state. */
inline double lambda_correction(const DenseState& psi, const PPPParams& p = {}) {
  auto [h1, h2] = build_ppp(p);
  return lambda_correction(h1, h2, psi);
}

/** s2 = tau, s1 = tau/2 + lambda tau^3. */
inline TrotterSchedule schedule(double tau, unsigned M, double lambda) {
  if (tau <= 0) throw std::invalid_argument("schedule: tau must be positive");
  if (M < 1) throw std::invalid_argument("schedule: M must be at least 1");
  TrotterSchedule s;
  s.tau = tau;
  s.lambda = lambda;
  s.s2 = tau;
  s.s1 = tau / 2 + lambda * tau * tau * tau;
  s.M = M;
  return s;
}

namespace detail {

/** Commuting term lists of H1 then H2, paired for parallel scheduling. */
inline std::vector<std::pair<PauliString, double>> ppp_terms(const PPPParams& p) {
  std::vector<std::pair<PauliString, double>> terms;
  auto bare = [](unsigned a, unsigned b, PauliOp op) {
    return PauliString({{a, op}, {b, op}}, 1.0);
  };
  terms.push_back({bare(0, 1, PauliOp::X), p.alpha});
  terms.push_back({bare(2, 3, PauliOp::X), p.alpha});
  terms.push_back({bare(0, 1, PauliOp::Y), p.alpha});
  terms.push_back({bare(2, 3, PauliOp::Y), p.alpha});
  terms.push_back({bare(0, 3, PauliOp::Z), p.beta1});
  terms.push_back({bare(1, 2, PauliOp::Z), p.beta1});
  terms.push_back({bare(0, 2, PauliOp::Z), p.beta2});
  terms.push_back({bare(1, 3, PauliOp::Z), p.beta2});
  return terms;
}

inline void append_half(Circuit& c, const PPPParams& p, double s1, bool controlled,
                        unsigned control) {
  const auto terms = ppp_terms(p);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& [str, coeff] = terms[k];
    const Circuit e = controlled ? controlled_pauli_exp(str, s1 * coeff, control)
                                 : pauli_exp(str, s1 * coeff);
    for (const auto& g : e.gates) c.add(g);
  }
}

inline void append_kernel(Circuit& c, const PPPParams& p, double s2, bool controlled,
                          unsigned control) {
  const auto terms = ppp_terms(p);
  for (std::size_t k = 4; k < 8; ++k) {
    const auto& [str, coeff] = terms[k];
    const Circuit e = controlled ? controlled_pauli_exp(str, s2 * coeff, control)
                                 : pauli_exp(str, s2 * coeff);
    for (const auto& g : e.gates) c.add(g);
  }
}

}  // namespace detail

/**
 * One second-order step exp(-i s1 H1) exp(-i s2 H2) exp(-i s1 H1) on 4
 * qubits, each commuting sub-term exponentiated exactly, so the vacuum
 * phase of the step is exactly e^{-i s2 E_vac}.
 */
inline Circuit trotter_step_circuit(const TrotterSchedule& sched,
                                    const PPPParams& p = {}) {
  Circuit c(4);
  detail::append_half(c, p, sched.s1, false, 0);
  detail::append_kernel(c, p, sched.s2, false, 0);
  detail::append_half(c, p, sched.s1, false, 0);
  return c;
}

/**
 * The same step with every term exponential controlled on qubit 4
 * (frame is 5 qubits: system 0..3, control 4).
 */
inline Circuit controlled_trotter_step_circuit(const TrotterSchedule& sched,
                                               const PPPParams& p = {}) {
  Circuit c(5);
  const unsigned control = 4;
  detail::append_half(c, p, sched.s1, true, control);
  detail::append_kernel(c, p, sched.s2, true, control);
  detail::append_half(c, p, sched.s1, true, control);
  return c;
}

}  // namespace seqpe
