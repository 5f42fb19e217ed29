#pragma once

/**
 * Compiled circuit templates for the double-factorized Trotter-step
 * primitives, used to cross-check the analytic cost rows against
 * measured gate counts and depths.
 *
 * Angles are deterministic placeholders: only the gate pattern carries
 * meaning for resource metrics.
 *
 *   compiled_w    Givens diamond network (or two spin-block halves)
 *   compiled_u0   one Rz per mode
 *   compiled_ul   round-robin matchings of ZZ pair rotations
 *   compiled_cu0  controlled one-body phases (control = qubit n)
 *   compiled_cul  controlled pair rotations  (control = qubit n)
 */

#include <stdexcept>
#include <vector>

#include "seqpe/circuit.hpp"
#include "seqpe/compile.hpp"

namespace seqpe {

namespace detail {

inline double placeholder_angle(std::size_t k) {
  double frac = 0.371 * static_cast<double>(k + 1);
  frac -= static_cast<long long>(frac);
  return 0.1 + 0.87 * frac;
}

inline void check_even(unsigned n, const char* who) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": n must be even and at least 2");
  }
}

/** Diamond network over modes [base, base+width): pair p is active at
 *  layers p, p+2, ..., 2*width-4-p. */
inline void append_diamond(Circuit& c, unsigned base, unsigned width, std::size_t& k) {
  if (width < 2) return;
  const unsigned last_layer = 2 * width - 4;
  for (unsigned t = 0; t <= last_layer; ++t) {
    for (unsigned p = t % 2; p + 1 < width && p <= t && p <= last_layer - t; p += 2) {
      const Circuit g = givens(base + p, placeholder_angle(k++));
      for (const auto& gate : g.gates) c.add(gate);
    }
  }
}

/** Round-robin (circle method) perfect matchings of n modes: round r
 *  pairs (0, a_0) and (a_i, a_{n-1-i}) with a_i = 1 + (r+i) mod (n-1). */
inline std::vector<std::pair<unsigned, unsigned>> matching_round(unsigned n, unsigned r) {
  std::vector<std::pair<unsigned, unsigned>> pairs;
  std::vector<unsigned> a(n - 1);
  for (unsigned i = 0; i + 1 < n; ++i) a[i] = 1 + (r + i) % (n - 1);
  pairs.emplace_back(0, a[0]);
  for (unsigned i = 1; i < n / 2; ++i) pairs.emplace_back(a[i], a[n - 1 - i]);
  return pairs;
}

}  // namespace detail

/** Basis-rotation layer W as a Givens diamond (two independent halves
 *  when spin_block is set). */
inline Circuit compiled_w(unsigned n, bool spin_block = false) {
  detail::check_even(n, "compiled_w");
  Circuit c(n);
  std::size_t k = 0;
  if (spin_block) {
    if (n < 4) throw std::invalid_argument("compiled_w: spin-block W needs n >= 4");
    detail::append_diamond(c, 0, n / 2, k);
    detail::append_diamond(c, n / 2, n / 2, k);
  } else {
    detail::append_diamond(c, 0, n, k);
  }
  return c;
}

/** One-body phases U0: one Rz per mode. */
inline Circuit compiled_u0(unsigned n) {
  detail::check_even(n, "compiled_u0");
  Circuit c(n);
  for (unsigned q = 0; q < n; ++q) c.rz(q, detail::placeholder_angle(q));
  return c;
}

/** Leaf pair phases Ul: ZZ rotations over n-1 rounds of disjoint pairs. */
inline Circuit compiled_ul(unsigned n) {
  detail::check_even(n, "compiled_ul");
  Circuit c(n);
  std::size_t k = 0;
  for (unsigned r = 0; r + 1 < n; ++r) {
    for (const auto& [a, b] : detail::matching_round(n, r)) {
      PauliString zz({{a, PauliOp::Z}, {b, PauliOp::Z}}, 1.0);
      const Circuit term = pauli_exp(zz, detail::placeholder_angle(k++));
      for (const auto& gate : term.gates) c.add(gate);
    }
  }
  return c;
}

/** Controlled U0 on n+1 qubits with the control on qubit n. */
inline Circuit compiled_cu0(unsigned n) {
  detail::check_even(n, "compiled_cu0");
  Circuit c(n + 1);
  for (unsigned q = 0; q < n; ++q) {
    PauliString z({{q, PauliOp::Z}}, 1.0);
    const Circuit term = controlled_pauli_exp(z, detail::placeholder_angle(q), n);
    for (const auto& gate : term.gates) c.add(gate);
  }
  return c;
}

/** Controlled Ul on n+1 qubits with the control on qubit n. */
inline Circuit compiled_cul(unsigned n) {
  detail::check_even(n, "compiled_cul");
  Circuit c(n + 1);
  std::size_t k = 0;
  for (unsigned r = 0; r + 1 < n; ++r) {
    for (const auto& [a, b] : detail::matching_round(n, r)) {
      PauliString zz({{a, PauliOp::Z}, {b, PauliOp::Z}}, 1.0);
      const Circuit term = controlled_pauli_exp(zz, detail::placeholder_angle(k++), n);
      for (const auto& gate : term.gates) c.add(gate);
    }
  }
  return c;
}

}  // namespace seqpe
