#pragma once

/**
 * Compilation of primitive unitaries into the {H, X, Rz, Ry, Phase, CX,
 * CSWAP} gate set: Pauli-string exponentials and their singly-controlled
 * forms, nearest-neighbour Givens rotations, the inverse QFT, and a
 * gate-by-gate controlled lift of an arbitrary measurement-free circuit.
 *
 * All emissions are exact at the unitary level, including global phase,
 * except where a comment states otherwise.
 */

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "seqpe/circuit.hpp"
#include "seqpe/pauli.hpp"

namespace seqpe {

inline constexpr double pi = std::numbers::pi;

namespace detail {

/** Basis change mapping the letter's eigenbasis onto Z's; emit_pre first,
 *  its mirror after the rotation core. */
inline void basis_pre(Circuit& c, unsigned q, PauliOp op) {
  if (op == PauliOp::X) {
    c.h(q);
  } else if (op == PauliOp::Y) {
    c.rz(q, -pi / 2);
    c.h(q);
  }
}

inline void basis_post(Circuit& c, unsigned q, PauliOp op) {
  if (op == PauliOp::X) {
    c.h(q);
  } else if (op == PauliOp::Y) {
    c.h(q);
    c.rz(q, pi / 2);
  }
}

}  // namespace detail

/**
 * exp(-i * angle * P) for the bare (unit-coefficient) string P: basis
 * changes onto Z, a CX parity ladder ascending to the last operand,
 * Rz(2*angle) there, and the mirrored ladder and basis changes.
 * The caller folds any string coefficient into `angle`.
 */
inline Circuit pauli_exp(const PauliString& p, double angle) {
  if (p.letters.empty()) {
    throw std::invalid_argument("pauli_exp: empty Pauli string");
  }
  Circuit c(p.min_qubits());
  std::vector<unsigned> qs;
  for (const auto& [q, op] : p.letters) {
    detail::basis_pre(c, q, op);
    qs.push_back(q);
  }
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) c.cx(qs[i], qs[i + 1]);
  c.rz(qs.back(), 2 * angle);
  for (std::size_t i = qs.size() - 1; i-- > 0;) c.cx(qs[i], qs[i + 1]);
  for (auto it = p.letters.rbegin(); it != p.letters.rend(); ++it) {
    detail::basis_post(c, it->first, it->second);
  }
  return c;
}

/**
 * |0><0| (x) I + |1><1| (x) exp(-i * angle * P), exactly. The two-CX
 * core Rz(angle) . CX . Rz(-angle) . CX on the ladder target replaces
 * the plain Rz(2*angle); basis changes stay uncontrolled.
 */
inline Circuit controlled_pauli_exp(const PauliString& p, double angle,
                                    unsigned control) {
  if (p.letters.empty()) {
    throw std::invalid_argument("controlled_pauli_exp: empty Pauli string");
  }
  if (p.letters.count(control)) {
    throw std::invalid_argument("controlled_pauli_exp: control overlaps operands");
  }
  Circuit c(std::max(p.min_qubits(), control + 1));
  std::vector<unsigned> qs;
  for (const auto& [q, op] : p.letters) {
    detail::basis_pre(c, q, op);
    qs.push_back(q);
  }
  for (std::size_t i = 0; i + 1 < qs.size(); ++i) c.cx(qs[i], qs[i + 1]);
  const unsigned t = qs.back();
  c.rz(t, angle);
  c.cx(control, t);
  c.rz(t, -angle);
  c.cx(control, t);
  for (std::size_t i = qs.size() - 1; i-- > 0;) c.cx(qs[i], qs[i + 1]);
  for (auto it = p.letters.rbegin(); it != p.letters.rend(); ++it) {
    detail::basis_post(c, it->first, it->second);
  }
  return c;
}

/**
 * Nearest-neighbour Givens rotation on (p, p+1):
 * H_p . CX(p,p+1) . Ry_p(-theta) Ry_{p+1}(-theta) . CX(p,p+1) . H_p.
 * Acts as a rotation by theta in span{|01>, |10>} and as identity on
 * |00> and |11>.
 */
inline Circuit givens(unsigned p, double theta) {
  Circuit c(p + 2);
  c.h(p);
  c.cx(p, p + 1);
  c.ry(p, -theta);
  c.ry(p + 1, -theta);
  c.cx(p, p + 1);
  c.h(p);
  return c;
}

/**
 * Inverse QFT on m qubits using H and controlled-Phase gates only; the
 * textbook terminal qubit reversal is NOT emitted. The emitted unitary
 * is R . F^dagger with R the bit-reversal permutation, so callers read
 * the phase out by measuring qubit q into classical bit m-1-q.
 */
inline Circuit inverse_qft(unsigned m) {
  if (m < 1) throw std::invalid_argument("inverse_qft: need at least one qubit");
  Circuit c(m);
  for (unsigned a = m; a-- > 0;) {
    for (unsigned b = m; b-- > a + 1;) {
      c.cphase(b, a, -1.0 / static_cast<double>(1ull << (b - a + 1)));
    }
    c.h(a);
  }
  return c;
}

/** a, then b repeated `times`, ... (compose-based power). */
inline Circuit repeat(const Circuit& c, unsigned times) {
  Circuit out(c.n_qubits, c.n_cbits);
  out.registers = c.registers;
  for (unsigned k = 0; k < times; ++k) {
    out.gates.insert(out.gates.end(), c.gates.begin(), c.gates.end());
  }
  return out;
}

namespace detail {

/** Exact Toffoli decomposition: 6 CX, 7 Phase(+-1/8), 2 H. */
inline void toffoli(Circuit& c, unsigned c1, unsigned c2, unsigned t) {
  const double tq = 1.0 / 8;  // T = Phase(1/8 turn)
  c.h(t);
  c.cx(c2, t);
  c.phase(t, -tq);
  c.cx(c1, t);
  c.phase(t, tq);
  c.cx(c2, t);
  c.phase(t, -tq);
  c.cx(c1, t);
  c.phase(c2, tq);
  c.phase(t, tq);
  c.h(t);
  c.cx(c1, c2);
  c.phase(c1, tq);
  c.phase(c2, -tq);
  c.cx(c1, c2);
}

}  // namespace detail

/**
 * Gate-by-gate controlled lift of a measurement-free circuit: every gate
 * G becomes |0><0| (x) I + |1><1| (x) G. H gates use the Ry-conjugated
 * controlled-Z identity, X becomes CX, CX becomes a Toffoli, rotations
 * become conditioned rotations; CSWAP and already-conditioned gates are
 * rejected. Exact including global phase.
 */
inline Circuit controlled_circuit(const Circuit& c, unsigned control) {
  Circuit out(std::max(c.n_qubits, control + 1), c.n_cbits);
  out.registers = c.registers;
  for (const auto& g : c.gates) {
    if (g.condition) {
      throw std::invalid_argument("controlled_circuit: gate already conditioned");
    }
    for (unsigned q : g.qubits) {
      if (q == control) {
        throw std::invalid_argument("controlled_circuit: control overlaps operands");
      }
    }
    switch (g.kind) {
      case GateKind::H:
        out.ry(g.qubits[0], -pi / 4);
        out.cphase(control, g.qubits[0], 0.5);
        out.ry(g.qubits[0], pi / 4);
        break;
      case GateKind::X:
        out.cx(control, g.qubits[0]);
        break;
      case GateKind::Rz: {
        Gate cg{GateKind::Rz, {g.qubits[0]}, g.angle};
        cg.condition = control;
        out.add(std::move(cg));
        break;
      }
      case GateKind::Ry: {
        Gate cg{GateKind::Ry, {g.qubits[0]}, g.angle};
        cg.condition = control;
        out.add(std::move(cg));
        break;
      }
      case GateKind::Phase:
        out.cphase(control, g.qubits[0], g.angle);
        break;
      case GateKind::CX:
        detail::toffoli(out, control, g.qubits[0], g.qubits[1]);
        break;
      case GateKind::Barrier:
        out.barrier();
        break;
      default:
        throw std::invalid_argument("controlled_circuit: unsupported gate kind");
    }
  }
  return out;
}

}  // namespace seqpe
