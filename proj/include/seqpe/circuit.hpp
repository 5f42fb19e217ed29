#pragma once

/**
 * Gate-level circuit representation: a flat gate list over named,
 * contiguous qubit registers plus classical bits. Circuits are built
 * once and treated as immutable; composition concatenates gate lists.
 *
 * Angle conventions: Rz/Ry angles in radians; Phase gates in turns,
 * P(theta) = diag(1, e^{2*pi*i*theta}). A rotation gate may carry an
 * optional condition qubit, giving its controlled version (used by the
 * inverse QFT); all other controlled operations are compiled to
 * {CX, CSWAP} explicitly.
 */

#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqpe {

enum class GateKind {
  H,
  X,
  Rz,
  Ry,
  Phase,
  CX,
  CSWAP,
  Measure,
  Reset,
  Barrier,
};

inline bool is_rotation(GateKind k) {
  return k == GateKind::Rz || k == GateKind::Ry || k == GateKind::Phase;
}

inline unsigned gate_arity(GateKind k) {
  switch (k) {
    case GateKind::CX: return 2;
    case GateKind::CSWAP: return 3;
    case GateKind::Barrier: return 0;
    default: return 1;
  }
}

struct Gate {
  GateKind kind = GateKind::Barrier;
  std::vector<unsigned> qubits;  // CX: {control, target}; CSWAP: {control, a, b}
  double angle = 0.0;            // radians (Rz, Ry) or turns (Phase)
  int cbit = -1;                 // Measure destination
  std::optional<unsigned> condition;  // control qubit for conditioned rotations
};

/** Named contiguous qubit range. */
struct Register {
  std::string name;
  unsigned start = 0;
  unsigned size = 0;
};

struct Circuit {
  unsigned n_qubits = 0;
  unsigned n_cbits = 0;
  std::vector<Register> registers;
  std::vector<Gate> gates;

  Circuit() = default;
  explicit Circuit(unsigned n, unsigned cbits = 0) : n_qubits(n), n_cbits(cbits) {}

  const Register& reg(const std::string& name) const {
    for (const auto& r : registers) {
      if (r.name == name) return r;
    }
    throw std::invalid_argument("Circuit: no register named '" + name + "'");
  }

  void add_register(const std::string& name, unsigned start, unsigned size) {
    if (start + size > n_qubits) {
      throw std::invalid_argument("Circuit: register exceeds qubit count");
    }
    registers.push_back({name, start, size});
  }

  void check_qubit(unsigned q) const {
    if (q >= n_qubits) throw std::invalid_argument("Circuit: qubit index out of range");
  }

  void add(Gate g) {
    if (g.kind != GateKind::Barrier && g.qubits.size() != gate_arity(g.kind)) {
      throw std::invalid_argument("Circuit: operand arity mismatch");
    }
    for (unsigned q : g.qubits) check_qubit(q);
    if (g.condition) {
      if (!is_rotation(g.kind)) {
        throw std::invalid_argument("Circuit: condition only valid on rotations");
      }
      check_qubit(*g.condition);
      if (*g.condition == g.qubits[0]) {
        throw std::invalid_argument("Circuit: condition equals operand");
      }
    }
    if (g.kind == GateKind::CX && g.qubits[0] == g.qubits[1]) {
      throw std::invalid_argument("Circuit: CX operands must differ");
    }
    if (g.kind == GateKind::CSWAP &&
        (g.qubits[0] == g.qubits[1] || g.qubits[0] == g.qubits[2] ||
         g.qubits[1] == g.qubits[2])) {
      throw std::invalid_argument("Circuit: CSWAP operands must differ");
    }
    if (g.kind == GateKind::Measure) {
      if (g.cbit < 0 || static_cast<unsigned>(g.cbit) >= n_cbits) {
        throw std::invalid_argument("Circuit: measure cbit out of range");
      }
    }
    if (is_rotation(g.kind) && !std::isfinite(g.angle)) {
      throw std::invalid_argument("Circuit: non-finite angle");
    }
    gates.push_back(std::move(g));
  }

  void h(unsigned q) { add({GateKind::H, {q}}); }
  void x(unsigned q) { add({GateKind::X, {q}}); }
  void rz(unsigned q, double rad) { add({GateKind::Rz, {q}, rad}); }
  void ry(unsigned q, double rad) { add({GateKind::Ry, {q}, rad}); }
  void phase(unsigned q, double turns) { add({GateKind::Phase, {q}, turns}); }
  void cx(unsigned control, unsigned target) { add({GateKind::CX, {control, target}}); }
  void cswap(unsigned control, unsigned a, unsigned b) {
    add({GateKind::CSWAP, {control, a, b}});
  }
  void crz(unsigned control, unsigned q, double rad) {
    Gate g{GateKind::Rz, {q}, rad};
    g.condition = control;
    add(std::move(g));
  }
  void cphase(unsigned control, unsigned q, double turns) {
    Gate g{GateKind::Phase, {q}, turns};
    g.condition = control;
    add(std::move(g));
  }
  void measure(unsigned q, unsigned cbit) {
    Gate g{GateKind::Measure, {q}};
    g.cbit = static_cast<int>(cbit);
    add(std::move(g));
  }
  void reset(unsigned q) { add({GateKind::Reset, {q}}); }
  void barrier() { add({GateKind::Barrier, {}}); }

  bool has_measurement() const {
    for (const auto& g : gates) {
      if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) return true;
    }
    return false;
  }
};

/**
 * Concatenation: run a, then b. Register layouts must agree (registers
 * declared by both circuits must match exactly); the result carries the
 * union of the declared registers.
 */
inline Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("compose: qubit counts differ");
  }
  Circuit out(a.n_qubits, std::max(a.n_cbits, b.n_cbits));
  out.registers = a.registers;
  for (const auto& rb : b.registers) {
    bool merged = false;
    for (const auto& ra : out.registers) {
      if (ra.name == rb.name) {
        if (ra.start != rb.start || ra.size != rb.size) {
          throw std::invalid_argument("compose: register layouts differ");
        }
        merged = true;
        break;
      }
    }
    if (!merged) out.registers.push_back(rb);
  }
  out.gates = a.gates;
  out.gates.insert(out.gates.end(), b.gates.begin(), b.gates.end());
  return out;
}

/** Adjoint of a measurement-free circuit (reversed gates, negated angles). */
inline Circuit inverse(const Circuit& c) {
  Circuit out(c.n_qubits, c.n_cbits);
  out.registers = c.registers;
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) {
      throw std::invalid_argument("inverse: circuit contains measurements");
    }
    if (is_rotation(g.kind)) g.angle = -g.angle;
    out.gates.push_back(std::move(g));
  }
  return out;
}

/** Remaps every operand through a fixed qubit map into a larger frame. */
inline Circuit embed(const Circuit& c, unsigned n_qubits,
                     const std::vector<unsigned>& map) {
  if (map.size() != c.n_qubits) {
    throw std::invalid_argument("embed: map size != circuit width");
  }
  Circuit out(n_qubits, c.n_cbits);
  for (const auto& g : c.gates) {
    Gate h = g;
    for (auto& q : h.qubits) q = map.at(q);
    if (h.condition) h.condition = map.at(*h.condition);
    out.add(std::move(h));
  }
  return out;
}

namespace detail {

inline const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Rz: return "Rz";
    case GateKind::Ry: return "Ry";
    case GateKind::Phase: return "Phase";
    case GateKind::CX: return "CX";
    case GateKind::CSWAP: return "CSWAP";
    case GateKind::Measure: return "Measure";
    case GateKind::Reset: return "Reset";
    case GateKind::Barrier: return "Barrier";
  }
  return "?";
}

}  // namespace detail

/**
 * Line-oriented text form with a stable round-trip:
 *   qubits N / cbits N / register NAME START SIZE headers,
 *   then one gate per line `GATE q... [angle] [-> cbit]`; conditioned
 *   rotations are prefixed `c` with the control listed first.
 */
inline std::string format_circuit(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  out << "qubits " << c.n_qubits << '\n';
  out << "cbits " << c.n_cbits << '\n';
  for (const auto& r : c.registers) {
    out << "register " << r.name << ' ' << r.start << ' ' << r.size << '\n';
  }
  for (const auto& g : c.gates) {
    if (g.condition) out << 'c';
    out << detail::gate_name(g.kind);
    if (g.condition) out << ' ' << *g.condition;
    for (unsigned q : g.qubits) out << ' ' << q;
    if (is_rotation(g.kind)) out << ' ' << g.angle;
    if (g.kind == GateKind::Measure) out << " -> " << g.cbit;
    out << '\n';
  }
  return out.str();
}

inline Circuit parse_circuit(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  Circuit c;
  bool seen_qubits = false;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string head;
    if (!(tokens >> head)) continue;
    if (head == "qubits") {
      unsigned n = 0;
      if (!(tokens >> n)) throw std::invalid_argument("parse_circuit: bad qubits line");
      c.n_qubits = n;
      seen_qubits = true;
      continue;
    }
    if (head == "cbits") {
      if (!(tokens >> c.n_cbits)) {
        throw std::invalid_argument("parse_circuit: bad cbits line");
      }
      continue;
    }
    if (head == "register") {
      Register r;
      if (!(tokens >> r.name >> r.start >> r.size)) {
        throw std::invalid_argument("parse_circuit: bad register line");
      }
      c.add_register(r.name, r.start, r.size);
      continue;
    }
    if (!seen_qubits) throw std::invalid_argument("parse_circuit: gate before header");
    Gate g;
    std::string name = head;
    bool conditioned = false;
    if (name.size() > 1 && name[0] == 'c' &&
        (name == "cRz" || name == "cRy" || name == "cPhase")) {
      conditioned = true;
      name = name.substr(1);
    }
    if (name == "H") g.kind = GateKind::H;
    else if (name == "X") g.kind = GateKind::X;
    else if (name == "Rz") g.kind = GateKind::Rz;
    else if (name == "Ry") g.kind = GateKind::Ry;
    else if (name == "Phase") g.kind = GateKind::Phase;
    else if (name == "CX") g.kind = GateKind::CX;
    else if (name == "CSWAP") g.kind = GateKind::CSWAP;
    else if (name == "Measure") g.kind = GateKind::Measure;
    else if (name == "Reset") g.kind = GateKind::Reset;
    else if (name == "Barrier") g.kind = GateKind::Barrier;
    else throw std::invalid_argument("parse_circuit: unknown gate '" + head + "'");
    if (conditioned) {
      unsigned ctrl = 0;
      if (!(tokens >> ctrl)) throw std::invalid_argument("parse_circuit: bad condition");
      g.condition = ctrl;
    }
    for (unsigned i = 0; i < gate_arity(g.kind); ++i) {
      unsigned q = 0;
      if (!(tokens >> q)) throw std::invalid_argument("parse_circuit: missing operand");
      g.qubits.push_back(q);
    }
    if (is_rotation(g.kind)) {
      if (!(tokens >> g.angle)) throw std::invalid_argument("parse_circuit: missing angle");
    }
    if (g.kind == GateKind::Measure) {
      std::string arrow;
      if (!(tokens >> arrow >> g.cbit) || arrow != "->") {
        throw std::invalid_argument("parse_circuit: bad measure line");
      }
      if (static_cast<unsigned>(g.cbit) >= c.n_cbits) {
        c.n_cbits = static_cast<unsigned>(g.cbit) + 1;
      }
    }
    c.add(std::move(g));
  }
  if (!seen_qubits) throw std::invalid_argument("parse_circuit: missing qubits header");
  return c;
}

}  // namespace seqpe
