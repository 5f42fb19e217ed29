#pragma once

/**
 * Statevector simulation.
 *
 *  - evolve():         unitary-only evolution of a dense state.
 *  - phase_marginal(): exact noiseless phase-register distribution with
 *                      terminal measurements marginalized analytically.
 *  - sample():         shot sampling with an optional Pauli/readout
 *                      noise model.
 *
 * Execution engine: before any shots run, the circuit is compiled once
 * into a plan of fused blocks - maximal runs of consecutive unitary
 * gates whose combined support stays within four qubits collapse into a
 * single <=16x16 matrix - plus native ops for CSWAP, Measure and Reset
 * (Barrier flushes the current block). The block matrices are shared by
 * every shot.
 *
 * Randomness (reproducible; one mt19937_64 per shot, seeded by a
 * splitmix64 mix of NoiseConfig::seed and the shot index):
 *   pass 1  noise placement: for each noise-eligible gate in circuit
 *           order (CX, CSWAP, conditioned rotations) draw one uniform;
 *           if it falls below p2 draw a second value selecting one of
 *           the fifteen non-identity two-qubit Paulis, applied after
 *           the gate on its two operands (for CSWAP: the two swapped
 *           lane qubits).
 *   pass 2  execution: shots with no placed events sample the terminal
 *           measurement pattern with a single uniform from the exact
 *           joint distribution (mid-circuit measurements must be
 *           deterministic, which holds for noiseless runs of every
 *           circuit built here); shots with events replay the plan,
 *           drawing one uniform per Measure (born rule) and one per
 *           Reset (born rule, then projection to |0>).
 *   pass 3  readout error: one uniform per recorded classical bit in
 *           cbit order, flipping it with probability pm.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "seqpe/circuit.hpp"
#include "seqpe/pauli.hpp"

namespace seqpe {

inline constexpr unsigned simulator_qubit_cap = 24;
inline constexpr unsigned fuse_qubit_cap = 4;
inline constexpr double collapse_tolerance = 1e-9;

struct NoiseConfig {
  double p2 = 0;            // two-qubit depolarizing-style Pauli rate
  double pm = 0;            // readout flip probability
  std::uint64_t seed = 0;
};

struct ShotRecord {
  std::uint64_t shot = 0;
  std::string phase_bits;   // msb-first phase reading
  std::string ed_bits;      // error-detection bits in classical-bit order
};

struct FilterStats {
  std::size_t total = 0;
  std::size_t retained = 0;
  double retention() const {
    return total == 0 ? 0.0 : static_cast<double>(retained) / static_cast<double>(total);
  }
};

namespace detail {

// ---------------------------------------------------------------- kernels
// All kernels act on a dense array of 2^n amplitudes with little-endian
// qubit positions; they are shared between full-state evolution and the
// column-wise construction of fused block matrices.

inline void k_1q(Complex* a, unsigned n, unsigned q, Complex u00, Complex u01,
                 Complex u10, Complex u11) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Complex x = a[i];
    const Complex y = a[i | bit];
    a[i] = u00 * x + u01 * y;
    a[i | bit] = u10 * x + u11 * y;
  }
}

inline void k_diag(Complex* a, unsigned n, unsigned q, Complex z0, Complex z1) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) a[i] *= (i & bit) ? z1 : z0;
}

inline void k_cdiag(Complex* a, unsigned n, unsigned c, unsigned q, Complex z0,
                    Complex z1) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t cb = std::uint64_t{1} << c;
  const std::uint64_t qb = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & cb) a[i] *= (i & qb) ? z1 : z0;
  }
}

inline void k_c1q(Complex* a, unsigned n, unsigned c, unsigned q, Complex u00,
                  Complex u01, Complex u10, Complex u11) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t cb = std::uint64_t{1} << c;
  const std::uint64_t qb = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cb) == 0 || (i & qb)) continue;
    const Complex x = a[i];
    const Complex y = a[i | qb];
    a[i] = u00 * x + u01 * y;
    a[i | qb] = u10 * x + u11 * y;
  }
}

inline void k_cx(Complex* a, unsigned n, unsigned c, unsigned t) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t cb = std::uint64_t{1} << c;
  const std::uint64_t tb = std::uint64_t{1} << t;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cb) && (i & tb) == 0) std::swap(a[i], a[i | tb]);
  }
}

inline void k_cswap(Complex* a, unsigned n, unsigned k, unsigned x, unsigned y) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t kb = std::uint64_t{1} << k;
  const std::uint64_t xb = std::uint64_t{1} << x;
  const std::uint64_t yb = std::uint64_t{1} << y;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & kb) && (i & xb) && (i & yb) == 0) std::swap(a[i], a[(i ^ xb) | yb]);
  }
}

inline void k_pauli1(Complex* a, unsigned n, unsigned q, unsigned which) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  const std::uint64_t bit = std::uint64_t{1} << q;
  const Complex im(0, 1);
  switch (which) {
    case 1:  // X
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) == 0) std::swap(a[i], a[i | bit]);
      }
      break;
    case 2:  // Y
      for (std::uint64_t i = 0; i < dim; ++i) {
        if ((i & bit) == 0) {
          const Complex x = a[i];
          a[i] = -im * a[i | bit];
          a[i | bit] = im * x;
        }
      }
      break;
    case 3:  // Z
      for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & bit) a[i] = -a[i];
      }
      break;
    default:
      break;
  }
}

/** Applies one gate with operand positions remapped through `pos`
 *  (identity when empty). Measure/Reset/Barrier are rejected. */
inline void apply_unitary_gate(Complex* a, unsigned n, const Gate& g,
                               const std::vector<unsigned>* pos = nullptr) {
  auto at = [&](unsigned q) { return pos ? (*pos)[q] : q; };
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  switch (g.kind) {
    case GateKind::H:
      k_1q(a, n, at(g.qubits[0]), inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
      break;
    case GateKind::X:
      k_1q(a, n, at(g.qubits[0]), 0, 1, 1, 0);
      break;
    case GateKind::Rz: {
      const Complex z0 = std::polar(1.0, -g.angle / 2);
      const Complex z1 = std::polar(1.0, g.angle / 2);
      if (g.condition) {
        k_cdiag(a, n, at(*g.condition), at(g.qubits[0]), z0, z1);
      } else {
        k_diag(a, n, at(g.qubits[0]), z0, z1);
      }
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(g.angle / 2);
      const double s = std::sin(g.angle / 2);
      if (g.condition) {
        k_c1q(a, n, at(*g.condition), at(g.qubits[0]), c, -s, s, c);
      } else {
        k_1q(a, n, at(g.qubits[0]), c, -s, s, c);
      }
      break;
    }
    case GateKind::Phase: {
      const Complex z1 = std::polar(1.0, 2 * std::numbers::pi * g.angle);
      if (g.condition) {
        k_cdiag(a, n, at(*g.condition), at(g.qubits[0]), 1.0, z1);
      } else {
        k_diag(a, n, at(g.qubits[0]), 1.0, z1);
      }
      break;
    }
    case GateKind::CX:
      k_cx(a, n, at(g.qubits[0]), at(g.qubits[1]));
      break;
    case GateKind::CSWAP:
      k_cswap(a, n, at(g.qubits[0]), at(g.qubits[1]), at(g.qubits[2]));
      break;
    default:
      throw std::logic_error("apply_unitary_gate: non-unitary gate");
  }
}

/** Operand set relevant to a gate: qubits plus condition. */
inline std::vector<unsigned> gate_support(const Gate& g) {
  std::vector<unsigned> s = g.qubits;
  if (g.condition) s.push_back(*g.condition);
  return s;
}

/** Two qubits a noise event acts on, in operand order. */
inline std::pair<unsigned, unsigned> noise_qubits(const Gate& g) {
  switch (g.kind) {
    case GateKind::CX:
      return {g.qubits[0], g.qubits[1]};
    case GateKind::CSWAP:
      return {g.qubits[1], g.qubits[2]};
    default:
      return {*g.condition, g.qubits[0]};
  }
}

inline bool noise_eligible(const Gate& g) {
  if (g.kind == GateKind::CX || g.kind == GateKind::CSWAP) return true;
  return is_rotation(g.kind) && g.condition.has_value();
}

// ------------------------------------------------------------------ plan

struct PlanOp {
  enum class Kind { Block, Cswap, Measure, Reset } kind = Kind::Block;
  // Block payload: sorted support, fused matrix, the per-gate prefix
  // products P_0 = I, P_k = g_{k-1} ... g_0 (so matrix == prefixes.back()),
  // and the circuit index of each fused gate.
  std::vector<unsigned> qubits;
  Eigen::MatrixXcd matrix;
  std::vector<Eigen::MatrixXcd> prefixes;
  std::vector<std::size_t> gate_indices;
  Gate gate;  // native payload for Cswap/Measure/Reset
};

struct NoiseSite {
  std::size_t op = 0;        // plan op index
  std::size_t pos = 0;       // gate position inside a block (0 for native)
  unsigned qa = 0, qb = 0;   // the two noise operands
};

struct ExecutionPlan {
  unsigned n_qubits = 0;
  unsigned n_cbits = 0;
  std::vector<PlanOp> ops;
  std::vector<NoiseSite> eligible;  // noise-eligible gates in circuit order
};

inline ExecutionPlan build_plan(const Circuit& c) {
  if (c.n_qubits > simulator_qubit_cap) {
    throw std::invalid_argument("simulator: circuit exceeds the qubit cap");
  }
  ExecutionPlan plan;
  plan.n_qubits = c.n_qubits;
  plan.n_cbits = c.n_cbits;

  std::vector<unsigned> support;            // sorted support of the open block
  std::vector<const Gate*> pending;         // gates of the open block
  std::vector<std::size_t> pending_idx;
  std::vector<std::size_t> pending_sites;   // indices into plan.eligible

  auto flush = [&]() {
    if (pending.empty()) return;
    PlanOp op;
    op.kind = PlanOp::Kind::Block;
    op.qubits = support;
    op.gate_indices = pending_idx;
    const unsigned k = static_cast<unsigned>(support.size());
    const Eigen::Index dim = Eigen::Index{1} << k;
    std::vector<unsigned> pos(c.n_qubits, 0);
    for (unsigned i = 0; i < k; ++i) pos[support[i]] = i;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    op.prefixes.reserve(pending.size() + 1);
    op.prefixes.push_back(u);
    for (const Gate* g : pending) {
      for (Eigen::Index col = 0; col < dim; ++col) {
        apply_unitary_gate(u.col(col).data(), k, *g, &pos);
      }
      op.prefixes.push_back(u);
    }
    op.matrix = u;
    const std::size_t op_index = plan.ops.size();
    for (std::size_t s : pending_sites) {
      plan.eligible[s].op = op_index;
      // pos inside the block was stored provisionally in NoiseSite::pos.
    }
    plan.ops.push_back(std::move(op));
    support.clear();
    pending.clear();
    pending_idx.clear();
    pending_sites.clear();
  };

  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    switch (g.kind) {
      case GateKind::Barrier:
        flush();
        break;
      case GateKind::Measure:
      case GateKind::Reset: {
        flush();
        PlanOp op;
        op.kind = g.kind == GateKind::Measure ? PlanOp::Kind::Measure
                                              : PlanOp::Kind::Reset;
        op.gate = g;
        plan.ops.push_back(std::move(op));
        break;
      }
      case GateKind::CSWAP: {
        flush();
        PlanOp op;
        op.kind = PlanOp::Kind::Cswap;
        op.gate = g;
        NoiseSite site;
        site.op = plan.ops.size();
        site.pos = 0;
        std::tie(site.qa, site.qb) = noise_qubits(g);
        plan.eligible.push_back(site);
        plan.ops.push_back(std::move(op));
        break;
      }
      default: {
        std::vector<unsigned> sup = gate_support(g);
        std::vector<unsigned> merged = support;
        for (unsigned q : sup) {
          if (std::find(merged.begin(), merged.end(), q) == merged.end()) {
            merged.push_back(q);
          }
        }
        if (merged.size() > fuse_qubit_cap) {
          flush();
          merged = sup;
          std::sort(merged.begin(), merged.end());
          merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        } else {
          std::sort(merged.begin(), merged.end());
        }
        support = merged;
        if (noise_eligible(g)) {
          NoiseSite site;
          site.pos = pending.size();
          std::tie(site.qa, site.qb) = noise_qubits(g);
          pending_sites.push_back(plan.eligible.size());
          plan.eligible.push_back(site);
        }
        pending.push_back(&g);
        pending_idx.push_back(gi);
        break;
      }
    }
  }
  flush();
  return plan;
}

// ------------------------------------------------------------- execution

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 shot_rng(std::uint64_t seed, std::uint64_t shot) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * (shot + 1));
  const std::uint64_t a = splitmix64_next(state);
  return std::mt19937_64(a);
}

inline double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/** Probability that qubit q reads 1. */
inline double prob_one(const Eigen::VectorXcd& s, unsigned q) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  double p = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (static_cast<std::uint64_t>(i) & bit) p += std::norm(s[i]);
  }
  return p;
}

inline void collapse(Eigen::VectorXcd& s, unsigned q, int outcome, double p) {
  const std::uint64_t bit = std::uint64_t{1} << q;
  const double keep = outcome ? p : 1.0 - p;
  if (keep <= 0) throw std::runtime_error("simulator: collapse onto zero-probability branch");
  const double scale = 1.0 / std::sqrt(keep);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const bool one = static_cast<std::uint64_t>(i) & bit;
    s[i] = (one == static_cast<bool>(outcome)) ? s[i] * scale : Complex(0, 0);
  }
}

struct BlockApplier {
  std::vector<std::uint64_t> offsets;   // in-block index -> amplitude offset
  std::vector<std::uint64_t> bases;     // group index -> base amplitude offset
  Eigen::MatrixXcd scratch_in, scratch_out;

  void configure(unsigned n, const std::vector<unsigned>& qubits) {
    const unsigned k = static_cast<unsigned>(qubits.size());
    offsets.assign(std::size_t{1} << k, 0);
    for (std::uint64_t d = 0; d < offsets.size(); ++d) {
      std::uint64_t off = 0;
      for (unsigned i = 0; i < k; ++i) {
        if (d & (std::uint64_t{1} << i)) off |= std::uint64_t{1} << qubits[i];
      }
      offsets[d] = off;
    }
    std::vector<unsigned> rest;
    for (unsigned q = 0; q < n; ++q) {
      if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) rest.push_back(q);
    }
    bases.assign(std::uint64_t{1} << rest.size(), 0);
    for (std::uint64_t r = 0; r < bases.size(); ++r) {
      std::uint64_t base = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (r & (std::uint64_t{1} << j)) base |= std::uint64_t{1} << rest[j];
      }
      bases[r] = base;
    }
    scratch_in.resize(static_cast<Eigen::Index>(offsets.size()),
                      static_cast<Eigen::Index>(bases.size()));
    scratch_out.resize(scratch_in.rows(), scratch_in.cols());
  }

  // Gathers every group into one dense matrix so the block lands as a
  // single matrix product (dominant cost of noisy trajectory shots).
  void apply(Eigen::VectorXcd& s, const Eigen::MatrixXcd& m) {
    const std::uint64_t dim = offsets.size();
    for (std::uint64_t r = 0; r < bases.size(); ++r) {
      const std::uint64_t base = bases[r];
      Complex* col = scratch_in.col(static_cast<Eigen::Index>(r)).data();
      for (std::uint64_t d = 0; d < dim; ++d) col[d] = s[static_cast<Eigen::Index>(base | offsets[d])];
    }
    scratch_out.noalias() = m * scratch_in;
    for (std::uint64_t r = 0; r < bases.size(); ++r) {
      const std::uint64_t base = bases[r];
      const Complex* col = scratch_out.col(static_cast<Eigen::Index>(r)).data();
      for (std::uint64_t d = 0; d < dim; ++d) s[static_cast<Eigen::Index>(base | offsets[d])] = col[d];
    }
  }
};

/** A noise event resolved against the plan. */
struct PlacedEvent {
  std::size_t site = 0;      // index into plan.eligible
  unsigned pauli = 0;        // 1..15
};

}  // namespace detail

// ----------------------------------------------------------------- evolve

/** Applies every gate of a measurement-free circuit to `state`. */
inline DenseState evolve(const Circuit& c, DenseState state) {
  if (c.n_qubits > simulator_qubit_cap) {
    throw std::invalid_argument("evolve: circuit exceeds the qubit cap");
  }
  if (state.n_qubits != c.n_qubits) {
    throw std::invalid_argument("evolve: state width differs from circuit");
  }
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Barrier) continue;
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) {
      throw std::invalid_argument("evolve: circuit contains measurement or reset");
    }
    detail::apply_unitary_gate(state.amplitudes.data(), c.n_qubits, g);
  }
  return state;
}

namespace detail {

struct ReferenceWalk {
  bool valid = false;
  Eigen::VectorXcd final_state;
  // deterministic mid-circuit bits: (op index, cbit, value)
  std::vector<std::tuple<std::size_t, int, int>> mid_bits;
  // terminal measurements in op order: (qubit, cbit)
  std::vector<std::pair<unsigned, int>> terminal;
  // snapshots of the state before op `index`
  std::vector<std::pair<std::size_t, Eigen::VectorXcd>> snapshots;
};

/** Runs the plan once without noise. Measurements whose qubit never
 *  appears again are deferred (exact joint sampling later); all other
 *  measurements must be deterministic within collapse_tolerance. */
inline ReferenceWalk reference_walk(const ExecutionPlan& plan, std::size_t snapshot_stride) {
  ReferenceWalk walk;
  // last op index touching each qubit with a gate (not a measurement)
  std::vector<std::size_t> last_use(plan.n_qubits, 0);
  for (std::size_t i = 0; i < plan.ops.size(); ++i) {
    const PlanOp& op = plan.ops[i];
    if (op.kind == PlanOp::Kind::Block) {
      for (unsigned q : op.qubits) last_use[q] = i;
    } else if (op.kind == PlanOp::Kind::Cswap || op.kind == PlanOp::Kind::Reset) {
      for (unsigned q : op.gate.qubits) last_use[q] = i;
    }
  }
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(Eigen::Index{1} << plan.n_qubits);
  s[0] = 1.0;
  BlockApplier applier;
  walk.valid = true;
  for (std::size_t i = 0; i < plan.ops.size(); ++i) {
    if (snapshot_stride && i % snapshot_stride == 0) {
      walk.snapshots.emplace_back(i, s);
    }
    const PlanOp& op = plan.ops[i];
    switch (op.kind) {
      case PlanOp::Kind::Block:
        applier.configure(plan.n_qubits, op.qubits);
        applier.apply(s, op.matrix);
        break;
      case PlanOp::Kind::Cswap:
        apply_unitary_gate(s.data(), plan.n_qubits, op.gate);
        break;
      case PlanOp::Kind::Measure: {
        const unsigned q = op.gate.qubits[0];
        if (last_use[q] < i) {
          walk.terminal.emplace_back(q, op.gate.cbit);
          break;
        }
        const double p1 = prob_one(s, q);
        int outcome;
        if (p1 < collapse_tolerance) {
          outcome = 0;
        } else if (p1 > 1.0 - collapse_tolerance) {
          outcome = 1;
        } else {
          walk.valid = false;
          return walk;
        }
        collapse(s, q, outcome, p1);
        walk.mid_bits.emplace_back(i, op.gate.cbit, outcome);
        break;
      }
      case PlanOp::Kind::Reset: {
        const unsigned q = op.gate.qubits[0];
        const double p1 = prob_one(s, q);
        int outcome;
        if (p1 < collapse_tolerance) {
          outcome = 0;
        } else if (p1 > 1.0 - collapse_tolerance) {
          outcome = 1;
        } else {
          walk.valid = false;
          return walk;
        }
        collapse(s, q, outcome, p1);
        if (outcome) k_pauli1(s.data(), plan.n_qubits, q, 1);
        break;
      }
    }
  }
  walk.final_state = std::move(s);
  return walk;
}

}  // namespace detail

// --------------------------------------------------------- phase_marginal

/**
 * Exact noiseless distribution over the phase reading x for a circuit
 * with a "phase" register of size M measured into classical bits [0, M)
 * (qubit q into cbit M-1-q). All other terminal measurements are
 * marginalized analytically; mid-circuit measurements must be
 * deterministic. Index x carries cbit i as bit i.
 */
inline std::vector<double> phase_marginal(const Circuit& c) {
  const Register& phase = c.reg("phase");
  const unsigned m = phase.size;
  const detail::ExecutionPlan plan = detail::build_plan(c);
  detail::ReferenceWalk walk = detail::reference_walk(plan, 0);
  if (!walk.valid) {
    throw std::runtime_error("phase_marginal: non-deterministic mid-circuit measurement");
  }
  std::vector<int> qubit_for_bit(m, -1);
  for (const auto& [q, cbit] : walk.terminal) {
    if (cbit >= 0 && static_cast<unsigned>(cbit) < m) {
      if (q < phase.start || q >= phase.start + phase.size) {
        throw std::runtime_error("phase_marginal: phase cbit fed from outside the phase register");
      }
      qubit_for_bit[cbit] = static_cast<int>(q);
    }
  }
  for (unsigned i = 0; i < m; ++i) {
    if (qubit_for_bit[i] < 0) {
      throw std::runtime_error("phase_marginal: phase register not fully measured");
    }
  }
  std::vector<double> dist(std::size_t{1} << m, 0.0);
  const Eigen::VectorXcd& s = walk.final_state;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double w = std::norm(s[i]);
    if (w == 0) continue;
    std::size_t x = 0;
    for (unsigned b = 0; b < m; ++b) {
      if (static_cast<std::uint64_t>(i) >> qubit_for_bit[b] & 1u) x |= std::size_t{1} << b;
    }
    dist[x] += w;
  }
  return dist;
}

// ------------------------------------------------------------------ sample

namespace detail {

struct TerminalJoint {
  std::vector<std::pair<unsigned, int>> sites;  // (qubit, cbit)
  std::vector<double> cdf;                      // over 2^T patterns
};

inline TerminalJoint build_joint(const ReferenceWalk& walk) {
  TerminalJoint joint;
  joint.sites = walk.terminal;
  const unsigned t = static_cast<unsigned>(joint.sites.size());
  if (t > 20) throw std::runtime_error("simulator: too many concurrent terminal measurements");
  std::vector<double> prob(std::size_t{1} << t, 0.0);
  const Eigen::VectorXcd& s = walk.final_state;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double w = std::norm(s[i]);
    if (w == 0) continue;
    std::size_t key = 0;
    for (unsigned b = 0; b < t; ++b) {
      if (static_cast<std::uint64_t>(i) >> joint.sites[b].first & 1u) key |= std::size_t{1} << b;
    }
    prob[key] += w;
  }
  joint.cdf.resize(prob.size());
  double acc = 0;
  for (std::size_t i = 0; i < prob.size(); ++i) {
    acc += prob[i];
    joint.cdf[i] = acc;
  }
  return joint;
}

inline std::size_t sample_joint(const TerminalJoint& joint, double u) {
  const double target = u * joint.cdf.back();
  const auto it = std::upper_bound(joint.cdf.begin(), joint.cdf.end(), target);
  const std::size_t idx = static_cast<std::size_t>(std::distance(joint.cdf.begin(), it));
  return std::min(idx, joint.cdf.size() - 1);
}

}  // namespace detail

/**
 * Samples `n_shots` measurement records. The phase field collects cbits
 * [0, M) printed most-significant-first (M = size of the "phase"
 * register when present, else all cbits); the error-detection field
 * collects the remaining cbits in ascending order.
 */
inline std::vector<ShotRecord> sample(const Circuit& c, std::size_t n_shots,
                                      const std::optional<NoiseConfig>& noise = {}) {
  if (!c.has_measurement()) {
    throw std::invalid_argument("sample: circuit has no measurements");
  }
  unsigned m = c.n_cbits;
  for (const Register& r : c.registers) {
    if (r.name == "phase") m = r.size;
  }
  if (m > c.n_cbits) throw std::invalid_argument("sample: phase register exceeds cbits");

  const detail::ExecutionPlan plan = detail::build_plan(c);
  const double p2 = noise ? noise->p2 : 0.0;
  const double pm = noise ? noise->pm : 0.0;
  const std::uint64_t seed = noise ? noise->seed : 0;

  const std::size_t stride =
      p2 > 0 ? std::max<std::size_t>(1, plan.ops.size() / 32) : 0;
  detail::ReferenceWalk walk = detail::reference_walk(plan, stride);
  detail::TerminalJoint joint;
  bool fast_ready = false;
  if (walk.valid && walk.terminal.size() <= 20) {
    joint = detail::build_joint(walk);
    fast_ready = true;
  }

  detail::BlockApplier applier;
  Eigen::VectorXcd state;
  std::vector<int> cbits(plan.n_cbits);
  std::vector<ShotRecord> records;
  records.reserve(n_shots);

  for (std::size_t shot = 0; shot < n_shots; ++shot) {
    std::mt19937_64 rng = detail::shot_rng(seed, shot);

    // Pass 1: noise placement over eligible gates in circuit order.
    std::vector<detail::PlacedEvent> events;
    if (p2 > 0) {
      for (std::size_t site = 0; site < plan.eligible.size(); ++site) {
        if (detail::next_uniform(rng) < p2) {
          detail::PlacedEvent e;
          e.site = site;
          e.pauli = 1 + static_cast<unsigned>(rng() % 15);
          events.push_back(e);
        }
      }
    }

    std::fill(cbits.begin(), cbits.end(), 0);

    if (events.empty() && fast_ready) {
      // Pass 2 (fast): deterministic mid bits plus one uniform for the
      // exact joint over terminal measurements.
      for (const auto& [op, cbit, value] : walk.mid_bits) {
        (void)op;
        if (cbit >= 0) cbits[cbit] = value;
      }
      if (!joint.sites.empty()) {
        const std::size_t pattern = detail::sample_joint(joint, detail::next_uniform(rng));
        for (std::size_t b = 0; b < joint.sites.size(); ++b) {
          const int cbit = joint.sites[b].second;
          if (cbit >= 0) cbits[cbit] = (pattern >> b) & 1u;
        }
      }
    } else {
      // Pass 2 (trajectory): group events by op, resume from the last
      // snapshot at or before the first event.
      std::map<std::size_t, std::vector<detail::PlacedEvent>> by_op;
      for (const auto& e : events) by_op[plan.eligible[e.site].op].push_back(e);
      std::size_t start_op = 0;
      const Eigen::VectorXcd* resume = nullptr;
      if (!events.empty() && walk.valid) {
        const std::size_t first = by_op.begin()->first;
        for (const auto& snap : walk.snapshots) {
          if (snap.first <= first && snap.first >= start_op) {
            start_op = snap.first;
            resume = &snap.second;
          }
        }
      }
      if (resume) {
        state = *resume;
        for (const auto& [op, cbit, value] : walk.mid_bits) {
          if (op < start_op && cbit >= 0) cbits[cbit] = value;
        }
      } else {
        state = Eigen::VectorXcd::Zero(Eigen::Index{1} << plan.n_qubits);
        state[0] = 1.0;
      }

      for (std::size_t i = start_op; i < plan.ops.size(); ++i) {
        const detail::PlanOp& op = plan.ops[i];
        const auto ev = by_op.find(i);
        switch (op.kind) {
          case detail::PlanOp::Kind::Block: {
            applier.configure(plan.n_qubits, op.qubits);
            if (ev == by_op.end()) {
              applier.apply(state, op.matrix);
            } else {
              // Stitch the block matrix around the in-block events.
              std::vector<detail::PlacedEvent> evs = ev->second;
              std::sort(evs.begin(), evs.end(),
                        [&](const auto& a, const auto& b) {
                          return plan.eligible[a.site].pos < plan.eligible[b.site].pos;
                        });
              const Eigen::Index dim = op.matrix.rows();
              Eigen::MatrixXcd eff = Eigen::MatrixXcd::Identity(dim, dim);
              std::size_t cur = 0;  // prefix index applied so far
              const unsigned k = static_cast<unsigned>(op.qubits.size());
              auto small_pos = [&](unsigned q) {
                for (unsigned x = 0; x < k; ++x) {
                  if (op.qubits[x] == q) return x;
                }
                throw std::logic_error("simulator: noise operand outside block");
              };
              for (const auto& e : evs) {
                const detail::NoiseSite& site = plan.eligible[e.site];
                const std::size_t boundary = site.pos + 1;
                eff = op.prefixes[boundary] * op.prefixes[cur].adjoint() * eff;
                for (Eigen::Index col = 0; col < dim; ++col) {
                  detail::k_pauli1(eff.col(col).data() , k, small_pos(site.qa), e.pauli & 3u);
                }
                // column-wise Pauli application works on the matrix as a
                // set of statevectors; second operand next
                for (Eigen::Index col = 0; col < dim; ++col) {
                  detail::k_pauli1(eff.col(col).data(), k, small_pos(site.qb), e.pauli >> 2u);
                }
                cur = boundary;
              }
              eff = op.prefixes.back() * op.prefixes[cur].adjoint() * eff;
              applier.apply(state, eff);
            }
            break;
          }
          case detail::PlanOp::Kind::Cswap: {
            detail::apply_unitary_gate(state.data(), plan.n_qubits, op.gate);
            if (ev != by_op.end()) {
              for (const auto& e : ev->second) {
                const detail::NoiseSite& site = plan.eligible[e.site];
                detail::k_pauli1(state.data(), plan.n_qubits, site.qa, e.pauli & 3u);
                detail::k_pauli1(state.data(), plan.n_qubits, site.qb, e.pauli >> 2u);
              }
            }
            break;
          }
          case detail::PlanOp::Kind::Measure: {
            const unsigned q = op.gate.qubits[0];
            const double p1 = detail::prob_one(state, q);
            const int outcome = detail::next_uniform(rng) < p1 ? 1 : 0;
            detail::collapse(state, q, outcome, p1);
            if (op.gate.cbit >= 0) cbits[op.gate.cbit] = outcome;
            break;
          }
          case detail::PlanOp::Kind::Reset: {
            const unsigned q = op.gate.qubits[0];
            const double p1 = detail::prob_one(state, q);
            const int outcome = detail::next_uniform(rng) < p1 ? 1 : 0;
            detail::collapse(state, q, outcome, p1);
            if (outcome) detail::k_pauli1(state.data(), plan.n_qubits, q, 1);
            break;
          }
        }
      }
    }

    // Pass 3: readout flips in cbit order.
    if (pm > 0) {
      for (unsigned b = 0; b < plan.n_cbits; ++b) {
        if (detail::next_uniform(rng) < pm) cbits[b] ^= 1;
      }
    }

    ShotRecord rec;
    rec.shot = shot;
    rec.phase_bits.resize(m);
    for (unsigned i = 0; i < m; ++i) rec.phase_bits[i] = cbits[m - 1 - i] ? '1' : '0';
    rec.ed_bits.reserve(plan.n_cbits - m);
    for (unsigned b = m; b < plan.n_cbits; ++b) rec.ed_bits.push_back(cbits[b] ? '1' : '0');
    records.push_back(std::move(rec));
  }
  return records;
}

// ------------------------------------------------------------ statistics

/** Keeps shots whose error-detection bits are all zero. */
inline std::pair<std::vector<ShotRecord>, FilterStats> filter(
    const std::vector<ShotRecord>& records) {
  FilterStats stats;
  stats.total = records.size();
  std::vector<ShotRecord> kept;
  for (const ShotRecord& r : records) {
    if (r.ed_bits.find('1') == std::string::npos) {
      kept.push_back(r);
      ++stats.retained;
    }
  }
  return {std::move(kept), stats};
}

/** Empirical distribution over the phase reading x (bit i of x =
 *  phase character M-1-i, i.e. the string is msb-first). */
inline std::vector<double> empirical_distribution(const std::vector<ShotRecord>& records,
                                                  unsigned m) {
  std::vector<double> dist(std::size_t{1} << m, 0.0);
  if (records.empty()) return dist;
  for (const ShotRecord& r : records) {
    if (r.phase_bits.size() != m) {
      throw std::invalid_argument("empirical_distribution: phase width mismatch");
    }
    std::size_t x = 0;
    for (unsigned i = 0; i < m; ++i) {
      if (r.phase_bits[m - 1 - i] == '1') x |= std::size_t{1} << i;
    }
    dist[x] += 1.0;
  }
  for (double& p : dist) p /= static_cast<double>(records.size());
  return dist;
}

/** Fraction of shots with a failed (nonzero) error-detection group per
 *  round of `bits_per_round` consecutive ED bits. */
inline std::vector<double> ed_failure_fractions(const std::vector<ShotRecord>& records,
                                                unsigned bits_per_round) {
  if (records.empty() || bits_per_round == 0) return {};
  const std::size_t len = records[0].ed_bits.size();
  if (len % bits_per_round != 0) {
    throw std::invalid_argument("ed_failure_fractions: bits do not divide into rounds");
  }
  const std::size_t rounds = len / bits_per_round;
  std::vector<double> frac(rounds, 0.0);
  for (const ShotRecord& r : records) {
    if (r.ed_bits.size() != len) {
      throw std::invalid_argument("ed_failure_fractions: ragged records");
    }
    for (std::size_t g = 0; g < rounds; ++g) {
      const auto begin = r.ed_bits.begin() + static_cast<std::ptrdiff_t>(g * bits_per_round);
      if (std::find(begin, begin + bits_per_round, '1') != begin + bits_per_round) {
        frac[g] += 1.0;
      }
    }
  }
  for (double& f : frac) f /= static_cast<double>(records.size());
  return frac;
}

// ------------------------------------------------------------------- CSV

inline void write_shots_csv(std::ostream& os, const std::vector<ShotRecord>& records) {
  os << "shot,phase_bits,ed_bits\n";
  for (const ShotRecord& r : records) {
    os << r.shot << ',' << r.phase_bits << ',' << r.ed_bits << '\n';
  }
}

inline void write_distribution_csv(std::ostream& os, const std::vector<double>& dist,
                                   unsigned m) {
  if (dist.size() != (std::size_t{1} << m)) {
    throw std::invalid_argument("write_distribution_csv: size is not 2^M");
  }
  os << "bitstring,probability\n";
  char buf[64];
  for (std::size_t x = 0; x < dist.size(); ++x) {
    std::string bits(m, '0');
    for (unsigned i = 0; i < m; ++i) {
      if (x >> i & 1u) bits[m - 1 - i] = '1';
    }
    std::snprintf(buf, sizeof buf, "%.17g", dist[x]);
    os << bits << ',' << buf << '\n';
  }
}

}  // namespace seqpe
