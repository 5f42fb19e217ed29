#pragma once

/**
 * Per-gate-class count and depth metrics over circuits, and the
 * CostVector record shared with the analytic resource model.
 *
 * Class weights (count, depth):
 *   CX class:  CX -> (1, 1); CSWAP -> (7, 7), its two-qubit
 *              decomposition; conditioned rotation -> (2, 2), the
 *              two-CX controlled-rotation identity.
 *   Rz class:  any arbitrary-angle rotation (Rz, Ry, Phase) -> (1, 1);
 *              conditioned rotation -> (3, 2) (two target rotations in
 *              sequence plus one control rotation in parallel).
 *   T class:   rotation -> (t_eps, t_eps); conditioned rotation ->
 *              (3 t_eps, 2 t_eps); CSWAP -> (7, 4).
 *   Total2q:   alias of the CX class (every multi-qubit gate measured
 *              through its two-qubit realization).
 *
 * Depth is class-restricted greedy layering: a gate of weight w
 * occupies w consecutive layers on all its operands (condition qubit
 * included); Measure, Reset, and Barrier never contribute.
 */

#include <algorithm>
#include <vector>

#include "seqpe/circuit.hpp"

namespace seqpe {

enum class GateClass { CX, Rz, T, Total2q };

/** Per-class counts and depths; T entries carry the caller's t_eps. */
struct CostVector {
  double cx_count = 0;
  double rz_count = 0;
  double t_count = 0;
  double cx_depth = 0;
  double rz_depth = 0;
  double t_depth = 0;

  CostVector& operator+=(const CostVector& o) {
    cx_count += o.cx_count;
    rz_count += o.rz_count;
    t_count += o.t_count;
    cx_depth += o.cx_depth;
    rz_depth += o.rz_depth;
    t_depth += o.t_depth;
    return *this;
  }
  friend CostVector operator+(CostVector a, const CostVector& b) { return a += b; }
  friend CostVector operator*(double s, CostVector v) {
    v.cx_count *= s;
    v.rz_count *= s;
    v.t_count *= s;
    v.cx_depth *= s;
    v.rz_depth *= s;
    v.t_depth *= s;
    return v;
  }
};

namespace detail {

inline double class_weight(const Gate& g, GateClass cls, double t_eps, bool depth) {
  const bool conditioned = g.condition.has_value();
  switch (cls) {
    case GateClass::CX:
    case GateClass::Total2q:
      if (g.kind == GateKind::CX) return 1;
      if (g.kind == GateKind::CSWAP) return 7;
      if (conditioned && is_rotation(g.kind)) return 2;
      return 0;
    case GateClass::Rz:
      if (!is_rotation(g.kind)) return 0;
      return conditioned ? (depth ? 2 : 3) : 1;
    case GateClass::T:
      if (g.kind == GateKind::CSWAP) return depth ? 4 : 7;
      if (!is_rotation(g.kind)) return 0;
      return conditioned ? (depth ? 2 : 3) * t_eps : t_eps;
  }
  return 0;
}

}  // namespace detail

inline double count(const Circuit& c, GateClass cls, double t_eps = 1.0) {
  double total = 0;
  for (const auto& g : c.gates) total += detail::class_weight(g, cls, t_eps, false);
  return total;
}

inline double depth(const Circuit& c, GateClass cls, double t_eps = 1.0) {
  std::vector<double> frontier(c.n_qubits, 0.0);
  double best = 0;
  for (const auto& g : c.gates) {
    const double w = detail::class_weight(g, cls, t_eps, true);
    if (w <= 0) continue;
    double start = 0;
    for (unsigned q : g.qubits) start = std::max(start, frontier[q]);
    if (g.condition) start = std::max(start, frontier[*g.condition]);
    const double end = start + w;
    for (unsigned q : g.qubits) frontier[q] = end;
    if (g.condition) frontier[*g.condition] = end;
    best = std::max(best, end);
  }
  return best;
}

/** All six metric entries of a circuit in one record. */
inline CostVector measured_costs(const Circuit& c, double t_eps = 1.0) {
  CostVector v;
  v.cx_count = count(c, GateClass::CX);
  v.rz_count = count(c, GateClass::Rz);
  v.t_count = count(c, GateClass::T, t_eps);
  v.cx_depth = depth(c, GateClass::CX);
  v.rz_depth = depth(c, GateClass::Rz);
  v.t_depth = depth(c, GateClass::T, t_eps);
  return v;
}

}  // namespace seqpe
