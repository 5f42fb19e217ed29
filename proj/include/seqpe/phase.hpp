#pragma once

/**
 * Phase readout post-processing: mapping measured phase-register values
 * back to energies, peak statistics, and distribution comparison.
 *
 * An M-bit reading x estimates the fractional phase phi = x / 2^M with
 * phi + b = -tau E / (2 pi) for an integer branch b, so
 *
 *   E(x, b) = -(2 pi / tau) (x / 2^M + b),
 *
 * and the branch is fixed by rounding against a reference energy
 * (coarse prior) E_ref: b = floor(-E_ref tau / (2 pi) - phi + 1/2).
 * The grid resolution is delta E = pi / (2^M tau).
 */

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seqpe/compile.hpp"

namespace seqpe {

struct EnergyEstimate {
  std::size_t x = 0;      // raw phase reading
  double phi = 0;         // x / 2^M
  long long branch = 0;   // whole turns restored from the reference energy
  double energy = 0;
};

/** Energy grid spacing pi / (2^M tau). */
inline double energy_resolution(unsigned m, double tau) {
  if (tau <= 0 || m < 1) throw std::invalid_argument("energy_resolution: bad arguments");
  return pi / (std::ldexp(1.0, static_cast<int>(m)) * tau);
}

/** Branch index b = floor(-e_ref tau / (2 pi) - phi + 1/2). */
inline long long select_branch(double e_ref, double tau, double phi) {
  return static_cast<long long>(std::floor(-e_ref * tau / (2 * pi) - phi + 0.5));
}

inline double phase_to_energy(double phi, double tau, long long branch) {
  if (tau <= 0) throw std::invalid_argument("phase_to_energy: tau must be positive");
  return -(2 * pi / tau) * (phi + static_cast<double>(branch));
}

/** Full reconstruction of a reading x at resolution M. */
inline EnergyEstimate reconstruct_energy(std::size_t x, unsigned m, double tau,
                                         double e_ref) {
  if (m < 1 || m > 62) throw std::invalid_argument("reconstruct_energy: bad M");
  if (x >= (std::size_t{1} << m)) {
    throw std::invalid_argument("reconstruct_energy: reading outside the register");
  }
  EnergyEstimate est;
  est.x = x;
  est.phi = static_cast<double>(x) / std::ldexp(1.0, static_cast<int>(m));
  est.branch = select_branch(e_ref, tau, est.phi);
  est.energy = phase_to_energy(est.phi, tau, est.branch);
  return est;
}

struct PeakStats {
  std::size_t modal = 0;       // argmax reading (ties: lowest value)
  double modal_share = 0;      // probability of the modal bin
  double window3_share = 0;    // modal bin plus cyclic neighbours
};

/** Modal bin and its one-neighbour window mass; `center` overrides the
 *  window location (the modal bin is still reported). */
inline PeakStats peak_stats(const std::vector<double>& dist,
                            std::optional<std::size_t> center = {}) {
  if (dist.empty()) throw std::invalid_argument("peak_stats: empty distribution");
  PeakStats stats;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i] > dist[stats.modal]) stats.modal = i;
  }
  stats.modal_share = dist[stats.modal];
  const std::size_t c = center.value_or(stats.modal);
  if (c >= dist.size()) throw std::invalid_argument("peak_stats: window center out of range");
  const std::size_t n = dist.size();
  stats.window3_share = dist[c] + dist[(c + 1) % n] + dist[(c + n - 1) % n];
  return stats;
}

/** Total variation distance between two distributions on the same space. */
inline double distribution_distance(const std::vector<double>& p,
                                    const std::vector<double>& q) {
  if (p.size() != q.size() || p.empty()) {
    throw std::invalid_argument("distribution_distance: size mismatch");
  }
  double sp = 0, sq = 0;
  for (double v : p) {
    if (v < -1e-12) throw std::invalid_argument("distribution_distance: negative mass");
    sp += v;
  }
  for (double v : q) {
    if (v < -1e-12) throw std::invalid_argument("distribution_distance: negative mass");
    sq += v;
  }
  if (std::abs(sp - 1) > 1e-6 || std::abs(sq - 1) > 1e-6) {
    throw std::invalid_argument("distribution_distance: distributions must be normalized");
  }
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] / sp - q[i] / sq);
  return acc / 2;
}

}  // namespace seqpe
