#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cmath>

#include "oracle.hpp"
#include "seqpe/ethylene.hpp"
#include "seqpe/simulate.hpp"

using namespace seqpe;
using Catch::Matchers::WithinAbs;

namespace {

struct Model {
  PauliSum h1, h2, h;
  Model() {
    auto [a, b] = build_ppp();
    h1 = a;
    h2 = b;
    h = h1 + h2;
  }
};

}  // namespace

TEST_CASE("the model has the published term structure", "[ethylene]") {
  const Model m;
  REQUIRE(m.h1.terms.size() == 4);
  REQUIRE(m.h2.terms.size() == 4);
  const PPPParams p;
  // hopping: alpha (X0X1 + Y0Y1 + X2X3 + Y2Y3)
  for (const auto& t : m.h1.terms) {
    REQUIRE_THAT(t.coefficient.real(), WithinAbs(p.alpha, 1e-15));
    REQUIRE(t.letters.size() == 2);
  }
  // interactions: beta1 (Z0Z3 + Z1Z2) + beta2 (Z0Z2 + Z1Z3)
  double sum = 0;
  for (const auto& t : m.h2.terms) {
    REQUIRE(t.letters.size() == 2);
    sum += t.coefficient.real();
  }
  REQUIRE_THAT(sum, WithinAbs(2 * (p.beta1 + p.beta2), 1e-14));
}

TEST_CASE("frozen spectrum values", "[ethylene]") {
  const Model m;
  const auto pairs = eigensystem(m.h, 4);
  REQUIRE_THAT(pairs.front().energy, WithinAbs(-0.344282, 1e-6));  // unphysical min
  REQUIRE_THAT(vacuum_energy(m.h), WithinAbs(0.344282, 1e-6));

  // the physical ground and excited references live in the half-filled sector
  const DenseState mf = evolve(ansatz_circuit(mean_field_theta), basis_state(4, 0));
  double e_s0 = 0, best = -1;
  for (const auto& pr : pairs) {
    const double ov = std::abs(pr.vector.amplitudes.dot(mf.amplitudes));
    if (ov > best) {
      best = ov;
      e_s0 = pr.energy;
    }
  }
  REQUIRE_THAT(e_s0, WithinAbs(-0.2342825, 1e-6));
  REQUIRE_THAT(best * best, WithinAbs(0.9742737385, 1e-8));
  REQUIRE_THAT(expectation(m.h, mf), WithinAbs(4 * PPPParams{}.alpha, 1e-12));
}

TEST_CASE("the ansatz spans the seniority-zero pair basis", "[ethylene]") {
  const double theta = 0.7;
  const DenseState s = evolve(ansatz_circuit(theta), basis_state(4, 0));
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  REQUIRE_THAT(std::abs(s.amplitudes(5)), WithinAbs(std::cos(theta) * inv_sqrt2, 1e-12));
  REQUIRE_THAT(std::abs(s.amplitudes(10)), WithinAbs(std::cos(theta) * inv_sqrt2, 1e-12));
  REQUIRE_THAT(std::abs(s.amplitudes(6)), WithinAbs(std::sin(theta) * inv_sqrt2, 1e-12));
  REQUIRE_THAT(std::abs(s.amplitudes(9)), WithinAbs(std::sin(theta) * inv_sqrt2, 1e-12));
  double rest = 0;
  for (int i = 0; i < 16; ++i) {
    if (i != 5 && i != 6 && i != 9 && i != 10) rest += std::norm(s.amplitudes(i));
  }
  REQUIRE_THAT(rest, WithinAbs(0.0, 1e-12));
}

TEST_CASE("frozen bias correction and schedules", "[ethylene]") {
  const Model m;
  const DenseState mf = evolve(ansatz_circuit(mean_field_theta), basis_state(4, 0));
  const double lambda = lambda_correction(m.h1, m.h2, mf);
  REQUIRE_THAT(lambda, WithinAbs(0.0009171615207, 1e-10));
  REQUIRE_THAT(lambda_correction(mf), WithinAbs(lambda, 1e-15));

  const TrotterSchedule s10 = schedule(10.0, 5, lambda);
  REQUIRE_THAT(s10.s1, WithinAbs(5.9171615207, 1e-8));
  REQUIRE_THAT(s10.s2, WithinAbs(10.0, 1e-15));
  REQUIRE(s10.M == 5);
  REQUIRE_THAT(s10.delta_e() * 1e3, WithinAbs(9.817477, 1e-5));

  const TrotterSchedule s8 = schedule(8.0, 6, lambda);
  REQUIRE_THAT(s8.s1, WithinAbs(4.4695866988, 1e-8));
  REQUIRE_THAT(s8.delta_e() * 1e3, WithinAbs(6.135923, 1e-5));

  REQUIRE_THROWS_AS(schedule(0.0, 5, lambda), std::invalid_argument);
  REQUIRE_THROWS_AS(schedule(10.0, 0, lambda), std::invalid_argument);
}

TEST_CASE("the step circuit is the symmetric product formula", "[ethylene]") {
  const Model m;
  const TrotterSchedule sched = schedule(3.0, 3, 0.0009171615207);
  const Circuit step = trotter_step_circuit(sched);
  const oracle::Mat h1m = oracle::pauli_sum_matrix(m.h1, 4);
  const oracle::Mat h2m = oracle::pauli_sum_matrix(m.h2, 4);
  const oracle::Mat want = oracle::herm_exp(h1m, sched.s1) *
                           oracle::herm_exp(h2m, sched.s2) *
                           oracle::herm_exp(h1m, sched.s1);
  REQUIRE((oracle::circuit_unitary(step) - want).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("the controlled step is the exact block lift", "[ethylene]") {
  const TrotterSchedule sched = schedule(2.0, 3, 0.0);
  const Circuit step = trotter_step_circuit(sched);
  const Circuit ctrl = controlled_trotter_step_circuit(sched);
  REQUIRE(ctrl.n_qubits == 5);
  const oracle::Mat u = oracle::circuit_unitary(step);
  oracle::Mat want = oracle::Mat::Zero(32, 32);
  want.topLeftCorner(16, 16) = oracle::Mat::Identity(16, 16);
  want.bottomRightCorner(16, 16) = u;  // control = qubit 4 (highest bit)
  REQUIRE((oracle::circuit_unitary(ctrl) - want).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("the step conserves particle number", "[ethylene]") {
  const TrotterSchedule sched = schedule(5.0, 3, 0.0009171615207);
  const Circuit step = trotter_step_circuit(sched);
  const oracle::Mat u = oracle::circuit_unitary(step);
  for (int col = 0; col < 16; ++col) {
    for (int row = 0; row < 16; ++row) {
      if (std::popcount(static_cast<unsigned>(row)) !=
          std::popcount(static_cast<unsigned>(col))) {
        REQUIRE(std::abs(u(row, col)) < 1e-12);
      }
    }
  }
}

TEST_CASE("vacuum column acquires exactly the vacuum phase", "[ethylene]") {
  const Model m;
  const double tau = 10.0;
  const TrotterSchedule sched = schedule(tau, 5, 0.0009171615207);
  const oracle::Mat u = oracle::circuit_unitary(trotter_step_circuit(sched));
  // H annihilates the vacuum except for the diagonal interaction shift, and
  // the product formula keeps |0000> an exact eigenvector.
  const oracle::Complex expected = std::polar(1.0, -tau * vacuum_energy(m.h));
  REQUIRE(std::abs(u(0, 0) - expected) < 1e-12);
  for (int row = 1; row < 16; ++row) REQUIRE(std::abs(u(row, 0)) < 1e-12);
}
