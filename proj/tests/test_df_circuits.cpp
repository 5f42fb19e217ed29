#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <bit>
#include <set>
#include <utility>
#include <vector>

#include "oracle.hpp"
#include "seqpe/df_circuits.hpp"
#include "seqpe/metrics.hpp"
#include "seqpe/resources.hpp"

using namespace seqpe;
using Catch::Matchers::WithinAbs;

namespace {

void require_counts(const Circuit& c, const CostVector& row) {
  REQUIRE_THAT(count(c, GateClass::CX), WithinAbs(row.cx_count, 1e-9));
  REQUIRE_THAT(count(c, GateClass::Rz), WithinAbs(row.rz_count, 1e-9));
}

void require_depths_exact(const Circuit& c, const CostVector& row) {
  REQUIRE_THAT(depth(c, GateClass::CX), WithinAbs(row.cx_depth, 1e-9));
  REQUIRE_THAT(depth(c, GateClass::Rz), WithinAbs(row.rz_depth, 1e-9));
}

void require_depths_at_most(const Circuit& c, const CostVector& row) {
  REQUIRE(depth(c, GateClass::CX) <= row.cx_depth + 1e-9);
  REQUIRE(depth(c, GateClass::Rz) <= row.rz_depth + 1e-9);
}

}  // namespace

TEST_CASE("compiled primitives realize the analytic rows", "[df]") {
  for (unsigned n : {4u, 6u, 8u}) {
    const PrimitiveCosts rows = primitive_costs(n);

    require_counts(compiled_w(n), rows.w);
    require_depths_exact(compiled_w(n), rows.w);

    require_counts(compiled_u0(n), rows.u0);
    require_depths_exact(compiled_u0(n), rows.u0);

    require_counts(compiled_ul(n), rows.ul);
    require_depths_exact(compiled_ul(n), rows.ul);

    // controlled templates must meet the counts and fit the depth budget
    require_counts(compiled_cu0(n), rows.cu0);
    require_depths_at_most(compiled_cu0(n), rows.cu0);
    require_counts(compiled_cul(n), rows.cul);
    require_depths_at_most(compiled_cul(n), rows.cul);

    const PrimitiveCosts sb = primitive_costs(n, true);
    require_counts(compiled_w(n, true), sb.w);
    require_depths_exact(compiled_w(n, true), sb.w);
  }
  REQUIRE_THROWS_AS(compiled_w(5), std::invalid_argument);
  REQUIRE_THROWS_AS(compiled_w(2, true), std::invalid_argument);
}

TEST_CASE("the basis rotation conserves particle number", "[df]") {
  const Circuit w = compiled_w(4);
  const oracle::Mat u = oracle::circuit_unitary(w);
  for (Eigen::Index in = 0; in < 16; ++in) {
    for (Eigen::Index out = 0; out < 16; ++out) {
      if (std::popcount(static_cast<unsigned>(in)) !=
          std::popcount(static_cast<unsigned>(out))) {
        REQUIRE(std::abs(u(out, in)) < 1e-12);
      }
    }
  }
}

TEST_CASE("phase layers are diagonal", "[df]") {
  for (const Circuit& c : {compiled_u0(4), compiled_ul(4)}) {
    const oracle::Mat u = oracle::circuit_unitary(c);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      for (Eigen::Index j = 0; j < u.cols(); ++j) {
        if (i != j) REQUIRE(std::abs(u(i, j)) < 1e-12);
        if (i == j) REQUIRE_THAT(std::abs(u(i, j)), WithinAbs(1.0, 1e-12));
      }
    }
  }
}

TEST_CASE("controlled phase layers are exactly conditioned", "[df]") {
  for (const Circuit& c : {compiled_cu0(4), compiled_cul(4)}) {
    REQUIRE(c.n_qubits == 5);
    const oracle::Mat u = oracle::circuit_unitary(c);
    // control = qubit 4: the control-0 block is the identity
    for (Eigen::Index in = 0; in < 16; ++in) {
      for (Eigen::Index out = 0; out < 32; ++out) {
        const oracle::Complex want = in == out ? 1.0 : 0.0;
        REQUIRE(std::abs(u(out, in) - want) < 1e-12);
      }
    }
    // the control-1 block is diagonal (no leakage between branches)
    for (Eigen::Index in = 16; in < 32; ++in) {
      for (Eigen::Index out = 0; out < 32; ++out) {
        if (out != in) REQUIRE(std::abs(u(out, in)) < 1e-12);
      }
    }
  }
}

TEST_CASE("spin-block rotations never cross the half boundary", "[df]") {
  const unsigned n = 8;
  const Circuit w = compiled_w(n, true);
  for (const Gate& g : w.gates) {
    if (g.qubits.empty()) continue;
    const auto [lo, hi] = std::minmax_element(g.qubits.begin(), g.qubits.end());
    REQUIRE((*hi < n / 2 || *lo >= n / 2));
  }
  // the full variant does mix the halves
  const Circuit full = compiled_w(n);
  bool crosses = false;
  for (const Gate& g : full.gates) {
    if (g.qubits.size() == 2 &&
        (g.qubits[0] < n / 2) != (g.qubits[1] < n / 2)) {
      crosses = true;
    }
  }
  REQUIRE(crosses);
}

TEST_CASE("round-robin matchings cover every pair exactly once", "[df]") {
  for (unsigned n : {6u, 8u}) {
    std::set<std::pair<unsigned, unsigned>> seen;
    for (unsigned r = 0; r + 1 < n; ++r) {
      const auto pairs = detail::matching_round(n, r);
      REQUIRE(pairs.size() == n / 2);
      std::set<unsigned> used;
      for (auto [a, b] : pairs) {
        REQUIRE(a != b);
        REQUIRE(a < n);
        REQUIRE(b < n);
        used.insert(a);
        used.insert(b);
        seen.insert({std::min(a, b), std::max(a, b)});
      }
      REQUIRE(used.size() == n);  // each round is a perfect matching
    }
    REQUIRE(seen.size() == n * (n - 1) / 2);
  }
}
