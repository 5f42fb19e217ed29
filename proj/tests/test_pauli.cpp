#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "oracle.hpp"
#include "seqpe/pauli.hpp"

using namespace seqpe;
using Catch::Matchers::WithinAbs;

namespace {

PauliString str(std::map<unsigned, PauliOp> letters, Complex c = 1.0) {
  return PauliString(std::move(letters), c);
}

double mat_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("single-qubit Pauli products carry the group phase", "[pauli]") {
  const PauliString x = str({{0, PauliOp::X}});
  const PauliString y = str({{0, PauliOp::Y}});
  const PauliString z = str({{0, PauliOp::Z}});

  const PauliString xy = multiply(x, y);
  REQUIRE(xy.letters.at(0) == PauliOp::Z);
  REQUIRE_THAT(std::abs(xy.coefficient - Complex(0, 1)), WithinAbs(0.0, 1e-14));

  const PauliString yx = multiply(y, x);
  REQUIRE_THAT(std::abs(yx.coefficient - Complex(0, -1)), WithinAbs(0.0, 1e-14));

  const PauliString xx = multiply(x, x);
  REQUIRE(xx.letters.empty());
  REQUIRE_THAT(std::abs(xx.coefficient - Complex(1, 0)), WithinAbs(0.0, 1e-14));

  (void)z;
}

TEST_CASE("string products match dense matrix products", "[pauli]") {
  const unsigned n = 3;
  const std::vector<PauliString> pool = {
      str({{0, PauliOp::X}, {2, PauliOp::Z}}, Complex(0.7, -0.1)),
      str({{1, PauliOp::Y}}, 1.3),
      str({{0, PauliOp::Z}, {1, PauliOp::X}, {2, PauliOp::Y}}, Complex(0, 2)),
      str({}, 0.5),
  };
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      const PauliString ab = multiply(a, b);
      const Eigen::MatrixXcd lhs = oracle::pauli_string_matrix(ab, n);
      const Eigen::MatrixXcd rhs =
          oracle::pauli_string_matrix(a, n) * oracle::pauli_string_matrix(b, n);
      REQUIRE(mat_diff(lhs, rhs) < 1e-12);
    }
  }
}

TEST_CASE("normalization merges duplicates and drops dust", "[pauli]") {
  PauliSum h;
  h += str({{0, PauliOp::Z}}, 1.0);
  h += str({{0, PauliOp::Z}}, 2.0);
  h += str({{1, PauliOp::X}}, 1e-18);
  const PauliSum norm = h.normalized();
  REQUIRE(norm.terms.size() == 1);
  REQUIRE_THAT(norm.terms[0].coefficient.real(), WithinAbs(3.0, 1e-14));
  REQUIRE(h.is_hermitian());

  PauliSum bad;
  bad += str({{0, PauliOp::X}}, Complex(0, 0.2));
  REQUIRE_FALSE(bad.is_hermitian());
}

TEST_CASE("to_matrix agrees with the Kronecker oracle", "[pauli]") {
  PauliSum h;
  h += str({{0, PauliOp::X}, {1, PauliOp::X}}, 0.25);
  h += str({{0, PauliOp::Y}, {2, PauliOp::Y}}, -0.5);
  h += str({{1, PauliOp::Z}}, 0.75);
  h += str({}, -0.125);
  const unsigned n = 3;
  REQUIRE(mat_diff(to_matrix(h, n), oracle::pauli_sum_matrix(h, n)) < 1e-13);
  REQUIRE(mat_diff(to_matrix(h.terms[1], n),
                   oracle::pauli_string_matrix(h.terms[1], n)) < 1e-13);
}

TEST_CASE("apply_sum matches dense matrix action", "[pauli]") {
  PauliSum h;
  h += str({{0, PauliOp::X}, {1, PauliOp::Y}}, Complex(0.3, 0.1));
  h += str({{2, PauliOp::Z}}, -1.1);
  const unsigned n = 3;
  const Eigen::VectorXcd v = oracle::random_state(n, 11);
  const Eigen::VectorXcd got = apply_sum(h, v);
  const Eigen::VectorXcd want = oracle::pauli_sum_matrix(h, n) * v;
  REQUIRE((got - want).norm() < 1e-12);
}

TEST_CASE("eigensystem reproduces dense eigenpairs", "[pauli]") {
  PauliSum h;
  h += str({{0, PauliOp::X}, {1, PauliOp::X}}, 0.4);
  h += str({{0, PauliOp::Z}}, -0.9);
  h += str({{1, PauliOp::Z}}, 0.35);
  const unsigned n = 2;
  const Eigen::MatrixXcd m = oracle::pauli_sum_matrix(h, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);

  const std::vector<EigenPair> pairs = eigensystem(h, n);
  REQUIRE(pairs.size() == 4);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    REQUIRE_THAT(pairs[k].energy, WithinAbs(solver.eigenvalues()(static_cast<int>(k)),
                                            1e-12));
    const Eigen::VectorXcd& v = pairs[k].vector.amplitudes;
    REQUIRE((m * v - pairs[k].energy * v).norm() < 1e-11);
  }
  for (std::size_t k = 0; k + 1 < pairs.size(); ++k) {
    REQUIRE(pairs[k].energy <= pairs[k + 1].energy + 1e-12);
  }
}

TEST_CASE("expectation and vacuum energy match the dense forms", "[pauli]") {
  PauliSum h;
  h += str({{0, PauliOp::Z}, {1, PauliOp::Z}}, 0.6);
  h += str({{0, PauliOp::X}}, 0.2);
  const unsigned n = 2;
  const Eigen::VectorXcd v = oracle::random_state(n, 5);
  const Eigen::MatrixXcd m = oracle::pauli_sum_matrix(h, n);
  const double want = (v.adjoint() * m * v)(0, 0).real();
  REQUIRE_THAT(expectation(h, DenseState(v, n)), WithinAbs(want, 1e-12));
  REQUIRE_THAT(vacuum_energy(h), WithinAbs(m(0, 0).real(), 1e-13));
}

TEST_CASE("text round trip preserves the operator", "[pauli]") {
  PauliSum h;
  h += str({{3, PauliOp::X}, {5, PauliOp::Y}, {0, PauliOp::Z}}, -0.055557);
  h += str({{1, PauliOp::Z}}, 0.104616);
  h += str({}, 2.0);
  const std::string text = format_pauli_sum(h);
  const PauliSum back = parse_pauli_sum(text);
  const unsigned n = 6;
  REQUIRE(mat_diff(oracle::pauli_sum_matrix(h, n), oracle::pauli_sum_matrix(back, n)) <
          1e-12);
}

TEST_CASE("parser accepts the documented line format", "[pauli]") {
  const PauliSum h = parse_pauli_sum("0.5  X3 Y5 Z0\n# comment line\n\n-1.25 Z1\n");
  REQUIRE(h.terms.size() == 2);
  REQUIRE(h.terms[0].letters.at(3) == PauliOp::X);
  REQUIRE(h.terms[0].letters.at(5) == PauliOp::Y);
  REQUIRE(h.terms[0].letters.at(0) == PauliOp::Z);
  REQUIRE_THAT(h.terms[0].coefficient.real(), WithinAbs(0.5, 1e-15));
  REQUIRE_THAT(h.terms[1].coefficient.real(), WithinAbs(-1.25, 1e-15));
  REQUIRE(h.min_qubits() == 6);
}

TEST_CASE("parser rejects malformed terms", "[pauli]") {
  REQUIRE_THROWS_AS(parse_pauli_sum("0.5 X0 X0"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pauli_sum("0.5 Q1"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pauli_sum("abc X1"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pauli_sum("0.5 X"), std::invalid_argument);
}

TEST_CASE("basis_state places a single unit amplitude", "[pauli]") {
  const DenseState s = basis_state(3, 5);
  REQUIRE(s.amplitudes.size() == 8);
  REQUIRE_THAT(std::abs(s.amplitudes(5) - Complex(1, 0)), WithinAbs(0.0, 1e-15));
  REQUIRE_THAT(s.amplitudes.norm(), WithinAbs(1.0, 1e-15));
  REQUIRE_THROWS_AS(DenseState(Eigen::VectorXcd::Zero(7), 3), std::invalid_argument);
}
