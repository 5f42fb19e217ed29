#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "seqpe/circuit.hpp"

using namespace seqpe;

TEST_CASE("gate validation catches malformed operands", "[circuit]") {
  Circuit c(3, 1);
  REQUIRE_THROWS_AS(c.cx(0, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(c.cswap(0, 1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(c.h(3), std::invalid_argument);
  REQUIRE_THROWS_AS(c.crz(1, 1, 0.5), std::invalid_argument);
  REQUIRE_THROWS_AS(c.measure(0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(c.rz(0, std::nan("")), std::invalid_argument);
  Gate conditioned_cx{GateKind::CX, {0, 1}};
  conditioned_cx.condition = 2;
  REQUIRE_THROWS_AS(c.add(conditioned_cx), std::invalid_argument);
  REQUIRE(c.gates.empty());
}

TEST_CASE("registers are named contiguous windows", "[circuit]") {
  Circuit c(6);
  c.add_register("phase", 0, 2);
  c.add_register("systemA", 2, 4);
  REQUIRE(c.reg("phase").size == 2);
  REQUIRE(c.reg("systemA").start == 2);
  REQUIRE_THROWS_AS(c.reg("missing"), std::invalid_argument);
  REQUIRE_THROWS_AS(c.add_register("over", 4, 3), std::invalid_argument);
}

TEST_CASE("compose concatenates and merges register tables", "[circuit]") {
  Circuit a(2);
  a.add_register("phase", 0, 1);
  a.h(0);
  Circuit b(2);
  b.add_register("phase", 0, 1);
  b.add_register("system", 1, 1);
  b.cx(0, 1);
  const Circuit ab = compose(a, b);
  REQUIRE(ab.gates.size() == 2);
  REQUIRE(ab.registers.size() == 2);
  REQUIRE(ab.gates[0].kind == GateKind::H);
  REQUIRE(ab.gates[1].kind == GateKind::CX);

  Circuit widthless(3);
  REQUIRE_THROWS_AS(compose(a, widthless), std::invalid_argument);
  Circuit clash(2);
  clash.add_register("phase", 1, 1);
  REQUIRE_THROWS_AS(compose(a, clash), std::invalid_argument);
}

TEST_CASE("inverse is the adjoint at the unitary level", "[circuit]") {
  const Circuit c = oracle::random_circuit(4, 40, 123);
  const oracle::Mat u = oracle::circuit_unitary(c);
  const oracle::Mat v = oracle::circuit_unitary(inverse(c));
  REQUIRE((v - u.adjoint()).cwiseAbs().maxCoeff() < 1e-11);

  Circuit measured(1, 1);
  measured.measure(0, 0);
  REQUIRE_THROWS_AS(inverse(measured), std::invalid_argument);
}

TEST_CASE("embed remaps every operand including conditions", "[circuit]") {
  Circuit small(2);
  small.crz(0, 1, 0.7);
  small.cx(1, 0);
  const Circuit big = embed(small, 5, {4, 2});
  REQUIRE(big.n_qubits == 5);
  REQUIRE(big.gates[0].condition.value() == 4);
  REQUIRE(big.gates[0].qubits[0] == 2);
  REQUIRE(big.gates[1].qubits[0] == 2);
  REQUIRE(big.gates[1].qubits[1] == 4);
  REQUIRE_THROWS_AS(embed(small, 5, {0, 1, 2}), std::invalid_argument);
}

TEST_CASE("text round trip preserves semantics", "[circuit]") {
  Circuit c = oracle::random_circuit(4, 30, 77);
  c.n_cbits = 2;
  c.add_register("phase", 0, 2);
  c.barrier();
  c.measure(0, 0);
  c.reset(1);
  c.measure(2, 1);

  const std::string text = format_circuit(c);
  const Circuit back = parse_circuit(text);
  REQUIRE(back.n_qubits == c.n_qubits);
  REQUIRE(back.n_cbits == c.n_cbits);
  REQUIRE(back.registers.size() == 1);
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    REQUIRE(back.gates[i].kind == c.gates[i].kind);
    REQUIRE(back.gates[i].qubits == c.gates[i].qubits);
    REQUIRE(back.gates[i].angle == c.gates[i].angle);  // 17 digits: exact
    REQUIRE(back.gates[i].cbit == c.gates[i].cbit);
    REQUIRE(back.gates[i].condition == c.gates[i].condition);
  }
}

TEST_CASE("parser rejects malformed circuit text", "[circuit]") {
  REQUIRE_THROWS_AS(parse_circuit("H 0\n"), std::invalid_argument);  // before header
  REQUIRE_THROWS_AS(parse_circuit("qubits 2\nBogus 0\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_circuit("qubits 2\nRz 0\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_circuit("qubits 2\nCX 0\n"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_circuit("qubits 1\nH 5\n"), std::invalid_argument);
  const Circuit ok = parse_circuit("qubits 2\ncbits 1\n# comment\nH 0\nMeasure 1 -> 0\n");
  REQUIRE(ok.gates.size() == 2);
  REQUIRE(ok.gates[1].cbit == 0);
}

TEST_CASE("arity table and helpers are consistent", "[circuit]") {
  REQUIRE(gate_arity(GateKind::CX) == 2);
  REQUIRE(gate_arity(GateKind::CSWAP) == 3);
  REQUIRE(gate_arity(GateKind::Barrier) == 0);
  REQUIRE(gate_arity(GateKind::H) == 1);
  REQUIRE(is_rotation(GateKind::Phase));
  REQUIRE_FALSE(is_rotation(GateKind::CX));

  Circuit c(2, 1);
  REQUIRE_FALSE(c.has_measurement());
  c.reset(0);
  REQUIRE(c.has_measurement());
}
