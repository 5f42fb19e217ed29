#pragma once

/**
 * Pauli-string algebra with a dense-matrix backend: group products,
 * commutators, exact diagonalization and vacuum energies for small
 * particle-conserving Hamiltonians. Every other component is tested
 * against the dense objects produced here.
 *
 * Conventions (global to the library):
 *   - little-endian qubit ordering: qubit 0 is the least significant bit
 *     of a basis-state index;
 *   - Z|0> = +|0>, so the all-zeros vacuum collects +1 from every Z.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace seqpe {

using Complex = std::complex<double>;

/** Maximum qubit count accepted by the dense-matrix routines. */
inline constexpr unsigned dense_qubit_cap = 14;

/** Coefficients below this magnitude are dropped during normalization. */
inline constexpr double coeff_cutoff = 1e-15;

enum class PauliOp : char { X = 'X', Y = 'Y', Z = 'Z' };

/**
 * A scaled Pauli string: a map qubit -> {X,Y,Z} (identity implied on
 * absent qubits) together with a complex coefficient. An empty letter
 * map denotes a multiple of the identity.
 */
struct PauliString {
  std::map<unsigned, PauliOp> letters;
  Complex coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::map<unsigned, PauliOp> l, Complex c)
      : letters(std::move(l)), coefficient(c) {}

  /** Smallest register size containing every operand. */
  unsigned min_qubits() const {
    return letters.empty() ? 0 : letters.rbegin()->first + 1;
  }
};

/** Group product of two Pauli strings with the +/-1, +/-i phase folded
 *  into the coefficient. */
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  static const Complex i_unit{0.0, 1.0};
  PauliString out;
  out.coefficient = a.coefficient * b.coefficient;
  auto ita = a.letters.begin();
  auto itb = b.letters.begin();
  while (ita != a.letters.end() || itb != b.letters.end()) {
    if (itb == b.letters.end() ||
        (ita != a.letters.end() && ita->first < itb->first)) {
      out.letters.emplace(*ita);
      ++ita;
    } else if (ita == a.letters.end() || itb->first < ita->first) {
      out.letters.emplace(*itb);
      ++itb;
    } else {
      const PauliOp p = ita->second;
      const PauliOp q = itb->second;
      if (p != q) {
        // p*q = +/- i r for the cyclically ordered triple (X,Y,Z).
        auto rank = [](PauliOp o) {
          return o == PauliOp::X ? 0 : o == PauliOp::Y ? 1 : 2;
        };
        const int rp = rank(p);
        const int rq = rank(q);
        const int rr = 3 - rp - rq;
        const PauliOp r =
            rr == 0 ? PauliOp::X : rr == 1 ? PauliOp::Y : PauliOp::Z;
        const bool cyclic = (rq - rp + 3) % 3 == 1;  // XY, YZ, ZX
        out.coefficient *= cyclic ? i_unit : -i_unit;
        out.letters.emplace(ita->first, r);
      }
      ++ita;
      ++itb;
    }
  }
  return out;
}

/**
 * A sum of Pauli strings. normalized() merges terms sharing a letter
 * map and drops coefficients below coeff_cutoff, so commutator cascades
 * stay finite and deterministic.
 */
struct PauliSum {
  std::vector<PauliString> terms;

  PauliSum() = default;
  explicit PauliSum(std::vector<PauliString> t) : terms(std::move(t)) {}

  unsigned min_qubits() const {
    unsigned n = 0;
    for (const auto& t : terms) n = std::max(n, t.min_qubits());
    return n;
  }

  PauliSum normalized() const {
    std::map<std::map<unsigned, PauliOp>, Complex> merged;
    for (const auto& t : terms) merged[t.letters] += t.coefficient;
    PauliSum out;
    for (auto& [letters, coeff] : merged) {
      if (std::abs(coeff) >= coeff_cutoff) out.terms.emplace_back(letters, coeff);
    }
    return out;
  }

  /** Hermitian iff every normalized coefficient is real. */
  bool is_hermitian(double tol = 1e-12) const {
    for (const auto& t : normalized().terms) {
      if (std::abs(t.coefficient.imag()) > tol) return false;
    }
    return true;
  }

  PauliSum& operator+=(const PauliString& t) {
    terms.push_back(t);
    return *this;
  }
  PauliSum& operator+=(const PauliSum& other) {
    terms.insert(terms.end(), other.terms.begin(), other.terms.end());
    return *this;
  }
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(Complex s, const PauliSum& h) {
    PauliSum out = h;
    for (auto& t : out.terms) t.coefficient *= s;
    return out;
  }
};

/** Product sum a*b (all cross terms), normalized. */
inline PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  PauliSum out;
  for (const auto& ta : a.terms) {
    for (const auto& tb : b.terms) out += multiply(ta, tb);
  }
  return out.normalized();
}

/** Commutator [a, b] = ab - ba as a normalized sum. */
inline PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  PauliSum out = multiply(a, b) + (Complex{-1.0, 0.0} * multiply(b, a));
  return out.normalized();
}

/** Dense state on n qubits; amplitudes indexed little-endian. */
struct DenseState {
  Eigen::VectorXcd amplitudes;
  unsigned n_qubits = 0;

  DenseState() = default;
  DenseState(Eigen::VectorXcd amps, unsigned n)
      : amplitudes(std::move(amps)), n_qubits(n) {
    if (amplitudes.size() != (Eigen::Index{1} << n)) {
      throw std::invalid_argument("DenseState: amplitude length != 2^n");
    }
  }
};

/** Computational basis state |index> on n qubits. */
inline DenseState basis_state(unsigned n, std::uint64_t index) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return DenseState(std::move(amps), n);
}

/** In-place action of a single Pauli string on an amplitude vector. */
inline void apply_pauli_string(const PauliString& p, Eigen::VectorXcd& amps) {
  static const Complex i_unit{0.0, 1.0};
  std::uint64_t flip = 0;
  for (const auto& [q, op] : p.letters) {
    if (op != PauliOp::Z) flip |= std::uint64_t{1} << q;
  }
  const auto dim = static_cast<std::uint64_t>(amps.size());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps.size());
  for (std::uint64_t k = 0; k < dim; ++k) {
    Complex phase = p.coefficient;
    for (const auto& [q, op] : p.letters) {
      const bool bit = (k >> q) & 1;
      if (op == PauliOp::Y) phase *= bit ? -i_unit : i_unit;
      if (op == PauliOp::Z && bit) phase = -phase;
    }
    out(static_cast<Eigen::Index>(k ^ flip)) += phase * amps(static_cast<Eigen::Index>(k));
  }
  amps = std::move(out);
}

/** h|s> as a new vector (no Hermiticity requirement). */
inline Eigen::VectorXcd apply_sum(const PauliSum& h, const Eigen::VectorXcd& amps) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amps.size());
  for (const auto& t : h.terms) {
    Eigen::VectorXcd contrib = amps;
    apply_pauli_string(t, contrib);
    out += contrib;
  }
  return out;
}

/** Dense 2^n x 2^n matrix of a Pauli string. */
inline Eigen::MatrixXcd to_matrix(const PauliString& p, unsigned n) {
  static const Complex i_unit{0.0, 1.0};
  if (n > dense_qubit_cap) {
    throw std::invalid_argument("to_matrix: qubit count exceeds dense cap");
  }
  if (p.min_qubits() > n) {
    throw std::invalid_argument("to_matrix: operand index outside register");
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::uint64_t flip = 0;
  for (const auto& [q, op] : p.letters) {
    if (op != PauliOp::Z) flip |= std::uint64_t{1} << q;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (std::uint64_t k = 0; k < dim; ++k) {
    Complex phase = p.coefficient;
    for (const auto& [q, op] : p.letters) {
      const bool bit = (k >> q) & 1;
      if (op == PauliOp::Y) phase *= bit ? -i_unit : i_unit;
      if (op == PauliOp::Z && bit) phase = -phase;
    }
    m(static_cast<Eigen::Index>(k ^ flip), static_cast<Eigen::Index>(k)) = phase;
  }
  return m;
}

/** Dense 2^n x 2^n matrix of a Pauli sum. */
inline Eigen::MatrixXcd to_matrix(const PauliSum& h, unsigned n) {
  if (n > dense_qubit_cap) {
    throw std::invalid_argument("to_matrix: qubit count exceeds dense cap");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms) m += to_matrix(t, n);
  return m;
}

struct EigenPair {
  double energy = 0.0;
  DenseState vector;
};

/** Full eigensystem of a Hermitian sum, ascending by energy. */
inline std::vector<EigenPair> eigensystem(const PauliSum& h, unsigned n) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("eigensystem: non-Hermitian input");
  }
  const Eigen::MatrixXcd m = to_matrix(h, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensystem: diagonalization failed");
  }
  std::vector<EigenPair> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out.push_back({solver.eigenvalues()(i), DenseState(solver.eigenvectors().col(i), n)});
  }
  return out;
}

inline std::vector<EigenPair> eigensystem(const PauliSum& h) {
  return eigensystem(h, h.min_qubits());
}

/** <s|h|s> for Hermitian h; the imaginary residue is checked and dropped. */
inline double expectation(const PauliSum& h, const DenseState& s) {
  if (!h.is_hermitian()) {
    throw std::invalid_argument("expectation: non-Hermitian input");
  }
  const Eigen::VectorXcd hs = apply_sum(h, s.amplitudes);
  const Complex val = s.amplitudes.dot(hs);  // Eigen dot conjugates the left factor
  if (std::abs(val.imag()) > 1e-10) {
    throw std::runtime_error("expectation: imaginary residue above tolerance");
  }
  return val.real();
}

/**
 * <0...0|h|0...0>: the sum of coefficients of Z-or-identity-only terms,
 * each Z contributing +1 on |0>. Exact for any sum.
 */
inline double vacuum_energy(const PauliSum& h) {
  Complex e = 0.0;
  for (const auto& t : h.terms) {
    const bool z_only = std::all_of(
        t.letters.begin(), t.letters.end(),
        [](const auto& kv) { return kv.second == PauliOp::Z; });
    if (z_only) e += t.coefficient;
  }
  return e.real();
}

/** One term per line: coefficient then letter-index tokens, e.g.
 *  `-0.055557 X0 X1`. Lines starting with `#` are comments. */
inline std::string format_pauli_sum(const PauliSum& h) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& t : h.terms) {
    if (std::abs(t.coefficient.imag()) > 1e-12) {
      throw std::invalid_argument("format_pauli_sum: complex coefficient");
    }
    out << t.coefficient.real();
    for (const auto& [q, op] : t.letters) {
      out << ' ' << static_cast<char>(op) << q;
    }
    out << '\n';
  }
  return out.str();
}

inline PauliSum parse_pauli_sum(const std::string& text) {
  PauliSum out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    double coeff = 0.0;
    if (!(tokens >> coeff)) {
      std::string leftover;
      std::istringstream probe(line);
      if (probe >> leftover) {
        throw std::invalid_argument("parse_pauli_sum: bad coefficient in '" + line + "'");
      }
      continue;  // blank or comment-only line
    }
    PauliString term;
    term.coefficient = coeff;
    std::string tok;
    while (tokens >> tok) {
      if (tok.size() < 2 || (tok[0] != 'X' && tok[0] != 'Y' && tok[0] != 'Z')) {
        throw std::invalid_argument("parse_pauli_sum: bad token '" + tok + "'");
      }
      const unsigned q = static_cast<unsigned>(std::stoul(tok.substr(1)));
      const auto op = static_cast<PauliOp>(tok[0]);
      if (!term.letters.emplace(q, op).second) {
        throw std::invalid_argument("parse_pauli_sum: repeated qubit in term");
      }
    }
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace seqpe
