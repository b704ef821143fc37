#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace cptsq::atom {

using cplx = std::complex<double>;

/// Single-atom Lambda system: two ground states and one excited state.
enum Level : int { kGround1 = 0, kGround2 = 1, kExcited = 2 };

using Operator = Eigen::Matrix3cd;

/// Expectation values <|k><l|> stored at index 3*k + l.
using StateVector = Eigen::Matrix<cplx, 9, 1>;
using Generator = Eigen::Matrix<cplx, 9, 9>;

/// |i><j|
Operator transition(Level i, Level j);

inline constexpr int flat_index(Level k, Level l) { return 3 * k + l; }

/// Classical drive seen by one atom, rates in units of gamma.
///
/// Rotating-frame Hamiltonian
///   H = detuning1 |1><1| + detuning2 |2><2|
///       + rabi1 |e><1| + rabi2 |e><2| + h.c.
/// The excited state decays at total rate 2 (branching 1/2 into each ground
/// state) and the ground coherence dephases at rate gamma0.
struct LambdaDrive {
    cplx rabi1{0.0, 0.0};
    cplx rabi2{0.0, 0.0};
    double detuning1 = 0.0;
    double detuning2 = 0.0;
    double gamma0 = 0.0;
};

Operator hamiltonian(const LambdaDrive& drive);
std::vector<Operator> jump_operators(double gamma0);

/// Adjoint (Heisenberg-picture) Lindblad generator applied to X.
Operator adjoint_generator(const Operator& X, const LambdaDrive& drive, bool include_hamiltonian = true);

/// Matrix G with d<s>/dt = G <s> for the nine expectation values.
Generator expectation_generator(const LambdaDrive& drive);

cplx expectation(const Operator& X, const StateVector& s);

/// Fluctuation-dissipation (Einstein) coefficient
///   <L(a b)> - <L(a) b> - <a L(b)>
/// using only the dissipative part of the generator.
cplx einstein_coefficient(const Operator& a, const Operator& b, const LambdaDrive& drive, const StateVector& s);

}  // namespace cptsq::atom
