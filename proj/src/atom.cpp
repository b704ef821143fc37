#include "cptsq/atom.hpp"

#include <cmath>

namespace cptsq::atom {

Operator transition(Level i, Level j)
{
    Operator op = Operator::Zero();
    op(i, j) = 1.0;
    return op;
}

Operator hamiltonian(const LambdaDrive& drive)
{
    Operator h = drive.detuning1 * transition(kGround1, kGround1) + drive.detuning2 * transition(kGround2, kGround2);
    const Operator coupling = drive.rabi1 * transition(kExcited, kGround1) + drive.rabi2 * transition(kExcited, kGround2);
    h += coupling + coupling.adjoint();
    return h;
}

std::vector<Operator> jump_operators(double gamma0)
{
    // Rate 1 into each ground state: total excited decay 2, dipole decay 1.
    std::vector<Operator> jumps{transition(kGround1, kExcited), transition(kGround2, kExcited)};
    if (gamma0 > 0.0) {
        jumps.push_back(std::sqrt(gamma0 / 2.0) * (transition(kGround1, kGround1) - transition(kGround2, kGround2)));
    }
    return jumps;
}

namespace {

Operator dissipative_adjoint(const Operator& X, const std::vector<Operator>& jumps)
{
    Operator out = Operator::Zero();
    for (const auto& c : jumps) {
        const Operator cd = c.adjoint();
        const Operator cdc = cd * c;
        out += cd * X * c - 0.5 * (cdc * X + X * cdc);
    }
    return out;
}

}  // namespace

Operator adjoint_generator(const Operator& X, const LambdaDrive& drive, bool include_hamiltonian)
{
    Operator out = dissipative_adjoint(X, jump_operators(drive.gamma0));
    if (include_hamiltonian) {
        const Operator h = hamiltonian(drive);
        out += cplx(0.0, 1.0) * (h * X - X * h);
    }
    return out;
}

Generator expectation_generator(const LambdaDrive& drive)
{
    Generator g = Generator::Zero();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Operator y = adjoint_generator(transition(Level(i), Level(j)), drive);
            for (int k = 0; k < 3; ++k) {
                for (int l = 0; l < 3; ++l) {
                    g(3 * i + j, 3 * k + l) += y(k, l);
                }
            }
        }
    }
    return g;
}

cplx expectation(const Operator& X, const StateVector& s)
{
    // <X> = sum_kl X_kl <|k><l|>
    cplx acc{0.0, 0.0};
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            acc += X(k, l) * s(3 * k + l);
        }
    }
    return acc;
}

cplx einstein_coefficient(const Operator& a, const Operator& b, const LambdaDrive& drive, const StateVector& s)
{
    const auto jumps = jump_operators(drive.gamma0);
    return expectation(dissipative_adjoint(a * b, jumps), s) - expectation(dissipative_adjoint(a, jumps) * b, s)
         - expectation(a * dissipative_adjoint(b, jumps), s);
}

}  // namespace cptsq::atom
