#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's generator, drift or diffusion code.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Mat9 = Eigen::Matrix<cplx, 9, 9>;
using Vec9 = Eigen::Matrix<cplx, 9, 1>;

inline Mat3 ket_bra(int k, int l)
{
    Mat3 m = Mat3::Zero();
    m(k, l) = 1.0;
    return m;
}

// Levels 0 = |1>, 1 = |2>, 2 = |e>.
// a1c, a2c play the role of the conjugate amplitudes; they are separate
// arguments so that derivatives can treat (a, a*) as independent.
inline Mat3 hamiltonian(cplx a1, cplx a1c, cplx a2, cplx a2c, double delta_bar)
{
    Mat3 h = -delta_bar * ket_bra(0, 0) + delta_bar * ket_bra(1, 1);
    h += a1 * ket_bra(2, 0) + a2 * ket_bra(2, 1);
    h += a1c * ket_bra(0, 2) + a2c * ket_bra(1, 2);
    return h;
}

inline Mat3 hamiltonian(cplx a1, cplx a2, double delta_bar)
{
    return hamiltonian(a1, std::conj(a1), a2, std::conj(a2), delta_bar);
}

inline std::vector<Mat3> jumps(double gamma0)
{
    std::vector<Mat3> c{ket_bra(0, 2), ket_bra(1, 2)};
    if (gamma0 > 0.0) c.push_back(std::sqrt(gamma0 / 2.0) * (ket_bra(0, 0) - ket_bra(1, 1)));
    return c;
}

inline Mat9 kron(const Mat3& a, const Mat3& b)
{
    Mat9 k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return k;
}

// Schroedinger-picture Lindbladian on column-major vec(rho).
inline Mat9 liouvillian(const Mat3& h, const std::vector<Mat3>& c)
{
    const Mat3 id = Mat3::Identity();
    Mat9 L = -cplx(0, 1) * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& ck : c) {
        const Mat3 cdc = ck.adjoint() * ck;
        L += kron(ck.conjugate(), ck) - 0.5 * (kron(id, cdc) + kron(cdc.transpose(), id));
    }
    return L;
}

inline Mat3 steady_rho(const Mat3& h, const std::vector<Mat3>& c)
{
    Eigen::Matrix<cplx, 10, 9> A;
    A.topRows<9>() = liouvillian(h, c);
    A.row(9).setZero();
    A(9, 0) = A(9, 4) = A(9, 8) = 1.0;
    Eigen::Matrix<cplx, 10, 1> rhs = Eigen::Matrix<cplx, 10, 1>::Zero();
    rhs(9) = 1.0;
    const Vec9 v = A.colPivHouseholderQr().solve(rhs);
    Mat3 rho;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) rho(i, j) = v(3 * j + i);
    return rho;
}

inline cplx expect(const Mat3& rho, const Mat3& x) { return (rho * x).trace(); }

// Dissipative part of the adjoint Lindbladian.
inline Mat3 dissipator_adjoint(const Mat3& x, const std::vector<Mat3>& c)
{
    Mat3 out = Mat3::Zero();
    for (const auto& ck : c) {
        const Mat3 cdc = ck.adjoint() * ck;
        out += ck.adjoint() * x * ck - 0.5 * (cdc * x + x * cdc);
    }
    return out;
}

// <f_a f_b^dag> for single-atom operators a, b.
inline cplx einstein(const Mat3& rho, const Mat3& a, const Mat3& b, const std::vector<Mat3>& c)
{
    const Mat3 bd = b.adjoint();
    return expect(rho, dissipator_adjoint(a * bd, c)) - expect(rho, dissipator_adjoint(a, c) * bd)
           - expect(rho, a * dissipator_adjoint(bd, c));
}

// Atomic operators of the 12-element fluctuation basis (entries 4..11).
inline std::vector<Mat3> atomic_basis_operators()
{
    return {ket_bra(0, 2), ket_bra(2, 0), ket_bra(1, 2), ket_bra(2, 1),
            ket_bra(0, 1), ket_bra(1, 0), ket_bra(0, 0), ket_bra(1, 1)};
}

// Heisenberg-picture evolution of all nine <|k><l|> given field amplitudes
// a1, a2 (Rabi frequencies): d<X>/dt = <i[H, X] + D(X)>.
inline Vec9 atom_rhs(const Vec9& s, cplx a1, cplx a1c, cplx a2, cplx a2c, double delta_bar, double gamma0)
{
    const Mat3 h = hamiltonian(a1, a1c, a2, a2c, delta_bar);
    const auto c = jumps(gamma0);
    // Reassemble rho from s(3k+l) = <|k><l|> = rho(l, k).
    Mat3 rho;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) rho(l, k) = s(3 * k + l);
    Vec9 out;
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
            const Mat3 x = ket_bra(k, l);
            const Mat3 gx = cplx(0, 1) * (h * x - x * h) + dissipator_adjoint(x, c);
            out(3 * k + l) = expect(rho, gx);
        }
    }
    return out;
}

struct MeanField {
    double C, kappa, phi, delta_bar, gamma0;
    double G() const { return std::sqrt(2.0 * C * kappa); }
};

// Full 12-dim state: fields as Rabi frequencies a_j = g A_j, atoms per atom.
// Coordinates follow the fluctuation basis. Field drive terms are constant
// and drop out of the Jacobian.
inline Eigen::Matrix<cplx, 12, 1> mean_field_rhs(const MeanField& p, const Eigen::Matrix<cplx, 12, 1>& x)
{
    // s indices of the eight atomic coordinates.
    static const int sidx[8] = {2, 6, 5, 7, 1, 3, 0, 4};
    Vec9 s = Vec9::Zero();
    for (int i = 0; i < 8; ++i) s(sidx[i]) = x(4 + i);
    s(8) = 1.0 - x(10) - x(11);
    const Vec9 ds = atom_rhs(s, x(0), x(1), x(2), x(3), p.delta_bar, p.gamma0);
    const cplx i(0, 1);
    const double g2N = 2.0 * p.C * p.kappa;
    Eigen::Matrix<cplx, 12, 1> f;
    f(0) = -p.kappa * (1.0 - i * p.phi) * x(0) - i * g2N * x(4);
    f(1) = -p.kappa * (1.0 + i * p.phi) * x(1) + i * g2N * x(5);
    f(2) = -p.kappa * (1.0 + i * p.phi) * x(2) - i * g2N * x(6);
    f(3) = -p.kappa * (1.0 - i * p.phi) * x(3) + i * g2N * x(7);
    for (int k = 0; k < 8; ++k) f(4 + k) = ds(sidx[k]);
    return f;
}

// Jacobian by central differences, rescaled to the fluctuation basis where
// field entries are A = a/g and atomic entries carry sqrt(N): M_fa /= G,
// M_af *= G. The field pair (a, a*) is perturbed as independent variables,
// which is exact because the right-hand side is polynomial in them.
inline Eigen::Matrix<cplx, 12, 12> drift_by_differences(const MeanField& p, const Eigen::Matrix<cplx, 12, 1>& x0,
                                                        double h = 1e-6)
{
    Eigen::Matrix<cplx, 12, 12> J;
    for (int k = 0; k < 12; ++k) {
        Eigen::Matrix<cplx, 12, 1> xp = x0, xm = x0;
        xp(k) += h;
        xm(k) -= h;
        J.col(k) = (mean_field_rhs(p, xp) - mean_field_rhs(p, xm)) / (2.0 * h);
    }
    const double G = p.G();
    if (G > 0.0) {
        J.block<4, 8>(0, 4) /= G;
        J.block<8, 4>(4, 0) *= G;
    } else {
        J.block<4, 8>(0, 4).setZero();
        J.block<8, 4>(4, 0).setZero();
    }
    return J;
}

// Steady state of the symmetric working point: a1 = a2 = sqrt(I), atoms from steady_rho.
inline Eigen::Matrix<cplx, 12, 1> working_point(double I, double delta_bar, double gamma0)
{
    const double om = std::sqrt(I);
    const Mat3 rho = steady_rho(hamiltonian(om, om, delta_bar), jumps(gamma0));
    Eigen::Matrix<cplx, 12, 1> x;
    x(0) = om;
    x(1) = om;
    x(2) = om;
    x(3) = om;
    const auto ops = atomic_basis_operators();
    for (int k = 0; k < 8; ++k) x(4 + k) = expect(rho, ops[k]);
    return x;
}

// Closed forms of the intracavity response, written out directly.
inline double absorption(double I, double d, double C)
{
    return C * d * d / (I * I + d * d + I * d * d + d * d * d * d);
}
inline double nonlinear_phase(double I, double d, double C)
{
    return C * d * (I - d * d) / (I * I + d * d + I * d * d + d * d * d * d);
}

}  // namespace oracle
