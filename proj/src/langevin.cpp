#include "cptsq/langevin.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "cptsq/atom.hpp"
#include "cptsq/error.hpp"

namespace cptsq::langevin {

namespace {

using atom::kExcited;
using atom::kGround1;
using atom::kGround2;
using atom::Level;

constexpr cplx kI{0.0, 1.0};

struct AtomicSlot {
    Index index;
    Level row;
    Level col;
};

// Basis index -> |row><col|
constexpr std::array<AtomicSlot, 8> kAtomicSlots{{
    {kP1, kGround1, kExcited},
    {kP1Dag, kExcited, kGround1},
    {kP2, kGround2, kExcited},
    {kP2Dag, kExcited, kGround2},
    {kJ, kGround1, kGround2},
    {kJDag, kGround2, kGround1},
    {kPi1, kGround1, kGround1},
    {kPi2, kGround2, kGround2},
}};

int basis_of_flat(int flat)
{
    for (const auto& slot : kAtomicSlots) {
        if (atom::flat_index(slot.row, slot.col) == flat) return slot.index;
    }
    return -1;  // |e><e|
}

double max_real_eigenvalue(const Matrix& m)
{
    Eigen::ComplexEigenSolver<Matrix> es(m, false);
    if (es.info() != Eigen::Success) throw SolverError("eigen-decomposition of the drift matrix failed");
    return es.eigenvalues().real().maxCoeff();
}

void require_stable(const FluctuationModel& model)
{
    if (!stability(model)) {
        throw UnstableOperatingPoint("operating point is unstable (max Re eig(M) = "
                                     + std::to_string(model.growth_rate) + ")");
    }
}

// Quadrature map (X, Y) = R (A, A^dag) for both modes.
Eigen::Matrix4cd quadrature_map()
{
    Eigen::Matrix4cd r = Eigen::Matrix4cd::Zero();
    for (int m = 0; m < 2; ++m) {
        r(2 * m, 2 * m) = 1.0;
        r(2 * m, 2 * m + 1) = 1.0;
        r(2 * m + 1, 2 * m) = -kI;
        r(2 * m + 1, 2 * m + 1) = kI;
    }
    return r;
}

struct Resolvent {
    Matrix T;
    double condition;
};

Resolvent resolvent(const Matrix& M, double omega)
{
    const Matrix a = -kI * omega * Matrix::Identity() - M;
    Eigen::PartialPivLU<Matrix> lu(a);
    Resolvent r{lu.inverse(), 0.0};
    r.condition = a.cwiseAbs().rowwise().sum().maxCoeff() * r.T.cwiseAbs().rowwise().sum().maxCoeff();
    return r;
}

// <y y^dag>(omega) for y = sqrt(2 kappa) A - A_in.
Eigen::Matrix4cd output_correlations(const FluctuationModel& model, const Matrix& T)
{
    const double rate = std::sqrt(2.0 * model.params.kappa);
    const Eigen::Matrix<cplx, 4, kDim> field_rows = T.topRows<4>();
    const Eigen::Matrix4cd g = rate * field_rows * model.B - Eigen::Matrix4cd::Identity();
    return g * vacuum_input() * g.adjoint() + (rate * rate) * field_rows * model.D * field_rows.adjoint();
}

}  // namespace

const std::array<std::string_view, kDim>& basis_labels()
{
    static const std::array<std::string_view, kDim> labels{
        "dA1", "dA1+", "dA2", "dA2+", "dP1", "dP1+", "dP2", "dP2+", "dJ", "dJ+", "dPi1", "dPi2"};
    return labels;
}

int conjugate_index(int i)
{
    if (i == kPi1 || i == kPi2) return i;
    return i % 2 == 0 ? i + 1 : i - 1;
}

Eigen::Matrix4cd vacuum_input()
{
    Eigen::Matrix4cd v = Eigen::Matrix4cd::Zero();
    v(0, 0) = 1.0;
    v(2, 2) = 1.0;
    return v;
}

Matrix FluctuationModel::total_diffusion() const
{
    return D + B * vacuum_input() * B.adjoint();
}

double FluctuationModel::collective_coupling() const
{
    return std::sqrt(2.0 * params.C * params.kappa);
}

FluctuationModel build_drift(const SystemParams& params, const semiclassical::OperatingPoint& op)
{
    params.validate();
    FluctuationModel model;
    model.params = params;
    model.op = op;
    try {
        model.bloch = semiclassical::bloch_steady_state(std::sqrt(op.I), params.delta_bar, params.gamma0);
    } catch (const SolverError& e) {
        throw SolverError(std::string("cannot linearize: ") + e.what());
    }

    const atom::LambdaDrive drive = semiclassical::symmetric_drive(op.I, params.delta_bar, params.gamma0);
    const atom::Generator gen = atom::expectation_generator(drive);
    const int excited = atom::flat_index(kExcited, kExcited);

    Matrix& M = model.M;
    for (const auto& slot : kAtomicSlots) {
        const int row = atom::flat_index(slot.row, slot.col);
        for (int q = 0; q < 9; ++q) {
            const cplx c = gen(row, q);
            if (c == 0.0) continue;
            if (q == excited) {
                M(slot.index, kPi1) -= c;
                M(slot.index, kPi2) -= c;
            } else {
                M(slot.index, basis_of_flat(q)) += c;
            }
        }
    }

    // d<X>/dt contains <i[H, X]>; H is linear in Omega_k = g A_k and its conjugate.
    const double G = model.collective_coupling();
    const std::array<std::pair<Index, atom::Operator>, 4> field_derivatives{{
        {kA1, atom::transition(kExcited, kGround1)},
        {kA1Dag, atom::transition(kGround1, kExcited)},
        {kA2, atom::transition(kExcited, kGround2)},
        {kA2Dag, atom::transition(kGround2, kExcited)},
    }};
    for (const auto& [field, dh] : field_derivatives) {
        for (const auto& slot : kAtomicSlots) {
            const atom::Operator x = atom::transition(slot.row, slot.col);
            M(slot.index, field) += G * atom::expectation(kI * (dh * x - x * dh), model.bloch.raw);
        }
    }

    const double kappa = params.kappa;
    const double phi = params.phi;
    M(kA1, kA1) = -kappa * cplx(1.0, -phi);
    M(kA1Dag, kA1Dag) = -kappa * cplx(1.0, phi);
    M(kA2, kA2) = -kappa * cplx(1.0, phi);
    M(kA2Dag, kA2Dag) = -kappa * cplx(1.0, -phi);
    M(kA1, kP1) = -kI * G;
    M(kA1Dag, kP1Dag) = kI * G;
    M(kA2, kP2) = -kI * G;
    M(kA2Dag, kP2Dag) = kI * G;

    for (int k = 0; k < kInputs; ++k) model.B(k, k) = std::sqrt(2.0 * kappa);

    if (!M.allFinite()) throw SolverError("drift matrix is not finite");
    model.growth_rate = max_real_eigenvalue(M);
    return model;
}

void build_diffusion(FluctuationModel& model)
{
    const atom::LambdaDrive drive = semiclassical::symmetric_drive(model.op.I, model.params.delta_bar, model.params.gamma0);
    model.D.setZero();
    for (const auto& a : kAtomicSlots) {
        const atom::Operator op_a = atom::transition(a.row, a.col);
        for (const auto& b : kAtomicSlots) {
            const atom::Operator op_b_dag = atom::transition(b.col, b.row);
            model.D(a.index, b.index) = atom::einstein_coefficient(op_a, op_b_dag, drive, model.bloch.raw);
        }
    }
}

FluctuationModel build_model(const SystemParams& params, double I)
{
    FluctuationModel model = build_drift(params, semiclassical::make_operating_point(params, I));
    build_diffusion(model);
    return model;
}

bool stability(const FluctuationModel& model)
{
    return model.growth_rate < -1e-12;
}

Matrix spectral_matrix(const FluctuationModel& model, double omega)
{
    require_stable(model);
    const Resolvent r = resolvent(model.M, omega);
    return r.T * model.total_diffusion() * r.T.adjoint();
}

TwoModeSpectrum output_spectra(const FluctuationModel& model, double omega)
{
    require_stable(model);
    const Resolvent plus = resolvent(model.M, omega);
    const Resolvent minus = resolvent(model.M, -omega);
    const Eigen::Matrix4cd r = quadrature_map();
    const Eigen::Matrix4cd q_plus = r * output_correlations(model, plus.T) * r.adjoint();
    const Eigen::Matrix4cd q_minus = r * output_correlations(model, minus.T) * r.adjoint();

    TwoModeSpectrum out;
    out.omega = omega;
    const Eigen::Matrix4d s = (0.5 * (q_plus + q_minus.transpose())).real();
    out.S = 0.5 * (s + s.transpose());
    out.condition = std::max(plus.condition, minus.condition);
    out.reliable = out.condition <= 1e12;
    return out;
}

double output_spectrum(const FluctuationModel& model, int mode, double theta, double omega)
{
    if (mode != 0 && mode != 1) throw InvalidArgument("mode must be 0 or 1");
    const Eigen::Matrix2d block = output_spectra(model, omega).block(mode);
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    return u.dot(block * u);
}

Covariance solve_lyapunov(const Matrix& M, const Matrix& Q)
{
    Eigen::ComplexSchur<Matrix> schur(M);
    if (schur.info() != Eigen::Success) throw SolverError("Schur decomposition failed");
    const Matrix& T = schur.matrixT();
    const Matrix& U = schur.matrixU();
    const Matrix F = -(U.adjoint() * Q * U);

    // T Y + Y T^dag = F with T upper triangular, back-substituted from the bottom-right corner.
    Matrix Y = Matrix::Zero();
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = kDim - 1; i >= 0; --i) {
        for (int j = kDim - 1; j >= 0; --j) {
            cplx rhs = F(i, j);
            for (int k = i + 1; k < kDim; ++k) rhs -= T(i, k) * Y(k, j);
            for (int k = j + 1; k < kDim; ++k) rhs -= Y(i, k) * std::conj(T(j, k));
            const cplx denom = T(i, i) + std::conj(T(j, j));
            min_gap = std::min(min_gap, std::abs(denom));
            if (std::abs(denom) == 0.0) throw SolverError("Lyapunov equation is singular");
            Y(i, j) = rhs / denom;
        }
    }

    Covariance out;
    out.V = U * Y * U.adjoint();
    out.V = 0.5 * (out.V + out.V.adjoint()).eval();
    out.condition = M.norm() / min_gap;
    out.reliable = out.condition <= 1e12;
    const double scale = std::max(Q.norm(), std::numeric_limits<double>::min());
    out.residual = (M * out.V + out.V * M.adjoint() + Q).norm() / scale;
    if (!(out.residual < 1e-10)) {
        throw SolverError("Lyapunov residual " + std::to_string(out.residual) + " (condition estimate "
                          + std::to_string(out.condition) + ")");
    }
    return out;
}

Covariance atomic_covariance(const FluctuationModel& model)
{
    require_stable(model);
    return solve_lyapunov(model.M, model.total_diffusion());
}

RowVector population_difference()
{
    RowVector c = RowVector::Zero();
    c(kPi1) = -1.0;
    c(kPi2) = 1.0;
    return c;
}

RowVector spin_y()
{
    RowVector c = RowVector::Zero();
    c(kJ) = -kI;
    c(kJDag) = kI;
    return c;
}

RowVector spin_x()
{
    RowVector c = RowVector::Zero();
    c(kJ) = 1.0;
    c(kJDag) = 1.0;
    return c;
}

double atomic_spectrum(const FluctuationModel& model, const RowVector& combination, double omega)
{
    const Matrix plus = spectral_matrix(model, omega);
    const Matrix minus = spectral_matrix(model, -omega);
    const cplx value = 0.5 * ((combination * plus * combination.adjoint())(0, 0)
                              + (combination * minus * combination.adjoint())(0, 0));
    return value.real();
}

cplx effective_susceptibility(const FluctuationModel& model)
{
    const double omega = std::sqrt(model.op.I);
    if (omega <= 0.0) throw InvalidArgument("susceptibility needs I > 0");
    const cplx coupling = model.M(kA1, kP1);
    return -coupling * std::abs(coupling) * model.bloch.p1 / (model.params.kappa * omega);
}

double instability_onset(SystemParams params, double I, double lo, double hi, int steps)
{
    if (!(hi > lo) || steps < 2) throw InvalidArgument("instability_onset needs lo < hi and steps >= 2");
    auto growth = [&](double d) {
        params.delta_bar = d;
        return build_drift(params, semiclassical::make_operating_point(params, I)).growth_rate;
    };
    double prev_d = lo;
    double prev_g = growth(lo);
    if (prev_g >= 0.0) return lo;
    for (int i = 1; i < steps; ++i) {
        const double d = lo + (hi - lo) * i / (steps - 1);
        const double g = growth(d);
        if (g >= 0.0) {
            double a = prev_d;
            double b = d;
            for (int it = 0; it < 100 && b - a > 1e-12 * std::max(1.0, b); ++it) {
                const double m = 0.5 * (a + b);
                (growth(m) >= 0.0 ? b : a) = m;
            }
            return 0.5 * (a + b);
        }
        prev_d = d;
        prev_g = g;
    }
    throw SolverError("no instability found in the scanned detuning range");
}

}  // namespace cptsq::langevin
