#pragma once

#include <array>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "cptsq/params.hpp"
#include "cptsq/semiclassical.hpp"

namespace cptsq::langevin {

using cplx = std::complex<double>;

inline constexpr int kDim = 12;
inline constexpr int kInputs = 4;

/// Ordered fluctuation basis. Atomic entries are collective operators
/// divided by sqrt(N); the excited population is eliminated through
/// delta Pi_e = -delta Pi_1 - delta Pi_2.
enum Index : int {
    kA1 = 0, kA1Dag, kA2, kA2Dag,
    kP1, kP1Dag, kP2, kP2Dag,
    kJ, kJDag, kPi1, kPi2
};

using Matrix = Eigen::Matrix<cplx, kDim, kDim>;
using InputMatrix = Eigen::Matrix<cplx, kDim, kInputs>;
using Vector = Eigen::Matrix<cplx, kDim, 1>;
using RowVector = Eigen::Matrix<cplx, 1, kDim>;

const std::array<std::string_view, kDim>& basis_labels();

/// Index of the hermitian conjugate partner of each basis element.
int conjugate_index(int i);

/// Linearized dynamics dx/dt = M x + B x_in + f around a working point.
///
/// D holds the atomic Langevin correlations <f_a f_b^dag>; the vacuum input
/// noise enters only through B. Immutable once built.
struct FluctuationModel {
    SystemParams params;
    semiclassical::OperatingPoint op;
    semiclassical::BlochState bloch;
    Matrix M = Matrix::Zero();
    Matrix D = Matrix::Zero();
    InputMatrix B = InputMatrix::Zero();
    double growth_rate = 0.0;  ///< max Re eig(M)

    /// D + B V_in B^dag with vacuum inputs.
    Matrix total_diffusion() const;
    /// g sqrt(N) in units of gamma.
    double collective_coupling() const;
};

/// Vacuum input correlations <x_in x_in^dag> for [A1in, A1in^dag, A2in, A2in^dag].
Eigen::Matrix4cd vacuum_input();

/// Jacobian of the cavity + Bloch mean-field equations and the input coupling.
/// Throws SolverError when the Bloch fixed point cannot be found.
FluctuationModel build_drift(const SystemParams& params, const semiclassical::OperatingPoint& op);

/// Fills D from the Einstein relations of the single-atom generator.
void build_diffusion(FluctuationModel& model);

/// build_drift + build_diffusion at intracavity intensity I.
FluctuationModel build_model(const SystemParams& params, double I);

/// True iff every eigenvalue of M has real part below -1e-12.
bool stability(const FluctuationModel& model);

/// Intracavity spectral covariance T D_tot T^dag with T = (-i w - M)^-1.
Matrix spectral_matrix(const FluctuationModel& model, double omega);

/// Symmetrized output quadrature spectra at one analysis frequency.
///
/// S is the real symmetric matrix over (X1, Y1, X2, Y2) with
/// X = A + A^dag, Y = -i(A - A^dag), vacuum normalized to the identity.
struct TwoModeSpectrum {
    double omega = 0.0;
    Eigen::Matrix4d S = Eigen::Matrix4d::Identity();
    double condition = 1.0;  ///< condition number of the resolvent
    bool reliable = true;

    Eigen::Matrix2d block(int mode) const { return S.block<2, 2>(2 * mode, 2 * mode); }
};

TwoModeSpectrum output_spectra(const FluctuationModel& model, double omega);

/// Noise spectrum of X_theta = A e^{-i theta} + A^dag e^{i theta} for output mode 0 or 1.
double output_spectrum(const FluctuationModel& model, int mode, double theta, double omega);

struct Covariance {
    Matrix V = Matrix::Zero();  ///< <x x^dag>
    double condition = 1.0;
    bool reliable = true;
    double residual = 0.0;
};

/// Equal-time covariance from M V + V M^dag + D_tot = 0.
Covariance atomic_covariance(const FluctuationModel& model);

/// Solver for M V + V M^dag + Q = 0 (complex Bartels-Stewart).
Covariance solve_lyapunov(const Matrix& M, const Matrix& Q);

/// 2 J_z / sqrt(N) = delta Pi_2 - delta Pi_1; its variance is Delta J_z^2 / (N/4).
RowVector population_difference();
/// 2 J_y / sqrt(N) with J_y = (Sigma_12 - Sigma_21) / 2i.
RowVector spin_y();
/// 2 J_x / sqrt(N) with J_x = (Sigma_12 + Sigma_21) / 2.
RowVector spin_x();

/// Symmetrized spectrum of the hermitian combination c . x.
double atomic_spectrum(const FluctuationModel& model, const RowVector& combination, double omega);

/// A + i phi_nl of mode 1 reconstructed from the field-dipole coupling in M
/// and the mean dipole.
cplx effective_susceptibility(const FluctuationModel& model);

/// Smallest |delta_bar| in [lo, hi] at which M acquires an eigenvalue with
/// positive real part, at fixed intracavity intensity. Scans `steps` points
/// then bisects. Throws SolverError when no crossing is found.
double instability_onset(SystemParams params, double I, double lo, double hi, int steps = 200);

}  // namespace cptsq::langevin
