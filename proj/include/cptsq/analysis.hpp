#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "cptsq/langevin.hpp"
#include "cptsq/semiclassical.hpp"

namespace cptsq::analysis {

/// Two output modes (a, b) = U (A1, A2) read out at quadrature angles theta_a, theta_b.
struct ModeBasis {
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
    double theta_a = 0.0;
    double theta_b = 0.0;

    static ModeBasis identity() { return {}; }
    /// a = A_x = (A2 - A1)/sqrt2, b = A_y = -i (A1 + A2)/sqrt2.
    static ModeBasis dark_bright();
    /// SU(2) element [[e^{i psi} cos t, e^{i chi} sin t], [-e^{-i chi} sin t, e^{-i psi} cos t]].
    static ModeBasis from_angles(double t, double psi, double chi, double theta_a = 0.0, double theta_b = 0.0);

    /// Throws InvalidArgument unless U^dag U = 1 within 1e-12.
    void validate() const;
};

struct QuadratureMin {
    double s_star = 1.0;
    double theta_star = 0.0;  ///< in [0, pi); 0 for a degenerate block
};

/// S_{X_theta} for a symmetric (X, Y) block.
double quadrature_spectrum(const Eigen::Matrix2d& block, double theta);

/// min over theta of S_{X_theta}: the smaller eigenvalue of the block.
QuadratureMin min_quadrature_spectrum(const Eigen::Matrix2d& block);

/// Real 4x4 map of quadratures (X1, Y1, X2, Y2) -> (Xa, Ya, Xb, Yb).
Eigen::Matrix4d quadrature_transform(const ModeBasis& basis);

/// O S O^T for the basis' quadrature transform.
Eigen::Matrix4d transform_basis(const Eigen::Matrix4d& S, const ModeBasis& basis);

/// [Var(Xa - Xb) + Var(Ya + Yb)] / 2; equals 2 for two vacua.
double epr_measure(const Eigen::Matrix4d& S, const ModeBasis& basis);

/// EPR measure for fixed U minimized over the two quadrature angles in
/// closed form. Writes the optimal angles into `basis`.
double epr_measure_best_phases(const Eigen::Matrix4d& S, ModeBasis& basis);

struct EPRResult {
    double E_star = 2.0;
    ModeBasis basis;
    double omega = 0.0;
    double t = 0.0;
    double psi = 0.0;
    double chi = 0.0;
};

struct EntanglementOptions {
    std::uint64_t seed = 1;
    int random_starts = 8;
    double tolerance = 1e-10;
    int max_evaluations = 4000;
};

/// E* = min over polarization-basis rotations and quadrature angles.
/// Multi-start simplex search from a 3x3x3 grid on the SU(2) angles plus
/// seeded random starts. Throws SolverError if no start converged.
EPRResult optimize_entanglement(const Eigen::Matrix4d& S, const EntanglementOptions& options = {});
EPRResult optimize_entanglement(const langevin::TwoModeSpectrum& spectrum, const EntanglementOptions& options = {});

/// Variance units: 3 dB <=> S* = 0.5.
double squeezing_db(double s_star);
/// Entanglement relative to the separability bound 2.
double entanglement_db(double e_star);

/// Ground-state spin statistics, variances normalized to N/4.
struct SpinResult {
    semiclassical::MeanSpin mean_spin;
    double var_jz_normalized = 1.0;
    double var_jy_normalized = 1.0;
    double min_transverse_var = 1.0;
    double angle_min = 0.0;  ///< from the J_z-like axis of the transverse plane
    double gamma_z_fit = 0.0;
    /// sqrt(var_y var_z) and its lower bound 2|<J_x>|/N.
    double uncertainty_product = 1.0;
    double uncertainty_bound = 1.0;
};

/// Spin measures from the equal-time covariance V of the fluctuation basis.
/// gamma_z_fit is left NaN.
SpinResult spin_measures(const langevin::Matrix& V, const semiclassical::BlochState& bloch, double N);

/// As above, also fitting the half-width of the J_z spectrum.
SpinResult spin_measures(const langevin::FluctuationModel& model, double N);

/// Half-width at half-maximum of the symmetrized spectrum of `combination`.
double lorentzian_half_width(const langevin::FluctuationModel& model, const langevin::RowVector& combination);

}  // namespace cptsq::analysis
