#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cptsq/atom.hpp"
#include "cptsq/params.hpp"

namespace cptsq::semiclassical {

/// Single-atom steady state in the symmetric drive Omega_1 = Omega_2 = Omega.
struct BlochState {
    double pop1 = 0.0;
    double pop2 = 0.0;
    double pope = 0.0;
    std::complex<double> p1;   ///< <|1><e|>
    std::complex<double> p2;   ///< <|2><e|>
    std::complex<double> j12;  ///< <|1><2|>
    atom::StateVector raw;     ///< all nine expectation values
    double residual = 0.0;     ///< max-norm of G <s> at the solution
};

/// Semiclassical working point on the symmetric branch.
struct OperatingPoint {
    double I = 0.0;                ///< Omega^2 / gamma^2
    double omega_rabi = 0.0;
    double absorption = 0.0;
    double phase_nl = 0.0;
    double input_intensity = 0.0;
    double delta_s = 0.0;          ///< threshold detuning, units of gamma
    bool stable = true;
};

struct Branch {
    double I = 0.0;
    bool stable = true;
};

enum class Medium { CPT, Kerr };

struct MeanSpin {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
};

// Closed-form intracavity relations for the symmetric configuration.
double absorption(double I, double delta_bar, double C);
double nonlinear_phase(double I, double delta_bar, double C);
double input_intensity(double I, double delta_bar, double C, double phi);
double threshold_delta(double I, double C, double phi);

/// Large-intensity limit near the dark resonance: (C d^2 / I^2, C d / I).
std::pair<double, double> asymptotic_cpt(double I, double delta_bar, double C);

/// Far-detuned two-level medium: (C / (2 D^2), C I / D^3).
std::pair<double, double> kerr_two_level(double C, double I, double Delta_bar);

/// Nonlinearity-to-absorption ratio phi_nl / A.
double figure_of_merit(Medium medium, double I, double detuning);

/// Complex reflection coefficient r = a_out / a_in of mode 1 (mode 2 is its conjugate).
std::complex<double> reflectivity(double I, double delta_bar, double C, double phi);

/// First-order mean spin of N atoms tilted by the nonlinear Faraday rotation.
MeanSpin mean_spin(double I, double delta_bar, double N);

/// Exact mean spin of N atoms from a Bloch steady state.
MeanSpin mean_spin(const BlochState& state, double N);

/// Numeric fixed point of the single-atom master equation driven by the
/// symmetric intracavity fields. Throws DegenerateSteadyState when the
/// stationary state is not unique (e.g. no drive and no ground decay).
BlochState bloch_steady_state(double omega_rabi, double delta_bar, double gamma0);

/// Drive seen by one atom at intensity I (both Rabi frequencies real, equal).
atom::LambdaDrive symmetric_drive(double I, double delta_bar, double gamma0);

/// Complex susceptibility A + i phi_nl of mode 1 implied by the atomic dipole.
std::complex<double> susceptibility_from_bloch(const BlochState& state, double I, double C);

/// Working point at intracavity intensity I. The stable flag uses the
/// closed-form threshold |delta_bar| <= delta_s.
OperatingPoint make_operating_point(const SystemParams& params, double I);

using StabilityTest = std::function<bool(double I)>;

/// All intracavity intensities I whose input intensity equals I_in, sorted
/// ascending. Each is flagged by the closed-form threshold, or by
/// `exact_test` when one is supplied. Roots are bracketed on (0, I_in]
/// between the turning points of the input-output curve and a log scan,
/// then bisected. Throws SolverError when no root is bracketed.
std::vector<Branch> solve_branches(double I_in, double delta_bar, double C, double phi,
                                   const StabilityTest& exact_test = {});

}  // namespace cptsq::semiclassical
