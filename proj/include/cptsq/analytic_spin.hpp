#pragma once

namespace cptsq::analytic_spin {

/// Feedback bookkeeping near threshold. g and T enter only in ratio form:
/// a = gN * a_over_gN, b = b_times_T / T * g, c = c_times_sqrtT / sqrt(T).
struct FeedbackConstants {
    double alpha = 1.0;           ///< delta_s / delta
    double a_over_gN = 0.0;       ///< delta / (2 sqrt2 Omega)
    double b_times_T_over_g = 0.0;///< 2 sqrt2 / phi
    double c_times_sqrtT = 0.0;   ///< 2 / phi
};

/// Constants at intensity I, half-detuning delta (units of gamma), cavity detuning phi.
FeedbackConstants feedback_constants(double I, double delta, double C, double phi);

/// Lorentzian width of the J_z noise spectrum, delta sqrt(1+phi^2) (alpha - 1/alpha).
double gamma_z(double delta, double phi, double alpha);

/// Delta J_z^2 / (N/4) close to threshold.
double jz_variance_analytic(double alpha, double phi);

struct OptimalSqueezing {
    double alpha_star = 0.0;
    double var_star = 0.0;
};

/// alpha* = (1 + sqrt(1+phi^2)) / phi minimizing jz_variance_analytic; var* = 1/sqrt(1+phi^2).
OptimalSqueezing optimal_alpha(double phi);

/// Detuning at which Omega = a b divided by the closed-form threshold delta_s.
double threshold_consistency(double phi);

/// Intracavity intensity that places the working point at distance alpha from
/// threshold: I = C alpha delta / sqrt(1+phi^2).
double intensity_for_alpha(double alpha, double delta, double C, double phi);

}  // namespace cptsq::analytic_spin
