#include "cptsq/analytic_spin.hpp"

#include <cmath>

#include "cptsq/error.hpp"
#include "cptsq/semiclassical.hpp"

namespace cptsq::analytic_spin {

namespace {

void require_above_threshold(double alpha)
{
    detail::require_finite(alpha, "alpha");
    if (alpha <= 1.0) throw InvalidArgument("alpha must be > 1 (stable side of the threshold)");
}

}  // namespace

FeedbackConstants feedback_constants(double I, double delta, double C, double phi)
{
    detail::require_finite(delta, "delta");
    detail::require_finite(phi, "phi");
    if (phi == 0.0) throw InvalidArgument("feedback constants need phi != 0");
    if (delta == 0.0) throw InvalidArgument("feedback constants need delta != 0");
    FeedbackConstants k;
    k.alpha = semiclassical::threshold_delta(I, C, phi) / std::abs(delta);
    k.a_over_gN = delta / (2.0 * std::sqrt(2.0) * std::sqrt(I));
    k.b_times_T_over_g = 2.0 * std::sqrt(2.0) / phi;
    k.c_times_sqrtT = 2.0 / phi;
    return k;
}

double gamma_z(double delta, double phi, double alpha)
{
    require_above_threshold(alpha);
    detail::require_finite(delta, "delta");
    detail::require_finite(phi, "phi");
    return delta * std::sqrt(1.0 + phi * phi) * (alpha - 1.0 / alpha);
}

double jz_variance_analytic(double alpha, double phi)
{
    require_above_threshold(alpha);
    detail::require_finite(phi, "phi");
    const double root = std::sqrt(1.0 + phi * phi);
    const double shifted = alpha * root - phi;
    return (shifted * shifted + 1.0) / ((1.0 + phi * phi) * (alpha * alpha - 1.0));
}

OptimalSqueezing optimal_alpha(double phi)
{
    detail::require_finite(phi, "phi");
    if (phi <= 0.0) throw InvalidArgument("optimal_alpha needs phi > 0");
    const double root = std::sqrt(1.0 + phi * phi);
    return {(1.0 + root) / phi, 1.0 / root};
}

double threshold_consistency(double phi)
{
    detail::require_finite(phi, "phi");
    if (phi <= 0.0) throw InvalidArgument("threshold_consistency needs phi > 0");
    // Omega = a b  <=>  Omega^2 = C gamma delta / phi; I and C cancel in the ratio.
    constexpr double I = 1.0;
    constexpr double C = 1.0;
    const double delta_feedback = I * phi / C;
    return delta_feedback / semiclassical::threshold_delta(I, C, phi);
}

double intensity_for_alpha(double alpha, double delta, double C, double phi)
{
    detail::require_finite(alpha, "alpha");
    detail::require_finite(delta, "delta");
    if (alpha <= 0.0) throw InvalidArgument("alpha must be > 0");
    if (C <= 0.0) throw InvalidArgument("C must be > 0");
    return C * alpha * std::abs(delta) / std::sqrt(1.0 + phi * phi);
}

}  // namespace cptsq::analytic_spin
