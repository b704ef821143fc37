#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "cptsq/analysis.hpp"
#include "cptsq/langevin.hpp"
#include "cptsq/params.hpp"

namespace cptsq::sweep {

/// One reflectivity-scan sample at fixed intracavity intensity.
struct SteadyRow {
    double delta_bar = 0.0;
    double I = 0.0;
    double absorption = 0.0;
    double phase_nl = 0.0;
    double input_intensity = 0.0;
    std::complex<double> reflectivity;
    bool stable = true;
};

/// Minimal quadrature spectra of the circular (A1, A2) and linear (Ax, Ay) output modes.
struct SqueezingRow {
    double omega = 0.0;
    analysis::QuadratureMin a1;
    analysis::QuadratureMin a2;
    analysis::QuadratureMin ax;
    analysis::QuadratureMin ay;
};

struct SpinRow {
    double phi = 0.0;
    double alpha = 0.0;
    double I = 0.0;
    double var_numeric = 0.0;
    double var_analytic = 0.0;
    double gamma_z_fit = 0.0;
    double gamma_z_analytic = 0.0;
};

// Per-point kernels shared by both execution paths.
SteadyRow steady_point(const SystemParams& base, double I, double delta_bar, bool exact_stability);
SqueezingRow squeezing_point(const langevin::TwoModeSpectrum& spectrum);
/// Throws UnstableOperatingPoint if the working point at this phi is unstable.
SpinRow spin_point(const SystemParams& base, double phi, std::optional<double> alpha);

/// Serial reference implementations.
namespace serial {
std::vector<SteadyRow> steady(const SystemParams& base, double I, std::span<const double> deltas, bool exact_stability);
std::vector<langevin::TwoModeSpectrum> spectra(const langevin::FluctuationModel& model, std::span<const double> omegas);
std::vector<analysis::EPRResult> entanglement(std::span<const langevin::TwoModeSpectrum> spectra,
                                              const analysis::EntanglementOptions& options);
std::vector<SpinRow> spin(const SystemParams& base, std::span<const double> phis, std::optional<double> alpha);
}  // namespace serial

/// OpenMP implementations; threads <= 0 uses the runtime default. Results are
/// identical to the serial path and returned in grid order.
namespace parallel {
std::vector<SteadyRow> steady(const SystemParams& base, double I, std::span<const double> deltas, bool exact_stability,
                              int threads = 0);
std::vector<langevin::TwoModeSpectrum> spectra(const langevin::FluctuationModel& model, std::span<const double> omegas,
                                               int threads = 0);
std::vector<analysis::EPRResult> entanglement(std::span<const langevin::TwoModeSpectrum> spectra,
                                              const analysis::EntanglementOptions& options, int threads = 0);
std::vector<SpinRow> spin(const SystemParams& base, std::span<const double> phis, std::optional<double> alpha,
                          int threads = 0);
}  // namespace parallel

}  // namespace cptsq::sweep
