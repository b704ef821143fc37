#include <cmath>

#include "cptsq/analytic_spin.hpp"
#include "cptsq/semiclassical.hpp"
#include "cptsq/sweep.hpp"

namespace cptsq::sweep {

SteadyRow steady_point(const SystemParams& base, double I, double delta_bar, bool exact_stability)
{
    SystemParams p = base;
    p.delta_bar = delta_bar;
    const semiclassical::OperatingPoint op = semiclassical::make_operating_point(p, I);
    SteadyRow row;
    row.delta_bar = delta_bar;
    row.I = I;
    row.absorption = op.absorption;
    row.phase_nl = op.phase_nl;
    row.input_intensity = op.input_intensity;
    row.reflectivity = semiclassical::reflectivity(I, delta_bar, p.C, p.phi);
    row.stable = exact_stability ? langevin::stability(langevin::build_drift(p, op)) : op.stable;
    return row;
}

SqueezingRow squeezing_point(const langevin::TwoModeSpectrum& spectrum)
{
    SqueezingRow row;
    row.omega = spectrum.omega;
    row.a1 = analysis::min_quadrature_spectrum(spectrum.block(0));
    row.a2 = analysis::min_quadrature_spectrum(spectrum.block(1));
    const Eigen::Matrix4d linear = analysis::transform_basis(spectrum.S, analysis::ModeBasis::dark_bright());
    row.ax = analysis::min_quadrature_spectrum(linear.block<2, 2>(0, 0));
    row.ay = analysis::min_quadrature_spectrum(linear.block<2, 2>(2, 2));
    return row;
}

SpinRow spin_point(const SystemParams& base, double phi, std::optional<double> alpha)
{
    SystemParams p = base;
    p.phi = phi;
    SpinRow row;
    row.phi = phi;
    row.alpha = alpha ? *alpha : analytic_spin::optimal_alpha(phi).alpha_star;
    row.I = analytic_spin::intensity_for_alpha(row.alpha, p.delta_bar, p.C, phi);
    const langevin::FluctuationModel model = langevin::build_model(p, row.I);
    const analysis::SpinResult spin = analysis::spin_measures(model, p.atom_number());
    row.var_numeric = spin.var_jz_normalized;
    row.gamma_z_fit = spin.gamma_z_fit;
    row.var_analytic = analytic_spin::jz_variance_analytic(row.alpha, phi);
    row.gamma_z_analytic = analytic_spin::gamma_z(std::abs(p.delta_bar), phi, row.alpha);
    return row;
}

namespace serial {

std::vector<SteadyRow> steady(const SystemParams& base, double I, std::span<const double> deltas, bool exact_stability)
{
    std::vector<SteadyRow> out;
    out.reserve(deltas.size());
    for (double d : deltas) out.push_back(steady_point(base, I, d, exact_stability));
    return out;
}

std::vector<langevin::TwoModeSpectrum> spectra(const langevin::FluctuationModel& model, std::span<const double> omegas)
{
    std::vector<langevin::TwoModeSpectrum> out;
    out.reserve(omegas.size());
    for (double w : omegas) out.push_back(langevin::output_spectra(model, w));
    return out;
}

std::vector<analysis::EPRResult> entanglement(std::span<const langevin::TwoModeSpectrum> spectra,
                                              const analysis::EntanglementOptions& options)
{
    std::vector<analysis::EPRResult> out;
    out.reserve(spectra.size());
    for (const auto& s : spectra) out.push_back(analysis::optimize_entanglement(s, options));
    return out;
}

std::vector<SpinRow> spin(const SystemParams& base, std::span<const double> phis, std::optional<double> alpha)
{
    std::vector<SpinRow> out;
    out.reserve(phis.size());
    for (double phi : phis) out.push_back(spin_point(base, phi, alpha));
    return out;
}

}  // namespace serial

}  // namespace cptsq::sweep
