#include <exception>

#include <omp.h>

#include "cptsq/sweep.hpp"

namespace cptsq::sweep::parallel {

namespace {

// Runs body(i) for every index; exceptions are captured per index and the
// lowest-index one is rethrown so failures are as deterministic as results.
template <typename Body>
void for_each_index(std::size_t n, int threads, Body&& body)
{
    std::vector<std::exception_ptr> errors(n);
    const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace

std::vector<SteadyRow> steady(const SystemParams& base, double I, std::span<const double> deltas, bool exact_stability,
                              int threads)
{
    std::vector<SteadyRow> out(deltas.size());
    for_each_index(deltas.size(), threads, [&](std::size_t i) { out[i] = steady_point(base, I, deltas[i], exact_stability); });
    return out;
}

std::vector<langevin::TwoModeSpectrum> spectra(const langevin::FluctuationModel& model, std::span<const double> omegas,
                                               int threads)
{
    std::vector<langevin::TwoModeSpectrum> out(omegas.size());
    for_each_index(omegas.size(), threads, [&](std::size_t i) { out[i] = langevin::output_spectra(model, omegas[i]); });
    return out;
}

std::vector<analysis::EPRResult> entanglement(std::span<const langevin::TwoModeSpectrum> spectra,
                                              const analysis::EntanglementOptions& options, int threads)
{
    std::vector<analysis::EPRResult> out(spectra.size());
    for_each_index(spectra.size(), threads,
                   [&](std::size_t i) { out[i] = analysis::optimize_entanglement(spectra[i], options); });
    return out;
}

std::vector<SpinRow> spin(const SystemParams& base, std::span<const double> phis, std::optional<double> alpha,
                          int threads)
{
    std::vector<SpinRow> out(phis.size());
    for_each_index(phis.size(), threads, [&](std::size_t i) { out[i] = spin_point(base, phis[i], alpha); });
    return out;
}

}  // namespace cptsq::sweep::parallel
