#include "cptsq/analysis.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cptsq/error.hpp"
#include "cptsq/nelder_mead.hpp"

namespace cptsq::analysis {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

}  // namespace

ModeBasis ModeBasis::dark_bright()
{
    const double r = 1.0 / std::sqrt(2.0);
    ModeBasis b;
    b.U << -r, r, cplx(0.0, -r), cplx(0.0, -r);
    return b;
}

ModeBasis ModeBasis::from_angles(double t, double psi, double chi, double theta_a, double theta_b)
{
    const cplx i(0.0, 1.0);
    ModeBasis b;
    b.U << std::exp(i * psi) * std::cos(t), std::exp(i * chi) * std::sin(t), -std::exp(-i * chi) * std::sin(t),
        std::exp(-i * psi) * std::cos(t);
    b.theta_a = theta_a;
    b.theta_b = theta_b;
    return b;
}

void ModeBasis::validate() const
{
    if (!U.allFinite() || !std::isfinite(theta_a) || !std::isfinite(theta_b)) {
        throw InvalidArgument("mode basis must be finite");
    }
    if ((U.adjoint() * U - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InvalidArgument("mode basis matrix is not unitary");
    }
}

double quadrature_spectrum(const Eigen::Matrix2d& block, double theta)
{
    const Eigen::Vector2d u(std::cos(theta), std::sin(theta));
    return u.dot(block * u);
}

QuadratureMin min_quadrature_spectrum(const Eigen::Matrix2d& block)
{
    const Eigen::Matrix2d sym = 0.5 * (block + block.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(sym);
    const auto& ev = es.eigenvalues();
    QuadratureMin out;
    out.s_star = ev(0);
    if (ev(1) - ev(0) <= 1e-14 * std::max(1.0, std::abs(ev(1)))) {
        out.theta_star = 0.0;
        return out;
    }
    const Eigen::Vector2d v = es.eigenvectors().col(0);
    double theta = std::atan2(v(1), v(0));
    theta = std::fmod(theta, kPi);
    if (theta < 0.0) theta += kPi;
    if (theta >= kPi) theta -= kPi;
    out.theta_star = theta;
    return out;
}

Eigen::Matrix4d quadrature_transform(const ModeBasis& basis)
{
    // Output mode m = e^{-i theta_m} sum_j U_mj A_j; a complex factor z acts on
    // (X, Y) as [[Re z, -Im z], [Im z, Re z]].
    Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
    const std::array<double, 2> thetas{basis.theta_a, basis.theta_b};
    for (int m = 0; m < 2; ++m) {
        const cplx phase = std::polar(1.0, -thetas[m]);
        for (int j = 0; j < 2; ++j) {
            const cplx z = phase * basis.U(m, j);
            o.block<2, 2>(2 * m, 2 * j) << z.real(), -z.imag(), z.imag(), z.real();
        }
    }
    return o;
}

Eigen::Matrix4d transform_basis(const Eigen::Matrix4d& S, const ModeBasis& basis)
{
    basis.validate();
    const Eigen::Matrix4d o = quadrature_transform(basis);
    return o * S * o.transpose();
}

namespace {

double epr_from_transformed(const Eigen::Matrix4d& s)
{
    const double var_x = s(0, 0) + s(2, 2) - 2.0 * s(0, 2);
    const double var_y = s(1, 1) + s(3, 3) + 2.0 * s(1, 3);
    return 0.5 * (var_x + var_y);
}

// Minimum over theta_a, theta_b for fixed U. Only the reflection-like part of
// the a-b cross block couples to the angle sum theta_a + theta_b.
double best_phases_unchecked(const Eigen::Matrix4d& S, const Eigen::Matrix2cd& U, double& theta_a, double& theta_b)
{
    ModeBasis base;
    base.U = U;
    const Eigen::Matrix4d o = quadrature_transform(base);
    const Eigen::Matrix4d s = o * S * o.transpose();
    const double p = s(0, 2);
    const double q = s(0, 3);
    const double r = s(1, 2);
    const double w = s(1, 3);
    const double c = 0.5 * (p - w);
    const double e = 0.5 * (q + r);
    theta_a = std::atan2(e, c);
    theta_b = 0.0;
    return 0.5 * (s.trace()) - 2.0 * std::hypot(c, e);
}

}  // namespace

double epr_measure(const Eigen::Matrix4d& S, const ModeBasis& basis)
{
    return epr_from_transformed(transform_basis(S, basis));
}

double epr_measure_best_phases(const Eigen::Matrix4d& S, ModeBasis& basis)
{
    basis.validate();
    return best_phases_unchecked(S, basis.U, basis.theta_a, basis.theta_b);
}

EPRResult optimize_entanglement(const Eigen::Matrix4d& S, const EntanglementOptions& options)
{
    if (!S.allFinite()) throw InvalidArgument("spectral matrix must be finite");

    auto objective = [&S](const std::vector<double>& x) {
        double ta = 0.0;
        double tb = 0.0;
        return best_phases_unchecked(S, ModeBasis::from_angles(x[0], x[1], x[2]).U, ta, tb);
    };

    std::vector<std::array<double, 3>> starts;
    const std::array<double, 3> ts{0.0, kPi / 4.0, kPi / 2.0};
    const std::array<double, 3> phases{0.0, kPi / 2.0, kPi};
    for (double t : ts) {
        for (double psi : phases) {
            for (double chi : phases) starts.push_back({t, psi, chi});
        }
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int i = 0; i < options.random_starts; ++i) starts.push_back({angle(rng), angle(rng), angle(rng)});

    optim::SimplexOptions simplex;
    simplex.tolerance = options.tolerance;
    simplex.max_evaluations = options.max_evaluations;

    bool found = false;
    EPRResult best;
    best.E_star = std::numeric_limits<double>::infinity();
    for (const auto& s0 : starts) {
        const auto run = optim::nelder_mead(objective, {s0[0], s0[1], s0[2]}, simplex);
        if (!run.converged) continue;
        if (run.value < best.E_star) {
            found = true;
            best.E_star = run.value;
            // U is 2 pi periodic in each angle; report the principal values.
            best.t = std::remainder(run.x[0], 2.0 * std::numbers::pi);
            best.psi = std::remainder(run.x[1], 2.0 * std::numbers::pi);
            best.chi = std::remainder(run.x[2], 2.0 * std::numbers::pi);
        }
    }
    if (!found) throw SolverError("entanglement optimization did not converge from any start");

    best.basis = ModeBasis::from_angles(best.t, best.psi, best.chi);
    best_phases_unchecked(S, best.basis.U, best.basis.theta_a, best.basis.theta_b);
    return best;
}

EPRResult optimize_entanglement(const langevin::TwoModeSpectrum& spectrum, const EntanglementOptions& options)
{
    EPRResult r = optimize_entanglement(spectrum.S, options);
    r.omega = spectrum.omega;
    return r;
}

double squeezing_db(double s_star)
{
    return -10.0 * std::log10(s_star);
}

double entanglement_db(double e_star)
{
    return -10.0 * std::log10(e_star / 2.0);
}

SpinResult spin_measures(const langevin::Matrix& V, const semiclassical::BlochState& bloch, double N)
{
    const std::array<langevin::RowVector, 3> comps{langevin::spin_x(), langevin::spin_y(),
                                                   langevin::population_difference()};
    Eigen::Matrix3d K;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            K(i, j) = (comps[i] * V * comps[j].adjoint())(0, 0).real();
        }
    }
    K = 0.5 * (K + K.transpose()).eval();

    SpinResult out;
    out.mean_spin = semiclassical::mean_spin(bloch, N);
    out.var_jz_normalized = K(2, 2);
    out.var_jy_normalized = K(1, 1);
    out.gamma_z_fit = std::numeric_limits<double>::quiet_NaN();

    // Mean spin direction in units of N/2.
    const Eigen::Vector3d mean(2.0 * bloch.j12.real(), 2.0 * bloch.j12.imag(), bloch.pop2 - bloch.pop1);
    if (mean.norm() > 0.0) {
        const Eigen::Vector3d n = mean.normalized();
        Eigen::Vector3d e1 = Eigen::Vector3d::UnitZ() - n.z() * n;
        if (e1.norm() < 1e-8) e1 = Eigen::Vector3d::UnitY() - n.y() * n;
        e1.normalize();
        const Eigen::Vector3d e2 = n.cross(e1);
        Eigen::Matrix<double, 3, 2> plane;
        plane << e1, e2;
        const Eigen::Matrix2d k_perp = plane.transpose() * K * plane;
        const QuadratureMin m = min_quadrature_spectrum(k_perp);
        out.min_transverse_var = m.s_star;
        out.angle_min = m.theta_star;
    } else {
        out.min_transverse_var = std::min({K(0, 0), K(1, 1), K(2, 2)});
    }

    out.uncertainty_product = std::sqrt(K(1, 1) * K(2, 2));
    out.uncertainty_bound = std::abs(mean.x());
    return out;
}

double lorentzian_half_width(const langevin::FluctuationModel& model, const langevin::RowVector& combination)
{
    auto spectrum = [&](double w) { return langevin::atomic_spectrum(model, combination, w); };
    const double peak = spectrum(0.0);
    if (!(peak > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double half = 0.5 * peak;
    double lo = 0.0;
    double hi = 1e-6;
    while (spectrum(hi) > half) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e4) return std::numeric_limits<double>::quiet_NaN();
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (spectrum(mid) > half ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SpinResult spin_measures(const langevin::FluctuationModel& model, double N)
{
    const langevin::Covariance cov = langevin::atomic_covariance(model);
    SpinResult out = spin_measures(cov.V, model.bloch, N);
    out.gamma_z_fit = lorentzian_half_width(model, langevin::population_difference());
    return out;
}

}  // namespace cptsq::analysis
