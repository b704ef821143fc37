#include "cptsq/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cptsq/error.hpp"

namespace cptsq::semiclassical {

namespace {

using detail::require_finite;

void check_common(double I, double delta_bar, double C)
{
    require_finite(I, "I");
    require_finite(delta_bar, "delta_bar");
    require_finite(C, "C");
    if (I < 0.0) throw InvalidArgument("I must be >= 0");
    if (C < 0.0) throw InvalidArgument("C must be >= 0");
}

// I^2 + d^2 + I d^2 + d^4
double lambda_denominator(double I, double d)
{
    const double d2 = d * d;
    return I * I + d2 + I * d2 + d2 * d2;
}

}  // namespace

double absorption(double I, double delta_bar, double C)
{
    check_common(I, delta_bar, C);
    if (delta_bar == 0.0) return 0.0;
    return C * delta_bar * delta_bar / lambda_denominator(I, delta_bar);
}

double nonlinear_phase(double I, double delta_bar, double C)
{
    check_common(I, delta_bar, C);
    if (delta_bar == 0.0) return 0.0;
    return C * delta_bar * (I - delta_bar * delta_bar) / lambda_denominator(I, delta_bar);
}

double input_intensity(double I, double delta_bar, double C, double phi)
{
    require_finite(phi, "phi");
    const double a = absorption(I, delta_bar, C);
    const double detune = phi - nonlinear_phase(I, delta_bar, C);
    return I * ((1.0 + a) * (1.0 + a) + detune * detune);
}

double threshold_delta(double I, double C, double phi)
{
    require_finite(I, "I");
    require_finite(C, "C");
    require_finite(phi, "phi");
    if (I <= 0.0) throw InvalidArgument("threshold_delta needs I > 0");
    if (C <= 0.0) throw InvalidArgument("threshold_delta needs C > 0");
    return std::sqrt(1.0 + phi * phi) * I / C;
}

std::pair<double, double> asymptotic_cpt(double I, double delta_bar, double C)
{
    check_common(I, delta_bar, C);
    if (delta_bar == 0.0) return {0.0, 0.0};
    if (I <= 0.0) throw InvalidArgument("asymptotic_cpt needs I > 0");
    return {C * delta_bar * delta_bar / (I * I), C * delta_bar / I};
}

std::pair<double, double> kerr_two_level(double C, double I, double Delta_bar)
{
    check_common(I, 0.0, C);
    require_finite(Delta_bar, "Delta_bar");
    if (Delta_bar == 0.0) throw InvalidArgument("Kerr limit needs a nonzero one-photon detuning");
    return {C / (2.0 * Delta_bar * Delta_bar), C * I / (Delta_bar * Delta_bar * Delta_bar)};
}

double figure_of_merit(Medium medium, double I, double detuning)
{
    require_finite(I, "I");
    require_finite(detuning, "detuning");
    if (detuning == 0.0) throw InvalidArgument("figure of merit is undefined at zero detuning");
    switch (medium) {
    case Medium::CPT:
        return (I - detuning * detuning) / detuning;
    case Medium::Kerr:
        return 2.0 * I / detuning;
    }
    throw InvalidArgument("unknown medium");
}

std::complex<double> reflectivity(double I, double delta_bar, double C, double phi)
{
    const double a = absorption(I, delta_bar, C);
    const double detune = phi - nonlinear_phase(I, delta_bar, C);
    return std::complex<double>(1.0 - a, detune) / std::complex<double>(1.0 + a, -detune);
}

MeanSpin mean_spin(double I, double delta_bar, double N)
{
    require_finite(N, "N");
    if (I <= 0.0) throw InvalidArgument("mean_spin needs I > 0");
    return {-N / 2.0, N / 2.0 * delta_bar / I, 0.0};
}

MeanSpin mean_spin(const BlochState& state, double N)
{
    return {N * state.j12.real(), N * state.j12.imag(), N * (state.pop2 - state.pop1) / 2.0};
}

atom::LambdaDrive symmetric_drive(double I, double delta_bar, double gamma0)
{
    const double omega = std::sqrt(I);
    atom::LambdaDrive drive;
    drive.rabi1 = omega;
    drive.rabi2 = omega;
    drive.detuning1 = -delta_bar;
    drive.detuning2 = delta_bar;
    drive.gamma0 = gamma0;
    return drive;
}

BlochState bloch_steady_state(double omega_rabi, double delta_bar, double gamma0)
{
    require_finite(omega_rabi, "omega_rabi");
    require_finite(delta_bar, "delta_bar");
    require_finite(gamma0, "gamma0");
    if (omega_rabi < 0.0) throw InvalidArgument("omega_rabi must be >= 0");
    if (gamma0 < 0.0) throw InvalidArgument("gamma0 must be >= 0");

    const atom::LambdaDrive drive = symmetric_drive(omega_rabi * omega_rabi, delta_bar, gamma0);
    const atom::Generator gen = atom::expectation_generator(drive);

    Eigen::JacobiSVD<atom::Generator> svd(gen);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv(0));
    int kernel = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv(i) < 1e-11 * scale) ++kernel;
    }
    if (kernel > 1) {
        throw DegenerateSteadyState("single-atom steady state is not unique (kernel dimension "
                                    + std::to_string(kernel) + ")");
    }

    // Solve for the deviation from the dark state (|1> - |2>)/sqrt2, which is
    // exact at delta_bar = 0 without ground decay. Near resonance the
    // deviation is small, so the tiny excited-state quantities that carry the
    // absorption keep their relative accuracy. The trace condition is
    // stacked under the generator; residuals for the refinement steps are
    // accumulated in extended precision.
    using cld = std::complex<long double>;
    atom::StateVector dark = atom::StateVector::Zero();
    dark(atom::flat_index(atom::kGround1, atom::kGround1)) = 0.5;
    dark(atom::flat_index(atom::kGround2, atom::kGround2)) = 0.5;
    dark(atom::flat_index(atom::kGround1, atom::kGround2)) = -0.5;
    dark(atom::flat_index(atom::kGround2, atom::kGround1)) = -0.5;

    Eigen::Matrix<std::complex<double>, 10, 9> system;
    system.topRows<9>() = gen;
    system.row(9).setZero();
    for (int k = 0; k < 3; ++k) system(9, 4 * k) = 1.0;
    Eigen::Matrix<std::complex<double>, 10, 1> rhs = Eigen::Matrix<std::complex<double>, 10, 1>::Zero();
    rhs.head<9>() = -(gen * dark);
    const auto qr = system.colPivHouseholderQr();
    atom::StateVector y = qr.solve(rhs);
    for (int it = 0; it < 2; ++it) {
        Eigen::Matrix<std::complex<double>, 10, 1> r;
        for (int i = 0; i < 10; ++i) {
            cld acc = cld(rhs(i).real(), rhs(i).imag());
            for (int j = 0; j < 9; ++j) {
                acc -= cld(system(i, j).real(), system(i, j).imag()) * cld(y(j).real(), y(j).imag());
            }
            r(i) = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
        }
        y += qr.solve(r);
    }
    atom::StateVector s = dark + y;

    // Enforce exact hermiticity of the expectation values: <|l><k|> = conj <|k><l|>.
    for (int k = 0; k < 3; ++k) {
        s(4 * k) = s(4 * k).real();
        for (int l = k + 1; l < 3; ++l) {
            const std::complex<double> avg = 0.5 * (s(3 * k + l) + std::conj(s(3 * l + k)));
            s(3 * k + l) = avg;
            s(3 * l + k) = std::conj(avg);
        }
    }

    BlochState out;
    out.raw = s;
    out.pop1 = s(atom::flat_index(atom::kGround1, atom::kGround1)).real();
    out.pop2 = s(atom::flat_index(atom::kGround2, atom::kGround2)).real();
    out.pope = s(atom::flat_index(atom::kExcited, atom::kExcited)).real();
    out.p1 = s(atom::flat_index(atom::kGround1, atom::kExcited));
    out.p2 = s(atom::flat_index(atom::kGround2, atom::kExcited));
    out.j12 = s(atom::flat_index(atom::kGround1, atom::kGround2));
    out.residual = (gen * s).cwiseAbs().maxCoeff();
    if (!(out.residual < 1e-12 * scale)) {
        throw SolverError("Bloch steady-state residual too large: " + std::to_string(out.residual));
    }
    return out;
}

std::complex<double> susceptibility_from_bloch(const BlochState& state, double I, double C)
{
    if (I <= 0.0) throw InvalidArgument("susceptibility needs I > 0");
    const std::complex<double> chi = state.p1 / std::sqrt(I);
    return std::complex<double>(0.0, 2.0 * C) * chi;
}

OperatingPoint make_operating_point(const SystemParams& params, double I)
{
    params.validate();
    require_finite(I, "I");
    if (I < 0.0) throw InvalidArgument("I must be >= 0");

    OperatingPoint op;
    op.I = I;
    op.omega_rabi = params.gamma * std::sqrt(I);
    op.absorption = absorption(I, params.delta_bar, params.C);
    op.phase_nl = nonlinear_phase(I, params.delta_bar, params.C);
    op.input_intensity = input_intensity(I, params.delta_bar, params.C, params.phi);
    if (I > 0.0 && params.C > 0.0) {
        op.delta_s = threshold_delta(I, params.C, params.phi);
        op.stable = std::abs(params.delta_bar) <= op.delta_s;
    } else {
        op.delta_s = std::numeric_limits<double>::infinity();
        op.stable = true;
    }
    return op;
}

namespace {

using Poly = std::vector<double>;  // coefficients, lowest order first

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

Poly poly_add(Poly a, const Poly& b, double scale = 1.0)
{
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return a;
}

// Real roots in (lo, hi) of a polynomial, via companion-matrix eigenvalues.
std::vector<double> real_roots_in(Poly p, double lo, double hi)
{
    while (p.size() > 1 && p.back() == 0.0) p.pop_back();
    const int n = static_cast<int>(p.size()) - 1;
    std::vector<double> out;
    if (n < 1) return out;
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p[i] / p[n];
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(companion, false).eigenvalues();
    for (const auto& z : ev) {
        if (std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z)) && z.real() > lo && z.real() < hi) {
            out.push_back(z.real());
        }
    }
    return out;
}

}  // namespace

std::vector<Branch> solve_branches(double I_in, double delta_bar, double C, double phi, const StabilityTest& exact_test)
{
    require_finite(I_in, "I_in");
    require_finite(phi, "phi");
    check_common(0.0, delta_bar, C);
    if (I_in < 0.0) throw InvalidArgument("I_in must be >= 0");

    auto classify = [&](double I) {
        if (exact_test) return exact_test(I);
        if (I <= 0.0 || C <= 0.0) return true;
        return std::abs(delta_bar) <= threshold_delta(I, C, phi);
    };

    if (I_in == 0.0) return {Branch{0.0, classify(0.0)}};

    auto residual = [&](double I) { return input_intensity(I, delta_bar, C, phi) - I_in; };

    // Every root lies in (0, I_in] because I_in >= I (1 + A)^2 >= I, and the
    // residual is -I_in at I = 0. Multiplying by the squared denominator Q^2
    // of A and phi_nl gives a quintic with the residual's sign; its critical
    // points cut (0, I_in] into pieces holding at most one root each. A
    // log-spaced scan adds further break points as a safeguard.
    const double d2 = delta_bar * delta_bar;
    const Poly Q{d2 * (1.0 + d2), d2, 1.0};
    const Poly u = poly_add(Q, Poly{C * d2});
    const Poly v = poly_add(Poly{phi * Q[0], phi * Q[1], phi * Q[2]}, Poly{C * delta_bar * d2, -C * delta_bar});
    const Poly P = poly_add(poly_mul(Poly{0.0, 1.0}, poly_add(poly_mul(u, u), poly_mul(v, v))), poly_mul(Q, Q), -I_in);
    Poly dP;
    for (std::size_t i = 1; i < P.size(); ++i) dP.push_back(static_cast<double>(i) * P[i]);

    std::vector<double> cuts = real_roots_in(dP, 0.0, I_in);
    constexpr int kGrid = 400;
    const double lo = std::log(1e-6 * I_in);
    const double hi = std::log(I_in);
    for (int i = 0; i < kGrid; ++i) cuts.push_back(std::exp(lo + (hi - lo) * i / (kGrid - 1)));
    cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> roots;
    double prev_x = cuts.front();
    double prev_f = residual(prev_x);
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const double x = cuts[k];
        const double f = residual(x);
        if (f == 0.0) {
            roots.push_back(x);
        } else if (prev_f != 0.0 && (f > 0.0) != (prev_f > 0.0)) {
            double a = prev_x;
            double b = x;
            double fa = prev_f;
            for (int it = 0; it < 300 && b - a > 1e-15 * b; ++it) {
                const double m = 0.5 * (a + b);
                if (m <= a || m >= b) break;
                const double fm = residual(m);
                if (fm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((fm > 0.0) == (fa > 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push_back(std::abs(residual(a)) <= std::abs(residual(b)) ? a : b);
        }
        prev_x = x;
        prev_f = f;
    }

    if (roots.empty()) {
        throw SolverError("no intracavity intensity found for I_in = " + std::to_string(I_in)
                          + " in [1e-6, 1e6] * I_in");
    }
    std::sort(roots.begin(), roots.end());
    std::vector<Branch> out;
    out.reserve(roots.size());
    for (double I : roots) {
        if (!(std::abs(residual(I)) < 1e-10 * std::max(1.0, I_in))) {
            throw SolverError("branch root failed residual check at I = " + std::to_string(I));
        }
        out.push_back({I, classify(I)});
    }
    return out;
}

}  // namespace cptsq::semiclassical
