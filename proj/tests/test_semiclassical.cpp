#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>

#include "cptsq/error.hpp"
#include "cptsq/semiclassical.hpp"

using namespace cptsq;
using namespace cptsq::semiclassical;

TEST_CASE("absorption examples")
{
    CHECK(absorption(7.0, 0.0, 100.0) == 0.0);
    CHECK(absorption(1.0, 1.0, 100.0) == doctest::Approx(25.0).epsilon(1e-14));
    CHECK(absorption(144.0, 1.0, 100.0) == doctest::Approx(100.0 / 20882.0).epsilon(1e-14));
    CHECK_THROWS_AS(absorption(std::nan(""), 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(absorption(1.0, INFINITY, 1.0), InvalidArgument);
}

TEST_CASE("nonlinear phase examples")
{
    CHECK(nonlinear_phase(3.0, 0.0, 100.0) == 0.0);
    CHECK(nonlinear_phase(4.0, 2.0, 100.0) == 0.0);
    CHECK(nonlinear_phase(144.0, 1.0, 100.0) == doctest::Approx(14300.0 / 20882.0).epsilon(1e-14));
    CHECK(nonlinear_phase(144.0, 1.0, 100.0) == doctest::Approx(0.68480).epsilon(1e-5));
}

TEST_CASE("input intensity examples")
{
    CHECK(input_intensity(5.0, 0.0, 100.0, 0.0) == doctest::Approx(5.0));
    CHECK(input_intensity(5.0, 0.0, 100.0, 1.0) == doctest::Approx(10.0));
    const double A = 100.0 / 20882.0, p = 14300.0 / 20882.0;
    const double expected = 144.0 * ((1 + A) * (1 + A) + (1 - p) * (1 - p));
    CHECK(input_intensity(144.0, 1.0, 100.0, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(input_intensity(144.0, 1.0, 100.0, 1.0) == doctest::Approx(159.689).epsilon(1e-5));
}

TEST_CASE("threshold detuning")
{
    CHECK(threshold_delta(144.0, 100.0, 1.0) == doctest::Approx(std::sqrt(2.0) * 1.44).epsilon(1e-14));
    CHECK(threshold_delta(144.0, 100.0, 1.0) == doctest::Approx(2.0365).epsilon(1e-4));
    CHECK(threshold_delta(100.0, 100.0, 0.0) == doctest::Approx(1.0));
    CHECK(threshold_delta(100.0, 1e12, 0.0) < 1e-9);
    // linear in I, inverse in C
    for (double I : {1.0, 10.0, 300.0}) {
        for (double C : {10.0, 100.0, 1000.0}) {
            CHECK(threshold_delta(2 * I, C, 0.5) == doctest::Approx(2 * threshold_delta(I, C, 0.5)));
            CHECK(threshold_delta(I, 2 * C, 0.5) == doctest::Approx(0.5 * threshold_delta(I, C, 0.5)));
        }
    }
}

TEST_CASE("asymptotic and Kerr limits")
{
    auto [a, p] = asymptotic_cpt(144.0, 1.0, 100.0);
    CHECK(a == doctest::Approx(100.0 / 20736.0));
    CHECK(p == doctest::Approx(100.0 / 144.0));
    CHECK(std::abs(a / absorption(144.0, 1.0, 100.0) - 1.0) < 0.015);
    CHECK(std::abs(p / nonlinear_phase(144.0, 1.0, 100.0) - 1.0) < 0.015);
    auto [a0, p0] = asymptotic_cpt(144.0, 0.0, 100.0);
    CHECK(a0 == 0.0);
    CHECK(p0 == 0.0);

    auto [ak, pk] = kerr_two_level(100.0, 1.0, 10.0);
    CHECK(ak == doctest::Approx(0.5));
    CHECK(pk == doctest::Approx(0.1));
    CHECK(pk / ak == doctest::Approx(0.2));
    auto [af, pf] = kerr_two_level(100.0, 1.0, 1e9);
    CHECK(af < 1e-15);
    CHECK(pf < 1e-15);
    CHECK_THROWS_AS(kerr_two_level(100.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("figure of merit")
{
    CHECK(figure_of_merit(Medium::CPT, 144.0, 1.0) == doctest::Approx(143.0));
    CHECK(figure_of_merit(Medium::CPT, 4.0, 2.0) == 0.0);
    CHECK(figure_of_merit(Medium::Kerr, 1.0, 10.0) == doctest::Approx(0.2));
    CHECK_THROWS_AS(figure_of_merit(Medium::CPT, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(figure_of_merit(Medium::Kerr, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("closed forms: ratio identity, parity, continuity (randomized)")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> logI(-2.0, 3.0), d(-3.0, 3.0), logC(0.0, 3.0);
    for (int n = 0; n < 20000; ++n) {
        const double I = std::pow(10.0, logI(rng)), db = d(rng), C = std::pow(10.0, logC(rng));
        if (db == 0.0) continue;
        const double A = absorption(I, db, C), p = nonlinear_phase(I, db, C);
        CHECK(A >= 0.0);
        const double ratio = (I - db * db) / db;
        CHECK(std::abs(p / A - ratio) <= 1e-12 * std::max(1.0, std::abs(ratio)));
        CHECK(std::abs(figure_of_merit(Medium::CPT, I, db) - p / A) <= 1e-12 * std::max(1.0, std::abs(ratio)));
        CHECK(absorption(I, -db, C) == A);
        CHECK(nonlinear_phase(I, -db, C) == -p);
        CHECK(std::abs(reflectivity(I, db, C, 0.7)) <= 1.0 + 1e-15);
        if (I != db * db) CHECK((p > 0) == (db * (I - db * db) > 0));
    }
    for (double C : {1.0, 100.0, 1000.0}) {
        CHECK(input_intensity(3.0, 1e-9, C, 0.5) == doctest::Approx(3.0 * 1.25).epsilon(1e-6));
    }
}

TEST_CASE("reflectivity")
{
    CHECK(reflectivity(1.0, 0.0, 100.0, 0.0) == std::complex<double>(1.0, 0.0));
    CHECK(reflectivity(1.0, 1.0, 100.0, 0.0).real() == doctest::Approx(-24.0 / 26.0));
    CHECK(reflectivity(1.0, 1.0, 100.0, 0.0).real() == doctest::Approx(-0.92308).epsilon(1e-5));
    CHECK(std::abs(reflectivity(1.0, 1.0, 100.0, 0.0).imag()) < 1e-15);
    // impedance matching A = 1: C delta^2 / (2 + 2 delta^2 ...) chosen to give exactly 1
    const double C = 4.0;  // I = 1, delta = 1 -> A = C / 4
    CHECK(std::abs(reflectivity(1.0, 1.0, C, 0.0)) < 1e-15);
}

TEST_CASE("branches")
{
    auto roots = solve_branches(input_intensity(144.0, 1.0, 100.0, 1.0), 1.0, 100.0, 1.0);
    bool found = false;
    for (const auto& r : roots) found = found || std::abs(r.I - 144.0) < 1e-8;
    CHECK(found);

    roots = solve_branches(3.7, 0.0, 100.0, 0.0);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].I == doctest::Approx(3.7).epsilon(1e-12));
    CHECK(roots[0].stable);

    CHECK_THROWS_AS(solve_branches(-1.0, 1.0, 100.0, 1.0), InvalidArgument);
}

TEST_CASE("branches: multistability agrees with a brute-force count")
{
    const double C = 100.0, phi = 0.0;
    int multi = 0;
    for (double db : {0.5, 1.0, 1.5, 2.0, 3.0}) {
        // brute force: scan I_in(I) on a fine log grid and look for a fold
        std::vector<double> Is, Iin;
        for (int k = 0; k <= 20000; ++k) {
            Is.push_back(std::pow(10.0, -3.0 + 6.0 * k / 20000.0));
            Iin.push_back(input_intensity(Is.back(), db, C, phi));
        }
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t k = 1; k + 1 < Is.size(); ++k) {
            if (Iin[k] > Iin[k - 1] && Iin[k] > Iin[k + 1]) hi = std::max(hi, Iin[k]);
            if (Iin[k] < Iin[k - 1] && Iin[k] < Iin[k + 1]) lo = std::min(lo, Iin[k]);
        }
        if (!(lo < hi)) continue;
        const double target = 0.5 * (lo + hi);
        int crossings = 0;
        for (std::size_t k = 1; k < Is.size(); ++k) crossings += (Iin[k - 1] - target) * (Iin[k] - target) < 0;
        const auto roots = solve_branches(target, db, C, phi);
        CHECK(roots.size() >= 2);
        CHECK(static_cast<int>(roots.size()) == crossings);
        for (std::size_t k = 1; k < roots.size(); ++k) CHECK(roots[k - 1].I < roots[k].I);
        for (const auto& r : roots) {
            CHECK(std::abs(input_intensity(r.I, db, C, phi) - target) < 1e-10 * std::max(1.0, target));
            CHECK(r.stable == (std::abs(db) <= threshold_delta(r.I, C, phi)));
        }
        ++multi;
    }
    CHECK(multi > 0);
}

TEST_CASE("branches round trip (randomized)")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> logI(-1.0, 3.0), d(-3.0, 3.0), phi(-2.0, 2.0);
    for (int n = 0; n < 300; ++n) {
        const double I = std::pow(10.0, logI(rng)), db = d(rng), f = phi(rng);
        const auto roots = solve_branches(input_intensity(I, db, 100.0, f), db, 100.0, f);
        REQUIRE(!roots.empty());
        double best = INFINITY;
        for (const auto& r : roots) best = std::min(best, std::abs(r.I - I));
        CHECK(best < 1e-8 * std::max(1.0, I));
    }
}

TEST_CASE("Bloch dipole reproduces the closed-form response")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> logI(-2.0, 3.0), d(-3.0, 3.0);
    for (int n = 0; n < 300; ++n) {
        const double I = std::pow(10.0, logI(rng)), db = d(rng);
        for (double C : {1.0, 100.0, 1000.0}) {
            const auto b = bloch_steady_state(std::sqrt(I), db, 0.0);
            const auto chi = susceptibility_from_bloch(b, I, C);
            const double A = oracle::absorption(I, db, C), p = oracle::nonlinear_phase(I, db, C);
            CHECK(std::abs(chi.real() - A) <= 1e-8 * std::max(std::abs(A), 1e-300) + 1e-14);
            CHECK(std::abs(chi.imag() - p) <= 1e-8 * std::max(std::abs(p), 1e-300) + 1e-14);
        }
    }
    const auto b = bloch_steady_state(12.0, 1.0, 0.0);
    const auto chi = susceptibility_from_bloch(b, 144.0, 100.0);
    CHECK(chi.real() == doctest::Approx(0.0047888).epsilon(1e-4));
    CHECK(chi.imag() == doctest::Approx(0.68480).epsilon(1e-4));
}

TEST_CASE("mean spin")
{
    const auto m0 = mean_spin(144.0, 0.0, 1000.0);
    CHECK(m0.jx == doctest::Approx(-500.0));
    CHECK(m0.jy == 0.0);
    CHECK(m0.jz == 0.0);
    CHECK(mean_spin(144.0, 1.0, 1.0).jy == doctest::Approx(0.5 / 144.0));
    CHECK(mean_spin(144.0, 1.0, 1.0).jy == doctest::Approx(0.003472).epsilon(1e-3));

    const auto exact0 = mean_spin(bloch_steady_state(12.0, 0.0, 0.0), 10.0);
    CHECK(exact0.jx == doctest::Approx(-5.0).epsilon(1e-12));
    // first-order Jy is accurate to O(delta^2) relative
    double prev = INFINITY;
    for (double db : {1e-1, 1e-2, 1e-3}) {
        const double I = 144.0;
        const auto ex = mean_spin(bloch_steady_state(std::sqrt(I), db, 0.0), 1.0);
        const auto fo = mean_spin(I, db, 1.0);
        const double rel = std::abs(ex.jy - fo.jy) / std::abs(fo.jy);
        CHECK(rel < 10.0 * db * db);
        CHECK(rel < prev);
        prev = rel;
        CHECK(std::abs(ex.jz) < 1e-12);
    }
}

TEST_CASE("operating point")
{
    SystemParams p;
    p.C = 100.0;
    p.kappa = 2.0;
    p.phi = 1.0;
    p.delta_bar = 1.0;
    const auto op = make_operating_point(p, 144.0);
    CHECK(op.omega_rabi == doctest::Approx(12.0));
    CHECK(op.omega_rabi * op.omega_rabi == doctest::Approx(op.I));
    CHECK(op.delta_s == doctest::Approx(2.0365).epsilon(1e-4));
    CHECK(op.stable);
    CHECK(op.input_intensity >= op.I * (1 + op.absorption) * (1 + op.absorption));
    p.delta_bar = 3.0;
    CHECK_FALSE(make_operating_point(p, 144.0).stable);
    p.C = -1.0;
    CHECK_THROWS_AS(make_operating_point(p, 144.0), InvalidArgument);
}
