#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ww/conformal.hpp>

#include "test_util.hpp"

using namespace ww;
using namespace wwtest;

namespace {
Grid g128(128, 2.0 * pi);
}

TEST_CASE("flat surface gives the identity map") {
    ConformalMap map = build_from_surface(SpectralField::zero(g128), 1.0);
    CHECK(map.W().coeffs().norm() < 1e-14);
    CHECK(map.h() == doctest::Approx(1.0));
    auto [a, b] = map.locate(1.3, -0.4);
    CHECK(a == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(b == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(strip_drift(map, 0.7, -0.5) == doctest::Approx(0.0));
}

TEST_CASE("single-mode surface: residual, holomorphy, linearization") {
    ArrayXd pts = g128.points();
    const double h = 1.0;
    for (double a : {0.01, 0.005}) {
        SpectralField eta = SpectralField::from_samples(g128, ArrayXd(a * pts.cos()));
        ConformalMap map = build_from_surface(eta, h);
        CHECK(map.report().residual < 1e-12);
        CHECK(holomorphy_residual(map.W(), map.h()) < 1e-10);

        // Fixed-point relation Im W(alpha) = eta(alpha + Re W(alpha)) - c0.
        SpectralField imW = imag_part(map.W());
        SpectralField reW = real_part(map.W());
        double worst = 0.0;
        for (int i = 0; i < g128.n(); i += 5) {
            const double target = eta.eval_real(pts[i] + reW.eval_real(pts[i])) - map.report().offset;
            worst = std::max(worst, std::abs(imW.eval_real(pts[i]) - target));
        }
        CHECK(worst < 1e-11);
    }

    // Linearization: || Im W - eta || and || Re W + T^{-1} eta || are O(a^2).
    auto defect = [&](double a) {
        SpectralField eta = SpectralField::from_samples(g128, ArrayXd(a * pts.cos()));
        ConformalMap map = build_from_surface(eta, h);
        const double d1 = (imag_part(map.W()) - eta).sup_norm();
        const double d2 = (real_part(map.W()) + tilbert_inv(eta, h)).sup_norm();
        return std::max(d1, d2);
    };
    const double d1 = defect(0.02), d2 = defect(0.01);
    CHECK(d1 / d2 > std::pow(2.0, 1.9));
    CHECK(d1 / d2 < std::pow(2.0, 2.4));
}

TEST_CASE("round trip surface recovery") {
    SpectralField eta = 0.004 * random_field(g128, 5, 10);
    ConformalMap map = build_from_surface(eta, 1.0);
    SpectralField back = surface_from_map(map);
    CHECK((back - eta).sup_norm() < 1e-8);
}

TEST_CASE("steepness precondition") {
    ArrayXd pts = g128.points();
    SpectralField steep = SpectralField::from_samples(g128, ArrayXd(0.4 * pts.cos()));
    CHECK_THROWS_AS(build_from_surface(steep, 1.0), steepness_error);
}

TEST_CASE("locate surface and jacobian") {
    ArrayXd pts = g128.points();
    SpectralField eta = SpectralField::from_samples(g128, ArrayXd(0.02 * pts.cos()));
    ConformalMap map = build_from_surface(eta, 1.0);

    // Top points pull back to beta = 0.
    for (double x : {0.3, 2.0, 5.0}) {
        const double a0 = map.alpha_of_x(x);
        const double y = imag_part(map.W()).eval_real(a0);
        auto [aa, bb] = map.locate(x, y);
        CHECK(std::abs(bb) < 1e-10);
        CHECK(aa == doctest::Approx(a0).epsilon(1e-9));
    }

    // Jacobian |dZ|^2 = |1 + W_alpha|^2 at an interior located point.
    auto [aa, bb] = map.locate(1.0, -0.5);
    const complex dz = 1.0 + map.dW_at(aa, bb);
    // Finite-difference Jacobian of the forward map.
    const double dlt = 1e-6;
    const complex fd = (map.Z_at(aa + dlt, bb) - map.Z_at(aa - dlt, bb)) / (2.0 * dlt);
    CHECK(std::abs(fd - dz) < 1e-7);

    // Interior but out-of-domain point must throw.
    CHECK_THROWS_AS(map.locate(1.0, 0.5), locate_error);
}

TEST_CASE("measure change over a window") {
    SpectralField eta = 0.004 * random_field(g128, 6, 8);
    ConformalMap map = build_from_surface(eta, 1.0);
    // int_alpha1^alpha2 (1 + Re W_alpha) dalpha = x(alpha2) - x(alpha1).
    SpectralField reW = real_part(map.W());
    SpectralField reWa = reW.derivative();
    const double a1 = 0.7, a2 = 3.9;
    QuadRule r = gauss_legendre(120, a1, a2);
    double len = 0.0;
    for (int i = 0; i < 120; ++i) len += r.w[i] * (1.0 + reWa.eval_real(r.x[i]));
    CHECK(std::abs(len - (map.x_of_alpha(a2) - map.x_of_alpha(a1))) < 1e-8);
}

TEST_CASE("strip drift bound and multiplier route") {
    ArrayXd pts = g128.points();
    const double h = 1.0;

    // Drift scaling: |Re Z - x0| <= C a |beta| with C stable under halving.
    auto drift_const = [&](double a) {
        SpectralField eta = SpectralField::from_samples(g128, ArrayXd(a * pts.cos()));
        ConformalMap map = build_from_surface(eta, h);
        double worst = 0.0;
        for (double beta : {-0.1, -0.3, -0.6, -0.9}) {
            for (double alpha : {0.5, 2.5, 4.5}) {
                const double x0 = map.x_of_alpha(alpha);
                const double d = std::abs(map.Z_at(alpha, beta).real() - x0);
                worst = std::max(worst, d / (a * std::abs(beta)));
            }
        }
        return worst;
    };
    const double c1 = drift_const(0.02), c2 = drift_const(0.01);
    CHECK(c1 < 5.0);
    CHECK(std::abs(c1 - c2) < 0.3 * std::max(c1, c2));

    // beta -> 0 limit.
    SpectralField eta = SpectralField::from_samples(g128, ArrayXd(0.02 * pts.cos()));
    ConformalMap map = build_from_surface(eta, h);
    CHECK(std::abs(strip_drift(map, 1.0, -1e-7)) < 1e-9);

    // The drift agrees with the multiplier applied to Im W.
    SpectralField imW = imag_part(map.W());
    for (double beta : {-0.2, -0.7}) {
        SpectralField drift_field = apply_multiplier(imW, [&](double xi) {
            return strip_drift_symbol(map.h(), xi, beta);
        });
        for (double alpha : {0.9, 3.1}) {
            CHECK(std::abs(strip_drift(map, alpha, beta) - drift_field.eval_real(alpha)) < 1e-10);
        }
    }
}

TEST_CASE("strip drift symbol bound") {
    // |m(xi, beta)| <= C min(1, |beta xi|^2) tabulated over a wide range.
    for (double h : {1.0, 4.0}) {
        double cworst = 0.0;
        for (double xi : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 64.0}) {
            for (double bfrac : {0.01, 0.1, 0.3, 0.6, 0.9}) {
                const double beta = -bfrac * h;
                const double m = std::abs(strip_drift_symbol(h, xi, beta));
                (void)m;
                const double bound = std::min(1.0, beta * xi * beta * xi);
                cworst = std::max(cworst, m / bound);
            }
        }
        CHECK(cworst < 3.0);
    }
}
