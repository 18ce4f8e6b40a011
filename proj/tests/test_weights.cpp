#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ww/quadrature.hpp>
#include <ww/weights.hpp>

#include "test_util.hpp"

using namespace ww;
using namespace wwtest;

namespace {
Grid g128(128, 2.0 * pi);
}

TEST_CASE("bump weight: mass one, nonnegative, nondecreasing") {
    WeightParams p;
    p.kind = WeightKind::bump;
    p.width = 2.0;
    Weight w(g128, p);
    CHECK(std::abs(w.delta_m() - 1.0) < 1e-12);
    CHECK(w.mx().minCoeff() >= 0.0);
    // Monotone up to the interpolation ripple of the band-limited bump.
    for (int i = 1; i < g128.n(); ++i) CHECK(w.m()[i] >= w.m()[i - 1] - 1e-5 * w.delta_m());
    CHECK(w.m()[0] == doctest::Approx(0.0));

    WeightParams bad = p;
    bad.width = 0.5 * g128.spacing();
    CHECK_THROWS_AS(Weight(g128, bad), weight_error);
}

TEST_CASE("rational weight: pointwise m_xx bound and limits") {
    WeightParams p;
    p.kind = WeightKind::rational;
    p.eps = 0.05;
    p.r = 1.0;
    Weight w(g128, p);
    CHECK(w.mxx_ratio() <= p.eps * p.r + 1e-12);
    CHECK(w.hypothesis_iii(1.0, 0.01) == doctest::Approx(p.eps * p.r * 1.01));

    // eps -> 0: m_x -> 1, m -> x - const.
    WeightParams p0 = p;
    p0.eps = 1e-7;
    Weight w0(g128, p0);
    CHECK((w0.mx() - 1.0).abs().maxCoeff() < 1e-10);
    ArrayXd pts = g128.points();
    CHECK(((w0.m() - pts) - (w0.m()[5] - pts[5])).abs().maxCoeff() < 1e-8);

    WeightParams bad = p;
    bad.r = 0.4;
    CHECK_THROWS_AS(Weight(g128, bad), weight_error);
}

TEST_CASE("weight integral identities on the circle") {
    for (WeightKind kind : {WeightKind::bump, WeightKind::rational}) {
        WeightParams p;
        p.kind = kind;
        p.width = 2.5;
        p.eps = 0.2;
        p.r = 1.0;
        Weight w(g128, p);
        SpectralField f = random_field(g128, 3, 30, false);

        // d(m) pairing: int m f' dx = -[ int m_x f dx - delta_m f(0) ].
        const double lhs = w.density_integral(f.derivative().samples());
        const double rhs = -w.flux_form(f.samples());
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));

        // density_integral against Gauss quadrature of m_at * f (independent
        // integration path over [0, L], sawtooth included).
        ArrayXd fs = f.samples();
        QuadRule qr = composite_gauss({0.0, 1.5, 3.0, 4.5, g128.period()}, 48);
        double brute = 0.0;
        for (std::size_t i = 0; i < qr.x.size(); ++i)
            brute += qr.w[i] * w.m_at(qr.x[i]) * f.eval_real(qr.x[i]);
        CHECK(std::abs(w.density_integral(fs) - brute) < 1e-8 * std::max(1.0, std::abs(brute)));

        // m_at agrees with the stored samples.
        for (int i = 0; i < g128.n(); i += 17) {
            CHECK(std::abs(w.m_at(g128.points()[i]) - w.m()[i]) < 1e-10);
        }
    }
}

TEST_CASE("translated weight shifts the profile") {
    WeightParams p;
    p.kind = WeightKind::bump;
    p.width = 2.0;
    Weight w(g128, p);
    const double shift = 16 * g128.spacing();
    Weight wt = w.translated(shift);
    for (int i = 0; i < g128.n(); ++i) {
        const int j = (i + 16) % g128.n();
        CHECK(wt.mx()[j] == doctest::Approx(w.mx()[i]).epsilon(1e-12));
    }
}

TEST_CASE("chi window normalization") {
    ArrayXd chi = chi_window(g128, 2.0, 3.0);
    CHECK(std::abs(chi.sum() * g128.spacing() - 1.0) < 1e-12);
    CHECK(chi.minCoeff() >= 0.0);
}
