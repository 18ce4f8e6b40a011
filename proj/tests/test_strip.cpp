#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ww/strip.hpp>

#include "test_util.hpp"

using namespace ww;
using namespace wwtest;

namespace {
Grid g64(64, 2.0 * pi);
const double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("depth grid weights sum to h") {
    for (double h : {0.5, 1.0, 4.0}) {
        DepthGrid d(h);
        double s = 0.0;
        for (double w : d.weights()) s += w;
        CHECK(std::abs(s - h) < 1e-12 * std::max(1.0, h));
        for (double b : d.nodes()) {
            CHECK(b > -h);
            CHECK(b < 0.0);
        }
    }
    DepthGrid dinf(inf, 8, 8, 12.0);
    CHECK(dinf.h_eff() == 12.0);
    CHECK(dinf.tail_bound(1.0) < 1e-10);
    CHECK_THROWS_AS(DepthGrid(inf, 8, 8, 0.0), config_error);
}

TEST_CASE("neumann extension") {
    const double h = 1.0;
    DepthGrid d(h);
    ArrayXd pts = g64.points();

    // Constant extends to itself.
    SpectralField c = SpectralField::from_samples(g64, ArrayXd(ArrayXd::Constant(g64.n(), 2.5)));
    StripField u = extend_neumann(c, d);
    CHECK((u.values.array().real() - 2.5).abs().maxCoeff() < 1e-13);

    // Single mode matches the symbol.
    const int k = 3;
    SpectralField ck = SpectralField::from_samples(g64, ArrayXd((k * pts).cos()));
    StripField uk = extend_neumann(ck, d);
    for (int jb = 0; jb < d.size(); jb += 9) {
        const double beta = d.nodes()[jb];
        const double expect = std::cosh((beta + h) * k) / std::cosh(h * k);
        CHECK(std::abs(uk.values(0, jb).real() - expect * std::cos(0.0)) < 1e-12);
        CHECK(std::abs(uk.values(5, jb).real() - expect * std::cos(k * pts[5])) < 1e-12);
    }

    // Bottom Neumann condition via Richardson finite differences.
    SpectralField f = random_field(g64, 7, 12);
    StripField uf = extend_neumann(f, d);
    const double delta = 2e-4;
    auto fd = [&](double dlt) {
        return (-3.0 * uf.eval(1.0, -h).real() + 4.0 * uf.eval(1.0, -h + dlt).real() -
                uf.eval(1.0, -h + 2.0 * dlt).real()) /
               (2.0 * dlt);
    };
    const double rich = (4.0 * fd(delta) - fd(2.0 * delta)) / 3.0;
    CHECK(std::abs(rich) < 1e-10);
    CHECK(std::abs(uf.eval_dbeta(1.0, -h)) < 1e-13);

    // Maximum-principle proxy: interior values below the coefficient mass.
    const double mass = uf.trace.coeffs().cwiseAbs().sum();
    CHECK(uf.values.array().abs().maxCoeff() <= mass * (1.0 + 1e-12));
}

TEST_CASE("dirichlet extension") {
    const double h = 0.8;
    DepthGrid d(h);
    ArrayXd pts = g64.points();

    // Constant: the xi -> 0 limit gives c (beta + h)/h.
    SpectralField c = SpectralField::from_samples(g64, ArrayXd(ArrayXd::Constant(g64.n(), 1.7)));
    StripField v = extend_dirichlet(c, d);
    for (int jb = 0; jb < d.size(); jb += 11) {
        const double beta = d.nodes()[jb];
        CHECK(std::abs(v.values(3, jb).real() - 1.7 * (beta + h) / h) < 1e-13);
    }

    // cos(k alpha) at beta = -h/2.
    const int k = 2;
    SpectralField ck = SpectralField::from_samples(g64, ArrayXd((k * pts).cos()));
    StripField vk = extend_dirichlet(ck, d);
    const double expect = std::sinh(h * k / 2.0) / std::sinh(h * k);
    CHECK(std::abs(vk.eval(pts[4], -h / 2.0).real() - expect * std::cos(k * pts[4])) < 1e-12);

    // Bottom trace vanishes for random data.
    SpectralField f = random_field(g64, 8, 12);
    StripField vf = extend_dirichlet(f, d);
    double worst = 0.0;
    for (int i = 0; i < g64.n(); i += 5) worst = std::max(worst, std::abs(vf.eval(pts[i], -h)));
    CHECK(worst < 1e-12);
}

TEST_CASE("infinite-depth consistency of the symbols") {
    // For h = 1000 and modes k >= 1 both symbols are within 1e-10 of e^{beta k}.
    const double h = 1000.0;
    for (int k : {1, 2, 5}) {
        for (double beta : {-0.1, -0.5, -2.0}) {
            CHECK(std::abs(p_neumann(h, k, beta) - std::exp(beta * k)) < 1e-10);
            CHECK(std::abs(p_dirichlet(h, k, beta) - std::exp(beta * k)) < 1e-10);
            CHECK(std::abs(p_neumann(inf, k, beta) - std::exp(beta * k)) == 0.0);
        }
    }
    // No overflow far outside the double range of cosh.
    CHECK(std::isfinite(p_neumann(1.0, 5000.0, -0.5)));
    CHECK(p_neumann(1.0, 5000.0, -0.5) < 1e-300);
}

TEST_CASE("dirichlet-to-neumann maps") {
    const double h = 1.0;
    ArrayXd pts = g64.points();

    // D_N has symbol xi tanh(h xi) (positive on cosine modes).
    for (int k : {1, 4}) {
        SpectralField ck = SpectralField::from_samples(g64, ArrayXd((k * pts).cos()));
        SpectralField dn = dtn_neumann(ck, h);
        ArrayXd expect = k * std::tanh(h * k) * (k * pts).cos();
        CHECK((dn.samples() - expect).abs().maxCoeff() < 1e-12);
    }
    SpectralField c = SpectralField::from_samples(g64, ArrayXd(ArrayXd::Constant(g64.n(), 3.0)));
    CHECK(dtn_neumann(c, h).l2_norm() < 1e-14);

    // Conjugacy: D_N f equals d_beta of the Neumann extension at 0 and minus
    // the alpha derivative of the conjugate extension at 0 (u_beta = -v_alpha).
    SpectralField f = random_field(g64, 9, 10);
    DepthGrid d(h);
    StripField uf = extend_neumann(f, d);
    SpectralField dn = dtn_neumann(f, h);
    SpectralField conj_trace = harmonic_conjugate(f, h);
    StripField vf = extend_dirichlet(conj_trace, d);
    double worst1 = 0.0, worst2 = 0.0;
    for (int i = 0; i < g64.n(); i += 7) {
        worst1 = std::max(worst1, std::abs(uf.eval_dbeta(pts[i], 0.0).real() - dn.eval_real(pts[i])));
        worst2 = std::max(worst2, std::abs(-vf.eval_dalpha(pts[i], 0.0).real() - dn.eval_real(pts[i])));
    }
    CHECK(worst1 < 1e-9);
    CHECK(worst2 < 1e-9);

    // D_D against a finite-difference slope of the Dirichlet extension.
    SpectralField gd = random_field(g64, 10, 10);
    SpectralField dd = dtn_dirichlet(gd, h);
    StripField vg = extend_dirichlet(gd, d);
    auto slope = [&](double dlt) {
        // second-order one-sided difference at beta = 0
        return (3.0 * vg.eval(2.0, 0.0).real() - 4.0 * vg.eval(2.0, -dlt).real() +
                vg.eval(2.0, -2.0 * dlt).real()) /
               (2.0 * dlt);
    };
    const double err1 = std::abs(slope(2e-3) - dd.eval_real(2.0));
    const double err2 = std::abs(slope(1e-3) - dd.eval_real(2.0));
    CHECK(err2 < 1e-3);
    CHECK(err2 < 0.3 * err1); // O(dbeta^2) convergence
}

TEST_CASE("harmonic conjugate pair satisfies Cauchy-Riemann") {
    const double h = 1.2;
    DepthGrid d(h);
    SpectralField f = random_field(g64, 11, 10);
    SpectralField gtrace = harmonic_conjugate(f, h);
    CHECK((gtrace.samples() + tilbert(f, h).samples()).abs().maxCoeff() < 1e-14);

    StripField u = extend_neumann(f, d);
    StripField v = extend_dirichlet(gtrace, d);
    double worst = 0.0;
    ArrayXd pts = g64.points();
    for (int i = 0; i < g64.n(); i += 9) {
        for (int jb = 0; jb < d.size(); jb += 13) {
            const double a = pts[i], b = d.nodes()[jb];
            worst = std::max(worst, std::abs(u.eval_dalpha(a, b) - v.eval_dbeta(a, b)));
            worst = std::max(worst, std::abs(u.eval_dbeta(a, b) + v.eval_dalpha(a, b)));
        }
    }
    CHECK(worst < 1e-9);

    SpectralField c = SpectralField::from_samples(g64, ArrayXd(ArrayXd::Constant(g64.n(), 5.0)));
    CHECK(harmonic_conjugate(c, h).l2_norm() < 1e-14);
    ArrayXd ck = (3.0 * pts).cos();
    SpectralField c3 = SpectralField::from_samples(g64, ck);
    ArrayXd expect = -std::tanh(3.0 * h) * (3.0 * pts).sin();
    CHECK((harmonic_conjugate(c3, h).samples() - expect).abs().maxCoeff() < 1e-13);
}

TEST_CASE("depth integrals") {
    const double h = 1.5;
    DepthGrid d(h);
    // F == 1 against a unit-mass weight gives h.
    SpectralField one = SpectralField::from_samples(g64, ArrayXd(ArrayXd::Ones(g64.n())));
    StripField F = extend_neumann(one, d);
    ArrayXd mx = ArrayXd::Constant(g64.n(), 1.0 / g64.period());
    CHECK(std::abs(depth_integral(F, mx) - h) < 1e-12);

    // Squared Dirichlet extension of cos(alpha) against the closed form.
    ArrayXd pts = g64.points();
    SpectralField c1 = SpectralField::from_samples(g64, ArrayXd(pts.cos()));
    StripField v = extend_dirichlet(c1, d);
    StripField v2 = v;
    v2.values = v.values.array().square().matrix();
    // int cos^2 dx = L/2; int_0^h sinh^2(u) du = (sinh(2h)/2 - h)/2.
    const double expect =
        0.5 * (0.5 * std::sinh(2.0 * h) - h) / (2.0 * std::sinh(h) * std::sinh(h));
    CHECK(std::abs(depth_integral(v2, mx) - expect) < 1e-10);

    // Zero field integrates to zero; moment integral with beta factor.
    StripField z = extend_neumann(SpectralField::zero(g64), d);
    CHECK(depth_integral(z, mx) == 0.0);
    const double mom = moment_integral(F, mx, [](double b) { return b; });
    CHECK(std::abs(mom + h * h / 2.0) < 1e-12);
}

TEST_CASE("parabolic extension ratio") {
    const double h = 1.0;
    DepthGrid d(h, 12, 10);
    CHECK(parabolic_ratio(SpectralField::zero(g64), 0.25, d) == 0.0);

    // Single mode at s = 0: closed form from int p_D(k, beta)^2 dbeta.
    ArrayXd pts = g64.points();
    const int k = 4;
    SpectralField ck = SpectralField::from_samples(g64, ArrayXd((k * pts).cos()));
    QuadRule r = gauss_legendre(200, -h, 0.0);
    double integral = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double pd = std::sinh((r.x[i] + h) * k) / std::sinh(h * k);
        integral += r.w[i] * pd * pd;
    }
    const double expect = std::sqrt(integral) / sobolev_norm_h(ck, SobolevSpace::Hs_h, h, 0.0);
    CHECK(rel_err(parabolic_ratio(ck, 0.0, d), expect) < 1e-6);

    // Stability of the s = 1/4 ratio under refinement (within 10%).
    SpectralField f = random_field(g64, 12, 16);
    const double r1 = parabolic_ratio(f, 0.25, DepthGrid(h, 8, 8));
    const double r2 = parabolic_ratio(f, 0.25, DepthGrid(h, 16, 12));
    CHECK(std::abs(r1 - r2) < 0.1 * std::max(r1, r2));

    // Boundedness across random inputs and resolutions (reported ratio).
    Grid g128(128, g64.period());
    SpectralField f2 = random_field(g128, 13, 32);
    const double r3 = parabolic_ratio(f2, 0.25, DepthGrid(h, 16, 12));
    CHECK(r3 < 10.0 * std::max(r1, 1.0));
}
