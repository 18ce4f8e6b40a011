#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ww/kernel.hpp>

#include "test_util.hpp"

using namespace ww;
using namespace wwtest;

TEST_CASE("symbol b: exact values, symmetry, scaling, decay") {
    CHECK(symbol_b(0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(symbol_b(1.0, 1.0) == doctest::Approx(1.0 / std::sinh(2.0)).epsilon(1e-13));

    // Real, even in each variable, symmetric.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const double xi = u(rng), zeta = u(rng);
        const double b = symbol_b(xi, zeta);
        CHECK(std::isfinite(b));
        CHECK(b > 0.0);
        CHECK(symbol_b(-xi, zeta) == doctest::Approx(b).epsilon(1e-13));
        CHECK(symbol_b(zeta, xi) == doctest::Approx(b).epsilon(1e-13));
        // Scaling law b^h(xi,zeta) = b(h xi, h zeta).
        const double h = 0.5 + std::abs(u(rng));
        CHECK(rel_err(symbol_bh(xi, zeta, h), symbol_b(h * xi, h * zeta)) < 1e-12);
        // Decay bound |b| <= C (1+|xi|+|zeta|)^{-1} e^{-c min(|xi|,|zeta|)}.
        const double bound =
            3.0 / (1.0 + std::abs(xi) + std::abs(zeta)) *
            std::exp(-std::min(std::abs(xi), std::abs(zeta)));
        CHECK(b <= bound);
    }

    // No overflow at extreme arguments.
    CHECK(std::isfinite(symbol_b(500.0, 499.0)));
    CHECK(symbol_b(5000.0, 2500.0) == 0.0);
    CHECK(symbol_bh(1.0, 1.0, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("symbol b near the axis: coefficient 1/(2|zeta|)") {
    // b(xi, zeta) = (1/(2|zeta|)) (2 xi / sinh 2 xi) + O(|zeta|^{-3}).
    for (double xi : {0.2, 0.7, 1.3}) {
        const double lead = (2.0 * xi / std::sinh(2.0 * xi));
        const double r8 = std::abs(symbol_b(xi, 8.0) - lead / (2.0 * 8.0));
        const double r16 = std::abs(symbol_b(xi, 16.0) - lead / (2.0 * 16.0));
        CHECK(r8 < 1.0 / (8.0 * 8.0 * 8.0));
        CHECK(r16 / r8 < std::pow(8.0 / 16.0, 2.9)); // cubic decay of the remainder
    }
    // Exact axis value b(0, zeta) = tanh(zeta) / (2 zeta).
    for (double z : {0.5, 2.0, 9.0})
        CHECK(rel_err(symbol_b(0.0, z), std::tanh(z) / (2.0 * z)) < 1e-12);
}

namespace {
KernelTable small_table() {
    KernelTableParams p;
    p.x_min = 0.05;
    p.x_max = 6.0;
    p.dx = 0.05;
    return kernel_table(p); // Fourier inversion with two-term axis extraction
}
} // namespace

TEST_CASE("kernel table: cross-method, mass, positivity, decay") {
    KernelTable t = small_table();
    CHECK(t.tail_bound < 1e-6);

    // Cross-method validation set in the bulk, where the line-integral
    // representation is quantitative.
    double worst = 0.0;
    for (double x1 : {0.3, 0.7, 1.0, 1.7, 2.5, 3.4}) {
        for (double x2 : {0.45, 0.9, 1.5, 2.1, 3.0, 3.9}) {
            const int i = static_cast<int>(std::round((x1 - t.params.x_min) / t.params.dx));
            const int j = static_cast<int>(std::round((x2 - t.params.x_min) / t.params.dx));
            worst = std::max(worst, std::abs(kernel_value_line(t.x[static_cast<std::size_t>(i)],
                                                               t.x[static_cast<std::size_t>(j)]) -
                                             t.at(i, j)));
        }
    }
    CHECK(worst < 1e-4);

    // The line route is exactly symmetric in its arguments.
    CHECK(rel_err(kernel_value_line(0.8, 2.3), kernel_value_line(2.3, 0.8)) < 1e-10);

    // Mass 1/2 within 1e-3 (quadrature over the Fourier-route evaluators).
    CHECK(std::abs(kernel_mass(t) - 0.5) < 1e-3);

    // Positivity on the table.
    PositivityReport pos = positivity_scan(t);
    CHECK(pos.positive);
    CHECK(pos.min_value > 0.0);

    // Rapid decay away from the axes.
    const int i5 = static_cast<int>(std::round((5.0 - t.params.x_min) / t.params.dx));
    CHECK(std::abs(t.at(i5, i5)) < 1e-4);

    // Near-axis growth like -ln|x1|.
    const int i1 = static_cast<int>(std::round((1.0 - t.params.x_min) / t.params.dx));
    CHECK(t.at(0, i1) > t.at(2, i1));
    CHECK(t.at(2, i1) > t.at(6, i1));

    // Diagonal samples positive and exponentially small.
    CHECK(t.at(i5, i5) > 0.0);
    CHECK(t.at(i5, i5) < t.at(i1, i1));
}

TEST_CASE("directional derivative signs") {
    KernelTable t = small_table();
    DirectionalSignReport rep = directional_signs(t);
    CHECK(rep.violations_minus == 0);
    CHECK(rep.violations_plus == 0);

    // Spot values: (d_y - d_x) K > 0 at (1,2); (d_y + d_x) K < 0 at (1,1).
    const double dlt = 1e-4;
    const double dminus = (kernel_value_line(1.0, 2.0 + dlt) - kernel_value_line(1.0, 2.0 - dlt) -
                           kernel_value_line(1.0 + dlt, 2.0) + kernel_value_line(1.0 - dlt, 2.0)) /
                          (2.0 * dlt);
    CHECK(dminus > 0.0);
    const double dplus = (kernel_value_line(1.0 + dlt, 1.0 + dlt) -
                          kernel_value_line(1.0 - dlt, 1.0 - dlt)) /
                         (2.0 * dlt);
    CHECK(dplus < 0.0);
}

TEST_CASE("diagonal principal value integral") {
    // Large x0: I(x0) / (-64 e^{-6 x0}) -> 1.
    for (double x0 : {6.0, 7.0, 8.0}) {
        const double ratio = diagonal_pv_integral(x0) / (-64.0 * std::exp(-6.0 * x0));
        CHECK(ratio > 0.95);
        CHECK(ratio < 1.05);
    }
    // Small x0: I(x0) + 2 coth(x0) stays bounded.
    for (double x0 : {0.01, 0.02, 0.05, 0.1}) {
        const double v = diagonal_pv_integral(x0) + 2.0 / std::tanh(x0);
        CHECK(std::abs(v) < 10.0);
    }
    // Negative through the numerically-verified middle range.
    for (double x0 = 0.1; x0 <= 5.0; x0 *= 1.35) CHECK(diagonal_pv_integral(x0) < 0.0);
}

TEST_CASE("mass split") {
    KernelTable t = small_table();
    SplitReport rep = split_mass(t);
    CHECK(rep.found);
    CHECK(rep.c < 0.5);
    CHECK(rep.c > 0.0);
    CHECK(rep.margin >= 0.0);
    // Mass bookkeeping: iint L(x)L(y) = 1/2 - c.
    const double lmass = std::pow(rep.amp * rep.sigma * std::sqrt(pi), 2);
    CHECK(lmass == doctest::Approx(0.5 - rep.c).epsilon(1e-12));
}

TEST_CASE("qm lower bound samples") {
    Grid g(128, 2.0 * pi);
    WeightParams p;
    p.kind = WeightKind::bump;
    p.width = 2.0;
    Weight w(g, p);
    const double c = 0.45;

    std::vector<SpectralField> etas;
    etas.push_back(SpectralField::zero(g));
    ArrayXd pts = g.points();
    etas.push_back(SpectralField::from_samples(g, ArrayXd(pts.cos())));
    // Adversarial: concentrated near frequency 1/h = 1.
    etas.push_back(SpectralField::from_samples(
        g, ArrayXd(pts.cos() + 0.5 * (2.0 * pts).cos() + 0.25 * (3.0 * pts).sin())));

    auto out = qm_lower_bound_check(etas, w, 1.0, c);
    REQUIRE(out.size() == 3);
    CHECK(out[0].lhs == doctest::Approx(0.0));
    CHECK(out[0].ok);
    for (const auto& s : out) {
        CHECK(s.ok);
        CHECK(s.slack >= 0.0);
    }
}
