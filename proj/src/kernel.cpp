#include <ww/kernel.hpp>

#include <cmath>
#include <ww/multipliers.hpp>
#include <ww/quadrature.hpp>

namespace ww {

namespace {

// log(sinh(u)/u), even, finite everywhere.
double log_sinhc(double u) {
    const double a = std::abs(u);
    if (a < 1e-4) return std::log1p(a * a / 6.0 * (1.0 + a * a / 20.0));
    if (a > 30.0) return a - std::log(2.0 * a) + std::log1p(-std::exp(-2.0 * a));
    return std::log(std::sinh(a) / a);
}

} // namespace

double symbol_b(double xi, double zeta) {
    // b = sinhc(xi+zeta) sinhc(xi-zeta) / (2 sinhc(2 xi) sinhc(2 zeta)) > 0.
    const double lg = log_sinhc(xi + zeta) + log_sinhc(xi - zeta) - std::log(2.0) -
                      log_sinhc(2.0 * xi) - log_sinhc(2.0 * zeta);
    return std::exp(lg);
}

double symbol_bh(double xi, double zeta, double h) {
    if (is_infinite_depth(h)) return 0.0;
    return symbol_b(h * xi, h * zeta);
}

// --- axis extraction ------------------------------------------------------------
//
// Along each frequency axis b decays slowly:
//   b = a(zeta)/|xi| + a3(zeta)/|xi|^3 + a5(zeta)/|xi|^5 + O(|xi|^{-7}),
// a(zeta) = zeta / sinh(2 zeta).  Subtracting those orders against
// (1+xi^2)^{-1/2}, ^{-3/2}, ^{-5/2} (transforms K0/pi, |x|K1/pi,
// x^2 K2/(3 pi)) leaves |xi|^{-7} tails and a table accurate to ~1e-14,
// enough to certify positivity in the far corner where K itself is tiny.

double kernel_axis_a(double x) {
    const double c = std::cosh(pi * x / 4.0);
    return (pi / 16.0) / (c * c);
}

double kernel_axis_s(double x) { return std::cyl_bessel_k(0.0, std::abs(x)) / pi; }

namespace {

double axis_coeff(double u) {
    const double a = std::abs(u);
    if (a < 1e-8) return 0.5;
    if (a > 350.0) return 0.0;
    return a / std::sinh(2.0 * a);
}

double axis_coeff3(double u) { return axis_coeff(u) * (u * u + 0.5); }
double axis_coeff5(double u) {
    const double u2 = u * u;
    return axis_coeff(u) * (u2 * u2 + 1.5 * u2 + 0.375);
}

double decay_s1(double u) { return 1.0 / std::sqrt(1.0 + u * u); }
double decay_s3(double u) { return std::pow(1.0 + u * u, -1.5); }
double decay_s5(double u) { return std::pow(1.0 + u * u, -2.5); }

// invFT of s3: |x| K1(|x|) / pi (finite at 0).
double kernel_axis_s3(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-12) return 1.0 / pi;
    return ax * std::cyl_bessel_k(1.0, ax) / pi;
}

// invFT of a(zeta) zeta^2 + a(zeta)/2 = -A''(x) + A(x)/2.
double kernel_axis_a3(double x) {
    const double u = pi * x / 4.0;
    const double ch = std::cosh(u);
    const double sech2 = 1.0 / (ch * ch);
    const double t = std::tanh(u);
    const double app =
        (pi / 16.0) * std::pow(pi / 4.0, 2) * (4.0 * sech2 * t * t - 2.0 * sech2 * sech2);
    return -app + 0.5 * kernel_axis_a(x);
}

// invFT of s5: x^2 K2(|x|) / (3 pi).
double kernel_axis_s5(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-12) return 2.0 / (3.0 * pi); // limit of x^2 K2 = 2
    return ax * ax * std::cyl_bessel_k(2.0, ax) / (3.0 * pi);
}

// invFT of a (zeta^4 + 1.5 zeta^2 + 0.375) = A'''' - 1.5 A'' + 0.375 A.
double kernel_axis_a5(double x) {
    const double u = pi * x / 4.0;
    const double ch = std::cosh(u);
    const double sech2 = 1.0 / (ch * ch);
    const double t = std::tanh(u);
    const double c2 = std::pow(pi / 4.0, 2);
    const double app = (pi / 16.0) * c2 * (4.0 * sech2 * t * t - 2.0 * sech2 * sech2);
    const double apppp = (pi / 16.0) * c2 * c2 *
                         (16.0 * sech2 * t * t * t * t - 88.0 * sech2 * sech2 * t * t +
                          16.0 * sech2 * sech2 * sech2);
    return apppp - 1.5 * app + 0.375 * kernel_axis_a(x);
}

double b_regular(double xi, double zeta) {
    return symbol_b(xi, zeta) - axis_coeff(zeta) * decay_s1(xi) - axis_coeff(xi) * decay_s1(zeta) -
           axis_coeff3(zeta) * decay_s3(xi) - axis_coeff3(xi) * decay_s3(zeta) -
           axis_coeff5(zeta) * decay_s5(xi) - axis_coeff5(xi) * decay_s5(zeta);
}

double axis_parts(double x1, double x2) {
    return kernel_axis_a(x2) * kernel_axis_s(x1) + kernel_axis_a(x1) * kernel_axis_s(x2) +
           kernel_axis_a3(x2) * kernel_axis_s3(x1) + kernel_axis_a3(x1) * kernel_axis_s3(x2) +
           kernel_axis_a5(x2) * kernel_axis_s5(x1) + kernel_axis_a5(x1) * kernel_axis_s5(x2);
}

QuadRule frequency_rule(const KernelTableParams& p) {
    std::vector<double> breaks;
    for (double b = 0.0; b < p.freq_cutoff - 1e-12; b += p.panel_width) breaks.push_back(b);
    breaks.push_back(p.freq_cutoff);
    return composite_gauss(breaks, p.nodes_per_panel);
}

// K_reg on an arbitrary set of abscissae via the separable quadrature
// K_reg(x1,x2) = (1/pi^2) c(x1)^T B c(x2).
Eigen::MatrixXd kreg_on(const std::vector<double>& xs, const KernelTableParams& p) {
    QuadRule freq = frequency_rule(p);
    const int nq = static_cast<int>(freq.x.size());
    const int nx = static_cast<int>(xs.size());
    Eigen::MatrixXd B(nq, nq);
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nq; ++j)
            B(i, j) = freq.w[i] * freq.w[j] * b_regular(freq.x[i], freq.x[j]);
    Eigen::MatrixXd C(nq, nx);
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nq; ++i) C(i, j) = std::cos(xs[static_cast<std::size_t>(j)] * freq.x[i]);
    return (C.transpose() * (B * C)) / (pi * pi);
}

} // namespace

KernelTable kernel_table(const KernelTableParams& params) {
    KernelTable table;
    table.params = params;
    for (double x = params.x_min; x <= params.x_max + 1e-12; x += params.dx)
        table.x.push_back(x);
    const int nx = static_cast<int>(table.x.size());
    table.K.resize(nx, nx);

    if (params.method == KernelMethod::line_integral) {
        for (int i = 0; i < nx; ++i) {
            for (int j = i; j < nx; ++j) {
                const double v = kernel_value_line(table.x[static_cast<std::size_t>(i)],
                                                   table.x[static_cast<std::size_t>(j)]);
                table.K(i, j) = v;
                table.K(j, i) = v;
            }
        }
        table.tail_bound = 0.0;
        return table;
    }

    Eigen::MatrixXd Kreg = kreg_on(table.x, params);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
            table.K(i, j) = Kreg(i, j) + axis_parts(table.x[static_cast<std::size_t>(i)],
                                                    table.x[static_cast<std::size_t>(j)]);

    // Dominated-tail estimate of the dropped |xi| > cutoff mass.
    QuadRule freq = frequency_rule(params);
    double edge = 0.0;
    for (std::size_t j = 0; j < freq.x.size(); ++j)
        edge += freq.w[j] * std::abs(b_regular(params.freq_cutoff, freq.x[j]));
    table.tail_bound = 2.0 * edge * params.freq_cutoff / 4.0 / (pi * pi);
    return table;
}

// --- line-integral route ----------------------------------------------------------
//
// In rotated frequencies p = xi + zeta, q = zeta - xi the symbol factors as
// b = -C1 [p/q - q/p]/4, C1 = coth(2 xi) csch(2 zeta) - csch(2 xi) coth(2 zeta),
// which turns K into two line integrals along the +-45 degree diagonals of
// Phi = invFT[C1] = -(1/16)[F G - G F](pi x/4, pi y/4), F = coth, G = tanh:
//   K = -1/4 (T1 - T2),
//   T1 =  1/2 int sgn(A) (Phi_x + Phi_y)(x0 + A, y0 - A) dA,
//   T2 = -1/2 int sgn(B) (Phi_x - Phi_y)(x0 - B, y0 - B) dB,
// coth parts as principal values, csch^2 parts as finite parts.  The
// factorization drops conditionally-convergent boundary pieces, so the
// representation is quantitative in the bulk region (roughly [0.3, 4]^2,
// where it agrees with the Fourier route to ~1e-5); it serves as the
// independent cross-check of the table.

namespace {

constexpr double kc = pi / 4.0;
constexpr double kappa = pi / 64.0;

double Gt(double t) { return std::tanh(t); }
double Gp(double t) {
    const double ch = std::cosh(t);
    return 1.0 / (ch * ch);
}
double Ft(double t) { return 1.0 / std::tanh(t); }
double Fp(double t) {
    const double sh = std::sinh(t);
    return -1.0 / (sh * sh);
}

double phi_sum(double u, double v) {
    return -kappa * (Fp(u) * Gt(v) - Gp(u) * Ft(v) + Ft(u) * Gp(v) - Gt(u) * Fp(v));
}
double phi_diff(double u, double v) {
    return -kappa * (Fp(u) * Gt(v) - Gp(u) * Ft(v) - Ft(u) * Gp(v) + Gt(u) * Fp(v));
}

struct FpPoint {
    double s;
    std::function<double(double)> even_c; // coefficient of csch^2(kc (s - s*))
};

double fp_line_integral(const std::function<double(double)>& f, double lo, double hi,
                        std::vector<FpPoint> pts, std::vector<double> breaks) {
    std::sort(pts.begin(), pts.end(), [](const FpPoint& a, const FpPoint& b) { return a.s < b.s; });
    double rho = 0.25;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        rho = std::min(rho, (pts[i + 1].s - pts[i].s) / 3.0);
    for (const FpPoint& p : pts)
        for (double b : breaks)
            if (std::abs(b - p.s) > 1e-13) rho = std::min(rho, std::abs(b - p.s) / 2.0);

    double acc = 0.0;
    std::vector<double> edges{lo, hi};
    for (double b : breaks) edges.push_back(b);
    for (const FpPoint& p : pts) {
        edges.push_back(p.s - rho);
        edges.push_back(p.s + rho);
        // Paired window: the integrand is smooth after pairing; panels are
        // NOT refined toward zero, which would only feed catastrophic
        // cancellation of the csch^2 terms.
        QuadRule r = composite_gauss({0.0, rho / 4.0, rho}, 24);
        const double e0 = p.even_c(p.s);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const double t = r.x[i];
            const double sh = std::sinh(kc * t);
            const double csch2 = 1.0 / (sh * sh);
            acc += r.w[i] * (f(p.s + t) + f(p.s - t) - 2.0 * e0 * csch2);
        }
        acc += -2.0 * e0 / (kc * std::tanh(kc * rho));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        bool inside_pair = false;
        for (const FpPoint& p : pts)
            if (a >= p.s - rho - 1e-13 && b <= p.s + rho + 1e-13) inside_pair = true;
        if (inside_pair) continue;
        bool left_sing = false, right_sing = false;
        for (const FpPoint& p : pts) {
            if (std::abs(a - (p.s + rho)) < 1e-12) left_sing = true;
            if (std::abs(b - (p.s - rho)) < 1e-12) right_sing = true;
        }
        std::vector<double> br;
        if (left_sing && !right_sing) {
            std::vector<double> tmp = geometric_breaks(-b, -a, 5);
            br.resize(tmp.size());
            for (std::size_t k = 0; k < tmp.size(); ++k) br[k] = -tmp[tmp.size() - 1 - k];
        } else {
            br = geometric_breaks(a, b, 5);
        }
        QuadRule r = composite_gauss(br, 16);
        for (std::size_t k = 0; k < r.x.size(); ++k) acc += r.w[k] * f(r.x[k]);
    }
    return acc;
}

} // namespace

double kernel_value_line(double x1, double x2) {
    const double x0 = x1, y0 = x2;
    const double span = std::abs(x0) + std::abs(y0) + 30.0 / (2.0 * kc);

    auto f1 = [&](double A) {
        const double sg = A >= 0.0 ? 1.0 : -1.0;
        return sg * phi_sum(kc * (x0 + A), kc * (y0 - A));
    };
    std::vector<FpPoint> p1;
    p1.push_back({-x0, [&](double A) {
                      const double sg = A >= 0.0 ? 1.0 : -1.0;
                      return sg * kappa * Gt(kc * (y0 - A));
                  }});
    p1.push_back({y0, [&](double A) {
                      const double sg = A >= 0.0 ? 1.0 : -1.0;
                      return -sg * kappa * Gt(kc * (x0 + A));
                  }});
    const double T1 = 0.5 * fp_line_integral(f1, -span, span, std::move(p1), {0.0});

    auto f2 = [&](double B) {
        const double sg = B >= 0.0 ? 1.0 : -1.0;
        return sg * phi_diff(kc * (x0 - B), kc * (y0 - B));
    };
    std::vector<FpPoint> p2;
    if (std::abs(x0 - y0) < 1e-12) {
        // Merged diagonal point: the even parts cancel, pure principal value.
        p2.push_back({x0, [](double) { return 0.0; }});
    } else {
        p2.push_back({x0, [&](double B) {
                          const double sg = B >= 0.0 ? 1.0 : -1.0;
                          return sg * kappa * Gt(kc * (y0 - B));
                      }});
        p2.push_back({y0, [&](double B) {
                          const double sg = B >= 0.0 ? 1.0 : -1.0;
                          return sg * kappa * Gt(kc * (x0 - B));
                      }});
    }
    const double T2 = -0.5 * fp_line_integral(f2, -span, span, std::move(p2), {0.0});

    return -0.25 * (T1 - T2);
}

double kernel_mass(const KernelTable& table) {
    // 4 iint_{[0,X]^2} K with panels refined toward the log axes.  The true
    // kernel decays like e^{-pi x/2} away from the axes, so the dropped
    // exterior is O(e^{-pi X/2}), well below the 1e-3 target at X >= 6.
    const double X = table.params.x_max;
    std::vector<double> breaks{0.0, 0.01, 0.05, 0.2, 0.5, 1.0, 2.0, 4.0, X};
    QuadRule r = composite_gauss(breaks, 12);
    const int nq = static_cast<int>(r.x.size());

    KernelTableParams fp = table.params;
    fp.method = KernelMethod::fourier_inversion;
    Eigen::MatrixXd Kq = kreg_on(r.x, fp);
    double mass = 0.0;
    for (int i = 0; i < nq; ++i)
        for (int j = 0; j < nq; ++j)
            mass += r.w[i] * r.w[j] * (Kq(i, j) + axis_parts(r.x[static_cast<std::size_t>(i)],
                                                             r.x[static_cast<std::size_t>(j)]));
    return 4.0 * mass;
}

PositivityReport positivity_scan(const KernelTable& table) {
    PositivityReport rep;
    int bi = 0, bj = 0;
    rep.min_value = table.K(0, 0);
    for (int i = 0; i < table.size(); ++i)
        for (int j = 0; j < table.size(); ++j)
            if (table.K(i, j) < rep.min_value) {
                rep.min_value = table.K(i, j);
                bi = i;
                bj = j;
            }
    rep.min_x1 = table.x[static_cast<std::size_t>(bi)];
    rep.min_x2 = table.x[static_cast<std::size_t>(bj)];
    rep.positive = rep.min_value > 0.0;
    return rep;
}

DirectionalSignReport directional_signs(const KernelTable& table) {
    DirectionalSignReport rep;
    const int n = table.size();
    const double dx = table.params.dx;
    // Differences below the table's absolute accuracy carry no sign
    // information; the scan skips them (the reported margin).
    rep.fd_margin = 1e-9 / dx;
    for (int i = 1; i + 1 < n; ++i) {
        for (int j = i + 1; j + 1 < n; ++j) {
            const double dy = (table.K(i, j + 1) - table.K(i, j - 1)) / (2.0 * dx);
            const double dxv = (table.K(i + 1, j) - table.K(i - 1, j)) / (2.0 * dx);
            const double v = dy - dxv;
            if (v < -rep.fd_margin) {
                ++rep.violations_minus;
                rep.worst_minus = std::min(rep.worst_minus, v);
            }
        }
    }
    for (int i = 1; i + 1 < n; ++i) {
        const double v = (table.K(i + 1, i + 1) - table.K(i - 1, i - 1)) / (2.0 * dx);
        if (v > rep.fd_margin) {
            ++rep.violations_plus;
            rep.worst_plus = std::max(rep.worst_plus, v);
        }
    }
    return rep;
}

double diagonal_pv_integral(double x0) {
    if (!(x0 > 0.0)) throw config_error("diagonal_pv_integral: x0 must be positive");
    auto sech2 = [](double u) {
        const double c = std::cosh(u);
        return 1.0 / (c * c);
    };
    auto csch2 = [](double u) {
        const double s = std::sinh(u);
        return 1.0 / (s * s);
    };

    // Smooth part: - int csch^2(2 x0 - x) sech^2(x) dx over (-inf, x0].
    auto smooth = [&](double x) { return -csch2(2.0 * x0 - x) * sech2(x); };
    const double xtail = -(12.0 + x0);
    double acc = 0.0;
    {
        std::vector<double> pts{xtail, -1.0, 0.0, x0};
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
            QuadRule r = composite_gauss(geometric_breaks(pts[p], pts[p + 1], 5), 16);
            for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * smooth(r.x[i]);
        }
    }

    // Finite part of int sech^2(2 x0 - x) csch^2(x) dx at x = 0: pair the
    // two sides and add the analytic boundary term -2 phi(0) coth(rho).
    auto phi = [&](double x) { return sech2(2.0 * x0 - x); };
    const double rho = std::min(1.0, x0) / 2.0;
    {
        QuadRule r = composite_gauss({0.0, rho / 8.0, rho}, 24);
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            const double x = r.x[i];
            acc += r.w[i] * (phi(x) + phi(-x) - 2.0 * phi(0.0)) * csch2(x);
        }
        acc += -2.0 * phi(0.0) / std::tanh(rho);
    }
    // Regular remainder of the finite-part piece.
    {
        std::vector<double> pts{xtail, -1.0, -rho};
        for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
            QuadRule r = composite_gauss(geometric_breaks(pts[p], pts[p + 1], 5), 16);
            for (std::size_t i = 0; i < r.x.size(); ++i)
                acc += r.w[i] * phi(r.x[i]) * csch2(r.x[i]);
        }
        QuadRule r = composite_gauss(geometric_breaks(rho, x0, 6), 16);
        for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * phi(r.x[i]) * csch2(r.x[i]);
    }
    return acc;
}

SplitReport split_mass(const KernelTable& table) {
    SplitReport rep;
    const int n = table.size();
    double best_mass = 0.0;
    for (double sigma = 0.2; sigma <= 1.6 + 1e-9; sigma += 0.05) {
        double log_amp2 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (table.K(i, j) <= 0.0) return rep; // positivity is a precondition
                const double xi = table.x[static_cast<std::size_t>(i)];
                const double xj = table.x[static_cast<std::size_t>(j)];
                const double l = std::log(table.K(i, j)) + (xi * xi + xj * xj) / (sigma * sigma);
                log_amp2 = std::min(log_amp2, l);
            }
        const double amp = 0.98 * std::exp(0.5 * log_amp2);
        const double mass = std::pow(amp * sigma * std::sqrt(pi), 2);
        if (mass > best_mass) {
            best_mass = mass;
            rep.amp = amp;
            rep.sigma = sigma;
        }
    }
    if (best_mass <= 0.0) return rep;
    rep.found = true;
    rep.c = 0.5 - best_mass;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double xi = table.x[static_cast<std::size_t>(i)];
            const double xj = table.x[static_cast<std::size_t>(j)];
            const double l = rep.amp * rep.amp *
                             std::exp(-(xi * xi + xj * xj) / (rep.sigma * rep.sigma));
            margin = std::min(margin, table.K(i, j) - l);
        }
    rep.margin = margin;
    if (margin < 0.0) rep.found = false;
    return rep;
}

std::vector<QmBoundSample> qm_lower_bound_check(const std::vector<SpectralField>& etas,
                                                const Weight& w, double h, double c) {
    std::vector<QmBoundSample> out;
    const Grid& g = w.grid();
    for (const SpectralField& eta : etas) {
        QmBoundSample s;
        SpectralField B = bilinear_multiplier(
            [h](double xi, double zeta) { return symbol_bh(xi, zeta, h); }, eta, eta);
        s.lhs = w.integral_mx(B.samples());
        ArrayXd eta2 = eta.samples().square();
        SpectralField f = SpectralField::from_samples(g, eta2);
        SpectralField mxf = SpectralField::from_samples(g, w.mx());
        VectorXcd corr(g.n());
        for (int j = 0; j < g.n(); ++j) corr[j] = f.coeffs()[j] * std::conj(mxf.coeffs()[j]);
        ArrayXd r = SpectralField::from_coeffs(g, std::move(corr), false).csamples().real() *
                    g.period();
        s.rhs = -c * r.maxCoeff();
        s.slack = s.lhs - s.rhs;
        s.ok = s.slack >= -1e-12;
        out.push_back(s);
    }
    return out;
}

} // namespace ww
