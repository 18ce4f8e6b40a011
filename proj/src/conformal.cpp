#include <ww/conformal.hpp>

#include <sstream>

namespace ww {

namespace {

// Evaluate the harmonic extension of a real trace at one strip point.
double eval_extension(const SpectralField& trace, double h, double alpha, double beta,
                      bool neumann) {
    const Grid& g = trace.grid();
    const int n = g.n();
    const double kap = g.xi_fundamental();
    const complex rot = std::polar(1.0, kap * alpha);
    double p0 = neumann ? p_neumann(h, 0.0, beta) : p_dirichlet(h, 0.0, beta);
    complex acc = p0 * trace.coeffs()[0];
    complex ep = 1.0;
    for (int k = 1; k < n / 2; ++k) {
        ep *= rot;
        const double xi = kap * k;
        const double p = neumann ? p_neumann(h, xi, beta) : p_dirichlet(h, xi, beta);
        acc += p * (trace.coeffs()[k] * ep + trace.coeffs()[n - k] * std::conj(ep));
    }
    ep *= rot;
    {
        const double xi = kap * (n / 2);
        const double p = neumann ? p_neumann(h, xi, beta) : p_dirichlet(h, xi, beta);
        acc += p * trace.coeffs()[n / 2] * ep;
    }
    return acc.real();
}

} // namespace

ConformalMap::ConformalMap(SpectralField W, double h_strip, MapReport report)
    : W_(std::move(W)),
      h_strip_(h_strip),
      report_(report),
      reW_(real_part(W_)),
      imW_(imag_part(W_)),
      dW_(W_.derivative()) {}

complex ConformalMap::W_at(double alpha, double beta) const {
    const double u = eval_extension(reW_, h_strip_, alpha, beta, true);
    const double v = eval_extension(imW_, h_strip_, alpha, beta, false);
    return {u, v};
}

complex ConformalMap::dW_at(double alpha, double beta) const {
    const SpectralField reDW = real_part(dW_);
    const SpectralField imDW = imag_part(dW_);
    const double u = eval_extension(reDW, h_strip_, alpha, beta, true);
    const double v = eval_extension(imDW, h_strip_, alpha, beta, false);
    return {u, v};
}

double ConformalMap::x_of_alpha(double alpha) const { return alpha + reW_.eval_real(alpha); }

double ConformalMap::alpha_of_x(double x) const {
    SpectralField dre = reW_.derivative();
    double a = x;
    for (int it = 0; it < 60; ++it) {
        const double f = a + reW_.eval_real(a) - x;
        const double fp = 1.0 + dre.eval_real(a);
        const double step = f / fp;
        a -= step;
        if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) return a;
    }
    throw locate_error("alpha_of_x: Newton stalled");
}

std::pair<double, double> ConformalMap::locate(double x, double y, double tol) const {
    const complex target(x, y);
    double a = x;
    double b = std::min(0.0, std::max(-h_strip_, y));
    for (int it = 0; it < 80; ++it) {
        const complex z(a, b);
        const complex f = complex(a, b) + W_at(a, b) - target;
        if (std::abs(f) < tol * (1.0 + std::abs(target))) {
            if (b > 1e-9 || b < -h_strip_ - 1e-9) {
                std::ostringstream os;
                os << "locate: point (" << x << ", " << y << ") pulled back outside the strip";
                throw locate_error(os.str());
            }
            return {a, b};
        }
        const complex dz = 1.0 + dW_at(a, b);
        const complex step = f / dz;
        a -= step.real();
        b -= step.imag();
        if (b > 0.0) b = 0.0;
        if (b < -h_strip_) b = -h_strip_;
        (void)z;
    }
    throw locate_error("locate: Newton failed to converge");
}

ConformalMap build_from_surface(const SpectralField& eta, double h, double tol, int max_iter) {
    const Grid& g = eta.grid();
    const double slope = eta.derivative().sup_norm();
    if (!(slope < 1.0 / 3.0)) {
        std::ostringstream os;
        os << "build_from_surface: sup|eta_x| = " << slope << " >= 1/3";
        throw steepness_error(os.str());
    }

    ArrayXd points = g.points();
    ArrayXd im = eta.samples();
    const double eta_mean = im.mean();
    im -= eta_mean;
    double c0 = eta_mean;

    SpectralField imW = SpectralField::from_samples(g, im);
    SpectralField reW = SpectralField::zero(g);
    double resid = 0.0;
    int iters = 0;
    for (int it = 0; it < max_iter; ++it) {
        ++iters;
        const double h_strip = is_infinite_depth(h) ? h : h + c0;
        reW = -1.0 * tilbert_inv(imW, h_strip, 1e-8);
        ArrayXd re_s = reW.samples();
        ArrayXd resampled(g.n());
        for (int i = 0; i < g.n(); ++i) resampled[i] = eta.eval_real(points[i] + re_s[i]);
        const double mean = resampled.mean();
        resampled -= mean;
        SpectralField imW_new = SpectralField::from_samples(g, resampled);
        resid = (imW_new - imW).sup_norm();
        imW = imW_new;
        c0 = mean;
        if (resid < tol) break;
    }
    if (resid >= tol) {
        std::ostringstream os;
        os << "build_from_surface: fixed point did not reach tol " << tol << " in " << max_iter
           << " iterations";
        throw divergence_error(os.str(), resid);
    }

    const double h_strip = is_infinite_depth(h) ? h : h + c0;
    SpectralField W = combine(reW, imW);
    MapReport rep;
    rep.residual = resid;
    rep.iterations = iters;
    rep.offset = c0;
    rep.max_slope = real_part(W.derivative()).sup_norm();
    if (!(rep.max_slope < 1.0)) throw degenerate_map_error("build_from_surface: |Re W_alpha| >= 1");
    return ConformalMap(std::move(W), h_strip, rep);
}

SpectralField surface_from_map(const ConformalMap& map) {
    const Grid& g = map.grid();
    ArrayXd pts = g.points();
    ArrayXd vals(g.n());
    SpectralField imW = imag_part(map.W());
    for (int i = 0; i < g.n(); ++i) {
        const double a = map.alpha_of_x(pts[i]);
        vals[i] = imW.eval_real(a) + map.report().offset;
    }
    return SpectralField::from_samples(g, vals);
}

double strip_drift(const ConformalMap& map, double alpha0, double beta) {
    const double x0 = map.x_of_alpha(alpha0);
    const complex z = map.Z_at(alpha0, beta);
    const complex dw = map.dW_at(alpha0, beta);
    return z.real() - x0 + beta * dw.imag();
}

complex strip_drift_symbol(double h, double xi, double beta) {
    if (xi == 0.0) return {0.0, 0.0};
    const double m =
        coth_h(h, xi) * (p_neumann(h, xi, beta) - 1.0) - beta * xi * p_dirichlet(h, xi, beta);
    return {0.0, -m};
}

} // namespace ww
