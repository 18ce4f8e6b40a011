#include <ww/strip.hpp>

namespace ww {

DepthGrid::DepthGrid(double h, int panels, int nodes_per_panel, double h_eff_if_infinite)
    : h_(h) {
    if (is_infinite_depth(h)) {
        if (!(h_eff_if_infinite > 0.0))
            throw config_error("DepthGrid: infinite depth needs a positive truncation depth");
        h_eff_ = h_eff_if_infinite;
    } else {
        if (!(h > 0.0)) throw config_error("DepthGrid: depth must be positive");
        h_eff_ = h;
    }
    QuadRule r = composite_gauss(geometric_breaks(-h_eff_, 0.0, panels), nodes_per_panel);
    beta_ = std::move(r.x);
    w_ = std::move(r.w);
}

double DepthGrid::tail_bound(double xi_min) const {
    if (!is_infinite_depth(h_)) return 0.0;
    return std::exp(-2.0 * h_eff_ * std::abs(xi_min));
}

// ---- stable symbols ----------------------------------------------------------

double p_neumann(double h, double xi, double beta) {
    const double a = std::abs(xi);
    if (is_infinite_depth(h)) return std::exp(beta * a);
    if (a == 0.0) return 1.0;
    return std::exp(beta * a) * (1.0 + std::exp(-2.0 * (beta + h) * a)) / (1.0 + std::exp(-2.0 * h * a));
}

double p_dirichlet(double h, double xi, double beta) {
    const double a = std::abs(xi);
    if (is_infinite_depth(h)) return std::exp(beta * a);
    if (a == 0.0) return (beta + h) / h;
    return std::exp(beta * a) * (1.0 - std::exp(-2.0 * (beta + h) * a)) /
           (1.0 - std::exp(-2.0 * h * a));
}

double dp_neumann(double h, double xi, double beta) {
    const double a = std::abs(xi);
    if (is_infinite_depth(h)) return a * std::exp(beta * a);
    if (a == 0.0) return 0.0;
    return a * std::exp(beta * a) * (1.0 - std::exp(-2.0 * (beta + h) * a)) /
           (1.0 + std::exp(-2.0 * h * a));
}

double dp_dirichlet(double h, double xi, double beta) {
    const double a = std::abs(xi);
    if (is_infinite_depth(h)) return a * std::exp(beta * a);
    if (a == 0.0) return 1.0 / h;
    return a * std::exp(beta * a) * (1.0 + std::exp(-2.0 * (beta + h) * a)) /
           (1.0 - std::exp(-2.0 * h * a));
}

// ---- strip fields ------------------------------------------------------------

namespace {

StripField extend(const SpectralField& trace, const DepthGrid& depth, BottomCondition bc) {
    const Grid& g = trace.grid();
    const double h = depth.h();
    StripField F{g, depth, bc, trace, Eigen::MatrixXcd(g.n(), depth.size())};
    for (int jb = 0; jb < depth.size(); ++jb) {
        const double beta = depth.nodes()[jb];
        VectorXcd col(g.n());
        for (int j = 0; j < g.n(); ++j) {
            const double p = bc == BottomCondition::neumann ? p_neumann(h, g.xi(j), beta)
                                                            : p_dirichlet(h, g.xi(j), beta);
            col[j] = p * trace.coeffs()[j];
        }
        F.values.col(jb) = dft_inverse(col).matrix();
    }
    return F;
}

complex eval_with(const StripField& F, double alpha, double beta,
                  const std::function<complex(double)>& factor) {
    const Grid& g = F.surface;
    const int n = g.n();
    const double kap = g.xi_fundamental();
    const complex rot = std::polar(1.0, kap * alpha);
    complex acc = factor(0.0) * F.trace.coeffs()[0];
    complex ep = 1.0;
    (void)beta;
    for (int k = 1; k < n / 2; ++k) {
        ep *= rot;
        acc += factor(kap * k) * F.trace.coeffs()[k] * ep +
               factor(-kap * k) * F.trace.coeffs()[n - k] * std::conj(ep);
    }
    ep *= rot;
    acc += factor(kap * (n / 2)) * F.trace.coeffs()[n / 2] * ep;
    return acc;
}

} // namespace

complex StripField::eval(double alpha, double beta) const {
    const double h = depth.h();
    const BottomCondition bc = bottom;
    return eval_with(*this, alpha, beta, [h, beta, bc](double xi) -> complex {
        return bc == BottomCondition::neumann ? p_neumann(h, xi, beta) : p_dirichlet(h, xi, beta);
    });
}

complex StripField::eval_dalpha(double alpha, double beta) const {
    const double h = depth.h();
    const BottomCondition bc = bottom;
    return eval_with(*this, alpha, beta, [h, beta, bc](double xi) -> complex {
        const double p = bc == BottomCondition::neumann ? p_neumann(h, xi, beta) : p_dirichlet(h, xi, beta);
        return complex(0.0, xi) * p;
    });
}

complex StripField::eval_dbeta(double alpha, double beta) const {
    const double h = depth.h();
    const BottomCondition bc = bottom;
    return eval_with(*this, alpha, beta, [h, beta, bc](double xi) -> complex {
        return bc == BottomCondition::neumann ? dp_neumann(h, xi, beta) : dp_dirichlet(h, xi, beta);
    });
}

StripField extend_neumann(const SpectralField& f, const DepthGrid& depth) {
    return extend(f, depth, BottomCondition::neumann);
}

StripField extend_dirichlet(const SpectralField& g, const DepthGrid& depth) {
    return extend(g, depth, BottomCondition::dirichlet);
}

SpectralField dtn_neumann(const SpectralField& f, double h) {
    return tilbert(f.derivative(), h);
}

SpectralField dtn_dirichlet(const SpectralField& g, double h) {
    SpectralField dg = g.derivative(); // kills the mean, T_h^{-1} is safe
    return -1.0 * tilbert_inv(dg, h);
}

SpectralField harmonic_conjugate(const SpectralField& f, double h) {
    return -1.0 * tilbert(f, h);
}

double depth_integral(const StripField& F, const ArrayXd& weight_on_surface) {
    const Grid& g = F.surface;
    if (weight_on_surface.size() != g.n()) throw config_error("depth_integral: weight size mismatch");
    double acc = 0.0;
    for (int jb = 0; jb < F.depth.size(); ++jb) {
        const double wb = F.depth.weights()[jb];
        double sa = 0.0;
        for (int ia = 0; ia < g.n(); ++ia) sa += weight_on_surface[ia] * F.values(ia, jb).real();
        acc += wb * sa;
    }
    return acc * g.spacing();
}

double moment_integral(const StripField& F, const ArrayXd& weight_on_surface,
                       const std::function<double(double)>& beta_factor) {
    const Grid& g = F.surface;
    double acc = 0.0;
    for (int jb = 0; jb < F.depth.size(); ++jb) {
        const double wb = F.depth.weights()[jb] * beta_factor(F.depth.nodes()[jb]);
        double sa = 0.0;
        for (int ia = 0; ia < g.n(); ++ia) sa += weight_on_surface[ia] * F.values(ia, jb).real();
        acc += wb * sa;
    }
    return acc * g.spacing();
}

double parabolic_ratio(const SpectralField& g, double s, const DepthGrid& depth) {
    if (!(s < 0.5)) throw config_error("parabolic_ratio: requires s < 1/2");
    const double gnorm = sobolev_norm_h(g, SobolevSpace::Hs_h, depth.h(), s);
    if (gnorm == 0.0) return 0.0;
    StripField v = extend_dirichlet(g, depth);
    double acc = 0.0;
    for (int jb = 0; jb < depth.size(); ++jb) {
        const double beta = depth.nodes()[jb];
        const double supval = v.values.col(jb).cwiseAbs().maxCoeff();
        acc += depth.weights()[jb] * std::pow(std::abs(beta), -2.0 * s) * supval * supval;
    }
    return std::sqrt(acc) / gnorm;
}

} // namespace ww
