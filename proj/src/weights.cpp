#include <ww/weights.hpp>

#include <ww/errors.hpp>

namespace ww {

namespace {

double wrapped_dist(double x, double c, double L) {
    double s = x - c;
    s -= L * std::round(s / L);
    return s;
}

} // namespace

Weight::Weight(Grid grid, WeightParams params) : grid_(grid), params_(params) {
    const double L = grid_.period();
    if (params_.center < 0.0) params_.center = 0.5 * L;
    const int n = grid_.n();
    ArrayXd pts = grid_.points();
    mx_.resize(n);
    mxx_.resize(n);

    if (params_.kind == WeightKind::rational) {
        if (!(params_.r > 0.5)) throw weight_error("rational weight: integrability needs r > 1/2");
        if (!(params_.eps > 0.0)) throw weight_error("rational weight: eps must be positive");
        const double e2 = params_.eps * params_.eps, r = params_.r;
        for (int i = 0; i < n; ++i) {
            const double s = wrapped_dist(pts[i], params_.center, L);
            const double base = 1.0 + e2 * s * s;
            mx_[i] = std::pow(base, -r);
            mxx_[i] = -2.0 * r * e2 * s * std::pow(base, -r - 1.0);
        }
    } else {
        const double w = params_.width;
        if (!(w >= 2.0 * grid_.spacing())) throw weight_error("bump weight: width below two cells");
        for (int i = 0; i < n; ++i) {
            const double s = wrapped_dist(pts[i], params_.center, L);
            mx_[i] = std::abs(s) < 0.5 * w ? (1.0 + std::cos(2.0 * pi * s / w)) / w : 0.0;
        }
        // Normalize the samples so the discrete mass is exactly one.
        mx_ /= mx_.sum() * grid_.spacing();
    }
    build_from_mx();
}

Weight::Weight(Grid grid, WeightParams params, const ArrayXd& mx_samples)
    : grid_(grid), params_(params) {
    mx_ = mx_samples;
    mxx_.resize(grid_.n());
    build_from_mx();
}

void Weight::build_from_mx() {
    const double L = grid_.period();
    const int n = grid_.n();
    ArrayXd pts = grid_.points();
    delta_m_ = mx_.sum() * grid_.spacing();

    // Exact antiderivative of the band-limited interpolant: the periodic
    // part integrates mode by mode, the mean becomes a sawtooth.
    SpectralField mxf = SpectralField::from_samples(grid_, mx_);
    VectorXcd pc = VectorXcd::Zero(n);
    for (int j = 1; j < n; ++j) {
        const double xi = grid_.xi(j);
        if (j == n / 2) continue; // odd multiplier kills the Nyquist slot
        pc[j] = mxf.coeffs()[j] / complex(0.0, xi);
    }
    SpectralField mper = SpectralField::from_coeffs(grid_, std::move(pc), true);
    ArrayXd ms = mper.samples();
    m_ = ms - ms[0] + (delta_m_ / L) * pts;

    if (params_.kind == WeightKind::bump) {
        SpectralField mxxf = mxf.derivative();
        mxx_ = mxxf.samples();
    } else if (mxx_.size() != n || mxx_.abs().maxCoeff() == 0.0) {
        mxx_ = mxf.derivative().samples();
    }
}

Weight Weight::lift_to(const Grid& g) const {
    if (g.n() < grid_.n() || g.period() != grid_.period())
        throw config_error("Weight::lift_to: target grid must refine the same period");
    SpectralField mxf = SpectralField::from_samples(grid_, mx_);
    VectorXcd c = VectorXcd::Zero(g.n());
    for (int j = 0; j < grid_.n(); ++j) {
        int k = j <= grid_.n() / 2 ? j : j - grid_.n();
        int jj = k >= 0 ? k : k + g.n();
        c[jj] = mxf.coeffs()[j];
    }
    ArrayXd mx_fine = SpectralField::from_coeffs(g, std::move(c), true).samples();
    return Weight(g, params_, mx_fine);
}

double Weight::m_at(double x) const {
    // Band-limited periodic part plus the sawtooth.
    SpectralField mxf = SpectralField::from_samples(grid_, mx_);
    double acc = (delta_m_ / grid_.period()) * x;
    const int n = grid_.n();
    for (int j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        const double xi = grid_.xi(j);
        const complex cj = mxf.coeffs()[j] / complex(0.0, xi);
        acc += (cj * (std::polar(1.0, xi * x) - 1.0)).real();
    }
    return acc;
}

double Weight::mx_at(double x) const {
    const double L = grid_.period();
    const double s = wrapped_dist(x, params_.center, L);
    if (params_.kind == WeightKind::rational) {
        return std::pow(1.0 + params_.eps * params_.eps * s * s, -params_.r);
    }
    const double w = params_.width;
    return std::abs(s) < 0.5 * w ? (1.0 + std::cos(2.0 * pi * s / w)) / w : 0.0;
}

double Weight::integral_mx(const ArrayXd& f) const {
    return (mx_ * f).sum() * grid_.spacing();
}

double Weight::flux_form(const ArrayXd& f) const { return integral_mx(f) - delta_m_ * f[0]; }

double Weight::density_integral(const ArrayXd& f) const {
    const int n = grid_.n();
    const double L = grid_.period();
    ArrayXd mper = m_ - (delta_m_ / L) * grid_.points();
    double acc = (mper * f).sum() * grid_.spacing();
    // Sawtooth part, integrated against the modes of f.
    SpectralField ff = SpectralField::from_samples(grid_, f);
    complex xint = ff.coeffs()[0] * (L * L / 2.0);
    for (int j = 1; j < n; ++j) {
        if (j == n / 2) continue;
        xint += ff.coeffs()[j] * (L / complex(0.0, grid_.xi(j)));
    }
    acc += (delta_m_ / L) * xint.real();
    return acc;
}

double Weight::mxx_ratio() const {
    double worst = 0.0;
    for (int i = 0; i < grid_.n(); ++i) {
        if (mx_[i] > 1e-14) worst = std::max(worst, std::abs(mxx_[i]) / mx_[i]);
    }
    return worst;
}

double Weight::hypothesis_iii(double h, double eta_sup) const {
    return params_.eps * params_.r * (h + eta_sup);
}

Weight Weight::translated(double dx0) const {
    WeightParams p = params_;
    p.center = std::fmod(p.center + dx0, grid_.period());
    if (p.center < 0.0) p.center += grid_.period();
    return Weight(grid_, p);
}

Weight make_weight(const Grid& grid, WeightParams params) { return Weight(grid, params); }

ArrayXd chi_window(const Grid& grid, double width, double center) {
    WeightParams p;
    p.kind = WeightKind::bump;
    p.width = width;
    p.center = center;
    return Weight(grid, p).mx();
}

} // namespace ww
