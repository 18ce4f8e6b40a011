#include <ww/solver.hpp>

#include <sstream>

namespace ww {

namespace {

// Samples on a factor-2 refined grid (exact continuation of the band).
ArrayXcd fine_csamples(const SpectralField& f) {
    const int n = f.n();
    const int m = 2 * n;
    VectorXcd c = VectorXcd::Zero(m);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        c[jj] = f.coeffs()[j];
    }
    return dft_inverse(c);
}

SpectralField from_fine_csamples(const Grid& g, const ArrayXcd& fine, bool realness) {
    const int n = g.n();
    const int m = 2 * n;
    VectorXcd c = dft_forward(fine);
    VectorXcd out(n);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        out[j] = c[jj];
    }
    return SpectralField::from_coeffs(g, std::move(out), realness);
}

// Quotient computed pointwise on the refined grid, then band-truncated.
SpectralField field_div(const SpectralField& num, const SpectralField& den, bool realness) {
    ArrayXcd a = fine_csamples(num);
    ArrayXcd b = fine_csamples(den);
    return from_fine_csamples(num.grid(), a / b, realness);
}

SpectralField tilbert_c(const SpectralField& u, double h) {
    return combine(tilbert(real_part(u), h), tilbert(imag_part(u), h));
}

SpectralField one_plus(const SpectralField& f) {
    VectorXcd c = f.coeffs();
    c[0] += 1.0;
    return SpectralField::from_coeffs(f.grid(), std::move(c), f.is_real());
}

SpectralField maybe_dealias(const SpectralField& f, const SolverConfig& cfg) {
    return cfg.dealias_products ? dealias(f) : f;
}

} // namespace

void HoloState::validate(double holo_tol) const {
    if (!W.coeffs().allFinite() || !Q.coeffs().allFinite())
        throw instability_error("state: non-finite coefficients");
    const double scaleW = std::max(W.l2_norm(), 1e-300);
    const double scaleQ = std::max(Q.l2_norm(), 1e-300);
    if (std::abs(imag_part(W).mean()) > 1e-8 * scaleW ||
        std::abs(imag_part(Q).mean()) > 1e-8 * scaleQ)
        throw instability_error("state: Im W or Im Q acquired a mean");
    if (holomorphy_residual(W, h) > holo_tol || holomorphy_residual(Q, h) > holo_tol)
        throw instability_error("state: holomorphy residual above tolerance");
    SpectralField rew_a = real_part(W.derivative());
    if ((1.0 + rew_a.samples().minCoeff()) <= 0.0)
        throw instability_error("state: 1 + Re W_alpha reached zero (map degenerate)");
}

SpectralField gauge_fix(const SpectralField& F_raw, const HoloState& s, double alpha0) {
    SpectralField wa = s.W.derivative();
    const double imwa = imag_part(wa).eval_real(alpha0);
    const double rewa = real_part(wa).eval_real(alpha0);
    const double im_f = imag_part(F_raw).eval_real(alpha0);
    const double re_f = real_part(F_raw).eval_real(alpha0);
    const double target = im_f * imwa / (1.0 + rewa);
    SpectralField F = F_raw;
    F.set_mode(0, F.coeff_mode(0) + complex(target - re_f, 0.0));
    return F;
}

AuxFields aux_fields(const HoloState& s, const SolverConfig& cfg) {
    SpectralField wa = s.W.derivative();
    SpectralField qa = s.Q.derivative();
    SpectralField opw = one_plus(wa);

    SpectralField J = real_part(multiply(opw, conjugate(opw)));
    const double jmin = fine_csamples(J).real().minCoeff();
    if (jmin < 1e-6) {
        std::ostringstream os;
        os << "aux_fields: J reached " << jmin << "; conformal map nearly degenerate";
        throw degenerate_map_error(os.str());
    }

    SpectralField R = maybe_dealias(field_div(qa, opw, false), cfg);
    SpectralField Y = maybe_dealias(field_div(wa, opw, false), cfg);

    // F = P[(Q_alpha - conj Q_alpha)/J]; the input is purely imaginary and
    // the projection drops its imaginary mean (orthogonal to the range).
    ArrayXcd qa_f = fine_csamples(qa);
    ArrayXcd j_f = fine_csamples(J);
    ArrayXcd u_im = 2.0 * qa_f.imag() / j_f.real();
    SpectralField u = from_fine_csamples(s.grid(), u_im.cast<complex>(), true);
    SpectralField F = holomorphic_project(combine(SpectralField::zero(s.grid()), u), s.h,
                                          MeanPolicy::drop_imaginary_mean);
    if (cfg.gauge == GaugeKind::window_point) F = gauge_fix(F, s, cfg.gauge_alpha0);
    F = maybe_dealias(F, cfg);

    AuxFields aux{std::move(J), std::move(R), std::move(Y), std::move(F),
                  SpectralField::zero(s.grid()), jmin};
    aux.b_adv = real_part(aux.F);
    return aux;
}

HoloRhs rhs(const HoloState& s, const SolverConfig& cfg) {
    AuxFields aux = aux_fields(s, cfg);
    SpectralField wa = s.W.derivative();
    SpectralField qa = s.Q.derivative();
    SpectralField opw = one_plus(wa);

    SpectralField W_t = -1.0 * multiply(aux.F, opw);

    // |Q_alpha|^2 / J, then its holomorphic projection.
    ArrayXcd qa_f = fine_csamples(qa);
    ArrayXcd j_f = fine_csamples(aux.J);
    ArrayXcd v = qa_f.abs2() / j_f.real();
    SpectralField vls = from_fine_csamples(s.grid(), v.cast<complex>(), true);
    SpectralField Pv = holomorphic_project(combine(vls, SpectralField::zero(s.grid())), s.h);

    SpectralField Q_t = -1.0 * multiply(aux.F, qa) + s.g * tilbert_c(s.W, s.h) - Pv;

    W_t = holomorphic_project(maybe_dealias(W_t, cfg), s.h, MeanPolicy::drop_imaginary_mean);
    Q_t = holomorphic_project(maybe_dealias(Q_t, cfg), s.h, MeanPolicy::drop_imaginary_mean);
    return {std::move(W_t), std::move(Q_t)};
}

double cfl_dt(const HoloState& s, const SolverConfig& cfg) {
    if (cfg.dt_fixed > 0.0) return cfg.dt_fixed;
    const Grid& g = s.grid();
    const double xi_max = g.xi_max();
    const double omega_max = std::sqrt(s.g * xi_max * std::abs(tanh_h(s.h, xi_max)));
    const double hspeed = is_infinite_depth(s.h) ? g.period() / (2.0 * pi) : s.h;
    double c = std::sqrt(s.g * hspeed);
    AuxFields aux = aux_fields(s, cfg);
    c += aux.b_adv.sup_norm();
    const double dt_adv = g.spacing() / c;
    const double dt_osc = 2.5 / omega_max;
    return cfg.cfl * std::min(dt_adv, dt_osc);
}

namespace {

HoloState axpy(const HoloState& s, double dt, const HoloRhs& k) {
    HoloState out = s;
    out.W = s.W + dt * k.W_t;
    out.Q = s.Q + dt * k.Q_t;
    out.t = s.t + dt;
    return out;
}

void apply_filter(HoloState& s, double strength) {
    if (strength <= 0.0) return;
    const double xim = s.grid().xi_max();
    auto sym = [strength, xim](double xi) {
        return complex(std::exp(-strength * std::pow(std::abs(xi) / xim, 36)));
    };
    s.W = apply_multiplier(s.W, sym);
    s.Q = apply_multiplier(s.Q, sym);
}

} // namespace

HoloState step_rk4(const HoloState& s, double dt, const SolverConfig& cfg) {
    HoloRhs k1 = rhs(s, cfg);
    HoloState s2 = axpy(s, 0.5 * dt, k1);
    HoloRhs k2 = rhs(s2, cfg);
    HoloState s3 = axpy(s, 0.5 * dt, k2);
    HoloRhs k3 = rhs(s3, cfg);
    HoloState s4 = axpy(s, dt, k3);
    HoloRhs k4 = rhs(s4, cfg);

    HoloState out = s;
    out.W = s.W + (dt / 6.0) * (k1.W_t + 2.0 * k2.W_t + 2.0 * k3.W_t + k4.W_t);
    out.Q = s.Q + (dt / 6.0) * (k1.Q_t + 2.0 * k2.Q_t + 2.0 * k3.Q_t + k4.Q_t);
    out.t = s.t + dt;
    apply_filter(out, cfg.filter_strength);
    return out;
}

Trajectory run(const HoloState& s0, const SolverConfig& cfg) {
    Trajectory traj;
    traj.config = cfg;
    double dt = cfl_dt(s0, cfg);
    int n_steps = std::max(1, static_cast<int>(std::ceil(cfg.T / dt - 1e-12)));
    // Uniform snapshot spacing (time quadrature relies on it).
    n_steps = cfg.snap_stride * ((n_steps + cfg.snap_stride - 1) / cfg.snap_stride);
    dt = cfg.T / n_steps;
    traj.dt = dt;

    HoloState s = s0;
    s.validate();
    traj.times.push_back(s.t);
    traj.states.push_back(s);
    for (int i = 1; i <= n_steps; ++i) {
        s = step_rk4(s, dt, cfg);
        if (i % 16 == 0 || i == n_steps) s.validate();
        if (i % cfg.snap_stride == 0 || i == n_steps) {
            traj.times.push_back(s.t);
            traj.states.push_back(s);
        }
    }
    return traj;
}

double energy(const HoloState& s) {
    SpectralField imW = imag_part(s.W);
    SpectralField reWa = real_part(s.W.derivative());

    // g/2 int (Im W)^2 (1 + Re W_alpha) dalpha, cubic integrand: use the
    // refined grid where the band-3N/2 product is integrated exactly.
    ArrayXcd imw_f = fine_csamples(imW);
    ArrayXcd rewa_f = fine_csamples(reWa);
    ArrayXd integrand = imw_f.real().square() * (1.0 + rewa_f.real());
    const double pot = 0.5 * s.g * integrand.mean() * s.grid().period();

    SpectralField qa = s.Q.derivative();
    SpectralField reQ = real_part(s.Q);
    SpectralField imQ = imag_part(s.Q);
    const double term1 = inner_l2(tilbert(reQ, s.h), real_part(qa));
    const double term2 = inner_l2(imQ, tilbert_inv(imag_part(qa), s.h));
    return pot - 0.25 * (term1 + term2);
}

double momentum(const HoloState& s) {
    return inner_l2(imag_part(s.W), real_part(s.Q.derivative()));
}

HoloState to_holomorphic(const SpectralField& eta, const SpectralField& psi, double g, double h,
                         MapReport* report) {
    ConformalMap map = build_from_surface(eta, h);
    if (report) *report = map.report();
    const Grid& gr = eta.grid();
    ArrayXd pts = gr.points();
    SpectralField reW = real_part(map.W());
    ArrayXd psis(gr.n());
    for (int i = 0; i < gr.n(); ++i) psis[i] = psi.eval_real(pts[i] + reW.eval_real(pts[i]));
    SpectralField psit = SpectralField::from_samples(gr, psis);
    SpectralField Q = combine(psit, -1.0 * tilbert(psit, map.h()));
    HoloState s{map.W(), std::move(Q), 0.0, g, map.h()};
    s.validate(1e-9);
    return s;
}

HoloState rest_state(const Grid& grid, double g, double h) {
    return {SpectralField::zero(grid, false), SpectralField::zero(grid, false), 0.0, g, h};
}

} // namespace ww
