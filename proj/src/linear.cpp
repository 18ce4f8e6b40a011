#include <ww/linear.hpp>

namespace ww {

LinearRhs linear_rhs(const LinearState& s) {
    return {tilbert(s.psi.derivative(), s.h), -s.g * s.eta};
}

LinearState step_rk4_linear(const LinearState& s, double dt) {
    auto k1 = linear_rhs(s);
    LinearState s2{s.eta + 0.5 * dt * k1.eta_t, s.psi + 0.5 * dt * k1.psi_t, s.t + 0.5 * dt, s.g, s.h};
    auto k2 = linear_rhs(s2);
    LinearState s3{s.eta + 0.5 * dt * k2.eta_t, s.psi + 0.5 * dt * k2.psi_t, s.t + 0.5 * dt, s.g, s.h};
    auto k3 = linear_rhs(s3);
    LinearState s4{s.eta + dt * k3.eta_t, s.psi + dt * k3.psi_t, s.t + dt, s.g, s.h};
    auto k4 = linear_rhs(s4);
    return {s.eta + (dt / 6.0) * (k1.eta_t + 2.0 * k2.eta_t + 2.0 * k3.eta_t + k4.eta_t),
            s.psi + (dt / 6.0) * (k1.psi_t + 2.0 * k2.psi_t + 2.0 * k3.psi_t + k4.psi_t),
            s.t + dt, s.g, s.h};
}

LinearState exact_linear_advance(const LinearState& s, double dt) {
    const Grid& g = s.eta.grid();
    VectorXcd eta = s.eta.coeffs();
    VectorXcd psi = s.psi.coeffs();
    VectorXcd eo(g.n()), po(g.n());
    for (int j = 0; j < g.n(); ++j) {
        const double xi = g.xi(j);
        const double D = xi * tanh_h(s.h, xi);
        if (D <= 0.0) {
            // zero mode: eta constant, psi drifts linearly.
            eo[j] = eta[j];
            po[j] = psi[j] - s.g * dt * eta[j];
            continue;
        }
        const double omega = std::sqrt(s.g * D);
        const double c = std::cos(omega * dt), sn = std::sin(omega * dt);
        eo[j] = eta[j] * c + (D / omega) * sn * psi[j];
        po[j] = -(s.g / omega) * sn * eta[j] + psi[j] * c;
    }
    return {SpectralField::from_coeffs(g, std::move(eo), s.eta.is_real()),
            SpectralField::from_coeffs(g, std::move(po), s.psi.is_real()), s.t + dt, s.g, s.h};
}

LinearTrajectory run_linear(const LinearState& s0, double T, double dt, int snap_stride, bool exact) {
    LinearTrajectory traj;
    int n_steps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
    n_steps = snap_stride * ((n_steps + snap_stride - 1) / snap_stride);
    const double step = T / n_steps;
    traj.dt = step;
    LinearState s = s0;
    traj.times.push_back(s.t);
    traj.states.push_back(s);
    for (int i = 1; i <= n_steps; ++i) {
        s = exact ? exact_linear_advance(s, step) : step_rk4_linear(s, step);
        if (i % snap_stride == 0) {
            traj.times.push_back(s.t);
            traj.states.push_back(s);
        }
    }
    return traj;
}

double dispersion_omega(double g, double h, double k) {
    return std::sqrt(g * k * std::abs(tanh_h(h, k)));
}

double linear_energy(const LinearState& s) {
    const double pot = 0.5 * s.g * inner_l2(s.eta, s.eta);
    const double kin = 0.5 * inner_l2(tilbert(s.psi.derivative(), s.h), s.psi);
    return pot + kin;
}

double linear_energy_s(const LinearState& s, double sexp) {
    const Grid& g = s.eta.grid();
    double pot = 0.0, kin = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        const double xi = g.xi(j);
        double lam;
        if (xi == 0.0)
            lam = is_infinite_depth(s.h) ? 0.0 : 1.0 / s.h;
        else
            lam = xi * coth_h(s.h, xi);
        const double wl = std::pow(lam, 2.0 * sexp);
        pot += wl * std::norm(s.eta.coeffs()[j]);
        kin += wl * xi * tanh_h(s.h, xi) * std::norm(s.psi.coeffs()[j]);
    }
    const double L = g.period();
    return 0.5 * std::pow(s.g, 1.0 - 2.0 * sexp) * L * pot +
           0.5 * std::pow(s.g, -2.0 * sexp) * L * kin;
}

LinearState linear_mode(const Grid& grid, double g, double h, int k, double a) {
    ArrayXd pts = grid.points();
    const double kk = grid.xi_fundamental() * k;
    const double D = kk * tanh_h(h, kk);
    const double omega = std::sqrt(g * D);
    ArrayXd eta = a * (kk * pts).cos();
    ArrayXd psi = a * (omega / D) * (kk * pts).sin();
    return {SpectralField::from_samples(grid, eta), SpectralField::from_samples(grid, psi), 0.0, g, h};
}

LinearState linear_packet(const Grid& grid, double g, double h, double k0, double width,
                          double x_c, double a) {
    ArrayXd pts = grid.points();
    const double L = grid.period();
    ArrayXd eta(grid.n());
    for (int i = 0; i < grid.n(); ++i) {
        double sdist = pts[i] - x_c;
        sdist -= L * std::round(sdist / L);
        eta[i] = a * std::exp(-sdist * sdist / (2.0 * width * width)) * std::cos(k0 * sdist);
    }
    SpectralField etaf = SpectralField::from_samples(grid, eta);
    // Rightward-moving combination: psi^(k) = -i omega/D eta^(k) for k > 0.
    VectorXcd psih = VectorXcd::Zero(grid.n());
    for (int j = 1; j < grid.n() / 2; ++j) {
        const double xi = grid.xi(j);
        const double D = xi * tanh_h(h, xi);
        if (D <= 0.0) continue;
        const double omega = std::sqrt(g * D);
        psih[j] = complex(0.0, -omega / D) * etaf.coeffs()[j];
        psih[grid.n() - j] = std::conj(psih[j]);
    }
    return {etaf, SpectralField::from_coeffs(grid, std::move(psih), true), 0.0, g, h};
}

} // namespace ww
