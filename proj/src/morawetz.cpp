#include <ww/morawetz.hpp>

#include <ww/kernel.hpp>
#include <ww/timeint.hpp>

namespace ww {

namespace {

// Circular correlation r(x0) = dx * sum_i f(x_i + x0) g(x_i) for all grid x0.
ArrayXd circular_correlation(const Grid& g, const ArrayXd& f, const ArrayXd& window) {
    SpectralField ff = SpectralField::from_samples(g, f);
    SpectralField wf = SpectralField::from_samples(g, window);
    VectorXcd c(g.n());
    for (int j = 0; j < g.n(); ++j) c[j] = ff.coeffs()[j] * std::conj(wf.coeffs()[j]);
    SpectralField corr = SpectralField::from_coeffs(g, std::move(c), false);
    return corr.csamples().real() * g.period();
}

ArrayXcd fine2(const SpectralField& f) {
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

} // namespace

double e_quarter_sq(const SpectralField& eta, const SpectralField& psi, double g, double h) {
    const double ne = sobolev_norm_h(eta, SobolevSpace::Hquarter_h_cap, h);
    const double np = sobolev_norm_h(psi, SobolevSpace::H3quarter_h_sum, h);
    return ne * ne / std::sqrt(g) + np * np * std::sqrt(g);
}

double e_lin_quarter_sq(const SpectralField& eta, const SpectralField& psi, double g, double h) {
    LinearState s{eta, psi, 0.0, g, h};
    return 2.0 * linear_energy_s(s, 0.25);
}

XNormReport x_norm(const std::vector<SpectralField>& eta_snaps,
                   const std::vector<SpectralField>& gradphi_snaps, double g, double h,
                   double delta) {
    if (eta_snaps.empty() || eta_snaps.size() != gradphi_snaps.size())
        throw config_error("x_norm: snapshot lists empty or mismatched");
    const Grid& gr = eta_snaps.front().grid();
    const LpLadder lad = lp_ladder(gr, h);

    auto block_x0 = [&](int j) {
        double worst = 0.0;
        for (std::size_t t = 0; t < eta_snaps.size(); ++t) {
            const double ne = sobolev_norm_h(lp_block(eta_snaps[t], lad, j), SobolevSpace::H3half_h, h);
            const double np =
                sobolev_norm_h(lp_block(gradphi_snaps[t], lad, j), SobolevSpace::H1_h, h);
            worst = std::max(worst, ne + np / std::sqrt(g));
        }
        return worst;
    };

    XNormReport rep;
    FrequencyEnvelope env;
    env.base_freq = is_infinite_depth(h) ? 0.0 : 1.0 / h;
    env.delta = delta;
    env.lambda.push_back(std::pow(2.0, lad.j_lo) / 2.0);
    env.block_norm.push_back(block_x0(lad.j_lo - 1));
    for (int j = lad.j_lo; j <= lad.j_hi; ++j) {
        env.lambda.push_back(std::pow(2.0, j));
        env.block_norm.push_back(block_x0(j));
    }
    const std::size_t m = env.lambda.size();
    env.c.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double rr = env.lambda[i] / env.lambda[k];
            best = std::max(best, env.block_norm[k] * std::pow(std::min(rr, 1.0 / rr), delta));
        }
        env.c[i] = best;
    }
    rep.value = 0.0;
    for (double v : env.block_norm) rep.value += v;
    rep.envelope = std::move(env);

    double eta_sup = 0.0, etax_sup = 0.0;
    for (const SpectralField& e : eta_snaps) {
        eta_sup = std::max(eta_sup, e.sup_norm());
        etax_sup = std::max(etax_sup, e.derivative().sup_norm());
    }
    rep.eta_sup_over_h = is_infinite_depth(h) ? 0.0 : eta_sup / h;
    rep.etax_sup = etax_sup;
    return rep;
}

// --- local energy ------------------------------------------------------------------

LocalEnergyReport local_energy(const Trajectory& traj, double chi_width, const DensityOptions& opt) {
    const HoloState& s0 = traj.states.front();
    const Grid& g = s0.grid();
    ArrayXd chi = chi_window(g, chi_width, 0.0);
    const int nt = traj.size();
    std::vector<double> tw = simpson_weights(nt, traj.times[1] - traj.times[0]);

    ArrayXd acc = ArrayXd::Zero(g.n());
    for (int j = 0; j < nt; ++j) {
        DensitySlice sl = density_slice(traj.at(j), g, opt);
        ArrayXd integrand = s0.g * sl.eta.square() + sl.kinetic_density;
        acc += tw[static_cast<std::size_t>(j)] * circular_correlation(g, integrand, chi);
    }

    LocalEnergyReport rep;
    rep.window_width = chi_width;
    rep.per_x0.assign(acc.data(), acc.data() + acc.size());
    rep.sup = acc.maxCoeff();

    BulkEvaluator ev0(traj.states.front());
    BulkEvaluator evT(traj.states.back());
    SurfaceData sd0 = ev0.surface(g), sdT = evT.surface(g);
    const double hq = s0.h;
    rep.e_quarter_start = e_quarter_sq(SpectralField::from_samples(g, sd0.eta),
                                       SpectralField::from_samples(g, sd0.psi), s0.g, hq);
    rep.e_quarter_end = e_quarter_sq(SpectralField::from_samples(g, sdT.eta),
                                     SpectralField::from_samples(g, sdT.psi), s0.g, hq);
    rep.ratio_c = rep.sup / std::max(rep.e_quarter_start + rep.e_quarter_end, 1e-300);
    rep.normalization = "E14(eta,psi) h-adapted Sobolev";
    return rep;
}

LocalEnergyReport local_energy_linear(const LinearTrajectory& traj, const DepthGrid& depth,
                                      double chi_width) {
    const LinearState& s0 = traj.states.front();
    const Grid& g = s0.grid();
    ArrayXd chi = chi_window(g, chi_width, 0.0);
    const int nt = traj.size();
    std::vector<double> tw = simpson_weights(nt, traj.times[1] - traj.times[0]);

    ArrayXd acc = ArrayXd::Zero(g.n());
    for (int j = 0; j < nt; ++j) {
        const LinearState& s = traj.at(j);
        ArrayXd bulk = ArrayXd::Zero(g.n());
        for (int jb = 0; jb < depth.size(); ++jb) {
            const double beta = depth.nodes()[jb];
            SpectralField phix = apply_multiplier(
                s.psi, [&](double xi) { return complex(0.0, xi) * p_neumann(s.h, xi, beta); });
            SpectralField phiy = apply_multiplier(
                s.psi, [&](double xi) { return complex(dp_neumann(s.h, xi, beta)); });
            bulk += depth.weights()[jb] * (phix.samples().square() + phiy.samples().square());
        }
        ArrayXd integrand = s.g * s.eta.samples().square() + bulk;
        acc += tw[static_cast<std::size_t>(j)] * circular_correlation(g, integrand, chi);
    }

    LocalEnergyReport rep;
    rep.window_width = chi_width;
    rep.per_x0.assign(acc.data(), acc.data() + acc.size());
    rep.sup = acc.maxCoeff();
    rep.e_quarter_start = e_lin_quarter_sq(traj.states.front().eta, traj.states.front().psi, s0.g, s0.h);
    rep.e_quarter_end = e_lin_quarter_sq(traj.states.back().eta, traj.states.back().psi, s0.g, s0.h);
    rep.ratio_c = rep.sup / std::max(rep.e_quarter_start + rep.e_quarter_end, 1e-300);
    rep.normalization = "E_lin^{1/4} (Lambda_h weights)";
    return rep;
}

// --- the functional -----------------------------------------------------------------

MorawetzSeries morawetz_functional(const std::vector<DensitySlice>& slices, const Trajectory& traj,
                                   double sigma, const Weight& w) {
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw config_error("morawetz_functional: sigma in [0,1]");
    MorawetzSeries out;
    out.times = traj.times;
    const int nt = static_cast<int>(slices.size());
    for (int j = 0; j < nt; ++j) {
        const DensitySlice& sl = slices[static_cast<std::size_t>(j)];
        ArrayXd density = sigma * sl.I2 + (1.0 - sigma) * sl.I3;
        ArrayXd flux = sigma * sl.S2 + (1.0 - sigma) * sl.S3;
        out.value.push_back(w.density_integral(density));
        out.flux_form.push_back(w.flux_form(flux));
    }
    // Fourth-order centered differences of the functional vs the flux form.
    double worst = 0.0, scale = 0.0;
    const double dt = traj.times[1] - traj.times[0];
    for (int j = 2; j + 2 < nt; ++j) {
        const auto v = [&](int i) { return out.value[static_cast<std::size_t>(i)]; };
        const double fd = (-v(j + 2) + 8.0 * v(j + 1) - 8.0 * v(j - 1) + v(j - 2)) / (12.0 * dt);
        worst = std::max(worst, std::abs(fd - out.flux_form[static_cast<std::size_t>(j)]));
        scale = std::max(scale, std::abs(out.flux_form[static_cast<std::size_t>(j)]));
    }
    out.fd_mismatch = worst / std::max(scale, 1e-300);

    double ratio = 0.0;
    const Grid& g = traj.states.front().grid();
    for (int j = 0; j < nt; ++j) {
        BulkEvaluator ev(traj.at(j));
        SurfaceData sd = ev.surface(g);
        const double e14 = e_quarter_sq(SpectralField::from_samples(g, sd.eta),
                                        SpectralField::from_samples(g, sd.psi),
                                        traj.states.front().g, traj.states.front().h);
        ratio = std::max(ratio, std::abs(out.value[static_cast<std::size_t>(j)]) /
                                    std::max(e14, 1e-300));
    }
    out.fixed_time_ratio = ratio;
    return out;
}

// --- Q_m ------------------------------------------------------------------------------

double qm_direct(const SpectralField& eta, const Weight& w, const DepthGrid& depth) {
    // Work on the doubled grid so the quadratic integrand stays alias-free.
    const Grid& g = eta.grid();
    Grid g2(2 * g.n(), g.period());
    VectorXcd c2 = VectorXcd::Zero(g2.n());
    for (int j = 0; j < g.n(); ++j) {
        int k = j <= g.n() / 2 ? j : j - g.n();
        int jj = k >= 0 ? k : k + g2.n();
        c2[jj] = eta.coeffs()[j];
    }
    SpectralField eta2 = SpectralField::from_coeffs(g2, std::move(c2), eta.is_real());
    Weight w2 = w.lift_to(g2);
    const double h = depth.h();

    ArrayXd Gx = ArrayXd::Zero(g2.n());
    for (int jb = 0; jb < depth.size(); ++jb) {
        const double beta = depth.nodes()[jb];
        const double wq = depth.weights()[jb];
        SpectralField hny = apply_multiplier(eta2, [&](double xi) { return complex(dp_neumann(h, xi, beta)); });
        SpectralField hdx = apply_multiplier(eta2, [&](double xi) { return complex(0.0, xi) * p_dirichlet(h, xi, beta); });
        SpectralField hnx = apply_multiplier(eta2, [&](double xi) { return complex(0.0, xi) * p_neumann(h, xi, beta); });
        SpectralField hdy = apply_multiplier(eta2, [&](double xi) { return complex(dp_dirichlet(h, xi, beta)); });
        Gx += wq * (hny.samples() * hdx.samples() - hnx.samples() * hdy.samples());
    }
    return w2.density_integral(Gx);
}

double qm_symbol(const SpectralField& eta, const Weight& w, double h) {
    SpectralField B = bilinear_multiplier(
        [h](double xi, double zeta) { return symbol_bh(xi, zeta, h); }, eta, eta);
    return w.flux_form(B.samples());
}

// --- identity verifiers ----------------------------------------------------------------

namespace {

struct DomainQuad {
    // Depth integrals over the true fluid domain via pullback.
    const BulkEvaluator& ev;
    const SurfaceData& sd;
    int panels, nodes;

    // Accumulate sum_i dx w_i int f(x_i, y) dy with f given in strip coords.
    template <typename F>
    double integrate(const ArrayXd& wx, F&& f) const {
        const Grid& g = sd.grid;
        ArrayXd pts = g.points();
        const double hbot = ev.state().h;
        double acc = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            if (wx[i] == 0.0) continue;
            QuadRule rule = composite_gauss(geometric_breaks(-hbot, sd.eta[i], panels), nodes);
            double a = sd.alpha[i], b = -hbot + 1e-12;
            double col = 0.0;
            for (std::size_t jq = 0; jq < rule.x.size(); ++jq) {
                auto [aa, bb] = ev.locate_from(pts[i], rule.x[jq], a, b);
                a = aa;
                b = bb;
                col += rule.w[jq] * f(aa, bb, rule.x[jq], i);
            }
            acc += wx[i] * col;
        }
        return acc * g.spacing();
    }

    ArrayXd bottom_phix() const {
        const Grid& g = sd.grid;
        ArrayXd pts = g.points();
        const double hbot = ev.state().h;
        ArrayXd out(g.n());
        for (int i = 0; i < g.n(); ++i) {
            auto [aa, bb] = ev.locate_from(pts[i], -hbot, sd.alpha[i], -hbot);
            out[i] = ev.R(aa, bb).real();
        }
        return out;
    }
};

} // namespace

double verify_L33(const SpectralField& eta, const SpectralField& psi, double g, double h,
                  const ArrayXd& w_samples, const ArrayXd& wx_samples, int y_panels, int y_nodes) {
    HoloState st = to_holomorphic(eta, psi, g, h);
    BulkEvaluator ev(st);
    SurfaceData sd = ev.surface(eta.grid());
    DomainQuad dq{ev, sd, y_panels, y_nodes};
    const Grid& gr = eta.grid();

    const double lhs = dq.integrate(w_samples, [&](double a, double b, double, int) {
        const complex r = ev.R(a, b);
        return r.real() * r.real() - std::pow(-r.imag(), 2);
    });

    ArrayXd phib = dq.bottom_phix();
    double rhs1 = 0.0;
    for (int i = 0; i < gr.n(); ++i)
        rhs1 += w_samples[i] * (st.h + sd.eta[i]) * phib[i] * phib[i];
    rhs1 *= gr.spacing();

    const double rhs2 = -2.0 * dq.integrate(w_samples, [&](double a, double b, double, int i) {
        const complex r = ev.R(a, b);
        return sd.eta_x[i] * r.real() * (-r.imag());
    });

    const double rhs3 = 2.0 * dq.integrate(wx_samples, [&](double a, double b, double y, int i) {
        const complex r = ev.R(a, b);
        return (y - sd.eta[i]) * r.real() * (-r.imag());
    });

    const double rhs = rhs1 + rhs2 + rhs3;
    const double scale = std::max({std::abs(lhs), std::abs(rhs1), std::abs(rhs2), std::abs(rhs3), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

double verify_C6(const SpectralField& eta, const SpectralField& psi, double g, double h,
                 const ArrayXd& mu_samples, const ArrayXd& mux_samples, int y_panels, int y_nodes) {
    HoloState st = to_holomorphic(eta, psi, g, h);
    BulkEvaluator ev(st);
    SurfaceData sd = ev.surface(eta.grid());
    DomainQuad dq{ev, sd, y_panels, y_nodes};
    const Grid& gr = eta.grid();

    double lhs = 0.0;
    for (int i = 0; i < gr.n(); ++i) lhs += mu_samples[i] * sd.n_eta_psi[i];
    lhs *= gr.spacing();

    const double t1 = -dq.integrate(mux_samples, [&](double a, double b, double, int) {
        const complex r = ev.R(a, b);
        return r.real() * (-r.imag());
    });

    ArrayXd phib = dq.bottom_phix();
    double t2 = 0.0;
    for (int i = 0; i < gr.n(); ++i) t2 += mu_samples[i] * phib[i] * phib[i];
    t2 *= 0.5 * gr.spacing();

    const double rhs = t1 + t2;
    const double scale = std::max({std::abs(lhs), std::abs(t1), std::abs(t2), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

// --- virial -------------------------------------------------------------------------------

VirialReport virial_check(const Trajectory& traj, const std::vector<DensitySlice>& slices,
                          const Weight& w) {
    VirialReport rep;
    const HoloState& s0 = traj.states.front();
    const double g = s0.g, h = s0.h;
    const int nt = static_cast<int>(slices.size());
    const double dt = traj.times[1] - traj.times[0];
    std::vector<double> tw = simpson_weights(nt, dt);

    rep.hyp_eta_min = std::numeric_limits<double>::infinity();
    rep.hyp_slope = 0.0;
    double eta_sup = 0.0;
    rep.pressure_min = std::numeric_limits<double>::infinity();
    for (const DensitySlice& sl : slices) {
        rep.hyp_eta_min = std::min(rep.hyp_eta_min, sl.eta.minCoeff());
        rep.hyp_slope = std::max(rep.hyp_slope, sl.eta_x.abs().maxCoeff());
        eta_sup = std::max(eta_sup, sl.eta.abs().maxCoeff());
        rep.pressure_min = std::min(rep.pressure_min, sl.pressure_min.minCoeff());
    }
    rep.hyp_weight = w.hypothesis_iii(h, eta_sup);
    rep.hypotheses_ok = rep.hyp_eta_min >= -0.5 * h && rep.hyp_slope <= 1.0 / 3.0 + 1e-12 &&
                        rep.hyp_weight <= 1.0 / 42.0 + 1e-12;
    if (!rep.hypotheses_ok) return rep;

    // The momentum-flux integrals appear in the Bernoulli form of S1 (the
    // hydrostatic column -int g y dy replaces -g/2 eta^2), which is the form
    // whose m_x integral the pressure-positivity chain bounds from below.
    // On the circle, iint m_x S dx dt = [int m I]_0^T + delta_m int S(seam) dt.
    double lhs = 0.0, kinetic = 0.0, flux1 = 0.0, flux2 = 0.0, seam1 = 0.0, seam2 = 0.0;
    const double hydro = 0.5 * g * h * h; // S1_bernoulli = S1_rest_zero + g h^2 / 2
    for (int j = 0; j < nt; ++j) {
        const DensitySlice& sl = slices[static_cast<std::size_t>(j)];
        const double wj = tw[static_cast<std::size_t>(j)];
        lhs += wj * (g * w.integral_mx(sl.eta.square()) + w.integral_mx(sl.kinetic_density));
        kinetic += wj * w.integral_mx(sl.kinetic_density);
        flux1 += wj * (w.integral_mx(sl.S1) + hydro * w.delta_m());
        flux2 += wj * w.integral_mx(sl.S2);
        seam1 += wj * w.delta_m() * (sl.S1[0] + hydro);
        seam2 += wj * w.delta_m() * sl.S2[0];
    }
    rep.endpoint_I1 = w.density_integral(slices.back().I1) - w.density_integral(slices.front().I1);
    rep.endpoint_I2 = w.density_integral(slices.back().I2) - w.density_integral(slices.front().I2);
    rep.seam_S1 = seam1;
    rep.seam_S2 = seam2;
    const double scale = std::max({std::abs(flux1), std::abs(flux2), 1e-300});
    rep.conservation_defect =
        std::max(std::abs(flux1 - (rep.endpoint_I1 + seam1)), std::abs(flux2 - (rep.endpoint_I2 + seam2))) /
        scale;

    rep.lhs = lhs;
    rep.kinetic_lhs = kinetic;
    rep.kinetic_rhs = 7.0 * flux1;
    rep.rhs = 14.0 * flux1 + 2.0 * flux2;
    rep.kinetic_ok = rep.kinetic_lhs <= rep.kinetic_rhs * (1.0 + 1e-6) + 1e-12;
    rep.inequality_ok = rep.lhs <= rep.rhs * (1.0 + 1e-6) + 1e-12;
    return rep;
}

// --- linear identities -----------------------------------------------------------------------

LinearIdentityReport linear_identities(const LinearTrajectory& traj, const Weight& w, double sigma,
                                       const DepthGrid& depth) {
    LinearIdentityReport rep;
    const LinearState& s0 = traj.states.front();
    const double g = s0.g, h = s0.h;
    const int nt = traj.size();
    const double dt = traj.times[1] - traj.times[0];
    std::vector<double> tw = simpson_weights(nt, dt);

    DensityFluxSeries s2 = linear_density_flux(traj, 2, depth);
    DensityFluxSeries s3 = linear_density_flux(traj, 3, depth);

    // est1: [int m I2]_0^T = int_0^T { g/2 int m_x eta^2 + 1/2 iint m_x (phi_x^2-phi_y^2)
    //                                  - delta_m S2(seam) } dt.
    double rhs1 = 0.0, rhs3 = 0.0;
    double le_phi = 0.0, le_eta = 0.0, seam_acc = 0.0;
    for (int j = 0; j < nt; ++j) {
        const LinearState& s = traj.at(j);
        ArrayXd eta_s = s.eta.samples();
        ArrayXd diff = ArrayXd::Zero(s.grid().n());   // int (phi_x^2 - phi_y^2) dy
        ArrayXd full = ArrayXd::Zero(s.grid().n());   // int |grad phi|^2 dy
        for (int jb = 0; jb < depth.size(); ++jb) {
            const double beta = depth.nodes()[jb];
            SpectralField phix = apply_multiplier(
                s.psi, [&](double xi) { return complex(0.0, xi) * p_neumann(h, xi, beta); });
            SpectralField phiy = apply_multiplier(
                s.psi, [&](double xi) { return complex(dp_neumann(h, xi, beta)); });
            ArrayXd px = phix.samples(), py = phiy.samples();
            diff += depth.weights()[jb] * (px.square() - py.square());
            full += depth.weights()[jb] * (px.square() + py.square());
        }
        const double wj = tw[static_cast<std::size_t>(j)];
        // Seam fluxes: S2 crosses whole; for I3 only the kinetic part does
        // (the literal m-form Q_m already carries its own seam pieces).
        double kin_seam = 0.0;
        for (int jb = 0; jb < depth.size(); ++jb) {
            const double beta = depth.nodes()[jb];
            complex px = 0.0, py = 0.0;
            for (int jj = 0; jj < s.grid().n(); ++jj) {
                const double xi = s.grid().xi(jj);
                px += complex(0.0, xi) * p_neumann(h, xi, beta) * s.psi.coeffs()[jj];
                py += dp_neumann(h, xi, beta) * s.psi.coeffs()[jj];
            }
            kin_seam += depth.weights()[jb] * (px.real() * px.real() + py.real() * py.real());
        }
        rhs1 += wj * (0.5 * g * w.integral_mx(eta_s.square()) + 0.5 * w.integral_mx(diff) -
                      w.delta_m() * s2.S[static_cast<std::size_t>(j)][0]);
        const double qm = qm_direct(s.eta, w, depth);
        rhs3 += wj * (0.5 * w.integral_mx(full) + g * qm - 0.5 * w.delta_m() * kin_seam);
        le_phi += wj * (0.5 * (1.0 - sigma) * w.integral_mx(full) + 0.5 * sigma * w.integral_mx(diff));
        le_eta += wj * (0.5 * sigma * g * w.integral_mx(eta_s.square()) + (1.0 - sigma) * g * qm);
        seam_acc += wj * (sigma * w.delta_m() * s2.S[static_cast<std::size_t>(j)][0] +
                          (1.0 - sigma) * 0.5 * w.delta_m() * kin_seam);
    }
    const double dI2 = w.density_integral(s2.I.back()) - w.density_integral(s2.I.front());
    const double dI3 = w.density_integral(s3.I.back()) - w.density_integral(s3.I.front());
    rep.est1_residual = std::abs(dI2 - rhs1) / std::max({std::abs(dI2), std::abs(rhs1), 1e-300});
    rep.est3_residual = std::abs(dI3 - rhs3) / std::max({std::abs(dI3), std::abs(rhs3), 1e-300});

    rep.le_phi = le_phi;
    rep.le_eta = le_eta;
    rep.dmi_lhs = sigma * dI2 + (1.0 - sigma) * dI3;
    const double split = le_phi + le_eta - seam_acc;
    rep.dmi_split_residual =
        std::abs(rep.dmi_lhs - split) / std::max({std::abs(rep.dmi_lhs), std::abs(split), 1e-300});
    return rep;
}

// --- normal form density -----------------------------------------------------------------------

NormalFormReport normal_form_density(const HoloState& s, const Weight& w, const DepthGrid& depth,
                                     const SolverConfig& cfg) {
    (void)cfg;
    BulkEvaluator ev(s);
    const Grid& g = s.grid();

    // Top trace of Im W * Re W_alpha (quadratic, computed alias-free).
    SpectralField imW = imag_part(s.W);
    SpectralField reWa = real_part(s.W.derivative());
    ArrayXcd prod = fine2(imW) * fine2(reWa);
    Grid g2(2 * g.n(), g.period());
    SpectralField trace2 = SpectralField::from_samples(g2, prod.real().eval());

    Weight w2 = w.lift_to(g2);
    SpectralField imR = imag_part(ev.R_top());

    double acc = 0.0;
    ArrayXd pts2 = g2.points();
    for (int jb = 0; jb < depth.size(); ++jb) {
        const double beta = depth.nodes()[jb];
        // H_D(Im W Re W_alpha) at this depth, sampled on the fine grid.
        SpectralField hd = apply_multiplier(
            trace2, [&](double xi) { return complex(p_dirichlet(s.h, xi, beta)); });
        // Im R extended with p_D as well (imaginary part of a holomorphic field).
        SpectralField imr2 = SpectralField::zero(g2);
        {
            VectorXcd c2 = VectorXcd::Zero(g2.n());
            for (int j = 0; j < g.n(); ++j) {
                int k = j <= g.n() / 2 ? j : j - g.n();
                int jj = k >= 0 ? k : k + g2.n();
                c2[jj] = imR.coeffs()[j];
            }
            imr2 = apply_multiplier(SpectralField::from_coeffs(g2, std::move(c2), true),
                                    [&](double xi) { return complex(p_dirichlet(s.h, xi, beta)); });
        }
        ArrayXd integrand = imr2.samples() * hd.samples();
        acc += depth.weights()[jb] * (w2.mx() * integrand).sum() * g2.spacing();
    }

    NormalFormReport rep;
    rep.value = acc;
    BulkEvaluator ev2(s);
    SurfaceData sd = ev2.surface(g);
    const double e14 = e_quarter_sq(SpectralField::from_samples(g, sd.eta),
                                    SpectralField::from_samples(g, sd.psi), s.g, s.h);
    rep.e_quarter_ratio = std::abs(acc) / std::max(e14, 1e-300);
    return rep;
}

double err1_term(const Trajectory& traj, const Weight& w, double sigma) {
    const int nt = traj.size();
    const double dt = traj.times[1] - traj.times[0];
    std::vector<double> tw = simpson_weights(nt, dt);
    double acc = 0.0;
    const Grid& g = traj.states.front().grid();
    for (int j = 0; j < nt; ++j) {
        BulkEvaluator ev(traj.at(j));
        SurfaceData sd = ev.surface(g);
        acc += tw[static_cast<std::size_t>(j)] * w.integral_mx(sd.eta * sd.n_eta_psi);
    }
    return sigma * acc;
}

} // namespace ww
