#include <ww/densities.hpp>

#include <ww/timeint.hpp>

#include <future>
#include <limits>
#include <thread>

namespace ww {

DensitySlice density_slice(const HoloState& s, const Grid& xgrid, const DensityOptions& opt,
                           const SolverConfig& cfg) {
    (void)cfg;
    BulkEvaluator ev(s);
    SurfaceData sd = ev.surface(xgrid);
    const int n = xgrid.n();
    double bottom;
    if (is_infinite_depth(s.h)) {
        if (!(opt.inf_depth_truncation > 0.0))
            throw config_error("density_slice: infinite depth needs a truncation depth");
        bottom = -opt.inf_depth_truncation;
    } else {
        bottom = -s.h;
    }

    DensitySlice out;
    out.t = s.t;
    out.I1 = ArrayXd::Zero(n);
    out.I2 = ArrayXd::Zero(n);
    out.I3 = ArrayXd::Zero(n);
    out.S1 = ArrayXd::Zero(n);
    out.S2 = ArrayXd::Zero(n);
    out.S3 = ArrayXd::Zero(n);
    out.kinetic_density = ArrayXd::Zero(n);
    out.pressure_min = ArrayXd::Zero(n);
    out.bottom_phix_sq = ArrayXd::Zero(n);
    out.eta = sd.eta;
    out.eta_x = sd.eta_x;

    ArrayXd pts = xgrid.points();
    for (int i = 0; i < n; ++i) {
        const double x = pts[i];
        QuadRule rule =
            composite_gauss(geometric_breaks(bottom, sd.eta[i], opt.y_panels), opt.y_nodes);
        double i1 = 0.0, i3 = 0.0, s1i = 0.0, s23 = 0.0, s3i = 0.0, kin = 0.0;
        double pmin = std::numeric_limits<double>::infinity();
        // March bottom-to-top with warm starts.
        double a = sd.alpha[i], b = bottom + 1e-12;
        for (std::size_t jq = 0; jq < rule.x.size(); ++jq) {
            const double y = rule.x[jq];
            const double wq = rule.w[jq];
            auto [aa, bb] = ev.locate_from(x, y, a, b);
            a = aa;
            b = bb;
            const BulkEvaluator::BulkNode nd = ev.node(aa, bb);
            const double phx = nd.R.real(), phy = -nd.R.imag();
            const double tx = nd.Y.imag(), ty = nd.Y.real();
            const double pt = nd.phi_t;
            const double tt = nd.theta_t;
            const double re_r2 = phx * phx - phy * phy;
            i1 += wq * phx;
            i3 += wq * (tx * (-phy) + ty * phx); // grad theta . grad q
            s1i += wq * (-pt + 0.5 * re_r2);
            s23 += wq * 0.5 * re_r2;
            s3i += wq * (-ty * pt + 0.5 * re_r2 + tt * phy);
            kin += wq * (phx * phx + phy * phy);
            pmin = std::min(pmin, nd.pressure);
        }
        const double g2e2 = 0.5 * s.g * sd.eta[i] * sd.eta[i];
        out.I1[i] = i1;
        out.I2[i] = sd.eta[i] * sd.psi_x[i];
        out.I3[i] = i3;
        out.S1[i] = s1i - g2e2;
        out.S2[i] = -sd.eta[i] * sd.psi_t[i] - g2e2 + s23;
        out.S3[i] = -g2e2 + s3i;
        out.kinetic_density[i] = kin;
        out.pressure_min[i] = pmin;
        // Bottom trace of phi_x (R is real on the bottom).
        if (!is_infinite_depth(s.h)) {
            auto [ab, bb2] = ev.locate_from(x, -s.h, a, -s.h);
            out.bottom_phix_sq[i] = std::pow(ev.R(ab, bb2).real(), 2);
        }
    }
    return out;
}

std::vector<DensitySlice> density_slices(const Trajectory& traj, const DensityOptions& opt) {
    // Snapshot post-processing is pure per slice; fan out over a small pool.
    const int nt = static_cast<int>(traj.states.size());
    std::vector<DensitySlice> out(static_cast<std::size_t>(nt));
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&] {
            for (;;) {
                const int j = next.fetch_add(1);
                if (j >= nt) return;
                out[static_cast<std::size_t>(j)] =
                    density_slice(traj.states[static_cast<std::size_t>(j)],
                                  traj.states[static_cast<std::size_t>(j)].grid(), opt);
            }
        });
    }
    for (std::thread& t : pool) t.join();
    return out;
}

DensityFluxSeries density_flux(const Trajectory& traj, int which, const DensityOptions& opt) {
    if (which < 1 || which > 3) throw config_error("density_flux: which must be 1, 2 or 3");
    DensityFluxSeries series;
    series.which = which;
    series.grid = traj.states.front().grid();
    series.times = traj.times;
    for (const HoloState& s : traj.states) {
        DensitySlice sl = density_slice(s, s.grid(), opt);
        series.I.push_back(which == 1 ? sl.I1 : (which == 2 ? sl.I2 : sl.I3));
        series.S.push_back(which == 1 ? sl.S1 : (which == 2 ? sl.S2 : sl.S3));
    }
    return series;
}

std::vector<double> conservation_residual(const DensityFluxSeries& series, const Weight& w) {
    const int nt = static_cast<int>(series.times.size());
    if (nt < 3) throw config_error("conservation_residual: need at least three snapshots");
    const double dt = series.times[1] - series.times[0];
    std::vector<double> out(static_cast<std::size_t>(nt), 0.0);
    const double m_i0 = w.density_integral(series.I.front());
    std::vector<double> flux(static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j) flux[static_cast<std::size_t>(j)] = w.flux_form(series.S[static_cast<std::size_t>(j)]);
    for (int j = 2; j < nt; ++j) {
        std::vector<double> tw = simpson_weights(j + 1, dt);
        double acc = 0.0;
        for (int k = 0; k <= j; ++k) acc += tw[static_cast<std::size_t>(k)] * flux[static_cast<std::size_t>(k)];
        const double lhs = w.density_integral(series.I[static_cast<std::size_t>(j)]) - m_i0;
        const double denom = std::max({std::abs(lhs), std::abs(acc), 1e-300});
        out[static_cast<std::size_t>(j)] = std::abs(lhs - acc) / denom;
    }
    return out;
}

DensityFluxSeries linear_density_flux(const LinearTrajectory& traj, int which,
                                      const DepthGrid& depth) {
    if (which < 1 || which > 3) throw config_error("linear_density_flux: which must be 1, 2 or 3");
    DensityFluxSeries series;
    series.which = which;
    const Grid& g = traj.states.front().grid();
    series.grid = g;
    series.times = traj.times;
    const double h = traj.states.front().h;
    const double gg = traj.states.front().g;

    for (const LinearState& s : traj.states) {
        StripField phi = extend_neumann(s.psi, depth);
        StripField theta = extend_dirichlet(s.eta, depth);
        StripField phit = extend_neumann(-gg * s.eta, depth); // linear Bernoulli
        const int n = g.n();
        ArrayXd I(n), S(n);
        ArrayXd eta_s = s.eta.samples();
        ArrayXd psix = s.psi.derivative().samples();
        // Per-depth-node samples of phi_x, phi_y, theta_x, theta_y.
        for (int i = 0; i < n; ++i) I[i] = 0.0;
        ArrayXd i_acc = ArrayXd::Zero(n), s_acc = ArrayXd::Zero(n);
        for (int jb = 0; jb < depth.size(); ++jb) {
            const double beta = depth.nodes()[jb];
            const double wq = depth.weights()[jb];
            SpectralField phix = apply_multiplier(s.psi, [&](double xi) {
                return complex(0.0, xi) * p_neumann(h, xi, beta);
            });
            SpectralField phiy = apply_multiplier(s.psi, [&](double xi) {
                return complex(dp_neumann(h, xi, beta));
            });
            ArrayXd px = phix.samples(), py = phiy.samples();
            if (which == 1) {
                i_acc += wq * px;
                // Purely linear pair: S1 = -int phi_t dy with phi_t = -g H_N(eta).
                SpectralField phitb = apply_multiplier(s.eta, [&](double xi) {
                    return complex(-gg * p_neumann(h, xi, beta));
                });
                s_acc += wq * (-phitb.samples());
            } else if (which == 2) {
                s_acc += wq * 0.5 * (px.square() - py.square());
            } else {
                SpectralField thx = apply_multiplier(s.eta, [&](double xi) {
                    return complex(0.0, xi) * p_dirichlet(h, xi, beta);
                });
                SpectralField thy = apply_multiplier(s.eta, [&](double xi) {
                    return complex(dp_dirichlet(h, xi, beta));
                });
                ArrayXd tx = thx.samples(), ty = thy.samples();
                i_acc += wq * (ty * px - tx * py);
                // theta_t = phi_y, phi_t = -g H_N(eta) at linear order.
                SpectralField phitb = apply_multiplier(s.eta, [&](double xi) {
                    return complex(-gg * p_neumann(h, xi, beta));
                });
                s_acc += wq * (-ty * phitb.samples() + 0.5 * (px.square() - py.square()) +
                               py.square());
            }
        }
        if (which == 1) {
            I = i_acc;
            S = s_acc; // linear-order pair, no quadratic terms
        } else if (which == 2) {
            I = eta_s * psix;
            ArrayXd psit = -gg * eta_s;
            S = -eta_s * psit - 0.5 * gg * eta_s.square() + s_acc;
        } else {
            I = i_acc;
            S = -0.5 * gg * eta_s.square() + s_acc;
        }
        series.I.push_back(I);
        series.S.push_back(S);
    }
    return series;
}

} // namespace ww
