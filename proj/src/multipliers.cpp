#include <ww/multipliers.hpp>

#include <algorithm>
#include <sstream>

namespace ww {

double tanh_h(double h, double xi) {
    if (is_infinite_depth(h)) return xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0);
    return std::tanh(h * xi);
}

double coth_h(double h, double xi) {
    if (is_infinite_depth(h)) return xi > 0.0 ? 1.0 : -1.0;
    return 1.0 / std::tanh(h * xi);
}

SpectralField apply_multiplier(const SpectralField& f, const ScalarSymbol& symbol) {
    const Grid& g = f.grid();
    const int n = g.n();
    VectorXcd out(n);
    bool conj_even = true;
    for (int j = 0; j < n; ++j) {
        const double xi = g.xi(j);
        const complex m = symbol(xi);
        if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
            std::ostringstream os;
            os << "apply_multiplier: non-finite symbol at xi = " << xi;
            throw singular_symbol_error(os.str());
        }
        out[j] = m * f.coeffs()[j];
        if (j > 0 && j < n / 2) {
            const complex mneg = symbol(-xi);
            if (std::abs(mneg - std::conj(m)) > 1e-13 * (1.0 + std::abs(m))) conj_even = false;
        }
    }
    return SpectralField::from_coeffs(g, std::move(out), f.is_real() && conj_even);
}

SpectralField tilbert(const SpectralField& f, double h) {
    return apply_multiplier(f, [h](double xi) { return complex(0.0, -tanh_h(h, xi)); });
}

SpectralField tilbert_inv(const SpectralField& f, double h, double mean_tol) {
    const double scale = f.l2_norm();
    const double mean = std::abs(f.mean());
    if (mean > mean_tol * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "tilbert_inv: input has mean " << mean << " (tolerance " << mean_tol * scale
           << "); the inverse Tilbert transform is defined only modulo constants";
        throw mean_mode_error(os.str());
    }
    SpectralField out =
        apply_multiplier(f, [h](double xi) { return xi == 0.0 ? complex(0.0) : complex(0.0, coth_h(h, xi)); });
    return out;
}

SpectralField holomorphic_project(const SpectralField& u, double h, MeanPolicy policy) {
    SpectralField re = real_part(u);
    SpectralField im = imag_part(u);
    const complex im_mean = im.mean();
    if (policy == MeanPolicy::require_zero) {
        const double scale = std::max(u.l2_norm(), 1e-300);
        if (std::abs(im_mean) > 1e-10 * scale)
            throw mean_mode_error("holomorphic_project: Im u has nonzero mean; holomorphic traces have "
                                  "mean-zero imaginary part");
    }
    im.set_mode(0, 0.0);
    const complex re_mean = re.mean();
    re.set_mode(0, 0.0);

    SpectralField t_re = tilbert(re, h);
    SpectralField ti_im = tilbert_inv(im, h);
    // w = 1/2 (re - T^-1 im) + mean(re) + i/2 (im - T re)
    SpectralField wr = 0.5 * (re - ti_im);
    wr.set_mode(0, re_mean);
    SpectralField wi = 0.5 * (im - t_re);
    return combine(wr, wi);
}

double holomorphy_residual(const SpectralField& w, double h) {
    SpectralField re = real_part(w);
    SpectralField im = imag_part(w);
    SpectralField resid = im + tilbert(re, h);
    const double scale = std::max(w.l2_norm(), 1e-300);
    return resid.l2_norm() / scale;
}

// --- Littlewood-Paley ---------------------------------------------------------

namespace {

// Smooth step: 0 for u <= 0, 1 for u >= 1, raised cosine in between.
double rc_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return 0.5 * (1.0 - std::cos(pi * u));
}

} // namespace

LpLadder lp_ladder(const Grid& g, double h) {
    LpLadder lad;
    lad.h = h;
    const double base = is_infinite_depth(h) ? g.xi_fundamental() : 1.0 / h;
    lad.j_lo = static_cast<int>(std::ceil(std::log2(base)));
    lad.j_hi = static_cast<int>(std::ceil(std::log2(g.xi_max()))) + 1;
    if (lad.j_hi < lad.j_lo) lad.j_hi = lad.j_lo;
    return lad;
}

std::vector<double> LpLadder::lambdas() const {
    std::vector<double> v;
    for (int j = j_lo; j <= j_hi; ++j) v.push_back(std::pow(2.0, j));
    return v;
}

double lp_symbol(const LpLadder& lad, int j, double xi) {
    const double axi = std::abs(xi);
    if (axi == 0.0) return j < lad.j_lo ? 1.0 : 0.0;
    const double s = std::log2(axi);
    if (j < lad.j_lo) return 1.0 - rc_step(s - (lad.j_lo - 1));
    double w = rc_step(s - (j - 1)) - rc_step(s - j);
    // The top block absorbs the unused upper transition so the partition
    // stays exact on the finite band.
    if (j == lad.j_hi) w = rc_step(s - (j - 1));
    return w;
}

SpectralField lp_block(const SpectralField& f, const LpLadder& lad, int j) {
    return apply_multiplier(f, [&lad, j](double xi) { return complex(lp_symbol(lad, j, xi)); });
}

std::vector<SpectralField> lp_decompose(const SpectralField& f, const LpLadder& lad) {
    std::vector<SpectralField> blocks;
    blocks.push_back(lp_block(f, lad, lad.j_lo - 1));
    for (int j = lad.j_lo; j <= lad.j_hi; ++j) blocks.push_back(lp_block(f, lad, j));
    return blocks;
}

// --- Bilinear multiplier -------------------------------------------------------

SpectralField bilinear_multiplier(const BilinearSymbol& b, const SpectralField& f,
                                  const SpectralField& g) {
    if (f.grid() != g.grid()) throw config_error("bilinear_multiplier: grid mismatch");
    const Grid& gr = f.grid();
    const int n = gr.n();
    const int half = n / 2;
    const bool sym = &f == &g || f.coeffs() == g.coeffs();

    auto symbol = [&](double xi, double zeta) {
        double v = sym ? 0.5 * (b(xi, zeta) + b(zeta, xi)) : b(xi, zeta);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "bilinear_multiplier: non-finite symbol at (xi, zeta) = (" << xi << ", " << zeta << ")";
            throw singular_symbol_error(os.str());
        }
        return v;
    };

    VectorXcd out = VectorXcd::Zero(n);
    const double kap = gr.xi_fundamental();
    for (int ka = -half; ka <= half; ++ka) {
        const complex fa = f.coeff_mode(ka);
        if (fa == complex(0.0)) continue;
        for (int kb = -half; kb <= half; ++kb) {
            const complex gb = g.coeff_mode(kb);
            if (gb == complex(0.0)) continue;
            const int ks = ka + kb;
            if (ks < -half || ks > half) continue; // band truncation
            const double v = symbol(kap * ka, kap * kb);
            int j = ks >= 0 ? ks : ks + n;
            if (ks == -half) j = half;
            out[j] += v * fa * gb;
        }
    }
    SpectralField result = SpectralField::from_coeffs(gr, std::move(out), false);
    if (f.is_real() && g.is_real() && result.realness_residual() < 1e-11) {
        result = result.symmetrized_real();
    }
    return result;
}

// --- Sobolev norms -------------------------------------------------------------

double sobolev_weight(SobolevSpace space, double h, double xi, double s) {
    const double a = std::abs(xi);
    const bool inf = is_infinite_depth(h);
    switch (space) {
        case SobolevSpace::Hhalf_h_sum:
            return inf ? std::sqrt(a) : std::min(std::sqrt(a), a / std::sqrt(h));
        case SobolevSpace::H1_h:
            return inf ? a : std::max(a, 1.0 / h);
        case SobolevSpace::Hquarter_h_cap:
            return inf ? std::pow(a, 0.25) : std::max(std::pow(a, 0.25), std::pow(h, 0.25));
        case SobolevSpace::H3quarter_h_sum:
            return inf ? std::pow(a, 0.75) : std::min(std::pow(a, 0.75), a / std::pow(h, 0.25));
        case SobolevSpace::H3half_h:
            return inf ? std::pow(a, 1.5) : std::pow(std::max(a, 1.0 / h), 1.5);
        case SobolevSpace::Hdot:
            return a == 0.0 ? 0.0 : std::pow(a, s);
        case SobolevSpace::Hs_h:
            if (inf) return a == 0.0 ? 0.0 : std::pow(a, s);
            return std::pow(std::max(a, 1.0 / h), s);
    }
    return 0.0;
}

double sobolev_norm_h(const SpectralField& f, SobolevSpace space, double h, double s) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j < g.n(); ++j) {
        const double w = sobolev_weight(space, h, g.xi(j), s);
        acc += w * w * std::norm(f.coeffs()[j]);
    }
    return std::sqrt(g.period() * acc);
}

// --- Frequency envelopes --------------------------------------------------------

double FrequencyEnvelope::l1() const {
    double s = 0.0;
    for (double v : c) s += v;
    return s;
}

FrequencyEnvelope min_envelope(const SpectralField& f, double delta, double h,
                               const BlockNorm& norm) {
    if (!(delta > 0.0 && delta < 0.5)) throw config_error("min_envelope: delta must lie in (0, 1/2)");
    const LpLadder lad = lp_ladder(f.grid(), h);
    BlockNorm nrm = norm ? norm : BlockNorm([](const SpectralField& u) { return u.l2_norm(); });

    FrequencyEnvelope env;
    env.base_freq = is_infinite_depth(h) ? 0.0 : 1.0 / h;
    env.delta = delta;
    std::vector<SpectralField> blocks = lp_decompose(f, lad);
    const double lam_lo = std::pow(2.0, lad.j_lo);
    env.lambda.push_back(lam_lo / 2.0); // low block slot
    for (int j = lad.j_lo; j <= lad.j_hi; ++j) env.lambda.push_back(std::pow(2.0, j));
    for (const SpectralField& blk : blocks) env.block_norm.push_back(nrm(blk));

    const std::size_t m = env.lambda.size();
    env.c.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double best = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double r = env.lambda[i] / env.lambda[k];
            const double slack = std::pow(std::min(r, 1.0 / r), delta);
            best = std::max(best, env.block_norm[k] * slack);
        }
        env.c[i] = best;
    }
    return env;
}

SpectralField dealias(const SpectralField& f) {
    const Grid& g = f.grid();
    const double cut = (2.0 / 3.0) * g.xi_max();
    VectorXcd out = f.coeffs();
    for (int j = 0; j < g.n(); ++j) {
        if (std::abs(g.xi(j)) > cut) out[j] = 0.0;
    }
    return SpectralField::from_coeffs(g, std::move(out), f.is_real());
}

double inner_h(const SpectralField& u, const SpectralField& v, double h) {
    SpectralField tru = tilbert(real_part(u), h);
    SpectralField trv = tilbert(real_part(v), h);
    return inner_l2(tru, trv) + inner_l2(imag_part(u), imag_part(v));
}

} // namespace ww
