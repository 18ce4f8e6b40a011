#ifndef WW_MULTIPLIERS_HPP
#define WW_MULTIPLIERS_HPP

#include <functional>
#include <vector>
#include <ww/spectral_field.hpp>

namespace ww {

// Depths are plain doubles; h = infinity selects the symbol limits
// (tanh -> sgn, coth -> sgn, exponential extensions).
inline bool is_infinite_depth(double h) { return std::isinf(h); }

// tanh(h xi) with the infinite-depth limit sgn(xi).
double tanh_h(double h, double xi);
// coth(h xi) for xi != 0, infinite-depth limit sgn(xi).
double coth_h(double h, double xi);

using ScalarSymbol = std::function<complex(double)>;

// coeff_out(xi) = symbol(xi) * coeff_in(xi).  Realness is kept when the
// symbol is conjugate-even; this is detected by sampling.
SpectralField apply_multiplier(const SpectralField& f, const ScalarSymbol& symbol);

// Tilbert transform, Fourier multiplier -i tanh(h xi).
SpectralField tilbert(const SpectralField& f, double h);
// Inverse Tilbert, multiplier i coth(h xi) on mean-zero data; the mean mode
// is removed when negligible (|mean| < tol * ||f||) and rejected otherwise.
SpectralField tilbert_inv(const SpectralField& f, double h, double mean_tol = 1e-10);

enum class MeanPolicy { require_zero, drop_imaginary_mean };

// Orthogonal projection onto holomorphic top traces,
//   P u = 1/2 [ (1 - i T_h) Re u + i (1 + i T_h^{-1}) Im u ],
// with the zero-mode convention P(c) = c for real constants and P(ic) = 0
// for imaginary ones (real constants are holomorphic, imaginary ones are
// orthogonal to every holomorphic trace).
SpectralField holomorphic_project(const SpectralField& u, double h,
                                  MeanPolicy policy = MeanPolicy::require_zero);

// sup over modes of |Im w_hat + (T_h Re w)_hat|, relative to ||w||.
double holomorphy_residual(const SpectralField& w, double h);

// --- Littlewood-Paley ladder -------------------------------------------------
//
// Raised-cosine partition in log2|xi| starting at frequency 1/h: block j
// covers lambda = 2^j with support (lambda/2, 2 lambda); everything at or
// below the base frequency goes to the low block.

struct LpLadder {
    double h;          // depth; sets the base frequency 1/h
    int j_lo;          // first dyadic index, lambda_lo = 2^{j_lo}
    int j_hi;          // last dyadic index covering the grid band
    std::vector<double> lambdas() const;
};

LpLadder lp_ladder(const Grid& g, double h);

// Block multiplier symbol value for block j (or the low block if j < j_lo).
double lp_symbol(const LpLadder& lad, int j, double xi);

// One block; pass j < lad.j_lo (e.g. j_lo - 1) for the "<= 1/h" block.
SpectralField lp_block(const SpectralField& f, const LpLadder& lad, int j);
// All blocks, low block first; summing them reproduces f.
std::vector<SpectralField> lp_decompose(const SpectralField& f, const LpLadder& lad);

// --- Bilinear multipliers ----------------------------------------------------

using BilinearSymbol = std::function<double(double, double)>;

// B(f,g)(x) = sum_{xi,zeta} e^{ix(xi+zeta)} b(xi,zeta) f^(xi) g^(zeta),
// O(N^2) double sum; output truncated to the grid band (no aliasing).
// The symbol is symmetrized when f and g share coefficients.
SpectralField bilinear_multiplier(const BilinearSymbol& b, const SpectralField& f,
                                  const SpectralField& g);

// --- Sobolev norms and envelopes ---------------------------------------------

enum class SobolevSpace {
    Hhalf_h_sum,     // Hdot^1/2 + h^-1/2 Hdot^1 : weight min(|xi|^1/2, h^-1/2 |xi|)
    H1_h,            // weight max(|xi|, 1/h)
    Hquarter_h_cap,  // Hdot^1/4 cap h^1/4 L^2   : weight max(|xi|^1/4, h^1/4)
    H3quarter_h_sum, // Hdot^3/4 + h^-1/4 Hdot^1 : weight min(|xi|^3/4, h^-1/4 |xi|)
    H3half_h,        // weight max(|xi|, 1/h)^{3/2}
    Hdot,            // homogeneous |xi|^s, s passed separately
    Hs_h,            // weight max(|xi|, 1/h)^s, s passed separately
};

// Equivalent single-weight realization of the h-adapted spaces; equivalence
// with the sum/intersection definitions holds up to absolute constants.
double sobolev_norm_h(const SpectralField& f, SobolevSpace space, double h, double s = 0.0);

// Fourier weight backing sobolev_norm_h, exposed for diagnostics.
double sobolev_weight(SobolevSpace space, double h, double xi, double s = 0.0);

struct FrequencyEnvelope {
    double base_freq = 0.0;        // 1/h
    double delta = 0.1;            // slack exponent
    std::vector<double> lambda;    // dyadic frequencies, low block first
    std::vector<double> c;         // envelope values
    std::vector<double> block_norm; // measured ||P_lambda f||

    double l1() const;
};

using BlockNorm = std::function<double(const SpectralField&)>;

// Minimal envelope c_lambda = max_mu ||P_mu f|| min((lambda/mu)^delta,
// (mu/lambda)^delta) for the given per-block norm (default L^2).
FrequencyEnvelope min_envelope(const SpectralField& f, double delta, double h,
                               const BlockNorm& norm = {});

// Zero all modes with |xi| > (2/3) xi_max; idempotent.
SpectralField dealias(const SpectralField& f);

// Inner product of the Hilbert space of holomorphic traces,
//   <u,v> = int (T_h Re u . T_h Re v + Im u . Im v) dalpha.
double inner_h(const SpectralField& u, const SpectralField& v, double h);

} // namespace ww

#endif
