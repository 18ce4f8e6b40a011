#ifndef WW_KERNEL_HPP
#define WW_KERNEL_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>
#include <ww/weights.hpp>

namespace ww {

// --- the bilinear symbol --------------------------------------------------------

// b(xi, zeta) = 2 xi zeta sinh(xi+zeta) sinh(xi-zeta)
//               / ((xi+zeta)(xi-zeta) sinh(2 xi) sinh(2 zeta)),
// evaluated in the removable-singularity-free form
//   b = sinhc(xi+zeta) sinhc(xi-zeta) / (2 sinhc(2 xi) sinhc(2 zeta)),
// log-scaled for large arguments.  b(0,0) = 1/2 exactly.
double symbol_b(double xi, double zeta);
// Depth-h symbol, b^h(xi, zeta) = b(h xi, h zeta); the h -> inf limit is 0
// away from the origin.
double symbol_bh(double xi, double zeta, double h);

// --- the kernel table -----------------------------------------------------------

enum class KernelMethod { fourier_inversion, line_integral };

struct KernelTableParams {
    double x_min = 0.05;
    double x_max = 10.0;
    double dx = 0.05;
    double freq_cutoff = 40.0;      // Fourier inversion cutoff
    double panel_width = 0.25;      // frequency panel width
    int nodes_per_panel = 12;
    KernelMethod method = KernelMethod::fourier_inversion;
};

// Sampled values of the kernel K(x1, x2) = (2 pi)^{-2} iint e^{i x.xi} b dxi
// on [x_min, x_max]^2 (axes excluded; K is even and symmetric).
struct KernelTable {
    KernelTableParams params;
    std::vector<double> x;        // shared axis
    Eigen::MatrixXd K;
    double tail_bound = 0.0;      // dropped frequency mass estimate

    double at(int i, int j) const { return K(i, j); }
    int size() const { return static_cast<int>(x.size()); }
};

KernelTable kernel_table(const KernelTableParams& params = {});

// Single kernel value by the diagonal line-integral representation (the
// rotated-symbol factorization; principal values and finite parts at the
// hyperbolic singularities).  Quantitative in the bulk region; used as the
// independent cross-check of the Fourier table.
double kernel_value_line(double x1, double x2);

// Leading log-extraction pieces: K = K_reg + A(x2) S(x1) + A(x1) S(x2) + ...
// with A(x) = (pi/16) sech^2(pi x / 4) and S(x) = K0(|x|)/pi (the table
// builder subtracts a second axis order as well).
double kernel_axis_a(double x);
double kernel_axis_s(double x);

// iint K dx1 dx2 estimated from the table plus analytic axis parts.
double kernel_mass(const KernelTable& table);

// --- positivity and signs --------------------------------------------------------

struct PositivityReport {
    double min_value = 0.0;
    double min_x1 = 0.0, min_x2 = 0.0;
    bool positive = false;
};
PositivityReport positivity_scan(const KernelTable& table);

struct DirectionalSignReport {
    int violations_minus = 0;   // (d_y - d_x) K > 0 off-diagonal (x < y)
    int violations_plus = 0;    // (d_y + d_x) K < 0 on the diagonal
    double worst_minus = 0.0;
    double worst_plus = 0.0;
    double fd_margin = 0.0;     // values within this margin of 0 are skipped
};
DirectionalSignReport directional_signs(const KernelTable& table);

// --- the diagonal principal-value integral ------------------------------------------

// I(x0) = int_{-inf}^{x0} F'(y) G'(x) - G'(y) F'(x) dx, y = 2 x0 - x,
// F = coth, G = tanh; the 1/sinh^2 part at x = 0 is the finite part of the
// distributional derivative of p.v. coth.
double diagonal_pv_integral(double x0);

// --- the K = K1 + L (x) L mass split ----------------------------------------------

struct SplitReport {
    bool found = false;
    double c = 0.5;          // iint (K - L (x) L) = 1/2 - (int L)^2
    double amp = 0.0;        // L(x) = amp exp(-(x/s)^2)
    double sigma = 0.0;
    double margin = 0.0;     // min of K - L(x)L over the table
};
SplitReport split_mass(const KernelTable& table);

// --- the bilinear lower bound -------------------------------------------------------

struct QmBoundSample {
    double lhs = 0.0;        // int m_x B^h(eta,eta) dx
    double rhs = 0.0;        // -c sup_{x0} int m_x(x-x0) eta^2 dx
    bool ok = false;
    double slack = 0.0;
};

// Evaluate both sides of the bilinear lower bound for each sample profile.
std::vector<QmBoundSample> qm_lower_bound_check(const std::vector<SpectralField>& etas,
                                                const Weight& w, double h, double c);

} // namespace ww

#endif
