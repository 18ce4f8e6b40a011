#ifndef WW_STRIP_HPP
#define WW_STRIP_HPP

#include <ww/multipliers.hpp>
#include <ww/quadrature.hpp>

namespace ww {

// Quadrature in the depth variable beta over (-h, 0).  Infinite depth is
// truncated at h_eff with the exponential tail controlled by the lowest
// nonzero wavenumber; the bound is reported in tail_bound.
class DepthGrid {
  public:
    // panels refine geometrically toward beta = 0 where extensions have
    // their boundary layer.
    DepthGrid(double h, int panels = 8, int nodes_per_panel = 8, double h_eff_if_infinite = 0.0);

    double h() const { return h_; }              // physical depth (may be inf)
    double h_eff() const { return h_eff_; }      // quadrature depth
    double tail_bound(double xi_min) const;      // dropped-mass bound for h = inf
    const std::vector<double>& nodes() const { return beta_; }
    const std::vector<double>& weights() const { return w_; }
    int size() const { return static_cast<int>(beta_.size()); }

  private:
    double h_;
    double h_eff_;
    std::vector<double> beta_;
    std::vector<double> w_;
};

// Overflow-safe extension symbols for the strip S = R x (-h, 0):
//   p_N(xi, beta) = cosh((beta+h) xi) / cosh(h xi)   (Neumann bottom)
//   p_D(xi, beta) = sinh((beta+h) xi) / sinh(h xi)   (Dirichlet bottom)
// together with their beta derivatives; h = inf gives e^{beta |xi|}.
double p_neumann(double h, double xi, double beta);
double p_dirichlet(double h, double xi, double beta);
double dp_neumann(double h, double xi, double beta);   // d/dbeta p_N
double dp_dirichlet(double h, double xi, double beta); // d/dbeta p_D

enum class BottomCondition { neumann, dirichlet };

// Values of a harmonic extension on the alpha x beta tensor grid.  Fields
// are always generated from top traces, never from free data.
struct StripField {
    Grid surface;
    DepthGrid depth;
    BottomCondition bottom;
    SpectralField trace;              // generating top trace
    Eigen::MatrixXcd values;          // (n_alpha x n_beta)

    // Spectral evaluation at an arbitrary strip point.
    complex eval(double alpha, double beta) const;
    complex eval_dalpha(double alpha, double beta) const;
    complex eval_dbeta(double alpha, double beta) const;
};

StripField extend_neumann(const SpectralField& f, const DepthGrid& depth);
StripField extend_dirichlet(const SpectralField& g, const DepthGrid& depth);

// Dirichlet-to-Neumann maps on the top: D_N f = T_h d_alpha f and
// D_D g = -T_h^{-1} d_alpha g (the derivative removes the mean first).
SpectralField dtn_neumann(const SpectralField& f, double h);
SpectralField dtn_dirichlet(const SpectralField& g, double h);

// Top trace of the harmonic conjugate, g = -T_h f.
SpectralField harmonic_conjugate(const SpectralField& f, double h);

// Trapezoid in alpha x Gauss in beta of  m_x(alpha) F(alpha, beta).
double depth_integral(const StripField& F, const ArrayXd& weight_on_surface);
// Same with an extra beta-dependent factor (moment integrals).
double moment_integral(const StripField& F, const ArrayXd& weight_on_surface,
                       const std::function<double(double)>& beta_factor);

// || |beta|^{-s} v ||_{L^2_beta L^inf_alpha} / || g ||_{H^s_h} for v the
// Dirichlet extension of g; returns 0 for g = 0.
double parabolic_ratio(const SpectralField& g, double s, const DepthGrid& depth);

} // namespace ww

#endif
