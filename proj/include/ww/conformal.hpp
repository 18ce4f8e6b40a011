#ifndef WW_CONFORMAL_HPP
#define WW_CONFORMAL_HPP

#include <ww/strip.hpp>

namespace ww {

struct MapReport {
    double residual = 0.0;   // sup defect of the fixed point relation
    int iterations = 0;
    double offset = 0.0;     // vertical shift absorbed into the strip depth
    double max_slope = 0.0;  // max |Re W_alpha| (bilipschitz witness)
};

// Conformal parametrization Z = z + W of the fluid domain over the strip
// R x (-h, 0), W holomorphic with Im W = -T_h Re W on top.  The input
// surface mean is absorbed into the strip depth: h = h_fluid + offset.
class ConformalMap {
  public:
    ConformalMap(SpectralField W, double h_strip, MapReport report);

    const SpectralField& W() const { return W_; }
    double h() const { return h_strip_; }
    const MapReport& report() const { return report_; }
    const Grid& grid() const { return W_.grid(); }

    // Holomorphic extension of W and its derivative at a strip point.
    complex W_at(double alpha, double beta) const;
    complex dW_at(double alpha, double beta) const;
    complex Z_at(double alpha, double beta) const { return complex(alpha, beta) + W_at(alpha, beta); }

    double x_of_alpha(double alpha) const;
    // Invert alpha + Re W(alpha) = x on the top (Newton).
    double alpha_of_x(double x) const;

    // Pull an interior fluid point back to strip coordinates (Newton on Z).
    std::pair<double, double> locate(double x, double y, double tol = 1e-12) const;

    // Surface elevation parametrized by x, eta(x) = Im W(alpha(x)).
    double surface_at_x(double x) const { return imag_part(W_).eval_real(alpha_of_x(x)); }

  private:
    SpectralField W_;
    double h_strip_;
    MapReport report_;
    SpectralField reW_, imW_, dW_; // cached traces
};

// Fixed-point construction of the map from a surface profile (mean absorbed
// into the depth and reported).  Requires sup |eta_x| < 1/3.
ConformalMap build_from_surface(const SpectralField& eta, double h, double tol = 1e-12,
                                int max_iter = 400);

// Surface profile recovered from the map, sampled on the Eulerian grid.
SpectralField surface_from_map(const ConformalMap& map);

// D(alpha0, beta) = Re Z(alpha0,beta) - x0 + beta Im W_alpha(alpha0,beta).
double strip_drift(const ConformalMap& map, double alpha0, double beta);

// Symbol of the strip-drift multiplier acting on Im W(., 0);
// |m| <= C min(1, |beta xi|^2).
complex strip_drift_symbol(double h, double xi, double beta);

} // namespace ww

#endif
