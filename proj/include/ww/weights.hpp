#ifndef WW_WEIGHTS_HPP
#define WW_WEIGHTS_HPP

#include <ww/spectral_field.hpp>

namespace ww {

enum class WeightKind { rational, bump };

struct WeightParams {
    WeightKind kind = WeightKind::bump;
    double eps = 0.1;   // rational: m_x = (1 + eps^2 s^2)^{-r}
    double r = 1.0;
    double width = 2.0; // bump support width
    double center = -1.0; // < 0 means the period midpoint
};

// Nondecreasing weight m with m_x >= 0 on the periodic proxy.  On the circle
// the distributional derivative of m is m_x dx - delta_m * delta_seam (the
// weight gains delta_m = int m_x over one period and drops it at the seam
// x = 0); every integrated-by-parts identity uses that rule.  The stored m
// is the exact antiderivative of the band-limited interpolant of the m_x
// samples, so it is monotone only up to the interpolation ripple (~1e-6
// for a width-2 bump at n = 128) while the integral identities are exact.
class Weight {
  public:
    Weight(Grid grid, WeightParams params);

    const Grid& grid() const { return grid_; }
    const WeightParams& params() const { return params_; }
    const ArrayXd& m() const { return m_; }        // antiderivative, m(0) = 0
    const ArrayXd& mx() const { return mx_; }
    const ArrayXd& mxx() const { return mxx_; }
    double delta_m() const { return delta_m_; }    // int_0^L m_x dx

    double m_at(double x) const;   // analytic antiderivative at any point
    double mx_at(double x) const;

    // int_0^L m_x(x) f(x) dx  (periodic trapezoid; spectrally exact).
    double integral_mx(const ArrayXd& f) const;
    // int_0^L f d m on the circle = integral_mx(f) - delta_m f(0).
    double flux_form(const ArrayXd& f) const;
    // int_0^L m(x) f(x) dx, exact for band-limited f (sawtooth part of m
    // integrated mode by mode).
    double density_integral(const ArrayXd& f) const;

    // max over the grid of |m_xx| / m_x (rational kind satisfies <= eps r).
    double mxx_ratio() const;
    // eps r (h + sup|eta|), hypothesis (iii) of the virial theorem.
    double hypothesis_iii(double h, double eta_sup) const;

    // Same weight resampled on another grid (fresh analytic samples).
    Weight regrid(const Grid& g) const { return Weight(g, params_); }
    // The identical band-limited weight carried to a finer grid by
    // zero-padding its m_x spectrum (bit-consistent integrals).
    Weight lift_to(const Grid& g) const;
    // Translated copy (center shifted by dx0).
    Weight translated(double dx0) const;

  private:
    Weight(Grid grid, WeightParams params, const ArrayXd& mx_samples);
    void build_from_mx();

    Grid grid_;
    WeightParams params_;
    ArrayXd m_, mx_, mxx_;
    double delta_m_ = 0.0;
};

Weight make_weight(const Grid& grid, WeightParams params);

// Normalized raised-cosine window of the given width (the local-energy chi).
ArrayXd chi_window(const Grid& grid, double width, double center);

} // namespace ww

#endif
