#ifndef WW_SPECTRAL_FIELD_HPP
#define WW_SPECTRAL_FIELD_HPP

#include <ww/grid.hpp>

namespace ww {

// Periodic function stored by its Fourier coefficients (amplitude
// normalization: samples_m = sum_j c_j exp(i xi_j alpha_m)).  The universal
// currency between modules; real-valued fields keep conjugate symmetry.
class SpectralField {
  public:
    SpectralField(Grid grid, VectorXcd coeffs, bool realness)
        : grid_(grid), c_(std::move(coeffs)), real_(realness) {
        if (c_.size() != grid_.n()) throw config_error("SpectralField: coefficient count != grid size");
    }

    static SpectralField zero(const Grid& g, bool realness = true) {
        return {g, VectorXcd::Zero(g.n()), realness};
    }
    static SpectralField from_samples(const Grid& g, const ArrayXd& samples);
    static SpectralField from_samples(const Grid& g, const ArrayXcd& samples, bool realness = false);
    static SpectralField from_coeffs(const Grid& g, VectorXcd coeffs, bool realness);

    const Grid& grid() const { return grid_; }
    int n() const { return grid_.n(); }
    const VectorXcd& coeffs() const { return c_; }
    bool is_real() const { return real_; }

    // Coefficient by integer mode number k in [-n/2, n/2].
    complex coeff_mode(int k) const {
        int n = grid_.n();
        int j = k >= 0 ? k : k + n;
        if (k < -n / 2 || k > n / 2) return 0.0;
        if (k == -n / 2) j = n / 2;
        return c_[j];
    }
    void set_mode(int k, complex v) {
        int n = grid_.n();
        int j = k >= 0 ? k : k + n;
        if (k == -n / 2) j = n / 2;
        c_[j] = v;
    }

    complex mean() const { return c_[0]; }

    ArrayXd samples() const;   // inverse transform; requires realness
    ArrayXcd csamples() const; // inverse transform, complex

    // Fourier sum at an arbitrary point (spectral interpolation).
    complex eval(double alpha) const;
    double eval_real(double alpha) const { return eval(alpha).real(); }

    SpectralField derivative() const;

    double l2_norm() const { return std::sqrt(grid_.period() * c_.squaredNorm()); }
    double sup_norm() const;

    // Largest violation of conjugate symmetry, relative to the max coefficient.
    double realness_residual() const;
    // Symmetrize coefficients so the field is exactly real.
    SpectralField symmetrized_real() const;

    SpectralField& operator+=(const SpectralField& o) { c_ += o.c_; real_ = real_ && o.real_; return *this; }
    SpectralField& operator-=(const SpectralField& o) { c_ -= o.c_; real_ = real_ && o.real_; return *this; }
    SpectralField& operator*=(double s) { c_ *= s; return *this; }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { a += b; return a; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { a -= b; return a; }
    friend SpectralField operator*(double s, SpectralField a) { a *= s; return a; }

  private:
    Grid grid_;
    VectorXcd c_;
    bool real_;
};

// Forward/inverse DFT with the amplitude normalization above.
VectorXcd dft_forward(const ArrayXcd& samples);
ArrayXcd dft_inverse(const VectorXcd& coeffs);

// Alias-free pointwise product: both factors are continued onto a double
// grid, multiplied there, and the result projected back onto the native band.
SpectralField multiply(const SpectralField& a, const SpectralField& b);
// Pointwise complex conjugate (an anti-holomorphic reflection in spectrum).
SpectralField conjugate(const SpectralField& a);
SpectralField real_part(const SpectralField& a);
SpectralField imag_part(const SpectralField& a);
SpectralField combine(const SpectralField& re, const SpectralField& im); // re + i im

// L2 inner product of real fields, int f g dx over the period.
double inner_l2(const SpectralField& f, const SpectralField& g);

} // namespace ww

#endif
