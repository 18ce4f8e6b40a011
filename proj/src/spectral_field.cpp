#include <ww/spectral_field.hpp>

#include <unsupported/Eigen/FFT>

namespace ww {

namespace {

Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

} // namespace

VectorXcd dft_forward(const ArrayXcd& samples) {
    const int n = static_cast<int>(samples.size());
    VectorXcd in = samples.matrix();
    VectorXcd out(n);
    fft_engine().fwd(out, in);
    out /= static_cast<double>(n);
    return out;
}

ArrayXcd dft_inverse(const VectorXcd& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    VectorXcd in = coeffs * static_cast<double>(n);
    VectorXcd out(n);
    fft_engine().inv(out, in);
    return out.array();
}

SpectralField SpectralField::from_samples(const Grid& g, const ArrayXd& samples) {
    if (samples.size() != g.n()) throw config_error("from_samples: size mismatch");
    ArrayXcd cs = samples.cast<complex>();
    return {g, dft_forward(cs), true};
}

SpectralField SpectralField::from_samples(const Grid& g, const ArrayXcd& samples, bool realness) {
    if (samples.size() != g.n()) throw config_error("from_samples: size mismatch");
    return {g, dft_forward(samples), realness};
}

SpectralField SpectralField::from_coeffs(const Grid& g, VectorXcd coeffs, bool realness) {
    return {g, std::move(coeffs), realness};
}

ArrayXd SpectralField::samples() const {
    return csamples().real();
}

ArrayXcd SpectralField::csamples() const {
    return dft_inverse(c_);
}

complex SpectralField::eval(double alpha) const {
    const int n = grid_.n();
    const double kappa = 2.0 * pi / grid_.period();
    const complex rot = std::polar(1.0, kappa * alpha);
    complex acc = c_[0];
    complex ep = 1.0;
    for (int k = 1; k < n / 2; ++k) {
        ep *= rot;
        acc += c_[k] * ep + c_[n - k] * std::conj(ep);
    }
    // Nyquist mode, single slot.
    ep *= rot;
    acc += c_[n / 2] * ep;
    return acc;
}

SpectralField SpectralField::derivative() const {
    VectorXcd d(c_.size());
    const int n = grid_.n();
    for (int j = 0; j < n; ++j) d[j] = complex(0.0, grid_.xi(j)) * c_[j];
    // An odd multiplier must kill the unpaired Nyquist mode to keep realness.
    d[n / 2] = 0.0;
    return {grid_, std::move(d), real_};
}

double SpectralField::sup_norm() const {
    if (real_) return samples().abs().maxCoeff();
    return csamples().abs().maxCoeff();
}

double SpectralField::realness_residual() const {
    const int n = grid_.n();
    double worst = 0.0;
    for (int k = 1; k < n / 2; ++k) {
        worst = std::max(worst, std::abs(c_[k] - std::conj(c_[n - k])));
    }
    worst = std::max(worst, std::abs(c_[0].imag()));
    worst = std::max(worst, std::abs(c_[n / 2].imag()));
    double scale = c_.cwiseAbs().maxCoeff();
    return scale > 0.0 ? worst / scale : 0.0;
}

SpectralField SpectralField::symmetrized_real() const {
    const int n = grid_.n();
    VectorXcd s(n);
    s[0] = c_[0].real();
    s[n / 2] = c_[n / 2].real();
    for (int k = 1; k < n / 2; ++k) {
        complex avg = 0.5 * (c_[k] + std::conj(c_[n - k]));
        s[k] = avg;
        s[n - k] = std::conj(avg);
    }
    return {grid_, std::move(s), true};
}

SpectralField multiply(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw config_error("multiply: grid mismatch");
    const int n = a.n();
    const int m = 2 * n;
    VectorXcd ca = VectorXcd::Zero(m), cb = VectorXcd::Zero(m);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        ca[jj] = a.coeffs()[j];
        cb[jj] = b.coeffs()[j];
    }
    ArrayXcd pa = dft_inverse(ca);
    ArrayXcd pb = dft_inverse(cb);
    VectorXcd cp = dft_forward(pa * pb);
    VectorXcd out(n);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        out[j] = cp[jj];
    }
    return SpectralField::from_coeffs(a.grid(), std::move(out), a.is_real() && b.is_real());
}

SpectralField conjugate(const SpectralField& a) {
    const int n = a.n();
    VectorXcd out(n);
    out[0] = std::conj(a.coeffs()[0]);
    out[n / 2] = std::conj(a.coeffs()[n / 2]);
    for (int k = 1; k < n / 2; ++k) {
        out[k] = std::conj(a.coeffs()[n - k]);
        out[n - k] = std::conj(a.coeffs()[k]);
    }
    return SpectralField::from_coeffs(a.grid(), std::move(out), a.is_real());
}

SpectralField real_part(const SpectralField& a) {
    SpectralField c = conjugate(a);
    VectorXcd out = 0.5 * (a.coeffs() + c.coeffs());
    return SpectralField::from_coeffs(a.grid(), std::move(out), true);
}

SpectralField imag_part(const SpectralField& a) {
    SpectralField c = conjugate(a);
    VectorXcd out = (a.coeffs() - c.coeffs()) * complex(0.0, -0.5);
    return SpectralField::from_coeffs(a.grid(), std::move(out), true);
}

SpectralField combine(const SpectralField& re, const SpectralField& im) {
    VectorXcd out = re.coeffs() + complex(0.0, 1.0) * im.coeffs();
    return SpectralField::from_coeffs(re.grid(), std::move(out), false);
}

double inner_l2(const SpectralField& f, const SpectralField& g) {
    // Parseval: int f g dx = L sum f^(xi) conj(g^(xi)) for real f, g.
    complex s = g.coeffs().dot(f.coeffs()); // conj(g) . f
    return f.grid().period() * s.real();
}

} // namespace ww
