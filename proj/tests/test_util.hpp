#ifndef WW_TEST_UTIL_HPP
#define WW_TEST_UTIL_HPP

#include <random>
#include <ww/multipliers.hpp>

namespace wwtest {

using namespace ww;

// Band-limited random real field with zero mean.
inline SpectralField random_field(const Grid& g, unsigned seed, int max_mode = 0,
                                  bool zero_mean = true) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    const int kmax = max_mode > 0 ? max_mode : g.n() / 4;
    VectorXcd c = VectorXcd::Zero(g.n());
    for (int k = 1; k <= kmax && k < g.n() / 2; ++k) {
        complex v(dist(rng), dist(rng));
        v *= std::exp(-0.15 * k);
        c[k] = v;
        c[g.n() - k] = std::conj(v);
    }
    if (!zero_mean) c[0] = dist(rng);
    return SpectralField::from_coeffs(g, std::move(c), true);
}

// O(N^2) discrete Fourier sum, independent of the FFT path.
inline ArrayXcd brute_coeffs(const Grid& g, const ArrayXcd& samples) {
    const int n = g.n();
    ArrayXcd c = ArrayXcd::Zero(n);
    for (int j = 0; j < n; ++j) {
        complex acc = 0.0;
        for (int m = 0; m < n; ++m)
            acc += samples[m] * std::polar(1.0, -2.0 * pi * j * m / n);
        c[j] = acc / static_cast<double>(n);
    }
    return c;
}

// Brute-force multiplier application in sample space.
inline ArrayXd brute_multiplier(const Grid& g, const ArrayXd& samples,
                                const std::function<complex(double)>& symbol) {
    const int n = g.n();
    ArrayXcd c = brute_coeffs(g, samples.cast<complex>());
    ArrayXd out(n);
    for (int m = 0; m < n; ++m) {
        complex acc = 0.0;
        for (int j = 0; j < n; ++j)
            acc += symbol(g.xi(j)) * c[j] * std::polar(1.0, 2.0 * pi * j * m / n);
        out[m] = acc.real();
    }
    return out;
}

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace wwtest

#endif
