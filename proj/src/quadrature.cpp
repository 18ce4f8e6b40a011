#include <ww/quadrature.hpp>

#include <cmath>
#include <stdexcept>

namespace ww {

QuadRule gauss_legendre(int n) {
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double eps = 1e-15;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double z = std::cos(3.141592653589793 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < eps) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        r.w[n - 1 - i] = r.w[i];
    }
    return r;
}

QuadRule gauss_legendre(int n, double a, double b) {
    QuadRule base = gauss_legendre(n);
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.x[i] = mid + half * base.x[i];
        r.w[i] = half * base.w[i];
    }
    return r;
}

QuadRule composite_gauss(const std::vector<double>& breaks, int n_per_panel) {
    if (breaks.size() < 2) throw std::invalid_argument("composite_gauss: need at least one panel");
    QuadRule r;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        QuadRule panel = gauss_legendre(n_per_panel, breaks[p], breaks[p + 1]);
        r.x.insert(r.x.end(), panel.x.begin(), panel.x.end());
        r.w.insert(r.w.end(), panel.w.begin(), panel.w.end());
    }
    return r;
}

std::vector<double> geometric_breaks(double a, double b, int panels) {
    // Panel widths halve toward b: widths proportional to 2^{-i}.
    std::vector<double> br(panels + 1);
    double total = 0.0;
    for (int i = 0; i < panels; ++i) total += std::pow(0.5, i);
    br[0] = a;
    double acc = 0.0;
    for (int i = 0; i < panels; ++i) {
        acc += std::pow(0.5, i) / total;
        br[i + 1] = a + (b - a) * acc;
    }
    br[panels] = b;
    return br;
}

} // namespace ww
