#ifndef WW_QUADRATURE_HPP
#define WW_QUADRATURE_HPP

#include <vector>
#include <functional>

namespace ww {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;

    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
        return s;
    }
};

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int n);
// Gauss-Legendre rule mapped to [a, b].
QuadRule gauss_legendre(int n, double a, double b);
// Composite rule over the given breakpoints, n nodes per panel.
QuadRule composite_gauss(const std::vector<double>& breaks, int n_per_panel);
// Breakpoints for [a, b] refined geometrically toward b (ratio 2).
std::vector<double> geometric_breaks(double a, double b, int panels);

} // namespace ww

#endif
