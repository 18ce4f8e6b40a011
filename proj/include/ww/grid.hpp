#ifndef WW_GRID_HPP
#define WW_GRID_HPP

#include <Eigen/Dense>
#include <cmath>
#include <ww/errors.hpp>

namespace ww {

using Eigen::ArrayXd;
using Eigen::ArrayXcd;
using Eigen::VectorXcd;
using complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Uniform periodic grid on [0, L).  Wavenumbers follow the standard DFT
// layout: index j carries xi_j = 2*pi*k_j/L with k_j = j for j <= n/2 and
// k_j = j - n for j > n/2 (the Nyquist mode j = n/2 is its own negative).
class Grid {
  public:
    Grid(int n_points, double period) : n_(n_points), L_(period) {
        if (n_ <= 0 || n_ % 2 != 0) throw config_error("Grid: n_points must be positive and even");
        if (!(L_ > 0.0)) throw config_error("Grid: period must be positive");
    }

    int n() const { return n_; }
    double period() const { return L_; }
    double spacing() const { return L_ / n_; }

    // Integer mode number for coefficient slot j.
    int mode(int j) const { return j <= n_ / 2 ? j : j - n_; }
    // Wavenumber for coefficient slot j.
    double xi(int j) const { return 2.0 * pi * mode(j) / L_; }
    double xi_max() const { return 2.0 * pi * (n_ / 2) / L_; }
    double xi_fundamental() const { return 2.0 * pi / L_; }

    ArrayXd points() const {
        ArrayXd x(n_);
        for (int i = 0; i < n_; ++i) x[i] = spacing() * i;
        return x;
    }
    ArrayXd wavenumbers() const {
        ArrayXd k(n_);
        for (int j = 0; j < n_; ++j) k[j] = xi(j);
        return k;
    }

    bool operator==(const Grid& o) const { return n_ == o.n_ && L_ == o.L_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

  private:
    int n_;
    double L_;
};

} // namespace ww

#endif
