#ifndef WW_LINEAR_HPP
#define WW_LINEAR_HPP

#include <ww/strip.hpp>

namespace ww {

// Linearization of the water-wave system around the flat state:
//   eta_t = T_h d_x psi,   psi_t = -g eta.
struct LinearState {
    SpectralField eta;
    SpectralField psi;
    double t = 0.0;
    double g = 1.0;
    double h = 1.0;

    const Grid& grid() const { return eta.grid(); }
};

struct LinearRhs {
    SpectralField eta_t;
    SpectralField psi_t;
};

LinearRhs linear_rhs(const LinearState& s);

LinearState step_rk4_linear(const LinearState& s, double dt);

// Exact per-mode rotation by time dt (test oracle; bypasses the stepper).
LinearState exact_linear_advance(const LinearState& s, double dt);

struct LinearTrajectory {
    std::vector<double> times;
    std::vector<LinearState> states;
    double dt = 0.0;
    int size() const { return static_cast<int>(states.size()); }
    const LinearState& at(int i) const { return states[static_cast<std::size_t>(i)]; }
};

LinearTrajectory run_linear(const LinearState& s0, double T, double dt, int snap_stride = 1,
                            bool exact = false);

// omega(k) = sqrt(g k tanh(h k)) for the mode with wavenumber k > 0.
double dispersion_omega(double g, double h, double k);

// Conserved linear energy  g/2 ||eta||^2 + 1/2 <T_h d_x psi, psi>.
double linear_energy(const LinearState& s);

// E_lin^s norms built on Lambda_h = xi coth(h xi) weights.
double linear_energy_s(const LinearState& s, double sexp);

// Eigenmode data (eta, psi) = a (cos(kx), (omega / (k tanh(hk))) sin(kx)),
// a rightward traveling wave of the linear system.
LinearState linear_mode(const Grid& grid, double g, double h, int k, double a);

// Gaussian wave packet centered at x_c with carrier k0, rightward moving.
LinearState linear_packet(const Grid& grid, double g, double h, double k0, double width,
                          double x_c, double a);

} // namespace ww

#endif
