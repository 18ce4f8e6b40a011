#ifndef WW_SOLVER_HPP
#define WW_SOLVER_HPP

#include <optional>
#include <ww/conformal.hpp>

namespace ww {

// Holomorphic water-wave state: W = Z - alpha and Q = phi + i q traces.
struct HoloState {
    SpectralField W;
    SpectralField Q;
    double t = 0.0;
    double g = 1.0;
    double h = 1.0; // strip depth (may be inf)

    const Grid& grid() const { return W.grid(); }
    // Throws instability_error when holomorphy, the mean conventions, or
    // 1 + Re W_alpha > 0 fail.
    void validate(double holo_tol = 1e-8) const;
};

struct AuxFields {
    SpectralField J;     // |1 + W_alpha|^2 (real)
    SpectralField R;     // Q_alpha / (1 + W_alpha)
    SpectralField Y;     // W_alpha / (1 + W_alpha)
    SpectralField F;     // gauge-fixed projection of 2i Im(Q_alpha)/J
    SpectralField b_adv; // Re F
    double j_min = 0.0;
};

enum class GaugeKind { zero_mean_re_f, window_point };

struct SolverConfig {
    double cfl = 0.5;
    double dt_fixed = 0.0;         // > 0 overrides the CFL policy
    bool dealias_products = true;
    double filter_strength = 0.0;  // 36th-order exponential filter, 0 disables
    GaugeKind gauge = GaugeKind::zero_mean_re_f;
    double gauge_alpha0 = 0.0;     // window center for GaugeKind::window_point
    double T = 1.0;
    int snap_stride = 1;           // snapshot every this many steps
};

AuxFields aux_fields(const HoloState& s, const SolverConfig& cfg = {});

// Add the real constant fixing Re W_t(alpha0) = 0 (windowed diagnostics).
SpectralField gauge_fix(const SpectralField& F_raw, const HoloState& s, double alpha0);

// Right-hand side of the holomorphic system:
//   W_t = -F (1 + W_alpha),
//   Q_t = -F Q_alpha + g T_h[W] - P_h[|Q_alpha|^2 / J].
struct HoloRhs {
    SpectralField W_t;
    SpectralField Q_t;
};
HoloRhs rhs(const HoloState& s, const SolverConfig& cfg = {});

double cfl_dt(const HoloState& s, const SolverConfig& cfg);

HoloState step_rk4(const HoloState& s, double dt, const SolverConfig& cfg = {});

struct Trajectory {
    std::vector<double> times;
    std::vector<HoloState> states;
    SolverConfig config;
    double dt = 0.0;

    const HoloState& at(int i) const { return states[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(states.size()); }
};

Trajectory run(const HoloState& s0, const SolverConfig& cfg);

// Conserved quantities in holomorphic variables.
double energy(const HoloState& s);
double momentum(const HoloState& s);

// Initial data builders.
HoloState to_holomorphic(const SpectralField& eta, const SpectralField& psi, double g, double h,
                         MapReport* report = nullptr);
HoloState rest_state(const Grid& grid, double g, double h);

} // namespace ww

#endif
