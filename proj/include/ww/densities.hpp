#ifndef WW_DENSITIES_HPP
#define WW_DENSITIES_HPP

#include <ww/fields.hpp>
#include <ww/linear.hpp>
#include <ww/weights.hpp>

namespace ww {

// Momentum densities and fluxes on the Eulerian surface grid at one time:
//   I1 = int phi_x dy                 S1 = -int phi_t dy - g/2 eta^2 + 1/2 int (phi_x^2 - phi_y^2) dy
//   I2 = eta psi_x                    S2 = -eta psi_t - g/2 eta^2 + 1/2 int (phi_x^2 - phi_y^2) dy
//   I3 = int grad theta . grad q dy   S3 = -g/2 eta^2 - int theta_y phi_t dy
//                                          + int (1/2 (phi_x^2 - phi_y^2) + theta_t phi_y) dy
// Depth integrals run along Eulerian verticals pulled back through the map.
struct DensitySlice {
    double t = 0.0;
    ArrayXd I1, I2, I3, S1, S2, S3;
    ArrayXd kinetic_density;  // int |grad phi|^2 dy (local-energy integrand)
    ArrayXd pressure_min;     // min of P over the vertical nodes
    ArrayXd bottom_phix_sq;   // phi_x^2 at the bottom
    ArrayXd eta, eta_x;       // surface data (virial hypotheses)
};

struct DensityOptions {
    int y_panels = 4;
    int y_nodes = 8;
    double inf_depth_truncation = 0.0; // required for h = inf
};

DensitySlice density_slice(const HoloState& s, const Grid& xgrid,
                           const DensityOptions& opt = {}, const SolverConfig& cfg = {});

struct DensityFluxSeries {
    int which = 2;                 // 1, 2 or 3
    std::vector<double> times;
    std::vector<ArrayXd> I, S;     // per snapshot on the surface grid
    Grid grid{2, 1.0};
};

DensityFluxSeries density_flux(const Trajectory& traj, int which,
                               const DensityOptions& opt = {});

// All three series in one pass (the vertical sweeps are shared).
std::vector<DensitySlice> density_slices(const Trajectory& traj, const DensityOptions& opt = {});

// Integrated local conservation law residual on [0, t_j] for every j:
//   r = [ int m I dx ]_0^T - int_0^T ( int m_x S dx - delta_m S(seam) ) dt,
// normalized by the larger of the two terms.
std::vector<double> conservation_residual(const DensityFluxSeries& series, const Weight& w);

// Linear-solver counterpart on the flat strip (no pullback needed).
DensityFluxSeries linear_density_flux(const LinearTrajectory& traj, int which,
                                      const DepthGrid& depth);

} // namespace ww

#endif
