#ifndef WW_MORAWETZ_HPP
#define WW_MORAWETZ_HPP

#include <ww/densities.hpp>

namespace ww {

// --- E^{1/4} and X norms -------------------------------------------------------

// || (eta, psi) ||_{E^{1/4}}^2 = g^{-1/2} ||eta||_{H^{1/4}_h}^2
//                              + g^{1/2} ||psi||_{Hdot^{3/4}_h}^2.
double e_quarter_sq(const SpectralField& eta, const SpectralField& psi, double g, double h);

// Linearized-energy variant built on Lambda_h = xi coth(h xi) weights.
double e_lin_quarter_sq(const SpectralField& eta, const SpectralField& psi, double g, double h);

struct XNormReport {
    double value = 0.0;          // low block + sum over dyadic blocks
    FrequencyEnvelope envelope;  // per-block X0 norms and their envelope
    double eta_sup_over_h = 0.0; // Bernstein consequence |eta| <~ eps0 h
    double etax_sup = 0.0;       // |eta_x| <~ eps0
};

// ||(eta, grad phi|top)||_X with X0 = L^inf_t H^{3/2}_h x g^{-1/2} L^inf_t H^1_h,
// L^inf_t realized as the max over the supplied snapshots.
XNormReport x_norm(const std::vector<SpectralField>& eta_snaps,
                   const std::vector<SpectralField>& gradphi_snaps, double g, double h,
                   double delta = 0.1);

// --- local energy ---------------------------------------------------------------

struct LocalEnergyReport {
    std::vector<double> per_x0;  // windowed local energy, one per grid x0
    double sup = 0.0;
    double e_quarter_start = 0.0, e_quarter_end = 0.0;
    double ratio_c = 0.0;        // sup / (E14(0)^2 + E14(T)^2)
    double window_width = 2.0;
    std::string normalization;   // which endpoint norm was used
};

LocalEnergyReport local_energy(const Trajectory& traj, double chi_width = 2.0,
                               const DensityOptions& opt = {});
LocalEnergyReport local_energy_linear(const LinearTrajectory& traj, const DepthGrid& depth,
                                      double chi_width = 2.0);

// --- the functional I_m^sigma ----------------------------------------------------

struct MorawetzSeries {
    std::vector<double> times;
    std::vector<double> value;      // I_m^sigma(t)
    std::vector<double> flux_form;  // int m_x (sigma S2 + (1-sigma) S3) dx - seam
    double fd_mismatch = 0.0;       // max |d/dt value - flux_form| (relative)
    double fixed_time_ratio = 0.0;  // max |I(t)| / E14(t)^2
};

MorawetzSeries morawetz_functional(const std::vector<DensitySlice>& slices,
                                   const Trajectory& traj, double sigma, const Weight& w);

// --- Q_m two ways ----------------------------------------------------------------

// Direct strip quadrature of  iint m (H_N(eta)_y H_D(eta)_x - H_N(eta)_x H_D(eta)_y).
double qm_direct(const SpectralField& eta, const Weight& w, const DepthGrid& depth);
// Symbol route: int m_x B^h(eta,eta) dx - delta_m B^h(eta,eta)(0).
double qm_symbol(const SpectralField& eta, const Weight& w, double h);

// --- identity verifiers -----------------------------------------------------------

// Lemma (flat bottom):
//   iint w (phi_x^2 - phi_y^2) = int w (h+eta) phi_x^2(.,-h)
//       - 2 iint w eta_x phi_x phi_y + 2 iint w_x (y - eta) phi_x phi_y.
// Returns the relative residual; exact strip when eta = 0.
double verify_L33(const SpectralField& eta, const SpectralField& psi, double g, double h,
                  const ArrayXd& w_samples, const ArrayXd& wx_samples, int y_panels = 6,
                  int y_nodes = 10);

// Lemma: int mu N(eta) psi = - iint mu_x phi_x phi_y + 1/2 int mu phi_x^2(., -h).
double verify_C6(const SpectralField& eta, const SpectralField& psi, double g, double h,
                 const ArrayXd& mu_samples, const ArrayXd& mux_samples, int y_panels = 6,
                 int y_nodes = 10);

// --- the appendix virial inequality ------------------------------------------------

struct VirialReport {
    bool hypotheses_ok = false;
    double hyp_eta_min = 0.0;       // needs >= -h/2
    double hyp_slope = 0.0;         // needs <= 1/3
    double hyp_weight = 0.0;        // eps r (h + |eta|_inf), needs <= 1/42
    double lhs = 0.0;               // int_0^T { g int m_x eta^2 + iint m_x |grad phi|^2 }
    double rhs = 0.0;               // 14 iint m_x S1 + 2 iint m_x S2 (Bernoulli S1)
    double kinetic_lhs = 0.0;       // int_0^T iint m_x |grad phi|^2
    double kinetic_rhs = 0.0;       // 7 iint m_x S1
    double endpoint_I1 = 0.0;       // [int m I1]_0^T
    double endpoint_I2 = 0.0;       // [int m I2]_0^T
    double seam_S1 = 0.0;           // delta_m int_0^T S1(seam) dt (Bernoulli form)
    double seam_S2 = 0.0;
    double conservation_defect = 0.0; // | iint m_x S - (endpoint + seam) | consistency
    double pressure_min = 0.0;
    bool inequality_ok = false;
    bool kinetic_ok = false;
};

VirialReport virial_check(const Trajectory& traj, const std::vector<DensitySlice>& slices,
                          const Weight& w);

// --- linear Morawetz identities ------------------------------------------------------

struct LinearIdentityReport {
    double est1_residual = 0.0;  // d/dt int m I2 = g/2 int m_x eta^2 + 1/2 iint m_x (phi_x^2-phi_y^2)
    double est3_residual = 0.0;  // d/dt int m I3 = 1/2 iint m_x |grad phi|^2 + g Q_m(eta)
    double le_phi = 0.0;         // sigma-combined kinetic local energy
    double le_eta = 0.0;         // sigma-combined potential local energy (Q_m path)
    double dmi_lhs = 0.0;        // I_m^sigma(T) - I_m^sigma(0)
    double dmi_split_residual = 0.0; // |dmi_lhs - (le_phi + le_eta)| (relative)
};

LinearIdentityReport linear_identities(const LinearTrajectory& traj, const Weight& w,
                                       double sigma, const DepthGrid& depth);

// --- normal form correction density ---------------------------------------------------

// iint m_alpha Im R H_D(Im W Re W_alpha) dalpha dbeta and its E^{1/4} ratio.
struct NormalFormReport {
    double value = 0.0;
    double e_quarter_ratio = 0.0;
};
NormalFormReport normal_form_density(const HoloState& s, const Weight& w, const DepthGrid& depth,
                                     const SolverConfig& cfg = {});

// Err1 = sigma int_0^T int m_x eta N(eta) psi dx dt.
double err1_term(const Trajectory& traj, const Weight& w, double sigma);

} // namespace ww

#endif
