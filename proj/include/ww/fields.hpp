#ifndef WW_FIELDS_HPP
#define WW_FIELDS_HPP

#include <ww/solver.hpp>

namespace ww {

// Surface quantities of a holomorphic state resampled onto the Eulerian
// grid x_i (period preserved by the conformal map).
struct SurfaceData {
    Grid grid;                 // Eulerian grid
    ArrayXd alpha;             // alpha(x_i)
    ArrayXd eta, eta_x;
    ArrayXd psi, psi_x;
    ArrayXd phi_x, phi_y;      // surface trace of the velocity
    ArrayXd gradphi_sq;        // |grad phi|^2 on the surface
    ArrayXd dtn;               // G(eta) psi = phi_y - eta_x phi_x
    ArrayXd n_eta_psi;         // Bernoulli nonlinearity N(eta) psi
    ArrayXd psi_t;             // -g eta - N(eta) psi
};

// Pointwise bulk evaluation of a holomorphic state: everything is pulled
// back through Z = z + W, so all fields live on holomorphic traces.
class BulkEvaluator {
  public:
    explicit BulkEvaluator(const HoloState& s);

    const HoloState& state() const { return s_; }

    // Strip-coordinate pullback of an Eulerian point (Newton).
    std::pair<double, double> locate(double x, double y) const {
        return locate_from(x, y, x, std::min(0.0, std::max(-s_.h, y)));
    }
    // Warm-started variant for marching along a vertical.
    std::pair<double, double> locate_from(double x, double y, double a0, double b0) const;

    complex Z(double alpha, double beta) const;
    complex dZ(double alpha, double beta) const;      // 1 + W'
    complex R(double alpha, double beta) const;       // phi_x - i phi_y
    complex Y(double alpha, double beta) const;       // theta_y + i theta_x
    complex Qext(double alpha, double beta) const;    // phi + i q
    complex Wext(double alpha, double beta) const;

    double phi(double alpha, double beta) const { return Qext(alpha, beta).real(); }
    double q(double alpha, double beta) const { return Qext(alpha, beta).imag(); }
    double theta(double alpha, double beta) const { return Wext(alpha, beta).imag(); }

    // Eulerian time derivatives: phi_t is the Neumann extension of
    // -g eta - 1/2 |grad phi|^2 (Bernoulli trace), theta_t the Dirichlet
    // representation phi_y - H_D(grad theta . grad phi).
    double phi_t(double alpha, double beta) const;
    double theta_t(double alpha, double beta) const;

    // Bernoulli pressure at the Eulerian image of (alpha, beta).
    double pressure(double alpha, double beta) const;

    double alpha_of_x(double x) const;

    // Fused single-point evaluation (one W' sum, one Q' sum shared).
    struct BulkNode {
        complex R, Y, dZ;
        double phi_t = 0.0, theta_t = 0.0, pressure = 0.0;
    };
    BulkNode node(double alpha, double beta) const;

    SurfaceData surface(const Grid& xgrid) const;

    const SpectralField& R_top() const { return R_top_; }
    const SpectralField& Y_top() const { return Y_top_; }
    const SpectralField& grad_theta_grad_phi_top() const { return thetat_trace_; }

  private:
    HoloState s_;
    int band_ = 0; // highest occupied mode over all traces
    SpectralField reW_, imW_, reDW_, imDW_;
    SpectralField reQ_, imQ_, reDQ_, imDQ_;
    SpectralField R_top_, Y_top_;
    SpectralField phit_trace_;    // -g Im W - 1/2 |R|^2
    SpectralField thetat_trace_;  // Im(conj(R) Y) on top
};

// Tensor-grid materialization of the bulk fields on alpha x beta nodes.
struct BulkFields {
    Grid surface;
    DepthGrid depth;
    Eigen::MatrixXd phi, theta, q, phi_t, theta_t, pressure;
};
BulkFields bulk_fields(const HoloState& s, const DepthGrid& depth);

// Nonlinear Dirichlet-to-Neumann map G(eta) psi sampled on the x grid.
SpectralField dtn_nonlinear(const SpectralField& eta, const SpectralField& psi, double g, double h);

} // namespace ww

#endif
