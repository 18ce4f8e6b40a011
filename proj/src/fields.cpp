#include <ww/fields.hpp>

#include <sstream>

namespace ww {

namespace {

ArrayXcd fine_csamples2(const SpectralField& f) {
    const int n = f.n();
    const int m = 2 * n;
    VectorXcd c = VectorXcd::Zero(m);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        c[jj] = f.coeffs()[j];
    }
    return dft_inverse(c);
}

SpectralField from_fine2(const Grid& g, const ArrayXcd& fine, bool realness) {
    const int n = g.n();
    const int m = 2 * n;
    VectorXcd c = dft_forward(fine);
    VectorXcd out(n);
    for (int j = 0; j < n; ++j) {
        int k = j <= n / 2 ? j : j - n;
        int jj = k >= 0 ? k : k + m;
        out[j] = c[jj];
    }
    return SpectralField::from_coeffs(g, std::move(out), realness);
}

// Extension value of trace pair (re via p_N, im via p_D) at a strip point;
// kmax restricts the sum to the occupied band.
complex holo_eval(const SpectralField& re, const SpectralField& im, double h, double alpha,
                  double beta, int kmax = 0) {
    const Grid& g = re.grid();
    const int n = g.n();
    const int top = kmax > 0 ? std::min(kmax, n / 2) : n / 2;
    const double kap = g.xi_fundamental();
    const complex rot = std::polar(1.0, kap * alpha);
    complex accU = p_neumann(h, 0.0, beta) * re.coeffs()[0];
    complex accV = p_dirichlet(h, 0.0, beta) * im.coeffs()[0];
    complex ep = 1.0;
    for (int k = 1; k <= top; ++k) {
        ep *= rot;
        const double xi = kap * k;
        const double pn = p_neumann(h, xi, beta);
        const double pd = p_dirichlet(h, xi, beta);
        if (k < n / 2) {
            accU += pn * (re.coeffs()[k] * ep + re.coeffs()[n - k] * std::conj(ep));
            accV += pd * (im.coeffs()[k] * ep + im.coeffs()[n - k] * std::conj(ep));
        } else {
            accU += pn * re.coeffs()[k] * ep;
            accV += pd * im.coeffs()[k] * ep;
        }
    }
    return {accU.real(), accV.real()};
}

double real_ext_eval(const SpectralField& trace, double h, double alpha, double beta,
                     bool neumann, int kmax = 0) {
    const Grid& g = trace.grid();
    const int n = g.n();
    const int top = kmax > 0 ? std::min(kmax, n / 2) : n / 2;
    const double kap = g.xi_fundamental();
    const complex rot = std::polar(1.0, kap * alpha);
    double p0 = neumann ? p_neumann(h, 0.0, beta) : p_dirichlet(h, 0.0, beta);
    complex acc = p0 * trace.coeffs()[0];
    complex ep = 1.0;
    for (int k = 1; k <= top; ++k) {
        ep *= rot;
        const double xi = kap * k;
        const double p = neumann ? p_neumann(h, xi, beta) : p_dirichlet(h, xi, beta);
        if (k < n / 2)
            acc += p * (trace.coeffs()[k] * ep + trace.coeffs()[n - k] * std::conj(ep));
        else
            acc += p * trace.coeffs()[k] * ep;
    }
    return acc.real();
}

int occupied_band(std::initializer_list<const SpectralField*> fields) {
    int band = 1;
    for (const SpectralField* f : fields) {
        const int n = f->n();
        for (int k = n / 2; k >= 1; --k) {
            const double mag = std::abs(f->coeff_mode(k)) + std::abs(f->coeff_mode(-k));
            if (mag > 1e-300) {
                band = std::max(band, k);
                break;
            }
        }
    }
    return band;
}

} // namespace

BulkEvaluator::BulkEvaluator(const HoloState& s)
    : s_(s),
      reW_(real_part(s.W)),
      imW_(imag_part(s.W)),
      reDW_(real_part(s.W.derivative())),
      imDW_(imag_part(s.W.derivative())),
      reQ_(real_part(s.Q)),
      imQ_(imag_part(s.Q)),
      reDQ_(real_part(s.Q.derivative())),
      imDQ_(imag_part(s.Q.derivative())),
      R_top_(SpectralField::zero(s.grid())),
      Y_top_(SpectralField::zero(s.grid())),
      phit_trace_(SpectralField::zero(s.grid())),
      thetat_trace_(SpectralField::zero(s.grid())) {
    // placeholder; band computed after the traces are assembled below
    // R = Q_alpha / (1 + W_alpha), Y = W_alpha / (1 + W_alpha) on the top.
    ArrayXcd wa = fine_csamples2(s.W.derivative());
    ArrayXcd qa = fine_csamples2(s.Q.derivative());
    ArrayXcd opw = 1.0 + wa;
    R_top_ = from_fine2(s.grid(), qa / opw, false);
    Y_top_ = from_fine2(s.grid(), wa / opw, false);

    ArrayXcd r_f = fine_csamples2(R_top_);
    ArrayXcd imw_f = fine_csamples2(imW_);
    ArrayXd phit = -s.g * imw_f.real() - 0.5 * r_f.abs2();
    phit_trace_ = from_fine2(s.grid(), phit.cast<complex>(), true);

    ArrayXcd y_f = fine_csamples2(Y_top_);
    ArrayXd ntp = (r_f.conjugate() * y_f).imag(); // grad theta . grad phi = Im(conj(R) Y)
    thetat_trace_ = from_fine2(s.grid(), ntp.cast<complex>(), true);

    band_ = occupied_band({&reW_, &imW_, &reDW_, &imDW_, &reQ_, &imQ_, &reDQ_, &imDQ_,
                           &phit_trace_, &thetat_trace_});
}

std::pair<double, double> BulkEvaluator::locate_from(double x, double y, double a0,
                                                     double b0) const {
    const complex target(x, y);
    double a = a0, b = b0;
    for (int it = 0; it < 80; ++it) {
        const complex f = complex(a, b) + Wext(a, b) - target;
        if (std::abs(f) < 1e-12 * (1.0 + std::abs(target))) return {a, b};
        const complex dz = dZ(a, b);
        const complex step = f / dz;
        a -= step.real();
        b -= step.imag();
        if (b > 0.0) b = 0.0;
        if (b < -s_.h) b = -s_.h;
    }
    std::ostringstream os;
    os << "locate: Newton stalled at (" << x << ", " << y << ")";
    throw locate_error(os.str());
}

complex BulkEvaluator::Wext(double alpha, double beta) const {
    return holo_eval(reW_, imW_, s_.h, alpha, beta, band_);
}

complex BulkEvaluator::Z(double alpha, double beta) const {
    return complex(alpha, beta) + Wext(alpha, beta);
}

complex BulkEvaluator::dZ(double alpha, double beta) const {
    return 1.0 + holo_eval(reDW_, imDW_, s_.h, alpha, beta, band_);
}

complex BulkEvaluator::R(double alpha, double beta) const {
    const complex qp = holo_eval(reDQ_, imDQ_, s_.h, alpha, beta, band_);
    return qp / dZ(alpha, beta);
}

complex BulkEvaluator::Y(double alpha, double beta) const {
    const complex wp = holo_eval(reDW_, imDW_, s_.h, alpha, beta, band_);
    return wp / (1.0 + wp);
}

complex BulkEvaluator::Qext(double alpha, double beta) const {
    return holo_eval(reQ_, imQ_, s_.h, alpha, beta, band_);
}

double BulkEvaluator::phi_t(double alpha, double beta) const {
    return real_ext_eval(phit_trace_, s_.h, alpha, beta, true, band_);
}

double BulkEvaluator::theta_t(double alpha, double beta) const {
    const double phi_y = -R(alpha, beta).imag();
    return phi_y - real_ext_eval(thetat_trace_, s_.h, alpha, beta, false, band_);
}

BulkEvaluator::BulkNode BulkEvaluator::node(double alpha, double beta) const {
    BulkNode out;
    const complex wp = holo_eval(reDW_, imDW_, s_.h, alpha, beta, band_);
    const complex qp = holo_eval(reDQ_, imDQ_, s_.h, alpha, beta, band_);
    out.dZ = 1.0 + wp;
    out.R = qp / out.dZ;
    out.Y = wp / out.dZ;
    out.phi_t = real_ext_eval(phit_trace_, s_.h, alpha, beta, true, band_);
    out.theta_t = -out.R.imag() - real_ext_eval(thetat_trace_, s_.h, alpha, beta, false, band_);
    const double y = beta + holo_eval(reW_, imW_, s_.h, alpha, beta, band_).imag();
    out.pressure = -(out.phi_t + 0.5 * std::norm(out.R) + s_.g * y);
    return out;
}

double BulkEvaluator::pressure(double alpha, double beta) const {
    const complex r = R(alpha, beta);
    const double y = Z(alpha, beta).imag();
    return -(phi_t(alpha, beta) + 0.5 * std::norm(r) + s_.g * y);
}

double BulkEvaluator::alpha_of_x(double x) const {
    double a = x;
    for (int it = 0; it < 60; ++it) {
        const double f = a + reW_.eval_real(a) - x;
        const double fp = 1.0 + reDW_.eval_real(a);
        a -= f / fp;
        if (std::abs(f) < 1e-13 * (1.0 + std::abs(x))) return a;
    }
    throw locate_error("alpha_of_x: Newton stalled");
}

SurfaceData BulkEvaluator::surface(const Grid& xgrid) const {
    SurfaceData sd{xgrid,
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n()),
                   ArrayXd(xgrid.n())};
    ArrayXd pts = xgrid.points();
    for (int i = 0; i < xgrid.n(); ++i) {
        const double a = alpha_of_x(pts[i]);
        sd.alpha[i] = a;
        const double rewa = reDW_.eval_real(a);
        const double imwa = imDW_.eval_real(a);
        const complex r = R_top_.eval(a);
        sd.eta[i] = imW_.eval_real(a);
        sd.eta_x[i] = imwa / (1.0 + rewa);
        sd.psi[i] = reQ_.eval_real(a);
        sd.psi_x[i] = reDQ_.eval_real(a) / (1.0 + rewa);
        sd.phi_x[i] = r.real();
        sd.phi_y[i] = -r.imag();
        sd.gradphi_sq[i] = std::norm(r);
        sd.dtn[i] = sd.phi_y[i] - sd.eta_x[i] * sd.phi_x[i];
        const double gplus = sd.dtn[i] + sd.eta_x[i] * sd.psi_x[i];
        sd.n_eta_psi[i] =
            0.5 * sd.psi_x[i] * sd.psi_x[i] - 0.5 * gplus * gplus / (1.0 + sd.eta_x[i] * sd.eta_x[i]);
        sd.psi_t[i] = -s_.g * sd.eta[i] - sd.n_eta_psi[i];
    }
    return sd;
}

BulkFields bulk_fields(const HoloState& s, const DepthGrid& depth) {
    BulkEvaluator ev(s);
    const Grid& g = s.grid();
    const int na = g.n(), nb = depth.size();
    BulkFields bf{g,
                  depth,
                  Eigen::MatrixXd(na, nb),
                  Eigen::MatrixXd(na, nb),
                  Eigen::MatrixXd(na, nb),
                  Eigen::MatrixXd(na, nb),
                  Eigen::MatrixXd(na, nb),
                  Eigen::MatrixXd(na, nb)};
    ArrayXd pts = g.points();
    for (int i = 0; i < na; ++i) {
        for (int jb = 0; jb < nb; ++jb) {
            const double a = pts[i], b = depth.nodes()[jb];
            const complex Q = ev.Qext(a, b);
            bf.phi(i, jb) = Q.real();
            bf.q(i, jb) = Q.imag();
            bf.theta(i, jb) = ev.Wext(a, b).imag();
            bf.phi_t(i, jb) = ev.phi_t(a, b);
            bf.theta_t(i, jb) = ev.theta_t(a, b);
            bf.pressure(i, jb) = ev.pressure(a, b);
        }
    }
    return bf;
}

SpectralField dtn_nonlinear(const SpectralField& eta, const SpectralField& psi, double g,
                            double h) {
    HoloState s = to_holomorphic(eta, psi, g, h);
    BulkEvaluator ev(s);
    SurfaceData sd = ev.surface(eta.grid());
    return SpectralField::from_samples(eta.grid(), sd.dtn);
}

} // namespace ww
