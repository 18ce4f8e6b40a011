#ifndef WW_ERRORS_HPP
#define WW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ww {

// Base class for all domain errors thrown by the library.
struct ww_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A Fourier symbol evaluated to a non-finite value at a grid wavenumber.
struct singular_symbol_error : ww_error {
    explicit singular_symbol_error(const std::string& what) : ww_error(what) {}
};

// An operation defined only modulo constants received data with a
// non-negligible mean (Tilbert inverse, holomorphic projection).
struct mean_mode_error : ww_error {
    explicit mean_mode_error(const std::string& what) : ww_error(what) {}
};

// Fixed-point / Newton iteration failed to reach tolerance.
struct divergence_error : ww_error {
    divergence_error(const std::string& what, double last_residual)
        : ww_error(what), residual(last_residual) {}
    double residual;
};

// Surface slope violates the bilipschitz precondition of the conformal map.
struct steepness_error : ww_error {
    explicit steepness_error(const std::string& what) : ww_error(what) {}
};

// State invariant breached after a time step.
struct instability_error : ww_error {
    explicit instability_error(const std::string& what) : ww_error(what) {}
};

// A point could not be pulled back into the strip.
struct locate_error : ww_error {
    explicit locate_error(const std::string& what) : ww_error(what) {}
};

// Conformal map degenerate (J too small) or otherwise unusable.
struct degenerate_map_error : ww_error {
    explicit degenerate_map_error(const std::string& what) : ww_error(what) {}
};

// Weight construction with non-integrable parameters.
struct weight_error : ww_error {
    explicit weight_error(const std::string& what) : ww_error(what) {}
};

// Configuration file / CLI schema violation.
struct config_error : ww_error {
    explicit config_error(const std::string& what) : ww_error(what) {}
};

} // namespace ww

#endif
