#ifndef WW_CONFIG_HPP
#define WW_CONFIG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>
#include <ww/errors.hpp>

namespace ww {

// Scenario configuration: a flat key=value file plus repeatable --set
// overrides.  Every field and whether it was defaulted is echoed into the
// output metadata.
struct RunConfig {
    // physics
    double g = 1.0;
    double h = 1.0;              // "inf" accepted
    double amplitude = 0.01;
    std::string data_kind = "mode"; // mode | packet | file | rest
    int mode_k = 1;
    double packet_k0 = 4.0;
    double packet_width = 4.0;
    double packet_center = -1.0; // < 0: period midpoint
    std::string data_file;

    // numerics
    int grid_n = 256;            // required in files (no silent default)
    double grid_length = 2.0 * 3.14159265358979323846;
    std::string model = "nonlinear"; // nonlinear | linear
    double cfl = 0.4;
    double dt = 0.0;             // 0: CFL policy
    double T = -1.0;             // required
    int snap_stride = 2;
    double filter_strength = 0.0;
    bool dealias = true;

    // diagnostics toggles
    bool diag_densities = true;
    bool diag_virial = false;
    bool diag_linear_identities = false;
    bool diag_kernel = false;
    bool diag_qm = false;
    bool diag_local_energy = false;
    bool diag_norms = false;

    // weight
    std::string weight_kind = "bump"; // bump | rational
    double weight_eps = 0.1;
    double weight_r = 1.0;
    double weight_width = 2.0;
    double sigma = 0.49;

    // output
    std::string out_dir = "out";
    unsigned long long seed = 1;
    bool strict = false;

    // bookkeeping
    std::map<std::string, std::string> echo;      // canonical key -> value
    std::vector<std::string> defaulted;           // keys never set by the user

    static RunConfig load(const std::string& path, const std::vector<std::string>& overrides);
    static RunConfig from_pairs(const std::map<std::string, std::string>& pairs);
    std::string canonical() const;                // sorted key=value lines
    unsigned long long hash() const;              // FNV-1a of canonical()
};

} // namespace ww

#endif
