#ifndef WW_ACCEPTANCE_HPP
#define WW_ACCEPTANCE_HPP

#include <string>
#include <vector>
#include <ww/report.hpp>

namespace ww {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::vector<Verdict> checks;
    double seconds = 0.0;

    bool pass() const {
        for (const Verdict& v : checks)
            if (!v.pass) return false;
        return true;
    }
};

// Run the acceptance criteria whose tag contains `filter` (empty = all).
// Tags: dispersion, conservation, momentum, local-law, qm, kernel, virial,
// identities, linear-morawetz, operators.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

} // namespace ww

#endif
