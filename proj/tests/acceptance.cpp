// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Run directly or through ctest.
#include <cstdio>
#include <cstring>

#include <ww/acceptance.hpp>

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    std::vector<ww::CriterionResult> results;
    try {
        results = ww::run_acceptance(filter);
    } catch (const ww::ww_error& e) {
        std::fprintf(stderr, "acceptance suite error: %s\n", e.what());
        return 2;
    }
    bool ok = true;
    for (const ww::CriterionResult& r : results) {
        ok = ok && r.pass();
        std::printf("[%s] criterion %2d: %-34s (%.1f s)\n", r.pass() ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds);
        for (const ww::Verdict& v : r.checks) {
            std::printf("    %-48s value=%+.6e tol=%.1e %s\n", v.name.c_str(), v.value,
                        v.tolerance, v.pass ? "ok" : "FAIL");
        }
    }
    return ok ? 0 : 1;
}
