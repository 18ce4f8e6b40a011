#ifndef WW_TIMEINT_HPP
#define WW_TIMEINT_HPP

#include <vector>
#include <stdexcept>

namespace ww {

// Composite Simpson weights on a uniform grid of nt samples spaced dt
// (3/8 rule absorbs an odd interval count); falls back to trapezoid for
// fewer than three samples.
inline std::vector<double> simpson_weights(int nt, double dt) {
    if (nt < 2) throw std::invalid_argument("simpson_weights: need at least two samples");
    std::vector<double> w(static_cast<std::size_t>(nt), 0.0);
    if (nt == 2) {
        w[0] = w[1] = 0.5 * dt;
        return w;
    }
    int intervals = nt - 1;
    int start = 0;
    if (intervals % 2 != 0) {
        // 3/8 rule on the first three intervals.
        if (intervals < 3) { // nt == 2 handled above; nt == 3 -> intervals == 2 (even)
            w[0] = w[2] = dt / 3.0;
            w[1] = 4.0 * dt / 3.0;
            return w;
        }
        w[0] += 3.0 * dt / 8.0;
        w[1] += 9.0 * dt / 8.0;
        w[2] += 9.0 * dt / 8.0;
        w[3] += 3.0 * dt / 8.0;
        start = 3;
    }
    for (int i = start; i + 2 <= nt - 1; i += 2) {
        w[static_cast<std::size_t>(i)] += dt / 3.0;
        w[static_cast<std::size_t>(i) + 1] += 4.0 * dt / 3.0;
        w[static_cast<std::size_t>(i) + 2] += dt / 3.0;
    }
    return w;
}

inline std::vector<double> trapezoid_weights(int nt, double dt) {
    std::vector<double> w(static_cast<std::size_t>(nt), dt);
    w.front() = 0.5 * dt;
    w.back() = 0.5 * dt;
    return w;
}

} // namespace ww

#endif
