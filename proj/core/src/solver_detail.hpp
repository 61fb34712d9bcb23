#ifndef RISKTOOL_SOLVER_DETAIL_HPP
#define RISKTOOL_SOLVER_DETAIL_HPP

#include <cmath>
#include <functional>

namespace risktool::detail {

inline int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Bisects for a sign change of g on [lo, hi]. glo/ghi are the endpoint
// values; callers may pass synthetic +-1 endpoints when the true endpoint is
// outside the domain of g but the divergence direction is known. Returns the
// midpoint of the final bracket. The caller is responsible for checking that
// glo and ghi do not share a strict sign.
inline double bisect_sign_change(const std::function<double(double)>& g, double lo, double hi,
                                 double glo, double ghi, double tol, int max_iter = 200) {
    if (glo == 0.0 && ghi == 0.0) {
        return 0.5 * (lo + hi); // stationary everywhere on the bracket
    }
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    const int slo = sign_of(glo);
    for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (sign_of(gm) == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace risktool::detail

#endif
