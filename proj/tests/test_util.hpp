#ifndef RISKTOOL_TEST_UTIL_HPP
#define RISKTOOL_TEST_UTIL_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "risktool/distribution.hpp"
#include "risktool/rng.hpp"

namespace risktool::testutil {

inline double uniform_in(SplitMix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_unit();
}

inline std::vector<double> random_losses(SplitMix64& rng, std::size_t n, double lo = -10.0,
                                         double hi = 10.0) {
    std::vector<double> out(n);
    for (double& x : out) {
        x = uniform_in(rng, lo, hi);
    }
    return out;
}

inline DiscreteDistribution random_distribution(SplitMix64& rng, std::size_t max_atoms = 32,
                                                double lo = -10.0, double hi = 10.0) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * (max_atoms - 1));
    std::vector<Atom> atoms(n);
    double total = 0.0;
    for (Atom& a : atoms) {
        a.value = uniform_in(rng, lo, hi);
        a.prob = 0.05 + rng.next_unit();
        total += a.prob;
    }
    for (Atom& a : atoms) {
        a.prob /= total;
    }
    return DiscreteDistribution::canonicalize(std::move(atoms));
}

// First-order stochastically dominating copy: same probabilities, values
// shifted up by a non-decreasing non-negative sequence so the quantile
// function rises pointwise.
inline DiscreteDistribution fosd_dominating(SplitMix64& rng, const DiscreteDistribution& d,
                                            double max_shift = 3.0) {
    std::vector<Atom> atoms = d.atoms();
    double shift = 0.0;
    for (Atom& a : atoms) {
        shift += rng.next_unit() * max_shift / static_cast<double>(atoms.size());
        a.value += shift;
    }
    return DiscreteDistribution::canonicalize(std::move(atoms));
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

} // namespace risktool::testutil

#endif
