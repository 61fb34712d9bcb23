#ifndef RISKTOOL_ORACLE_HPP
#define RISKTOOL_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "risktool/risks.hpp"

namespace risktool {

// Independent verification machinery: brute-force scalar optimization, finite
// differences and seeded Monte Carlo. Deliberately kept free of the bisection
// solvers it is used to check.

struct GridResult {
    double argmin = 0.0;
    double min = 0.0;
};

// Exhaustive minimization on a uniform grid including both endpoints; ties
// resolve to the smallest argument.
GridResult grid_min_scalar(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t n_points);

// Central differences, one coordinate at a time.
std::vector<double> finite_diff_grad(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> x, double h);

struct MCResult {
    double estimate = 0.0;
    double stderr_value = 0.0;
    std::size_t n_samples = 0;
    std::uint64_t seed = 0;
};

// A seeded generator: n draws, fully determined by (n, seed).
using Sampler = std::function<std::vector<double>(std::size_t, std::uint64_t)>;

// Draws n losses, evaluates the risk on their empirical distribution, and
// reports a standard error from 20 disjoint-seed replicates of the same size.
MCResult mc_estimate(const Sampler& sampler, const RiskSpec& spec, std::size_t n,
                     std::uint64_t seed);

} // namespace risktool

#endif
