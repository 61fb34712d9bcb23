#include "risktool/oracle.hpp"

#include <cmath>

#include "risktool/errors.hpp"
#include "risktool/rng.hpp"

namespace risktool {

GridResult grid_min_scalar(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t n_points) {
    if (!(lo < hi) || n_points < 2) {
        throw BadBracket("grid search needs lo < hi and at least two points");
    }
    GridResult best;
    best.argmin = lo;
    best.min = f(lo);
    for (std::size_t i = 1; i < n_points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) /
                                  static_cast<double>(n_points - 1);
        const double fx = f(x);
        if (fx < best.min) {
            best.min = fx;
            best.argmin = x;
        }
    }
    return best;
}

std::vector<double> finite_diff_grad(const std::function<double(const std::vector<double>&)>& f,
                                     std::vector<double> x, double h) {
    if (!(h > 0.0)) {
        throw BadBracket("finite difference width must be positive");
    }
    std::vector<double> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj = x[j];
        x[j] = xj + h;
        const double up = f(x);
        x[j] = xj - h;
        const double down = f(x);
        x[j] = xj;
        if (!std::isfinite(up) || !std::isfinite(down)) {
            throw NonFinite("function not finite near the differencing point");
        }
        g[j] = (up - down) / (2.0 * h);
    }
    return g;
}

namespace {

double evaluate_draws(const Sampler& sampler, const RiskSpec& spec, std::size_t n,
                      std::uint64_t seed) {
    std::vector<double> draws = sampler(n, seed);
    if (draws.size() != n) {
        throw BadSampler("sampler returned the wrong number of draws");
    }
    for (double x : draws) {
        if (!std::isfinite(x)) {
            throw BadSampler("sampler produced a non-finite draw");
        }
    }
    return risk_eval(spec, DiscreteDistribution::empirical(LossVector(std::move(draws)))).value;
}

} // namespace

MCResult mc_estimate(const Sampler& sampler, const RiskSpec& spec, std::size_t n,
                     std::uint64_t seed) {
    if (n < 100) {
        throw BadSampler("mc_estimate needs at least 100 samples");
    }
    MCResult out;
    out.n_samples = n;
    out.seed = seed;
    out.estimate = evaluate_draws(sampler, spec, n, seed);

    constexpr int kReplicates = 20;
    double mean = 0.0;
    double values[kReplicates];
    for (int r = 0; r < kReplicates; ++r) {
        values[r] = evaluate_draws(sampler, spec, n,
                                   SplitMix64::derive(seed, static_cast<std::uint64_t>(r + 1)));
        mean += values[r];
    }
    mean /= kReplicates;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    out.stderr_value = std::sqrt(ss / (kReplicates - 1));
    return out;
}

} // namespace risktool
