#ifndef RISKTOOL_DATAGEN_HPP
#define RISKTOOL_DATAGEN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "risktool/distribution.hpp"
#include "risktool/learners.hpp"
#include "risktool/oracle.hpp"
#include "risktool/rng.hpp"

namespace risktool {

enum class DistFamily { normal, pareto, lognormal, bernoulli_scaled, stpetersburg, finite };

// Seeded synthetic distribution. Every family draws by inverse CDF, consuming
// exactly one uniform per sample, so streams are identical across platforms.
class DistSpec {
public:
    static DistSpec normal(double mu, double sigma);
    static DistSpec pareto(double alpha, double xm);
    static DistSpec lognormal(double mu, double sigma);
    // v1 with probability p, v0 otherwise.
    static DistSpec bernoulli_scaled(double p, double v0, double v1);
    // Coin-toss payout 2^K with P(K=k) = 2^-k; K is capped at 60 (truncation
    // probability below 1e-18) so payouts stay exact powers of two in double.
    static DistSpec stpetersburg();
    static DistSpec finite(DiscreteDistribution atoms);

    double draw(SplitMix64& rng) const;

    DistFamily family() const { return family_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }
    double p3() const { return p3_; }
    const DiscreteDistribution& atoms() const;
    std::string describe() const;

private:
    explicit DistSpec(DistFamily f) : family_(f) {}

    DistFamily family_;
    double p1_ = 0.0;
    double p2_ = 0.0;
    double p3_ = 0.0;
    std::optional<DiscreteDistribution> atoms_;
};

// AS241 (PPND16) rational approximation of the standard normal quantile.
double inverse_normal_cdf(double p);

LossVector sample(const DistSpec& spec, std::size_t n, std::uint64_t seed);

Sampler make_sampler(const DistSpec& spec);

// Features iid standard normal, label = <w_star, x> + noise.
Dataset gen_regression(std::size_t dim, std::size_t n, const std::vector<double>& w_star,
                       const DistSpec& noise, std::uint64_t seed);

// Group membership drawn first, then a loss from that group's law. Groups are
// tagged "g0", "g1", ...; a group can come back empty at small n and callers
// must cope with that.
std::vector<std::pair<std::string, std::vector<double>>> gen_grouped(
    const std::vector<std::pair<double, DistSpec>>& group_specs, std::size_t n,
    std::uint64_t seed);

} // namespace risktool

#endif
