#ifndef RISKTOOL_DISTRIBUTION_HPP
#define RISKTOOL_DISTRIBUTION_HPP

#include <cstddef>
#include <vector>

namespace risktool {

// Raw sample of real-valued losses, kept in arrival order. Non-empty, finite.
class LossVector {
public:
    explicit LossVector(std::vector<double> losses);

    const std::vector<double>& values() const { return losses_; }
    std::size_t size() const { return losses_.size(); }
    double mean() const;
    double min() const;
    double max() const;

private:
    std::vector<double> losses_;
};

enum class Order { ascending, descending };

// k-th smallest (ascending) or k-th largest (descending) loss; k is 1-based.
double order_statistic(const LossVector& v, std::size_t k, Order direction);

struct Atom {
    double value = 0.0;
    double prob = 0.0;
};

// Canonical finite loss distribution: strictly ascending values, all
// probabilities positive and summing to one. Duplicate raw values are merged
// by exact bit equality; probabilities are validated to 1e-9 and then
// renormalized, so pipelines cannot accumulate silent drift.
class DiscreteDistribution {
public:
    static DiscreteDistribution canonicalize(std::vector<Atom> raw);
    static DiscreteDistribution empirical(const LossVector& v);

    const std::vector<Atom>& atoms() const { return atoms_; }
    // Cumulative probabilities, one entry per atom; the last entry is the
    // total mass after renormalization (1 up to rounding).
    const std::vector<double>& cumulative() const { return cum_; }
    std::size_t size() const { return atoms_.size(); }

    // Right-continuous distribution function P{L <= u}.
    double cdf(double u) const;
    // Left-continuous generalized inverse inf{u : F(u) >= beta}. This is the
    // single quantile convention used across the whole library.
    double quantile(double beta) const;

    double mean() const;
    double min_value() const { return atoms_.front().value; }
    double max_value() const { return atoms_.back().value; }

    DiscreteDistribution shifted(double c) const;
    DiscreteDistribution negated() const;

private:
    DiscreteDistribution() = default;
    void rebuild_cumulative();

    std::vector<Atom> atoms_;
    std::vector<double> cum_;
};

// Piecewise-constant spectral density on [0,1]: breakpoints
// 0 = b_0 < ... < b_m = 1 with one non-negative level per piece. Levels must
// be non-decreasing and integrate to one.
class SpectrumFunction {
public:
    SpectrumFunction(std::vector<double> breakpoints, std::vector<double> levels);

    static SpectrumFunction uniform();
    // Step spectrum 1{u > beta}/(1-beta); reproduces CVaR as an L-risk.
    static SpectrumFunction cvar(double beta);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& levels() const { return levels_; }

private:
    std::vector<double> breaks_;
    std::vector<double> levels_;
};

} // namespace risktool

#endif
