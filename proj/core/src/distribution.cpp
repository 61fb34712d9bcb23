#include "risktool/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "risktool/errors.hpp"

namespace risktool {

LossVector::LossVector(std::vector<double> losses) : losses_(std::move(losses)) {
    if (losses_.empty()) {
        throw EmptyInput("loss vector must contain at least one entry");
    }
    for (std::size_t i = 0; i < losses_.size(); ++i) {
        if (!std::isfinite(losses_[i])) {
            throw NonFiniteValue("loss at position " + std::to_string(i) + " is not finite");
        }
    }
}

double LossVector::mean() const {
    double s = std::accumulate(losses_.begin(), losses_.end(), 0.0);
    return s / static_cast<double>(losses_.size());
}

double LossVector::min() const { return *std::min_element(losses_.begin(), losses_.end()); }

double LossVector::max() const { return *std::max_element(losses_.begin(), losses_.end()); }

double order_statistic(const LossVector& v, std::size_t k, Order direction) {
    const std::size_t n = v.size();
    if (k < 1 || k > n) {
        throw IndexOutOfRange("order statistic index " + std::to_string(k) +
                              " out of range for sample of size " + std::to_string(n));
    }
    std::vector<double> sorted = v.values();
    std::stable_sort(sorted.begin(), sorted.end());
    return direction == Order::ascending ? sorted[k - 1] : sorted[n - k];
}

DiscreteDistribution DiscreteDistribution::canonicalize(std::vector<Atom> raw) {
    if (raw.empty()) {
        throw EmptyInput("distribution must contain at least one atom");
    }
    double total = 0.0;
    for (const Atom& a : raw) {
        if (!std::isfinite(a.value)) {
            throw NonFiniteValue("atom value is not finite");
        }
        if (!std::isfinite(a.prob) || a.prob <= 0.0) {
            throw BadProbability("atom probabilities must be finite and positive");
        }
        total += a.prob;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw BadProbability("atom probabilities sum to " + std::to_string(total) +
                             ", expected 1 within 1e-9");
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const Atom& a, const Atom& b) { return a.value < b.value; });

    DiscreteDistribution d;
    d.atoms_.reserve(raw.size());
    for (const Atom& a : raw) {
        // merge by exact bit equality of values
        if (!d.atoms_.empty() && d.atoms_.back().value == a.value) {
            d.atoms_.back().prob += a.prob;
        } else {
            d.atoms_.push_back(a);
        }
    }
    // already-canonical masses pass through untouched, so canonicalize is
    // bit-level idempotent; anything else is renormalized exactly once
    if (std::abs(total - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
        for (Atom& a : d.atoms_) {
            a.prob /= total;
        }
    }
    d.rebuild_cumulative();
    return d;
}

DiscreteDistribution DiscreteDistribution::empirical(const LossVector& v) {
    const double n = static_cast<double>(v.size());
    std::vector<Atom> raw;
    raw.reserve(v.size());
    for (double x : v.values()) {
        raw.push_back({x, 1.0 / n});
    }
    return canonicalize(std::move(raw));
}

void DiscreteDistribution::rebuild_cumulative() {
    cum_.resize(atoms_.size());
    double run = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        run += atoms_[i].prob;
        cum_[i] = run;
    }
}

double DiscreteDistribution::cdf(double u) const {
    if (!std::isfinite(u)) {
        throw NonFiniteValue("cdf argument must be finite");
    }
    // last atom with value <= u
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), u,
                               [](double x, const Atom& a) { return x < a.value; });
    if (it == atoms_.begin()) {
        return 0.0;
    }
    return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DiscreteDistribution::quantile(double beta) const {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw BetaOutOfRange("quantile level must lie in (0,1)");
    }
    for (std::size_t i = 0; i < cum_.size(); ++i) {
        if (cum_[i] >= beta) {
            return atoms_[i].value;
        }
    }
    return atoms_.back().value; // total mass can round a hair below 1
}

double DiscreteDistribution::mean() const {
    double s = 0.0;
    for (const Atom& a : atoms_) {
        s += a.value * a.prob;
    }
    return s;
}

DiscreteDistribution DiscreteDistribution::shifted(double c) const {
    if (!std::isfinite(c)) {
        throw NonFiniteValue("shift must be finite");
    }
    DiscreteDistribution d(*this);
    for (Atom& a : d.atoms_) {
        a.value += c;
    }
    return d;
}

DiscreteDistribution DiscreteDistribution::negated() const {
    DiscreteDistribution d;
    d.atoms_.reserve(atoms_.size());
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
        d.atoms_.push_back({-it->value, it->prob});
    }
    d.rebuild_cumulative();
    return d;
}

SpectrumFunction::SpectrumFunction(std::vector<double> breakpoints, std::vector<double> levels)
    : breaks_(std::move(breakpoints)), levels_(std::move(levels)) {
    if (breaks_.size() < 2 || levels_.size() + 1 != breaks_.size()) {
        throw BadSpectrum("spectrum needs m+1 breakpoints for m levels, m >= 1");
    }
    if (breaks_.front() != 0.0 || breaks_.back() != 1.0) {
        throw BadSpectrum("spectrum breakpoints must start at 0 and end at 1");
    }
    double integral = 0.0;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        if (!(breaks_[j + 1] > breaks_[j])) {
            throw BadSpectrum("spectrum breakpoints must be strictly increasing");
        }
        if (!std::isfinite(levels_[j]) || levels_[j] < 0.0) {
            throw BadSpectrum("spectrum levels must be finite and non-negative");
        }
        if (j > 0 && levels_[j] < levels_[j - 1]) {
            throw BadSpectrum("spectrum levels must be non-decreasing");
        }
        integral += levels_[j] * (breaks_[j + 1] - breaks_[j]);
    }
    if (std::abs(integral - 1.0) > 1e-12) {
        throw BadSpectrum("spectrum must integrate to 1, got " + std::to_string(integral));
    }
}

SpectrumFunction SpectrumFunction::uniform() {
    return SpectrumFunction({0.0, 1.0}, {1.0});
}

SpectrumFunction SpectrumFunction::cvar(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw BetaOutOfRange("cvar spectrum level must lie in (0,1)");
    }
    return SpectrumFunction({0.0, beta, 1.0}, {0.0, 1.0 / (1.0 - beta)});
}

} // namespace risktool
