#include "risktool/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "risktool/errors.hpp"
#include "solver_detail.hpp"

namespace risktool {

namespace {

// unbiased sample variance, equal to the pairwise form
// sum_{i<j} (l_i - l_j)^2 / (n(n-1))
double sample_variance(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    double s = 0.0;
    for (double xi : x) {
        s += (xi - m) * (xi - m);
    }
    return s / static_cast<double>(n - 1);
}

double log_mean_exp(const std::vector<double>& x, double gamma) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double xi : x) {
        mx = std::max(mx, gamma * xi);
    }
    double s = 0.0;
    for (double xi : x) {
        s += std::exp(gamma * xi - mx);
    }
    return mx + std::log(s / static_cast<double>(x.size()));
}

// indices of v sorted by value; ties keep the lowest original index first
std::vector<std::size_t> stable_argsort(const std::vector<double>& v, bool descending) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return descending ? v[a] > v[b] : v[a] < v[b];
    });
    return idx;
}

double resolve_sigma(const ObjectiveSpec& spec, const std::vector<double>& losses) {
    if (spec.sigma()) {
        return *spec.sigma();
    }
    const double sd = std::sqrt(sample_variance(losses));
    return sd > 0.0 ? sd : 1.0;
}

// minimizing theta of (1/n) sum rho((l_i - theta)/sigma), by bisection on the
// stationarity condition sum rho'((l_i - theta)/sigma) = 0
double m_estimate(const ScalarFunction& rho, double sigma, const std::vector<double>& losses) {
    const double lo = *std::min_element(losses.begin(), losses.end()) - 1.0;
    const double hi = *std::max_element(losses.begin(), losses.end()) + 1.0;
    auto score = [&](double theta) {
        double s = 0.0;
        for (double l : losses) {
            s += rho.deriv((l - theta) / sigma);
        }
        return s;
    };
    const double slo = score(lo);
    const double shi = score(hi);
    if (detail::sign_of(slo) == detail::sign_of(shi) && slo != 0.0) {
        throw SolverFailure("m-estimator score does not change sign on the bracket; "
                            "rho is not a usable location score");
    }
    return detail::bisect_sign_change(score, lo, hi, slo, shi, 1e-12);
}

// empirical beta-quantile (inf convention) of raw losses
double empirical_quantile(std::vector<double> sorted_losses, double beta) {
    const double n = static_cast<double>(sorted_losses.size());
    for (std::size_t i = 0; i < sorted_losses.size(); ++i) {
        if (static_cast<double>(i + 1) / n >= beta) {
            return sorted_losses[i];
        }
    }
    return sorted_losses.back();
}

} // namespace

ObjectiveSpec ObjectiveSpec::mean() { return ObjectiveSpec(ObjectiveKind::mean); }

ObjectiveSpec ObjectiveSpec::m_estimator(ScalarFunction rho, std::optional<double> sigma) {
    if (!rho.convex()) {
        throw BadSpec("m_estimator requires a convex rho");
    }
    if (sigma && !(*sigma > 0.0)) {
        throw BadSpec("m_estimator scale must be positive");
    }
    ObjectiveSpec s(ObjectiveKind::m_estimator);
    s.rho_ = std::move(rho);
    s.sigma_ = sigma;
    return s;
}

ObjectiveSpec ObjectiveSpec::l_statistic(std::vector<double> weights) {
    if (weights.empty()) {
        throw BadSpec("l_statistic needs at least one weight");
    }
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12) {
        throw BadSpec("l_statistic weights must sum to 1 within 1e-12");
    }
    ObjectiveSpec s(ObjectiveKind::l_statistic);
    s.weights_ = std::move(weights);
    return s;
}

ObjectiveSpec ObjectiveSpec::kth_largest(std::size_t k) {
    if (k < 1) {
        throw BadSpec("kth_largest requires k >= 1");
    }
    ObjectiveSpec s(ObjectiveKind::kth_largest);
    s.k_ = k;
    return s;
}

ObjectiveSpec ObjectiveSpec::avg_top_k(std::size_t k) {
    if (k < 1) {
        throw BadSpec("avg_top_k requires k >= 1");
    }
    ObjectiveSpec s(ObjectiveKind::avg_top_k);
    s.k_ = k;
    return s;
}

ObjectiveSpec ObjectiveSpec::exp_smooth(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw BadSpec("exp_smooth tilt must be finite and nonzero; use `mean` for gamma = 0");
    }
    ObjectiveSpec s(ObjectiveKind::exp_smooth);
    s.gamma_ = gamma;
    return s;
}

ObjectiveSpec ObjectiveSpec::svp(double eta) {
    if (!(eta >= 0.0)) {
        throw BadSpec("svp weight must be non-negative");
    }
    ObjectiveSpec s(ObjectiveKind::svp);
    s.eta_ = eta;
    return s;
}

ObjectiveSpec ObjectiveSpec::cvar(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw BadSpec("cvar level must lie in (0,1)");
    }
    ObjectiveSpec s(ObjectiveKind::cvar);
    s.beta_ = beta;
    return s;
}

const ScalarFunction& ObjectiveSpec::rho() const {
    if (!rho_) {
        throw BadSpec("objective has no rho function");
    }
    return *rho_;
}

std::string ObjectiveSpec::describe() const {
    switch (kind_) {
    case ObjectiveKind::mean: return "mean";
    case ObjectiveKind::m_estimator:
        return "m_estimator(" + rho_->describe() +
               (sigma_ ? "," + std::to_string(*sigma_) : "") + ")";
    case ObjectiveKind::l_statistic: return "l_statistic";
    case ObjectiveKind::kth_largest: return "kth_largest(" + std::to_string(k_) + ")";
    case ObjectiveKind::avg_top_k: return "avg_top_k(" + std::to_string(k_) + ")";
    case ObjectiveKind::exp_smooth: return "exp_smooth(" + std::to_string(gamma_) + ")";
    case ObjectiveKind::svp: return "svp(" + std::to_string(eta_) + ")";
    case ObjectiveKind::cvar: return "cvar(" + std::to_string(beta_) + ")";
    }
    return "?";
}

double eval_objective(const ObjectiveSpec& spec, const LossVector& v) {
    const std::vector<double>& losses = v.values();
    const std::size_t n = losses.size();

    switch (spec.kind()) {
    case ObjectiveKind::mean:
        return v.mean();
    case ObjectiveKind::m_estimator:
        return m_estimate(spec.rho(), resolve_sigma(spec, losses), losses);
    case ObjectiveKind::l_statistic: {
        if (spec.weights().size() != n) {
            throw BadSpec("l_statistic has " + std::to_string(spec.weights().size()) +
                          " weights for a sample of size " + std::to_string(n));
        }
        std::vector<double> sorted = losses;
        std::stable_sort(sorted.begin(), sorted.end());
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += spec.weights()[i] * sorted[i];
        }
        return s;
    }
    case ObjectiveKind::kth_largest:
        if (spec.k() > n) {
            throw BadSpec("kth_largest k exceeds the sample size");
        }
        return order_statistic(v, spec.k(), Order::descending);
    case ObjectiveKind::avg_top_k: {
        const std::size_t k = spec.k();
        if (k > n) {
            throw BadSpec("avg_top_k k exceeds the sample size");
        }
        std::vector<double> sorted = losses;
        std::stable_sort(sorted.begin(), sorted.end(), std::greater<>());
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            s += sorted[i];
        }
        return s / static_cast<double>(k);
    }
    case ObjectiveKind::exp_smooth:
        return log_mean_exp(losses, spec.gamma()) / spec.gamma();
    case ObjectiveKind::svp:
        return v.mean() + spec.eta() * std::sqrt(sample_variance(losses) / static_cast<double>(n));
    case ObjectiveKind::cvar: {
        const double beta = spec.beta();
        std::vector<double> sorted = losses;
        std::stable_sort(sorted.begin(), sorted.end());
        const double theta = empirical_quantile(sorted, beta);
        double tail = 0.0;
        for (double l : sorted) {
            if (l > theta) tail += l - theta;
        }
        return theta + tail / (static_cast<double>(n) * (1.0 - beta));
    }
    }
    throw BadSpec("unknown objective kind");
}

std::vector<double> objective_loss_weights(const ObjectiveSpec& spec, const LossVector& v) {
    const std::vector<double>& losses = v.values();
    const std::size_t n = losses.size();
    std::vector<double> c(n, 0.0);

    switch (spec.kind()) {
    case ObjectiveKind::mean:
        std::fill(c.begin(), c.end(), 1.0 / static_cast<double>(n));
        break;
    case ObjectiveKind::m_estimator: {
        // implicit differentiation of the stationarity condition
        const double sigma = resolve_sigma(spec, losses);
        const double theta = m_estimate(spec.rho(), sigma, losses);
        double denom = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = spec.rho().second_deriv((losses[i] - theta) / sigma);
            denom += c[i];
        }
        if (denom > 0.0) {
            for (double& ci : c) ci /= denom;
        } else {
            std::fill(c.begin(), c.end(), 1.0 / static_cast<double>(n));
        }
        break;
    }
    case ObjectiveKind::l_statistic: {
        if (spec.weights().size() != n) {
            throw BadSpec("l_statistic weight count does not match the sample size");
        }
        const std::vector<std::size_t> idx = stable_argsort(losses, false);
        for (std::size_t r = 0; r < n; ++r) {
            c[idx[r]] += spec.weights()[r];
        }
        break;
    }
    case ObjectiveKind::kth_largest: {
        if (spec.k() > n) {
            throw BadSpec("kth_largest k exceeds the sample size");
        }
        const std::vector<std::size_t> idx = stable_argsort(losses, true);
        c[idx[spec.k() - 1]] = 1.0;
        break;
    }
    case ObjectiveKind::avg_top_k: {
        const std::size_t k = spec.k();
        if (k > n) {
            throw BadSpec("avg_top_k k exceeds the sample size");
        }
        const std::vector<std::size_t> idx = stable_argsort(losses, true);
        for (std::size_t r = 0; r < k; ++r) {
            c[idx[r]] = 1.0 / static_cast<double>(k);
        }
        break;
    }
    case ObjectiveKind::exp_smooth: {
        const double gamma = spec.gamma();
        const double mx = gamma * *std::max_element(losses.begin(), losses.end());
        double denom = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = std::exp(gamma * losses[i] - mx);
            denom += c[i];
        }
        for (double& ci : c) ci /= denom;
        break;
    }
    case ObjectiveKind::svp: {
        const double m = v.mean();
        const double var = sample_variance(losses);
        const double dev = std::sqrt(var / static_cast<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = 1.0 / static_cast<double>(n);
            if (dev > 0.0 && n > 1) {
                c[i] += spec.eta() * (losses[i] - m) /
                        (static_cast<double>(n) * static_cast<double>(n - 1) * dev);
            }
        }
        break;
    }
    case ObjectiveKind::cvar: {
        const double beta = spec.beta();
        std::vector<double> sorted = losses;
        std::stable_sort(sorted.begin(), sorted.end());
        const double theta = empirical_quantile(sorted, beta);
        const double unit = 1.0 / (static_cast<double>(n) * (1.0 - beta));
        std::size_t n_above = 0;
        std::size_t n_at = 0;
        for (double l : losses) {
            if (l > theta) ++n_above;
            if (l == theta) ++n_at;
        }
        const double residual = 1.0 - static_cast<double>(n_above) * unit;
        for (std::size_t i = 0; i < n; ++i) {
            if (losses[i] > theta) {
                c[i] = unit;
            } else if (losses[i] == theta) {
                c[i] = residual / static_cast<double>(n_at);
            }
        }
        break;
    }
    }
    return c;
}

std::vector<double> objective_subgradient(const ObjectiveSpec& spec, const LossVector& v,
                                          const std::vector<std::vector<double>>& dloss) {
    const std::size_t n = v.size();
    if (dloss.size() != n) {
        throw DimensionMismatch("need one loss gradient per sample");
    }
    const std::size_t dim = dloss.front().size();
    for (const auto& g : dloss) {
        if (g.size() != dim) {
            throw DimensionMismatch("loss gradients must share one dimension");
        }
    }
    const std::vector<double> c = objective_loss_weights(spec, v);
    std::vector<double> out(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (c[i] == 0.0) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            out[j] += c[i] * dloss[i][j];
        }
    }
    return out;
}

} // namespace risktool
