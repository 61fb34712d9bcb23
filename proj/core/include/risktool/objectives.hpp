#ifndef RISKTOOL_OBJECTIVES_HPP
#define RISKTOOL_OBJECTIVES_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "risktool/distribution.hpp"
#include "risktool/scalar_function.hpp"

namespace risktool {

enum class ObjectiveKind {
    mean,
    m_estimator,
    l_statistic,
    kth_largest,
    avg_top_k,
    exp_smooth,
    svp,
    cvar,
};

// Declarative description of an empirical training objective mapping a
// LossVector to a real number.
class ObjectiveSpec {
public:
    static ObjectiveSpec mean();
    // M-estimator of location: the objective value is the minimizing theta of
    // (1/n) sum rho((loss_i - theta)/sigma). When sigma is omitted, the
    // sample standard deviation is used; that default is a heuristic of this
    // library, not a sourced recommendation.
    static ObjectiveSpec m_estimator(ScalarFunction rho,
                                     std::optional<double> sigma = std::nullopt);
    static ObjectiveSpec l_statistic(std::vector<double> weights);
    static ObjectiveSpec kth_largest(std::size_t k);
    static ObjectiveSpec avg_top_k(std::size_t k);
    // Tilted objective (1/gamma) log((1/n) sum exp(gamma loss_i)); any
    // gamma != 0. Select `mean` explicitly instead of gamma = 0.
    static ObjectiveSpec exp_smooth(double gamma);
    // Sample variance penalization: mean + eta * sqrt(Vbar_n / n) with Vbar_n
    // the unbiased pairwise variance.
    static ObjectiveSpec svp(double eta);
    // Empirical Rockafellar-Uryasev program; trainable via joint descent on
    // (model, theta).
    static ObjectiveSpec cvar(double beta);

    ObjectiveKind kind() const { return kind_; }
    const ScalarFunction& rho() const;
    std::optional<double> sigma() const { return sigma_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t k() const { return k_; }
    double gamma() const { return gamma_; }
    double eta() const { return eta_; }
    double beta() const { return beta_; }
    std::string describe() const;

private:
    explicit ObjectiveSpec(ObjectiveKind kind) : kind_(kind) {}

    ObjectiveKind kind_;
    std::optional<ScalarFunction> rho_;
    std::optional<double> sigma_;
    std::vector<double> weights_;
    std::size_t k_ = 0;
    double gamma_ = 0.0;
    double eta_ = 0.0;
    double beta_ = 0.0;
};

double eval_objective(const ObjectiveSpec& spec, const LossVector& v);

// One element of the subdifferential of spec composed with the per-point
// losses: returns sum_i c_i * dloss[i], where dloss[i] is the gradient of
// loss_i with respect to the model parameters. Ties in order-statistic
// objectives route weight to the lowest original index.
std::vector<double> objective_subgradient(const ObjectiveSpec& spec, const LossVector& v,
                                          const std::vector<std::vector<double>>& dloss);

// The loss-space weights c_i used by objective_subgradient; exposed for the
// training loop and for tests.
std::vector<double> objective_loss_weights(const ObjectiveSpec& spec, const LossVector& v);

} // namespace risktool

#endif
