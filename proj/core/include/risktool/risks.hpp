#ifndef RISKTOOL_RISKS_HPP
#define RISKTOOL_RISKS_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "risktool/distribution.hpp"
#include "risktool/scalar_function.hpp"

namespace risktool {

enum class RiskKind {
    mean,
    var_quantile,
    cvar,
    cvar_tail,
    l_risk,
    oce,
    entropic,
    mean_deviation,
    m_risk,
    centered_deviation,
    cpt,
    dro_chi2,
    fairness_mean_var,
};

enum class DeviationMode { centered, semi, threshold, optimized };

struct RiskResult {
    double value = 0.0;
    // auxiliary location solution, when the functional defines one
    std::optional<double> theta;
    // worst-case probability vector, for distributionally robust risks
    std::optional<std::vector<double>> weights;
};

// Declarative description of a population risk functional on a finite loss
// distribution.
class RiskSpec {
public:
    static RiskSpec mean();
    static RiskSpec var_quantile(double beta);
    // Rockafellar-Uryasev convex program; the canonical CVaR of this library.
    static RiskSpec cvar(double beta);
    // Literal tail form (1/(1-beta)) E[L 1{L >= Q_beta}]. Differs from cvar()
    // on distributions with an atom at the quantile; both are kept on purpose.
    static RiskSpec cvar_tail(double beta);
    static RiskSpec l_risk(SpectrumFunction spectrum);
    static RiskSpec oce(ScalarFunction phi);
    static RiskSpec entropic(double gamma);
    static RiskSpec mean_deviation(double p, DeviationMode mode,
                                   std::optional<double> theta = std::nullopt);
    static RiskSpec m_risk(ScalarFunction rho);
    // Deviation induced by a location: base applied to the mean-centered
    // distribution. base must be a location-type spec (mean, var_quantile,
    // entropic, m_risk).
    static RiskSpec centered_deviation(RiskSpec base);
    static RiskSpec cpt(ScalarFunction v_plus, ScalarFunction v_minus, ScalarFunction w_plus,
                        ScalarFunction w_minus, double ref);
    // Tversky-Kahneman defaults: v(x) = sign(x) lambda |x|^0.88 with
    // lambda_+ = 1, lambda_- = 2.25; weights tk_weight(0.61)/tk_weight(0.69).
    static RiskSpec cpt_default(double ref = 0.0);
    static RiskSpec dro_chi2(double delta);
    static RiskSpec fairness_mean_var();

    RiskKind kind() const { return kind_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }
    double p() const { return p_; }
    double ref() const { return ref_; }
    DeviationMode mode() const { return mode_; }
    std::optional<double> threshold() const { return threshold_; }
    const ScalarFunction& phi() const;
    const ScalarFunction& rho() const;
    const SpectrumFunction& spectrum() const;
    const RiskSpec& base() const;
    const ScalarFunction& v_plus() const { return fn(0); }
    const ScalarFunction& v_minus() const { return fn(1); }
    const ScalarFunction& w_plus() const { return fn(2); }
    const ScalarFunction& w_minus() const { return fn(3); }
    std::string describe() const;

private:
    explicit RiskSpec(RiskKind kind) : kind_(kind) {}
    const ScalarFunction& fn(std::size_t i) const;

    RiskKind kind_;
    double beta_ = 0.0;
    double gamma_ = 0.0;
    double delta_ = 0.0;
    double p_ = 0.0;
    double ref_ = 0.0;
    DeviationMode mode_ = DeviationMode::centered;
    std::optional<double> threshold_;
    std::vector<ScalarFunction> fns_;
    std::optional<SpectrumFunction> spectrum_;
    std::shared_ptr<const RiskSpec> base_;
};

// Master dispatch; exact up to the scalar-solver tolerance.
RiskResult risk_eval(const RiskSpec& spec, const DiscreteDistribution& d);

RiskResult cvar(const DiscreteDistribution& d, double beta);
double cvar_tail(const DiscreteDistribution& d, double beta);
double l_risk(const DiscreteDistribution& d, const SpectrumFunction& spectrum);
RiskResult oce(const DiscreteDistribution& d, const ScalarFunction& phi);
double entropic(const DiscreteDistribution& d, double gamma);
RiskResult mean_deviation(const DiscreteDistribution& d, double p, DeviationMode mode,
                          std::optional<double> theta = std::nullopt);
RiskResult m_risk(const DiscreteDistribution& d, const ScalarFunction& rho);
double centered_deviation(const DiscreteDistribution& d, const RiskSpec& base);
double cpt_score(const DiscreteDistribution& d, const ScalarFunction& v_plus,
                 const ScalarFunction& v_minus, const ScalarFunction& w_plus,
                 const ScalarFunction& w_minus, double ref);
RiskResult dro_chi2(const DiscreteDistribution& d, double delta);

// Mean plus variance of group-conditional expected losses.
double fairness_risk(const std::vector<std::pair<double, DiscreteDistribution>>& groups);

// Appendix-style payout functionals. `payouts` carries payouts, not losses.
double certainty_equivalent(const DiscreteDistribution& payouts, const ScalarFunction& f);
double oce_from_utility(const DiscreteDistribution& payouts, const ScalarFunction& f);

} // namespace risktool

#endif
