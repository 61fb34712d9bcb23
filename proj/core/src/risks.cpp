#include "risktool/risks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risktool/errors.hpp"
#include "solver_detail.hpp"

namespace risktool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double expectation_of(const DiscreteDistribution& d, const ScalarFunction& fn, double theta) {
    double s = 0.0;
    for (const Atom& a : d.atoms()) {
        s += a.prob * fn.eval(a.value - theta);
    }
    return s;
}

// Stationary point of J(theta) = theta + E[fn(L - theta)] on the bracket
// [min-1, max+1], clipped to the theta-range where all shifted atoms stay
// inside fn's domain. Works for both the convex-minimization and the
// concave-maximization reading of J; the bisection only tracks the sign
// change of J'(theta) = 1 - E[fn'(L - theta)].
double solve_inner_theta(const DiscreteDistribution& d, const ScalarFunction& fn, bool maximize) {
    double lo = d.min_value() - 1.0;
    double hi = d.max_value() + 1.0;

    // feasibility: v - theta must stay inside (domain_lo, domain_hi)
    bool lo_excluded = false;
    bool hi_excluded = false;
    if (fn.domain_hi() < kInf) {
        const double feas_lo = d.max_value() - fn.domain_hi();
        if (feas_lo >= lo) {
            lo = feas_lo;
            lo_excluded = true;
        }
    }
    if (fn.domain_lo() > -kInf) {
        const double feas_hi = d.min_value() - fn.domain_lo();
        if (feas_hi <= hi) {
            hi = feas_hi;
            hi_excluded = true;
        }
    }
    if (!(lo < hi)) {
        throw SolverFailure("no feasible theta bracket for " + fn.describe());
    }

    auto slope = [&](double theta) {
        double s = 0.0;
        for (const Atom& a : d.atoms()) {
            s += a.prob * fn.deriv(a.value - theta);
        }
        const double g = 1.0 - s;
        // probabilities carry rounding of a few ulp; an identically-flat
        // derivative (linear phi) must read as zero, not as a stray sign
        return std::abs(g) < 1e-12 ? 0.0 : g;
    };

    // At an excluded boundary J diverges; the sign of J' there follows from
    // whether we are minimizing a convex J or maximizing a concave one.
    const double glo = lo_excluded ? (maximize ? 1.0 : -1.0) : slope(lo);
    const double ghi = hi_excluded ? (maximize ? -1.0 : 1.0) : slope(hi);
    if (detail::sign_of(glo) == detail::sign_of(ghi) && glo != 0.0) {
        throw SolverFailure("derivative of the inner problem does not change sign; " +
                            fn.describe() + " is not admissible on this distribution");
    }
    const double tol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    return detail::bisect_sign_change(slope, lo, hi, glo, ghi, tol);
}

// J evaluated at the bisection solution, improved by snapping to atom values
// where that is sound: for convex piecewise-linear integrands the exact
// minimizer sits on an atom. With a non-convex integrand (e.g. the gamma < 0
// exponential) the program means its stationary value, and comparing J across
// atoms would chase the concave tails instead.
RiskResult optimize_inner(const DiscreteDistribution& d, const ScalarFunction& fn,
                          bool maximize) {
    const double theta_hat = solve_inner_theta(d, fn, maximize);
    double best_theta = theta_hat;
    double best = theta_hat + expectation_of(d, fn, theta_hat);
    const bool snap = maximize ? fn.concave() : fn.convex();
    if (snap) {
        for (const Atom& a : d.atoms()) {
            const double u_min = d.min_value() - a.value;
            const double u_max = d.max_value() - a.value;
            if (!(u_min > fn.domain_lo() && u_max < fn.domain_hi())) {
                continue;
            }
            const double j = a.value + expectation_of(d, fn, a.value);
            if ((maximize && j > best) || (!maximize && j < best)) {
                best = j;
                best_theta = a.value;
            }
        }
    }
    RiskResult r;
    r.value = best;
    r.theta = best_theta;
    return r;
}

double require_beta(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw BetaOutOfRange("risk level beta must lie in (0,1)");
    }
    return beta;
}

void check_weight_function(const ScalarFunction& w, const char* which) {
    const double at0 = w.eval(0.0);
    const double at1 = w.eval(1.0);
    if (std::abs(at0) > 1e-12 || std::abs(at1 - 1.0) > 1e-12) {
        throw BadSpec(std::string(which) + " weight function must fix 0 and 1");
    }
    double prev = 0.0;
    for (int i = 1; i <= 64; ++i) {
        const double p = static_cast<double>(i) / 64.0;
        const double wp = w.eval(p);
        if (!(wp >= -1e-12 && wp <= 1.0 + 1e-12) || wp < prev - 1e-12) {
            throw BadSpec(std::string(which) +
                          " weight function must map [0,1] into [0,1] monotonically");
        }
        prev = wp;
    }
}

double location_of(const RiskSpec& base, const DiscreteDistribution& d) {
    switch (base.kind()) {
    case RiskKind::mean:
        return d.mean();
    case RiskKind::var_quantile:
        return d.quantile(base.beta());
    case RiskKind::entropic:
        return entropic(d, base.gamma());
    case RiskKind::m_risk:
        return *m_risk(d, base.rho()).theta;
    default:
        throw BadSpec("centered_deviation base must be a location-type spec "
                      "(mean, var_quantile, entropic, m_risk)");
    }
}

} // namespace

RiskSpec RiskSpec::mean() { return RiskSpec(RiskKind::mean); }

RiskSpec RiskSpec::var_quantile(double beta) {
    RiskSpec s(RiskKind::var_quantile);
    s.beta_ = require_beta(beta);
    return s;
}

RiskSpec RiskSpec::cvar(double beta) {
    RiskSpec s(RiskKind::cvar);
    s.beta_ = require_beta(beta);
    return s;
}

RiskSpec RiskSpec::cvar_tail(double beta) {
    RiskSpec s(RiskKind::cvar_tail);
    s.beta_ = require_beta(beta);
    return s;
}

RiskSpec RiskSpec::l_risk(SpectrumFunction spectrum) {
    RiskSpec s(RiskKind::l_risk);
    s.spectrum_ = std::move(spectrum);
    return s;
}

RiskSpec RiskSpec::oce(ScalarFunction phi) {
    RiskSpec s(RiskKind::oce);
    s.fns_.push_back(std::move(phi));
    return s;
}

RiskSpec RiskSpec::entropic(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw BadSpec("entropic tilt must be finite and nonzero");
    }
    RiskSpec s(RiskKind::entropic);
    s.gamma_ = gamma;
    return s;
}

RiskSpec RiskSpec::mean_deviation(double p, DeviationMode mode, std::optional<double> theta) {
    if (!(p >= 1.0)) {
        throw BadSpec("mean_deviation order must satisfy p >= 1");
    }
    if (mode == DeviationMode::threshold) {
        if (!theta || !std::isfinite(*theta)) {
            throw BadSpec("threshold deviation mode needs a finite theta");
        }
    } else if (theta) {
        throw BadSpec("theta is only meaningful in threshold mode");
    }
    RiskSpec s(RiskKind::mean_deviation);
    s.p_ = p;
    s.mode_ = mode;
    s.threshold_ = theta;
    return s;
}

RiskSpec RiskSpec::m_risk(ScalarFunction rho) {
    if (!rho.convex() || !rho.nonnegative()) {
        throw BadSpec("m_risk requires a convex, non-negative rho");
    }
    RiskSpec s(RiskKind::m_risk);
    s.fns_.push_back(std::move(rho));
    return s;
}

RiskSpec RiskSpec::centered_deviation(RiskSpec base) {
    switch (base.kind()) {
    case RiskKind::mean:
    case RiskKind::var_quantile:
    case RiskKind::entropic:
    case RiskKind::m_risk:
        break;
    default:
        throw BadSpec("centered_deviation base must be a location-type spec");
    }
    RiskSpec s(RiskKind::centered_deviation);
    s.base_ = std::make_shared<const RiskSpec>(std::move(base));
    return s;
}

RiskSpec RiskSpec::cpt(ScalarFunction v_plus, ScalarFunction v_minus, ScalarFunction w_plus,
                       ScalarFunction w_minus, double ref) {
    if (!std::isfinite(ref)) {
        throw BadSpec("cpt reference point must be finite");
    }
    RiskSpec s(RiskKind::cpt);
    s.fns_ = {std::move(v_plus), std::move(v_minus), std::move(w_plus), std::move(w_minus)};
    s.ref_ = ref;
    return s;
}

RiskSpec RiskSpec::cpt_default(double ref) {
    return cpt(ScalarFunction::tk_value(0.88, 1.0), ScalarFunction::tk_value(0.88, 2.25),
               ScalarFunction::tk_weight(0.61), ScalarFunction::tk_weight(0.69), ref);
}

RiskSpec RiskSpec::dro_chi2(double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw BadSpec("dro radius must be finite and non-negative");
    }
    RiskSpec s(RiskKind::dro_chi2);
    s.delta_ = delta;
    return s;
}

RiskSpec RiskSpec::fairness_mean_var() { return RiskSpec(RiskKind::fairness_mean_var); }

const ScalarFunction& RiskSpec::fn(std::size_t i) const {
    if (fns_.size() <= i) {
        throw BadSpec("risk spec does not carry the requested function");
    }
    return fns_[i];
}

const ScalarFunction& RiskSpec::phi() const { return fn(0); }
const ScalarFunction& RiskSpec::rho() const { return fn(0); }

const SpectrumFunction& RiskSpec::spectrum() const {
    if (!spectrum_) {
        throw BadSpec("risk spec does not carry a spectrum");
    }
    return *spectrum_;
}

const RiskSpec& RiskSpec::base() const {
    if (!base_) {
        throw BadSpec("risk spec does not carry a base spec");
    }
    return *base_;
}

std::string RiskSpec::describe() const {
    switch (kind_) {
    case RiskKind::mean: return "mean";
    case RiskKind::var_quantile: return "var_quantile(" + std::to_string(beta_) + ")";
    case RiskKind::cvar: return "cvar(" + std::to_string(beta_) + ")";
    case RiskKind::cvar_tail: return "cvar_tail(" + std::to_string(beta_) + ")";
    case RiskKind::l_risk: return "l_risk";
    case RiskKind::oce: return "oce(" + fns_[0].describe() + ")";
    case RiskKind::entropic: return "entropic(" + std::to_string(gamma_) + ")";
    case RiskKind::mean_deviation: {
        const char* m = mode_ == DeviationMode::centered   ? "centered"
                        : mode_ == DeviationMode::semi     ? "semi"
                        : mode_ == DeviationMode::threshold ? "threshold"
                                                            : "optimized";
        return "mean_deviation(p=" + std::to_string(p_) + "," + m + ")";
    }
    case RiskKind::m_risk: return "m_risk(" + fns_[0].describe() + ")";
    case RiskKind::centered_deviation: return "centered_deviation(" + base_->describe() + ")";
    case RiskKind::cpt: return "cpt(ref=" + std::to_string(ref_) + ")";
    case RiskKind::dro_chi2: return "dro_chi2(" + std::to_string(delta_) + ")";
    case RiskKind::fairness_mean_var: return "fairness_mean_var";
    }
    return "?";
}

RiskResult cvar(const DiscreteDistribution& d, double beta) {
    require_beta(beta);
    const double theta = d.quantile(beta);
    double tail = 0.0;
    for (const Atom& a : d.atoms()) {
        if (a.value > theta) {
            tail += a.prob * (a.value - theta);
        }
    }
    RiskResult r;
    r.theta = theta;
    r.value = theta + tail / (1.0 - beta);
    return r;
}

double cvar_tail(const DiscreteDistribution& d, double beta) {
    require_beta(beta);
    const double q = d.quantile(beta);
    double s = 0.0;
    for (const Atom& a : d.atoms()) {
        if (a.value >= q) {
            s += a.prob * a.value;
        }
    }
    return s / (1.0 - beta);
}

double l_risk(const DiscreteDistribution& d, const SpectrumFunction& spectrum) {
    // Q is piecewise constant on the distribution's cumulative breakpoints, f
    // on its own; the product integrates exactly on the merged partition.
    const std::vector<double>& cum = d.cumulative();
    const std::vector<double>& breaks = spectrum.breakpoints();
    const std::vector<double>& levels = spectrum.levels();

    double total = 0.0;
    double left = 0.0;
    std::size_t ai = 0; // atom whose value covers (cum[ai-1], cum[ai]]
    std::size_t bi = 1; // spectrum piece covering (breaks[bi-1], breaks[bi]]
    while (left < 1.0 && ai < d.size() && bi < breaks.size()) {
        const double right = std::min(std::min(cum[ai], breaks[bi]), 1.0);
        if (right > left) {
            total += d.atoms()[ai].value * levels[bi - 1] * (right - left);
            left = right;
        }
        // advance whichever boundary we hit; cumulative mass may round a hair
        // below 1, so the final atom absorbs any residual
        if (cum[ai] <= left && ai + 1 < d.size()) {
            ++ai;
        } else if (breaks[bi] <= left && bi + 1 < breaks.size()) {
            ++bi;
        } else if (cum[ai] <= left && breaks[bi] <= left) {
            break;
        } else if (cum[ai] <= left) {
            // last atom: stretch it to the end of the unit interval
            total += d.atoms()[ai].value * levels[bi - 1] * (breaks[bi] - left);
            left = breaks[bi];
            ++bi;
        } else {
            ++bi;
        }
    }
    return total;
}

RiskResult oce(const DiscreteDistribution& d, const ScalarFunction& phi) {
    return optimize_inner(d, phi, /*maximize=*/false);
}

double entropic(const DiscreteDistribution& d, double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw BadSpec("entropic tilt must be finite and nonzero");
    }
    const double m = gamma > 0.0 ? gamma * d.max_value() : gamma * d.min_value();
    double s = 0.0;
    for (const Atom& a : d.atoms()) {
        s += a.prob * std::exp(gamma * a.value - m);
    }
    return (m + std::log(s)) / gamma;
}

RiskResult mean_deviation(const DiscreteDistribution& d, double p, DeviationMode mode,
                          std::optional<double> theta) {
    if (!(p >= 1.0)) {
        throw BadSpec("mean_deviation order must satisfy p >= 1");
    }
    const double m = d.mean();
    auto upper_dev = [&](double t) {
        double s = 0.0;
        for (const Atom& a : d.atoms()) {
            if (a.value > t) {
                s += a.prob * std::pow(a.value - t, p);
            }
        }
        return std::pow(s, 1.0 / p);
    };

    RiskResult r;
    switch (mode) {
    case DeviationMode::centered: {
        double s = 0.0;
        for (const Atom& a : d.atoms()) {
            s += a.prob * std::pow(std::abs(a.value - m), p);
        }
        r.value = m + std::pow(s, 1.0 / p);
        return r;
    }
    case DeviationMode::semi:
        r.value = m + upper_dev(m);
        return r;
    case DeviationMode::threshold:
        if (!theta || !std::isfinite(*theta)) {
            throw BadSpec("threshold deviation mode needs a finite theta");
        }
        r.theta = *theta;
        r.value = m + upper_dev(*theta);
        return r;
    case DeviationMode::optimized:
        // inf_theta of the upper deviation is 0, first attained at the top
        // atom; report that smallest minimizer
        r.theta = d.max_value();
        r.value = m;
        return r;
    }
    throw BadSpec("unknown deviation mode");
}

RiskResult m_risk(const DiscreteDistribution& d, const ScalarFunction& rho) {
    if (!rho.convex() || !rho.nonnegative()) {
        throw BadSpec("m_risk requires a convex, non-negative rho");
    }
    return optimize_inner(d, rho, /*maximize=*/false);
}

double centered_deviation(const DiscreteDistribution& d, const RiskSpec& base) {
    const DiscreteDistribution centered = d.shifted(-d.mean());
    return location_of(base, centered);
}

double cpt_score(const DiscreteDistribution& d, const ScalarFunction& v_plus,
                 const ScalarFunction& v_minus, const ScalarFunction& w_plus,
                 const ScalarFunction& w_minus, double ref) {
    check_weight_function(w_plus, "gain");
    check_weight_function(w_minus, "loss");
    const std::vector<Atom>& atoms = d.atoms();
    const std::vector<double>& cum = d.cumulative();
    const std::size_t n = atoms.size();

    double score = 0.0;
    // atoms below the reference: rank-dependent weights from the lower tail
    for (std::size_t i = 0; i < n && atoms[i].value < ref; ++i) {
        const double f_here = std::min(cum[i], 1.0);
        const double f_prev = i == 0 ? 0.0 : std::min(cum[i - 1], 1.0);
        score += v_minus.eval(atoms[i].value - ref) * (w_minus.eval(f_here) - w_minus.eval(f_prev));
    }
    // atoms at or above the reference: weights from the upper (decumulative) tail
    for (std::size_t i = n; i-- > 0 && atoms[i].value >= ref;) {
        const double g_here = std::clamp(1.0 - (i == 0 ? 0.0 : cum[i - 1]), 0.0, 1.0);
        const double g_next = i + 1 < n ? std::clamp(1.0 - cum[i], 0.0, 1.0) : 0.0;
        score += v_plus.eval(atoms[i].value - ref) * (w_plus.eval(g_here) - w_plus.eval(g_next));
    }
    return score;
}

RiskResult dro_chi2(const DiscreteDistribution& d, double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw BadSpec("dro radius must be finite and non-negative");
    }
    const std::vector<Atom>& atoms = d.atoms();
    const std::size_t n = atoms.size();

    RiskResult r;
    std::vector<double> q(n);
    if (delta == 0.0 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) q[i] = atoms[i].prob;
        r.value = d.mean();
        r.weights = std::move(q);
        return r;
    }

    const double vmax = d.max_value();
    double p_top = 0.0;
    for (const Atom& a : atoms) {
        if (a.value == vmax) p_top += a.prob;
    }
    const double chi2_cap = (1.0 - p_top) / p_top;
    if (delta >= chi2_cap) {
        // ball large enough to move all mass onto the top atoms
        for (std::size_t i = 0; i < n; ++i) {
            q[i] = atoms[i].value == vmax ? atoms[i].prob / p_top : 0.0;
        }
        r.value = vmax;
        r.weights = std::move(q);
        return r;
    }

    // q_i(lambda, mu) = p_i [1 + (v_i - mu)/(2 lambda)]_+ ; mu enforces the
    // simplex constraint, lambda is bisected until chi2(q || p) = delta.
    auto fill_q = [&](double lambda, std::vector<double>& out) {
        // inner bisection on mu so that sum q = 1
        double mu_lo = d.min_value() - 2.0 * lambda;
        double mu_hi = vmax;
        auto total = [&](double mu) {
            double s = 0.0;
            for (const Atom& a : atoms) {
                s += a.prob * std::max(0.0, 1.0 + (a.value - mu) / (2.0 * lambda));
            }
            return s;
        };
        for (int it = 0; it < 200 && (mu_hi - mu_lo) > 1e-14 * std::max(1.0, std::abs(mu_hi));
             ++it) {
            const double mid = 0.5 * (mu_lo + mu_hi);
            (total(mid) > 1.0 ? mu_lo : mu_hi) = mid;
        }
        const double mu = 0.5 * (mu_lo + mu_hi);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = atoms[i].prob * std::max(0.0, 1.0 + (atoms[i].value - mu) / (2.0 * lambda));
            s += out[i];
        }
        for (double& qi : out) qi /= s;
    };
    auto chi2_of = [&](const std::vector<double>& qv) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ratio = qv[i] / atoms[i].prob - 1.0;
            s += atoms[i].prob * ratio * ratio;
        }
        return s;
    };

    std::vector<double> work(n);
    double lam_hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        fill_q(lam_hi, work);
        if (chi2_of(work) <= delta) break;
        lam_hi *= 2.0;
    }
    double lam_lo = lam_hi;
    for (int it = 0; it < 200; ++it) {
        lam_lo *= 0.5;
        fill_q(lam_lo, work);
        if (chi2_of(work) >= delta || lam_lo < 1e-14) break;
    }
    for (int it = 0; it < 200 && (lam_hi - lam_lo) > 1e-14 * lam_hi; ++it) {
        const double mid = 0.5 * (lam_lo + lam_hi);
        fill_q(mid, work);
        (chi2_of(work) >= delta ? lam_lo : lam_hi) = mid;
    }
    fill_q(0.5 * (lam_lo + lam_hi), q);

    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        value += q[i] * atoms[i].value;
    }
    r.value = value;
    r.weights = std::move(q);
    return r;
}

double fairness_risk(const std::vector<std::pair<double, DiscreteDistribution>>& groups) {
    if (groups.empty()) {
        throw BadGroups("fairness risk needs at least one group");
    }
    double total = 0.0;
    for (const auto& [prob, dist] : groups) {
        (void)dist;
        if (!std::isfinite(prob) || prob <= 0.0) {
            throw BadGroups("group probabilities must be finite and positive");
        }
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw BadGroups("group probabilities must sum to 1 within 1e-9");
    }
    double mean = 0.0;
    for (const auto& [prob, dist] : groups) {
        mean += (prob / total) * dist.mean();
    }
    double var = 0.0;
    for (const auto& [prob, dist] : groups) {
        const double dm = dist.mean() - mean;
        var += (prob / total) * dm * dm;
    }
    return mean + var;
}

double certainty_equivalent(const DiscreteDistribution& payouts, const ScalarFunction& f) {
    const double lo = payouts.min_value();
    const double hi = payouts.max_value();
    if (lo == hi) {
        return lo;
    }
    // strict monotonicity on the payout range, probed on atoms and a grid
    double prev = -kInf;
    for (int i = 0; i <= 64; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / 64.0;
        const double fx = f.eval(x);
        if (!(fx > prev)) {
            throw NotMonotone(f.describe() + " is not strictly increasing on the payout range");
        }
        prev = fx;
    }
    double target = 0.0;
    for (const Atom& a : payouts.atoms()) {
        target += a.prob * f.eval(a.value);
    }
    auto g = [&](double c) { return f.eval(c) - target; };
    const double glo = g(lo);
    const double ghi = g(hi);
    if (glo > 0.0 || ghi < 0.0) {
        throw NotMonotone("expected utility escapes the payout range");
    }
    return detail::bisect_sign_change(g, lo, hi, glo, ghi,
                                      1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)}));
}

double oce_from_utility(const DiscreteDistribution& payouts, const ScalarFunction& f) {
    return optimize_inner(payouts, f, /*maximize=*/true).value;
}

RiskResult risk_eval(const RiskSpec& spec, const DiscreteDistribution& d) {
    RiskResult r;
    switch (spec.kind()) {
    case RiskKind::mean:
        r.value = d.mean();
        return r;
    case RiskKind::var_quantile:
        r.value = d.quantile(spec.beta());
        return r;
    case RiskKind::cvar:
        return cvar(d, spec.beta());
    case RiskKind::cvar_tail:
        r.value = cvar_tail(d, spec.beta());
        return r;
    case RiskKind::l_risk:
        r.value = l_risk(d, spec.spectrum());
        return r;
    case RiskKind::oce:
        return oce(d, spec.phi());
    case RiskKind::entropic:
        r.value = entropic(d, spec.gamma());
        return r;
    case RiskKind::mean_deviation:
        return mean_deviation(d, spec.p(), spec.mode(), spec.threshold());
    case RiskKind::m_risk:
        return m_risk(d, spec.rho());
    case RiskKind::centered_deviation:
        r.value = centered_deviation(d, spec.base());
        return r;
    case RiskKind::cpt:
        r.value = cpt_score(d, spec.v_plus(), spec.v_minus(), spec.w_plus(), spec.w_minus(),
                            spec.ref());
        return r;
    case RiskKind::dro_chi2:
        return dro_chi2(d, spec.delta());
    case RiskKind::fairness_mean_var:
        // a plain distribution is a single group: zero conditional variance
        r.value = d.mean();
        return r;
    }
    throw BadSpec("unknown risk kind");
}

} // namespace risktool
