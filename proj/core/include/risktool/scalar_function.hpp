#ifndef RISKTOOL_SCALAR_FUNCTION_HPP
#define RISKTOOL_SCALAR_FUNCTION_HPP

#include <string>

namespace risktool {

enum class ScalarFamily {
    squared,
    abs_power,
    huber,
    catoni,
    pos_part_power,
    oce_cvar,
    oce_exp,
    linear,
    log_utility,
    exp_utility,
    tk_value,
    tk_weight,
};

// Parameterized one-dimensional function family with value, derivative and
// declared analytic properties. Instances are immutable values.
//
// Kink convention: deriv() returns the right derivative, uniformly, so that
// subgradient-based training is deterministic.
class ScalarFunction {
public:
    static ScalarFunction squared();
    static ScalarFunction abs_power(double p);
    static ScalarFunction huber(double c);
    // Catoni's narrowest bounded-influence psi, integrated into a convex rho.
    // The constants (psi(u) = log(1 + u + u^2/2) for u >= 0, odd) are the
    // classical choice; they are a convention of this library, not mandated
    // by any single source.
    static ScalarFunction catoni();
    static ScalarFunction pos_part_power(double p);
    static ScalarFunction oce_cvar(double beta);
    static ScalarFunction oce_exp(double gamma);
    static ScalarFunction linear();
    static ScalarFunction log_utility();
    // CARA utility (1 - exp(-gamma*x))/gamma; increasing for any gamma != 0,
    // concave for gamma > 0.
    static ScalarFunction exp_utility(double gamma);
    // Prospect-theory value curve sign(x)*lambda*|x|^alpha. The library-wide
    // defaults (alpha = 0.88, lambda_+ = 1, lambda_- = 2.25) are the standard
    // parameterization, exposed rather than hard-coded.
    static ScalarFunction tk_value(double alpha, double lambda);
    // Probability weighting p^c / (p^c + (1-p)^c)^(1/c); monotone for
    // c in (0.28, 1].
    static ScalarFunction tk_weight(double c);

    // Disutility phi(u) = -f(-u) induced by a utility f; the loss-side
    // counterpart used by payout/loss duality.
    static ScalarFunction dual_disutility(const ScalarFunction& utility);

    double eval(double u) const;
    double deriv(double u) const;
    // Second derivative where it exists (used for implicit differentiation
    // of M-estimators); arbitrary fixed choice at kink points.
    double second_deriv(double u) const;

    // Open interval on which eval is finite.
    double domain_lo() const;
    double domain_hi() const;

    bool convex() const;
    bool concave() const;
    bool nondecreasing() const;
    bool nonnegative() const;
    // phi(0) = 0 and 1 in the subdifferential at 0.
    bool oce_admissible() const;

    ScalarFamily family() const { return family_; }
    bool reflected() const { return reflected_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }
    std::string describe() const;

private:
    ScalarFunction(ScalarFamily f, double p1, double p2, bool reflected)
        : family_(f), p1_(p1), p2_(p2), reflected_(reflected) {}

    double base_eval(double u) const;
    double base_deriv(double u) const;
    double base_second(double u) const;

    ScalarFamily family_;
    double p1_ = 0.0;
    double p2_ = 0.0;
    bool reflected_ = false;
};

} // namespace risktool

#endif
