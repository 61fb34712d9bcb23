#include "risktool/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "risktool/errors.hpp"

namespace risktool {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double catoni_antideriv(double s) {
    // antiderivative of log((s^2+1)/2), used on s = |u| + 1
    return s * std::log((s * s + 1.0) / 2.0) - 2.0 * s + 2.0 * std::atan(s);
}

} // namespace

ScalarFunction ScalarFunction::squared() { return {ScalarFamily::squared, 0, 0, false}; }

ScalarFunction ScalarFunction::abs_power(double p) {
    if (!(p >= 1.0)) {
        throw BadSpec("abs_power exponent must satisfy p >= 1");
    }
    return {ScalarFamily::abs_power, p, 0, false};
}

ScalarFunction ScalarFunction::huber(double c) {
    if (!(c > 0.0)) {
        throw BadSpec("huber threshold must be positive");
    }
    return {ScalarFamily::huber, c, 0, false};
}

ScalarFunction ScalarFunction::catoni() { return {ScalarFamily::catoni, 0, 0, false}; }

ScalarFunction ScalarFunction::pos_part_power(double p) {
    if (!(p >= 1.0)) {
        throw BadSpec("pos_part_power exponent must satisfy p >= 1");
    }
    return {ScalarFamily::pos_part_power, p, 0, false};
}

ScalarFunction ScalarFunction::oce_cvar(double beta) {
    if (!(beta > 0.0 && beta < 1.0)) {
        throw BadSpec("oce_cvar level must lie in (0,1)");
    }
    return {ScalarFamily::oce_cvar, beta, 0, false};
}

ScalarFunction ScalarFunction::oce_exp(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw BadSpec("oce_exp tilt must be finite and nonzero");
    }
    return {ScalarFamily::oce_exp, gamma, 0, false};
}

ScalarFunction ScalarFunction::linear() { return {ScalarFamily::linear, 0, 0, false}; }

ScalarFunction ScalarFunction::log_utility() { return {ScalarFamily::log_utility, 0, 0, false}; }

ScalarFunction ScalarFunction::exp_utility(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) {
        throw BadSpec("exp_utility coefficient must be finite and nonzero");
    }
    return {ScalarFamily::exp_utility, gamma, 0, false};
}

ScalarFunction ScalarFunction::tk_value(double alpha, double lambda) {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(lambda > 0.0)) {
        throw BadSpec("tk_value requires alpha in (0,1] and lambda > 0");
    }
    return {ScalarFamily::tk_value, alpha, lambda, false};
}

ScalarFunction ScalarFunction::tk_weight(double c) {
    if (!(c > 0.28 && c <= 1.0)) {
        throw BadSpec("tk_weight exponent must lie in (0.28, 1] to stay monotone");
    }
    return {ScalarFamily::tk_weight, c, 0, false};
}

ScalarFunction ScalarFunction::dual_disutility(const ScalarFunction& utility) {
    ScalarFunction f = utility;
    f.reflected_ = !f.reflected_;
    return f;
}

double ScalarFunction::base_eval(double u) const {
    switch (family_) {
    case ScalarFamily::squared:
        return u * u;
    case ScalarFamily::abs_power:
        return std::pow(std::abs(u), p1_);
    case ScalarFamily::huber: {
        const double c = p1_;
        const double a = std::abs(u);
        return a <= c ? 0.5 * u * u : c * (a - 0.5 * c);
    }
    case ScalarFamily::catoni:
        return catoni_antideriv(std::abs(u) + 1.0) - catoni_antideriv(1.0);
    case ScalarFamily::pos_part_power:
        return u > 0.0 ? std::pow(u, p1_) : 0.0;
    case ScalarFamily::oce_cvar:
        return u > 0.0 ? u / (1.0 - p1_) : 0.0;
    case ScalarFamily::oce_exp:
        return std::expm1(p1_ * u) / p1_;
    case ScalarFamily::linear:
        return u;
    case ScalarFamily::log_utility:
        if (!(u > 0.0)) {
            throw DomainError("log utility requires a positive argument");
        }
        return std::log(u);
    case ScalarFamily::exp_utility:
        return -std::expm1(-p1_ * u) / p1_;
    case ScalarFamily::tk_value:
        return u == 0.0 ? 0.0 : std::copysign(p2_ * std::pow(std::abs(u), p1_), u);
    case ScalarFamily::tk_weight: {
        if (u < 0.0 || u > 1.0) {
            throw DomainError("probability weight argument must lie in [0,1]");
        }
        if (u == 0.0) return 0.0;
        if (u == 1.0) return 1.0;
        const double c = p1_;
        const double pc = std::pow(u, c);
        const double qc = std::pow(1.0 - u, c);
        return pc / std::pow(pc + qc, 1.0 / c);
    }
    }
    throw BadSpec("unknown scalar family");
}

double ScalarFunction::base_deriv(double u) const {
    switch (family_) {
    case ScalarFamily::squared:
        return 2.0 * u;
    case ScalarFamily::abs_power: {
        const double p = p1_;
        if (u == 0.0) {
            return p == 1.0 ? 1.0 : 0.0; // right derivative at the p=1 kink
        }
        return std::copysign(p * std::pow(std::abs(u), p - 1.0), u);
    }
    case ScalarFamily::huber: {
        const double c = p1_;
        return std::clamp(u, -c, c);
    }
    case ScalarFamily::catoni:
        return u == 0.0 ? 0.0
                        : std::copysign(std::log(1.0 + std::abs(u) + 0.5 * u * u), u);
    case ScalarFamily::pos_part_power: {
        const double p = p1_;
        if (u > 0.0) return p * std::pow(u, p - 1.0);
        if (u == 0.0 && p == 1.0) return 1.0; // right derivative
        return 0.0;
    }
    case ScalarFamily::oce_cvar:
        return u >= 0.0 ? 1.0 / (1.0 - p1_) : 0.0; // right derivative at 0
    case ScalarFamily::oce_exp:
        return std::exp(p1_ * u);
    case ScalarFamily::linear:
        return 1.0;
    case ScalarFamily::log_utility:
        if (!(u > 0.0)) {
            throw DomainError("log utility requires a positive argument");
        }
        return 1.0 / u;
    case ScalarFamily::exp_utility:
        return std::exp(-p1_ * u);
    case ScalarFamily::tk_value: {
        const double a = p1_;
        if (u == 0.0) {
            return a == 1.0 ? p2_ : kInf;
        }
        return p2_ * a * std::pow(std::abs(u), a - 1.0);
    }
    case ScalarFamily::tk_weight: {
        if (u < 0.0 || u > 1.0) {
            throw DomainError("probability weight argument must lie in [0,1]");
        }
        const double c = p1_;
        if (u == 0.0 || u == 1.0) {
            return c == 1.0 ? 1.0 : kInf;
        }
        const double q = 1.0 - u;
        const double pc = std::pow(u, c);
        const double qc = std::pow(q, c);
        const double S = pc + qc;
        const double pcm = std::pow(u, c - 1.0);
        const double qcm = std::pow(q, c - 1.0);
        return std::pow(S, -1.0 / c - 1.0) * (c * pcm * S - pc * (pcm - qcm));
    }
    }
    throw BadSpec("unknown scalar family");
}

double ScalarFunction::base_second(double u) const {
    switch (family_) {
    case ScalarFamily::squared:
        return 2.0;
    case ScalarFamily::abs_power: {
        const double p = p1_;
        if (u == 0.0) return p == 2.0 ? 2.0 : 0.0;
        return p * (p - 1.0) * std::pow(std::abs(u), p - 2.0);
    }
    case ScalarFamily::huber:
        return std::abs(u) <= p1_ ? 1.0 : 0.0;
    case ScalarFamily::catoni: {
        const double a = std::abs(u);
        return (1.0 + a) / (1.0 + a + 0.5 * a * a);
    }
    case ScalarFamily::pos_part_power: {
        const double p = p1_;
        if (u <= 0.0) return 0.0;
        return p * (p - 1.0) * std::pow(u, p - 2.0);
    }
    case ScalarFamily::oce_cvar:
        return 0.0;
    case ScalarFamily::oce_exp:
        return p1_ * std::exp(p1_ * u);
    case ScalarFamily::linear:
        return 0.0;
    case ScalarFamily::log_utility:
        if (!(u > 0.0)) {
            throw DomainError("log utility requires a positive argument");
        }
        return -1.0 / (u * u);
    case ScalarFamily::exp_utility:
        return -p1_ * std::exp(-p1_ * u);
    case ScalarFamily::tk_value: {
        const double a = p1_;
        if (u == 0.0) return 0.0;
        return std::copysign(p2_ * a * (a - 1.0) * std::pow(std::abs(u), a - 2.0), u);
    }
    case ScalarFamily::tk_weight:
        throw DomainError("second derivative of tk_weight is not provided");
    }
    throw BadSpec("unknown scalar family");
}

double ScalarFunction::eval(double u) const {
    return reflected_ ? -base_eval(-u) : base_eval(u);
}

double ScalarFunction::deriv(double u) const {
    return reflected_ ? base_deriv(-u) : base_deriv(u);
}

double ScalarFunction::second_deriv(double u) const {
    return reflected_ ? -base_second(-u) : base_second(u);
}

double ScalarFunction::domain_lo() const {
    double lo = -kInf;
    double hi = kInf;
    switch (family_) {
    case ScalarFamily::log_utility:
        lo = 0.0;
        break;
    case ScalarFamily::tk_weight:
        lo = 0.0;
        hi = 1.0;
        break;
    default:
        break;
    }
    return reflected_ ? -hi : lo;
}

double ScalarFunction::domain_hi() const {
    double lo = -kInf;
    double hi = kInf;
    switch (family_) {
    case ScalarFamily::log_utility:
        lo = 0.0;
        break;
    case ScalarFamily::tk_weight:
        lo = 0.0;
        hi = 1.0;
        break;
    default:
        break;
    }
    return reflected_ ? -lo : hi;
}

bool ScalarFunction::convex() const {
    if (reflected_) {
        ScalarFunction base = *this;
        base.reflected_ = false;
        return base.concave();
    }
    switch (family_) {
    case ScalarFamily::squared:
    case ScalarFamily::abs_power:
    case ScalarFamily::huber:
    case ScalarFamily::catoni:
    case ScalarFamily::pos_part_power:
    case ScalarFamily::oce_cvar:
    case ScalarFamily::linear:
        return true;
    case ScalarFamily::oce_exp:
        return p1_ > 0.0;
    case ScalarFamily::exp_utility:
        return p1_ < 0.0;
    default:
        return false;
    }
}

bool ScalarFunction::concave() const {
    if (reflected_) {
        ScalarFunction base = *this;
        base.reflected_ = false;
        return base.convex();
    }
    switch (family_) {
    case ScalarFamily::linear:
    case ScalarFamily::log_utility:
        return true;
    case ScalarFamily::oce_exp:
        return p1_ < 0.0;
    case ScalarFamily::exp_utility:
        return p1_ > 0.0;
    default:
        return false;
    }
}

bool ScalarFunction::nondecreasing() const {
    switch (family_) {
    case ScalarFamily::pos_part_power:
    case ScalarFamily::oce_cvar:
    case ScalarFamily::oce_exp:
    case ScalarFamily::linear:
    case ScalarFamily::log_utility:
    case ScalarFamily::exp_utility:
    case ScalarFamily::tk_value:
    case ScalarFamily::tk_weight:
        return true; // reflection u -> -f(-u) preserves monotone direction
    default:
        return false;
    }
}

bool ScalarFunction::nonnegative() const {
    if (reflected_) {
        return false;
    }
    switch (family_) {
    case ScalarFamily::squared:
    case ScalarFamily::abs_power:
    case ScalarFamily::huber:
    case ScalarFamily::catoni:
    case ScalarFamily::pos_part_power:
    case ScalarFamily::oce_cvar:
    case ScalarFamily::tk_weight:
        return true;
    default:
        return false;
    }
}

bool ScalarFunction::oce_admissible() const {
    if (reflected_) {
        // phi(u) = -f(-u) satisfies phi(0)=0, phi'(0)=1 exactly when f does
        switch (family_) {
        case ScalarFamily::linear:
        case ScalarFamily::exp_utility:
            return true;
        default:
            return false;
        }
    }
    switch (family_) {
    case ScalarFamily::oce_cvar:
    case ScalarFamily::oce_exp:
    case ScalarFamily::linear:
        return true;
    case ScalarFamily::pos_part_power:
        return p1_ == 1.0;
    default:
        return false;
    }
}

std::string ScalarFunction::describe() const {
    std::ostringstream os;
    switch (family_) {
    case ScalarFamily::squared: os << "squared"; break;
    case ScalarFamily::abs_power: os << "abs_power(" << p1_ << ")"; break;
    case ScalarFamily::huber: os << "huber(" << p1_ << ")"; break;
    case ScalarFamily::catoni: os << "catoni"; break;
    case ScalarFamily::pos_part_power: os << "pos_part_power(" << p1_ << ")"; break;
    case ScalarFamily::oce_cvar: os << "oce_cvar(" << p1_ << ")"; break;
    case ScalarFamily::oce_exp: os << "oce_exp(" << p1_ << ")"; break;
    case ScalarFamily::linear: os << "linear"; break;
    case ScalarFamily::log_utility: os << "log_utility"; break;
    case ScalarFamily::exp_utility: os << "exp_utility(" << p1_ << ")"; break;
    case ScalarFamily::tk_value: os << "tk_value(" << p1_ << "," << p2_ << ")"; break;
    case ScalarFamily::tk_weight: os << "tk_weight(" << p1_ << ")"; break;
    }
    if (reflected_) {
        return "dual(" + os.str() + ")";
    }
    return os.str();
}

} // namespace risktool
