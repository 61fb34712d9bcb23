#include "risktool/datagen.hpp"

#include <algorithm>
#include <cmath>

#include "risktool/errors.hpp"

namespace risktool {

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("normal quantile argument must lie in (0,1)");
    }
    // Wichura's algorithm AS241, PPND16 variant (~1e-16 relative accuracy).
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double val;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        val = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        val = num / den;
    }
    return q < 0.0 ? -val : val;
}

DistSpec DistSpec::normal(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(mu) || !std::isfinite(sigma)) {
        throw BadSpec("normal requires finite mu and sigma > 0");
    }
    DistSpec s(DistFamily::normal);
    s.p1_ = mu;
    s.p2_ = sigma;
    return s;
}

DistSpec DistSpec::pareto(double alpha, double xm) {
    if (!(alpha > 0.0) || !(xm > 0.0)) {
        throw BadSpec("pareto requires alpha > 0 and xm > 0");
    }
    DistSpec s(DistFamily::pareto);
    s.p1_ = alpha;
    s.p2_ = xm;
    return s;
}

DistSpec DistSpec::lognormal(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(mu)) {
        throw BadSpec("lognormal requires finite mu and sigma > 0");
    }
    DistSpec s(DistFamily::lognormal);
    s.p1_ = mu;
    s.p2_ = sigma;
    return s;
}

DistSpec DistSpec::bernoulli_scaled(double p, double v0, double v1) {
    if (!(p > 0.0 && p < 1.0) || !std::isfinite(v0) || !std::isfinite(v1)) {
        throw BadSpec("bernoulli_scaled requires p in (0,1) and finite values");
    }
    DistSpec s(DistFamily::bernoulli_scaled);
    s.p1_ = p;
    s.p2_ = v0;
    s.p3_ = v1;
    return s;
}

DistSpec DistSpec::stpetersburg() { return DistSpec(DistFamily::stpetersburg); }

DistSpec DistSpec::finite(DiscreteDistribution atoms) {
    DistSpec s(DistFamily::finite);
    s.atoms_ = std::move(atoms);
    return s;
}

const DiscreteDistribution& DistSpec::atoms() const {
    if (!atoms_) {
        throw BadSpec("distribution spec carries no atoms");
    }
    return *atoms_;
}

double DistSpec::draw(SplitMix64& rng) const {
    const double u = rng.next_unit();
    switch (family_) {
    case DistFamily::normal:
        return p1_ + p2_ * inverse_normal_cdf(u);
    case DistFamily::pareto:
        return p2_ * std::pow(1.0 - u, -1.0 / p1_);
    case DistFamily::lognormal:
        return std::exp(p1_ + p2_ * inverse_normal_cdf(u));
    case DistFamily::bernoulli_scaled:
        return u < p1_ ? p3_ : p2_;
    case DistFamily::stpetersburg: {
        int k = static_cast<int>(std::ceil(-std::log2(1.0 - u)));
        k = std::clamp(k, 1, 60);
        return std::ldexp(1.0, k);
    }
    case DistFamily::finite: {
        const DiscreteDistribution& d = *atoms_;
        const std::vector<double>& cum = d.cumulative();
        for (std::size_t i = 0; i < cum.size(); ++i) {
            if (cum[i] >= u) {
                return d.atoms()[i].value;
            }
        }
        return d.max_value();
    }
    }
    throw BadSpec("unknown distribution family");
}

std::string DistSpec::describe() const {
    switch (family_) {
    case DistFamily::normal:
        return "normal(" + std::to_string(p1_) + "," + std::to_string(p2_) + ")";
    case DistFamily::pareto:
        return "pareto(" + std::to_string(p1_) + "," + std::to_string(p2_) + ")";
    case DistFamily::lognormal:
        return "lognormal(" + std::to_string(p1_) + "," + std::to_string(p2_) + ")";
    case DistFamily::bernoulli_scaled:
        return "bernoulli_scaled(" + std::to_string(p1_) + "," + std::to_string(p2_) + "," +
               std::to_string(p3_) + ")";
    case DistFamily::stpetersburg:
        return "stpetersburg";
    case DistFamily::finite:
        return "finite(" + std::to_string(atoms_->size()) + " atoms)";
    }
    return "?";
}

LossVector sample(const DistSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) {
        throw BadSpec("sample size must be at least 1");
    }
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(spec.draw(rng));
    }
    return LossVector(std::move(out));
}

Sampler make_sampler(const DistSpec& spec) {
    return [spec](std::size_t n, std::uint64_t seed) { return sample(spec, n, seed).values(); };
}

Dataset gen_regression(std::size_t dim, std::size_t n, const std::vector<double>& w_star,
                       const DistSpec& noise, std::uint64_t seed) {
    if (dim < 1 || n < 1) {
        throw BadSpec("gen_regression requires dim >= 1 and n >= 1");
    }
    if (w_star.size() != dim) {
        throw DimensionMismatch("w_star dimension does not match dim");
    }
    SplitMix64 rng(seed);
    std::vector<Row> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Row row;
        row.features.reserve(dim);
        double label = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double x = inverse_normal_cdf(rng.next_unit());
            row.features.push_back(x);
            label += w_star[j] * x;
        }
        row.label = label + noise.draw(rng);
        rows.push_back(std::move(row));
    }
    return Dataset(std::move(rows));
}

std::vector<std::pair<std::string, std::vector<double>>> gen_grouped(
    const std::vector<std::pair<double, DistSpec>>& group_specs, std::size_t n,
    std::uint64_t seed) {
    if (group_specs.empty()) {
        throw BadSpec("gen_grouped needs at least one group");
    }
    double total = 0.0;
    for (const auto& [prob, spec] : group_specs) {
        (void)spec;
        if (!(prob > 0.0) || !std::isfinite(prob)) {
            throw BadSpec("group probabilities must be positive");
        }
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw BadSpec("group probabilities must sum to 1 within 1e-9");
    }

    std::vector<std::pair<std::string, std::vector<double>>> out;
    out.reserve(group_specs.size());
    for (std::size_t g = 0; g < group_specs.size(); ++g) {
        out.emplace_back("g" + std::to_string(g), std::vector<double>{});
    }
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        double cum = 0.0;
        std::size_t g = group_specs.size() - 1;
        for (std::size_t j = 0; j < group_specs.size(); ++j) {
            cum += group_specs[j].first / total;
            if (cum >= u) {
                g = j;
                break;
            }
        }
        out[g].second.push_back(group_specs[g].second.draw(rng));
    }
    return out;
}

} // namespace risktool
