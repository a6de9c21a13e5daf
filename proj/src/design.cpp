#include "supcal/design.hpp"

#include <cmath>

#include "supcal/numerics.hpp"

namespace supcal {

namespace {

double sq(double x) { return x * x; }

constexpr double kConditionSnap = 1e-12;

double prior_mean_or(const DesignPrior& prior, const std::optional<double>& anticipated) {
    if (anticipated) return *anticipated;
    if (const auto* np = std::get_if<NormalPrior>(&prior)) return np->mean;
    return 0.0;  // families centered at the null value: the planning estimate drops out
}

// Existence condition value at continuous sample size n; the k support
// interval exists once this is >= 0, and it increases monotonically in n.
double condition_value(const DesignSpec& spec, double n) {
    const double log2k = 2.0 * std::log(spec.k);
    const double s2 = spec.unit_var / n;
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, JeffreysApprox>) {
                return std::log1p(n) - log2k;
            } else if constexpr (std::is_same_v<P, NormalPrior>) {
                const double t2 = sq(p.sd);
                const double d = prior_mean_or(spec.prior, spec.anticipated_estimate) - p.mean;
                return std::log1p(t2 / s2) + sq(d) / (s2 + t2) - log2k;
            } else if constexpr (std::is_same_v<P, LocalNormalPrior>) {
                return std::log1p(sq(p.sd) / s2) - log2k;
            } else {
                const double t2 = sq(p.scale);
                const double arg = std::exp(1.5 * std::log1p(t2 / s2)) * kSqrtE / (2.0 * spec.k);
                return 2.0 * lambert_w0(arg) - 1.0;
            }
        },
        spec.prior);
}

// Squared width of the k support interval at continuous n.
double width_squared(const DesignSpec& spec, double n) {
    const double log2k = 2.0 * std::log(spec.k);
    const double s2 = spec.unit_var / n;
    const double radicand = std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, JeffreysApprox>) {
                return std::log1p(n) - log2k;
            } else if constexpr (std::is_same_v<P, NormalPrior>) {
                const double t2 = sq(p.sd);
                const double d = prior_mean_or(spec.prior, spec.anticipated_estimate) - p.mean;
                return std::log1p(t2 / s2) + sq(d) / (s2 + t2) - log2k;
            } else if constexpr (std::is_same_v<P, LocalNormalPrior>) {
                const double t2 = sq(p.sd);
                return (std::log1p(t2 / s2) - log2k) * (1.0 + s2 / t2);
            } else {
                const double t2 = sq(p.scale);
                const double arg = std::exp(1.5 * std::log1p(t2 / s2)) * kSqrtE / (2.0 * spec.k);
                return (2.0 * lambert_w0(arg) - 1.0) * (1.0 + s2 / t2);
            }
        },
        spec.prior);
    if (radicand <= 0.0) return 0.0;
    return 4.0 * s2 * radicand;
}

long ceil_count(double x) { return static_cast<long>(std::ceil(x - 1e-9)); }

}  // namespace

DesignSpec::DesignSpec(double k_, double unit_var_, DesignPrior prior_)
    : k(k_), unit_var(unit_var_), prior(std::move(prior_)) {
    if (!std::isfinite(k) || !(k >= 1.0))
        throw std::invalid_argument("design target support level k must be >= 1");
    if (!std::isfinite(unit_var) || !(unit_var > 0.0))
        throw std::invalid_argument("unit variance must be positive");
}

long n_for_existence(const DesignSpec& spec) {
    if (std::holds_alternative<JeffreysApprox>(spec.prior))
        return std::max(1L, ceil_count(sq(spec.k) - 1.0));
    if (condition_value(spec, 1.0) >= -kConditionSnap) return 1;
    long hi = 2;
    while (condition_value(spec, static_cast<double>(hi)) < -kConditionSnap) hi *= 2;
    long lo = hi / 2;  // condition fails at lo, holds at hi
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (condition_value(spec, static_cast<double>(mid)) >= -kConditionSnap)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::optional<std::pair<long, long>> n_for_width(const DesignSpec& spec) {
    if (!spec.target_width) throw std::invalid_argument("no target width in design spec");
    const double width = *spec.target_width;
    if (!std::isfinite(width) || !(width > 0.0))
        throw std::invalid_argument("target width must be positive");
    if (!(spec.k > 1.0))
        throw std::invalid_argument("width-based design requires k > 1");

    if (std::holds_alternative<JeffreysApprox>(spec.prior) && !spec.exact_width) {
        // Closed form n = k^2 exp(-W(-k^2 l^2 / (4 lambda^2))), one solution
        // per real branch; feasible iff the W argument stays above -1/e.
        const double a = sq(spec.k) * sq(width) / (4.0 * spec.unit_var);
        if (a > kInvE + 1e-15) return std::nullopt;
        const double n1 = sq(spec.k) * std::exp(-lambert_w0(-a));
        const double n2 = sq(spec.k) * std::exp(-lambert_wm1(-a));
        return std::make_pair(ceil_count(n1), ceil_count(std::max(n1, n2)));
    }

    // Numeric route: the squared width rises from 0 at the continuous
    // existence boundary to a single maximum and then decays, so the target
    // is met on at most two monotone segments.
    const double target = sq(width);
    double lo = static_cast<double>(n_for_existence(spec));
    if (condition_value(spec, lo) > 0.0) {
        double shrink = lo;
        while (shrink > 1e-12 && condition_value(spec, shrink) > 0.0) shrink *= 0.5;
        lo = (shrink <= 1e-12) ? 1e-12
                               : find_root([&](double n) { return condition_value(spec, n); },
                                           Bracket{shrink, lo}, 1e-12);
    }
    double hi = std::max(2.0 * lo, 2.0);
    while (!(width_squared(spec, hi) < target && width_squared(spec, hi) < width_squared(spec, 0.5 * hi))) {
        hi *= 2.0;
        if (hi > 1e280) throw std::runtime_error("width design: no finite upper bracket found");
    }

    double a = lo, b = hi;
    for (int i = 0; i < 400; ++i) {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (width_squared(spec, m1) < width_squared(spec, m2))
            a = m1;
        else
            b = m2;
    }
    const double n_peak = 0.5 * (a + b);
    const double peak = width_squared(spec, n_peak);
    if (peak < target * (1.0 - 1e-12)) return std::nullopt;
    if (peak <= target * (1.0 + 1e-12)) {
        const long n = ceil_count(n_peak);
        return std::make_pair(n, n);
    }
    const auto f = [&](double n) { return width_squared(spec, n) - target; };
    // The ascending segment can lack a crossing when the width diverges at
    // the lower boundary (non-Jeffreys priors with k barely above 1); the
    // descending crossing always exists once the peak clears the target.
    std::optional<double> r1;
    if (f(lo) <= 0.0) r1 = find_root(f, Bracket{lo, n_peak}, 1e-10);
    const double r2 = find_root(f, Bracket{n_peak, hi}, 1e-10);
    return std::make_pair(ceil_count(r1.value_or(r2)), ceil_count(r2));
}

DesignResult design(const DesignSpec& spec) {
    DesignResult result{};
    result.n_exists = n_for_existence(spec);
    result.any_n = spec.k <= 1.0;
    result.width_requested = spec.target_width.has_value();
    if (result.width_requested) result.n_width = n_for_width(spec);
    return result;
}

}  // namespace supcal
