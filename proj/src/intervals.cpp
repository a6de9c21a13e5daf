#include "supcal/intervals.hpp"

#include <cmath>

#include "supcal/numerics.hpp"

namespace supcal {

namespace {

double sq(double x) { return x * x; }

// Radicands within this distance of zero are treated as exactly zero, so that
// existence boundaries like n = k^2 - 1 classify as Point intervals
// regardless of which side floating-point rounding lands on.
constexpr double kRadicandSnap = 1e-12;

MultiplierResult from_radicand(double radicand, std::string condition) {
    if (std::abs(radicand) <= kRadicandSnap) return {true, 0.0, std::move(condition)};
    if (radicand < 0.0) return {false, 0.0, std::move(condition)};
    return {true, std::sqrt(radicand), std::move(condition)};
}

}  // namespace

double min_support_multiplier(double k, MinBfFamily family) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("support level k must be positive and finite");
    if (k > 1.0)
        throw UnsupportedLevelError(
            "minimum support intervals exist only for k <= 1: the minimized Bayes factor "
            "cannot exceed 1");
    switch (family) {
        case MinBfFamily::AllPriors:
            return k == 1.0 ? 0.0 : std::sqrt(-2.0 * std::log(k));
        case MinBfFamily::LocalNormalClass:
            // -k^2/e lies in [-1/e, 0); at k = 1 the branch point gives M = 1.
            return std::sqrt(-lambert_wm1(-sq(k) * kInvE));
        case MinBfFamily::EpLogP: {
            const double p = std::exp(lambert_wm1(-k * kInvE));
            return norm_quantile(1.0 - 0.5 * p);
        }
    }
    throw std::logic_error("unreachable");
}

MultiplierResult multiplier(const IntervalMethod& method, const SummaryData& data) {
    return std::visit(
        [&](const auto& m) -> MultiplierResult {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConfidenceInterval>) {
                return {true, norm_quantile(0.5 * (1.0 + m.level)),
                        "defined for every confidence level in (0, 1)"};
            } else if constexpr (std::is_same_v<T, SupportInterval>) {
                const double s2 = sq(data.se);
                const double log2k = 2.0 * std::log(m.k);
                return std::visit(
                    [&](const auto& p) -> MultiplierResult {
                        using P = std::decay_t<decltype(p)>;
                        if constexpr (std::is_same_v<P, NormalPrior>) {
                            const double t2 = sq(p.sd);
                            const double lhs =
                                std::log1p(t2 / s2) + sq(data.estimate - p.mean) / (s2 + t2);
                            return from_radicand(
                                lhs - log2k,
                                "requires log(1 + sd^2/se^2) + (estimate - mean)^2/(se^2 + sd^2) "
                                ">= 2 log(k)");
                        } else if constexpr (std::is_same_v<P, LocalNormalPrior>) {
                            const double t2 = sq(p.sd);
                            const double rad =
                                (std::log1p(t2 / s2) - log2k) * (1.0 + s2 / t2);
                            return from_radicand(rad,
                                                 "requires log(1 + sd^2/se^2) >= 2 log(k)");
                        } else {
                            const double t2 = sq(p.scale);
                            const double arg =
                                std::exp(1.5 * std::log1p(t2 / s2)) * kSqrtE / (2.0 * m.k);
                            const double rad =
                                (2.0 * lambert_w0(arg) - 1.0) * (1.0 + s2 / t2);
                            return from_radicand(
                                rad,
                                "requires W0((1 + scale^2/se^2)^(3/2) sqrt(e) / (2k)) >= 1/2");
                        }
                    },
                    m.prior);
            } else {
                return {true, min_support_multiplier(m.k, m.family),
                        "defined for every support level k <= 1"};
            }
        },
        method);
}

RealInterval support_interval(const SummaryData& data, const IntervalMethod& method) {
    const MultiplierResult r = multiplier(method, data);
    if (!r.exists) return RealInterval::empty();
    if (r.multiplier == 0.0) return RealInterval::point(data.estimate);
    return RealInterval::bounded(data.estimate - data.se * r.multiplier,
                                 data.estimate + data.se * r.multiplier);
}

RealInterval jeffreys_si(const SummaryData& data, const EffectiveSample& eff, double k,
                         JeffreysVariant variant) {
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("support level k must be positive and finite");
    const double implied_se = std::sqrt(eff.unit_var / eff.n);
    if (std::abs(implied_se - data.se) > 1e-6 * data.se)
        throw std::invalid_argument(
            "effective sample inconsistent with data: se must equal sqrt(unit_var / n)");
    double radicand = std::log1p(eff.n) - 2.0 * std::log(k);
    if (variant == JeffreysVariant::UnitInformation) radicand *= 1.0 + 1.0 / eff.n;
    if (std::abs(radicand) <= kRadicandSnap) return RealInterval::point(data.estimate);
    if (radicand < 0.0) return RealInterval::empty();
    const double half = data.se * std::sqrt(radicand);
    return RealInterval::bounded(data.estimate - half, data.estimate + half);
}

double nm_scale_from_mass(double halfwidth, double mass) {
    if (!(halfwidth > 0.0) || !std::isfinite(halfwidth))
        throw std::invalid_argument("halfwidth must be positive and finite");
    if (!(mass > 0.0 && mass < 1.0)) throw std::invalid_argument("mass must be in (0, 1)");
    // Central mass of the moment prior within u scales of its symmetry point.
    const auto central_mass = [](double u) {
        return 2.0 * norm_cdf(u) - 1.0 - 2.0 * u * norm_pdf(u);
    };
    const auto g = [&](double s) { return central_mass(halfwidth / s) - mass; };
    // g is decreasing in s: mass -> 1 as s -> 0 and -> 0 as s -> inf.
    double lo = halfwidth, hi = halfwidth;
    while (g(lo) <= 0.0) lo *= 0.5;
    while (g(hi) >= 0.0) hi *= 2.0;
    return find_root(g, Bracket{lo, hi}, 1e-15);
}

}  // namespace supcal
