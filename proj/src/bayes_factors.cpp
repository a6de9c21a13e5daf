#include "supcal/bayes_factors.hpp"

#include <cmath>

namespace supcal {

namespace {

double sq(double x) { return x * x; }

}  // namespace

double log_bf_normal(const SummaryData& data, const NormalPrior& prior, double theta0) {
    const double s2 = sq(data.se);
    const double t2 = sq(prior.sd);
    const double null_term = sq(data.estimate - theta0) / s2;
    const double prior_term = sq(data.estimate - prior.mean) / (s2 + t2);
    return 0.5 * std::log1p(t2 / s2) - 0.5 * (null_term - prior_term);
}

double bf_normal(const SummaryData& data, const NormalPrior& prior, double theta0) {
    return std::exp(log_bf_normal(data, prior, theta0));
}

double log_bf_local_normal(const SummaryData& data, const LocalNormalPrior& prior, double theta0) {
    const double s2 = sq(data.se);
    const double t2 = sq(prior.sd);
    return 0.5 * std::log1p(t2 / s2) - 0.5 * sq(data.estimate - theta0) / (s2 * (1.0 + s2 / t2));
}

double bf_local_normal(const SummaryData& data, const LocalNormalPrior& prior, double theta0) {
    return std::exp(log_bf_local_normal(data, prior, theta0));
}

double log_bf_nonlocal_moment(const SummaryData& data, const NonlocalMomentPrior& prior,
                              double theta0) {
    const double s2 = sq(data.se);
    const double t2 = sq(prior.scale);
    // Shrunken squared standardized distance shared by the exponential and
    // the moment penalty.
    const double q = sq(data.estimate - theta0) / (s2 * (1.0 + s2 / t2));
    return 1.5 * std::log1p(t2 / s2) - 0.5 * q - std::log1p(q);
}

double bf_nonlocal_moment(const SummaryData& data, const NonlocalMomentPrior& prior, double theta0) {
    return std::exp(log_bf_nonlocal_moment(data, prior, theta0));
}

double log_minbf_all(const SummaryData& data, double theta0) {
    return -0.5 * sq((data.estimate - theta0) / data.se);
}

double minbf_all(const SummaryData& data, double theta0) {
    return std::exp(log_minbf_all(data, theta0));
}

double log_minbf_local_normal(const SummaryData& data, double theta0) {
    const double az = std::abs(data.estimate - theta0) / data.se;
    if (az <= 1.0) return 0.0;
    return std::log(az) + 0.5 * (1.0 - sq(az));
}

double minbf_local_normal(const SummaryData& data, double theta0) {
    return std::exp(log_minbf_local_normal(data, theta0));
}

double log_minbf_eplogp(const SummaryData& data, double theta0) {
    const double az = std::abs(data.estimate - theta0) / data.se;
    // log p with p = 2 (1 - Phi(|z|)), kept on the log scale for deep tails.
    const double log_p = std::log(2.0) + norm_logcdf(-az);
    if (log_p > -1.0) return 0.0;  // p > 1/e
    return 1.0 + log_p + std::log(-log_p);
}

double minbf_eplogp(const SummaryData& data, double theta0) {
    return std::exp(log_minbf_eplogp(data, theta0));
}

double log_bf(const SummaryData& data, const IntervalMethod& method, double theta0) {
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConfidenceInterval>) {
                throw std::invalid_argument("confidence intervals have no Bayes factor curve");
            } else if constexpr (std::is_same_v<T, SupportInterval>) {
                return std::visit(
                    [&](const auto& p) -> double {
                        using P = std::decay_t<decltype(p)>;
                        if constexpr (std::is_same_v<P, NormalPrior>)
                            return log_bf_normal(data, p, theta0);
                        else if constexpr (std::is_same_v<P, LocalNormalPrior>)
                            return log_bf_local_normal(data, p, theta0);
                        else
                            return log_bf_nonlocal_moment(data, p, theta0);
                    },
                    m.prior);
            } else {
                switch (m.family) {
                    case MinBfFamily::AllPriors: return log_minbf_all(data, theta0);
                    case MinBfFamily::LocalNormalClass: return log_minbf_local_normal(data, theta0);
                    case MinBfFamily::EpLogP: return log_minbf_eplogp(data, theta0);
                }
                throw std::logic_error("unreachable");
            }
        },
        method);
}

double bf(const SummaryData& data, const IntervalMethod& method, double theta0) {
    return std::exp(log_bf(data, method, theta0));
}

BfCurve bf_curve(const SummaryData& data, const IntervalMethod& method, Bracket range, int points) {
    if (points < 2) throw std::invalid_argument("bf_curve: need at least 2 grid points");
    if (!(range.lo < range.hi)) throw std::invalid_argument("bf_curve: range.lo must be < range.hi");
    BfCurve curve{method, {}};
    curve.grid.reserve(static_cast<size_t>(points));
    const double step = (range.hi - range.lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
        const double theta0 = (i == points - 1) ? range.hi : range.lo + i * step;
        curve.grid.push_back({theta0, bf(data, method, theta0)});
    }
    return curve;
}

}  // namespace supcal
