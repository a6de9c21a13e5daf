#include "supcal/calibration.hpp"

#include <cmath>

#include "supcal/intervals.hpp"
#include "supcal/numerics.hpp"

namespace supcal {

double ci_level_to_min_support(double level, MinBfFamily family) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must be in (0, 1)");
    const double z = norm_quantile(0.5 * (1.0 + level));
    switch (family) {
        case MinBfFamily::AllPriors:
            return std::exp(-0.5 * z * z);
        case MinBfFamily::LocalNormalClass:
            if (z < 1.0)
                throw MappingUndefinedError(
                    "local-normal mapping needs a confidence level of at least 2 Phi(1) - 1 "
                    "(about 68.27%)");
            return z * std::exp(0.5 * (1.0 - z * z));
        case MinBfFamily::EpLogP: {
            const double p = 1.0 - level;
            if (p > kInvE)
                throw MappingUndefinedError(
                    "-e p log p mapping needs a confidence level of at least 1 - 1/e "
                    "(about 63.21%)");
            return -kE * p * std::log(p);
        }
    }
    throw std::logic_error("unreachable");
}

double min_support_to_ci_level(double k, MinBfFamily family) {
    if (!(k > 0.0 && k <= 1.0)) throw std::invalid_argument("k must be in (0, 1]");
    return 2.0 * norm_cdf(min_support_multiplier(k, family)) - 1.0;
}

RealInterval transform_interval(const RealInterval& interval, const IntervalMethod& from,
                                const IntervalMethod& to, const SummaryData& data) {
    const RealInterval expected = support_interval(data, from);
    const double tol = 1e-6 * data.se;
    const bool matches = interval.kind() == expected.kind() &&
                         (!interval.has_endpoints() ||
                          (std::abs(interval.lower() - expected.lower()) <= tol &&
                           std::abs(interval.upper() - expected.upper()) <= tol));
    if (!matches)
        throw std::invalid_argument(
            "interval does not match the stated source method for these data");

    const MultiplierResult ma = multiplier(from, data);
    const MultiplierResult mb = multiplier(to, data);
    if (!ma.exists)
        throw std::invalid_argument("source interval does not exist for these data");
    if (!mb.exists) return RealInterval::empty();
    if (ma.multiplier == 0.0 || mb.multiplier == 0.0) return support_interval(data, to);
    const double ratio = mb.multiplier / ma.multiplier;
    return RealInterval::bounded(data.estimate + (interval.lower() - data.estimate) * ratio,
                                 data.estimate + (interval.upper() - data.estimate) * ratio);
}

}  // namespace supcal
