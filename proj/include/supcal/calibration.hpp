#pragma once

#include "supcal/model.hpp"

namespace supcal {

/// Requested level lies outside the domain of the family's one-to-one
/// mapping (the piecewise minimum Bayes factor equals 1 there).
class MappingUndefinedError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Minimum support level k whose minimum support interval coincides with the
/// (level)100% confidence interval. Closed forms per family, z = Phi^-1((1+level)/2):
/// AllPriors k = exp(-z^2/2); LocalNormalClass k = z exp((1-z^2)/2) for z >= 1;
/// EpLogP k = -e p log p with p = 1 - level <= 1/e.
/// Throws MappingUndefinedError outside the piecewise families' domains.
double ci_level_to_min_support(double level, MinBfFamily family);

/// Inverse mapping: confidence level of the k minimum support interval,
/// level = 2 Phi(M_k) - 1. Defined for all 0 < k <= 1.
double min_support_to_ci_level(double k, MinBfFamily family);

/// Re-express an interval of one type as another for the same data: subtract
/// the estimate, rescale by the ratio of standard error multipliers, add the
/// estimate back. The input must match `from` recomputed on `data` to within
/// 1e-6 * se. Returns Empty when the target interval does not exist.
RealInterval transform_interval(const RealInterval& interval, const IntervalMethod& from,
                                const IntervalMethod& to, const SummaryData& data);

}  // namespace supcal
