#pragma once

#include <string>

#include "supcal/model.hpp"

namespace supcal {

/// Minimum support levels above 1 are not defined: a minimum Bayes factor can
/// bound evidence against a null value but never for it.
class UnsupportedLevelError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Standard error multiplier M of an interval estimate: every interval here
/// has the form estimate +/- se * M. Support intervals with k > 1 may fail to
/// exist; when they do, `exists` is false and `existence_condition` states
/// the requirement that was violated.
struct MultiplierResult {
    bool exists;
    double multiplier;  // >= 0, meaningful only when exists
    std::string existence_condition;
};

/// Standard error multiplier for the requested interval type. Data enter only
/// through the normal-prior support interval (estimate/prior-mean conflict).
/// Throws UnsupportedLevelError for minimum support intervals with k > 1.
MultiplierResult multiplier(const IntervalMethod& method, const SummaryData& data);

/// Multiplier of a minimum support interval, defined for 0 < k <= 1.
double min_support_multiplier(double k, MinBfFamily family);

/// Interval of null values whose Bayes factor is at least k (or the
/// confidence interval for a CI method): estimate +/- se * M. Returns a Point
/// at the estimate when M = 0 and Empty when the interval does not exist.
RealInterval support_interval(const SummaryData& data, const IntervalMethod& method);

enum class JeffreysVariant {
    Plain,            // prior mean at the estimate, variance n * se^2
    UnitInformation,  // local normal with unit-information variance
};

/// Support interval for the sample-size based default priors, with
/// multipliers sqrt(log(1+n) - 2 log k) (plain) and the same radicand scaled
/// by (1 + 1/n) (unit information). Requires n >= k^2 - 1 to exist.
RealInterval jeffreys_si(const SummaryData& data, const EffectiveSample& eff, double k,
                         JeffreysVariant variant);

/// Scale of a normal moment prior placing `mass` probability within
/// halfwidth of its symmetry point, solving
/// 2 Phi(u) - 1 - 2 u phi(u) = mass with u = halfwidth / scale.
double nm_scale_from_mass(double halfwidth, double mass);

}  // namespace supcal
