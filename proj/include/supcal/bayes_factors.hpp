#pragma once

#include <vector>

#include "supcal/model.hpp"
#include "supcal/numerics.hpp"

namespace supcal {

// Bayes factors BF01 comparing H0: theta = theta0 against H1: theta != theta0
// with the alternative described by a prior, evaluated from the normal
// likelihood of (estimate, se). All evaluators work on the log scale and
// exponentiate at the boundary, so |estimate - theta0| / se up to a few
// hundred stays finite.

double log_bf_normal(const SummaryData& data, const NormalPrior& prior, double theta0);
double bf_normal(const SummaryData& data, const NormalPrior& prior, double theta0);

double log_bf_local_normal(const SummaryData& data, const LocalNormalPrior& prior, double theta0);
double bf_local_normal(const SummaryData& data, const LocalNormalPrior& prior, double theta0);

double log_bf_nonlocal_moment(const SummaryData& data, const NonlocalMomentPrior& prior,
                              double theta0);
double bf_nonlocal_moment(const SummaryData& data, const NonlocalMomentPrior& prior, double theta0);

// Minimum Bayes factors: the smallest BF01 attainable over a class of
// alternative priors. All lie in (0, 1].

/// Over all priors: the alternative is a point mass at the estimate.
double log_minbf_all(const SummaryData& data, double theta0);
double minbf_all(const SummaryData& data, double theta0);

/// Over normal priors centered at theta0; equals 1 within one standard error.
double log_minbf_local_normal(const SummaryData& data, double theta0);
double minbf_local_normal(const SummaryData& data, double theta0);

/// The -e p log p bound on the two-sided p-value scale; equals 1 for p > 1/e.
double log_minbf_eplogp(const SummaryData& data, double theta0);
double minbf_eplogp(const SummaryData& data, double theta0);

/// log BF01 under the given method (support or minimum-support variant).
/// Throws std::invalid_argument for a confidence-interval method, which has
/// no Bayes factor attached.
double log_bf(const SummaryData& data, const IntervalMethod& method, double theta0);
double bf(const SummaryData& data, const IntervalMethod& method, double theta0);

struct CurvePoint {
    double theta0;
    double bf01;
};

/// BF01 evaluated on a uniform grid of null values, for plotting and for
/// cutting support intervals at a chosen height.
struct BfCurve {
    IntervalMethod method;
    std::vector<CurvePoint> grid;
};

/// Tabulate the method's Bayes factor over [range.lo, range.hi] on a uniform
/// grid with `points` >= 2 nodes (endpoints included exactly).
BfCurve bf_curve(const SummaryData& data, const IntervalMethod& method, Bracket range, int points);

}  // namespace supcal
