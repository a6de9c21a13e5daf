#pragma once

#include <optional>
#include <utility>

#include "supcal/model.hpp"

namespace supcal {

/// Prior of the planned analysis's support interval. JeffreysApprox stands
/// for the default prior centered at the future estimate with variance
/// n * se^2, for which the closed forms n >= k^2 - 1 and the two-branch
/// Lambert W width solution apply.
struct JeffreysApprox {};

using DesignPrior = std::variant<JeffreysApprox, NormalPrior, LocalNormalPrior, NonlocalMomentPrior>;

/// Inputs of a support-based sample size calculation: target support level
/// k (> 1 to be useful; k = 1 is accepted and trivially satisfied), variance
/// of one effective observation, the analysis prior, an optional planning
/// value for the future estimate (defaults to the prior mean, i.e. no
/// prior-estimate conflict), and an optional target interval width.
struct DesignSpec {
    double k;
    double unit_var;
    DesignPrior prior;
    std::optional<double> anticipated_estimate;
    std::optional<double> target_width;
    /// Solve the width equation with the exact log(1 + n) term instead of the
    /// log(n) approximation behind the closed-form solution.
    bool exact_width = false;

    DesignSpec(double k_, double unit_var_, DesignPrior prior_);
};

struct DesignResult {
    long n_exists;                                  // minimal n for the k SI to exist
    bool any_n;                                     // k <= 1: every sample size works
    std::optional<std::pair<long, long>> n_width;   // (n1, n2), absent when infeasible
    bool width_requested;
};

/// Smallest integer sample size for which the k support interval exists
/// (floored at 1). Closed form ceil(k^2 - 1) for JeffreysApprox, monotone
/// integer search otherwise.
long n_for_existence(const DesignSpec& spec);

/// Sample sizes at which the k support interval spans the target width,
/// rounded up to integers. Two solutions (n1 <= n2) from the two real
/// Lambert W branches for JeffreysApprox; numeric two-segment root solve for
/// other priors or in exact mode. Empty optional when the width is infeasible.
std::optional<std::pair<long, long>> n_for_width(const DesignSpec& spec);

DesignResult design(const DesignSpec& spec);

}  // namespace supcal
