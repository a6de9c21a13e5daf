#pragma once

#include <cstdint>
#include <vector>

#include "supcal/model.hpp"

namespace supcal {

/// The coverage bound applies only to support intervals built from
/// data-independent priors; confidence intervals and minimum support
/// intervals are rejected with this error.
class UnsupportedMethodError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Analyze once after n observations.
struct FixedN {
    long n;
};

/// Analyze at each look in the schedule and stop as soon as the Bayes factor
/// at the true value drops below k. An empty schedule means every
/// observation from 1 to max_looks, the most adversarial choice.
struct OptionalStopping {
    long max_looks;
    std::vector<long> looks = {};
};

using StoppingRegime = std::variant<FixedN, OptionalStopping>;

/// Monte Carlo experiment: data x_i ~ Normal(true_theta, unit_var) are
/// accumulated, the support interval method (k < 1) is applied to the running
/// mean and its standard error, and coverage of true_theta is recorded at the
/// stopping (or final) look. Deterministic given the seed; each replication
/// gets an independent substream of (seed, replication index).
struct SimConfig {
    double true_theta;
    double unit_var;
    IntervalMethod method;
    StoppingRegime regime;
    long replications;
    std::uint64_t seed;
};

struct SimResult {
    double coverage_estimate;  // fraction of replications whose SI covered true_theta
    double mc_stderr;          // binomial Monte Carlo standard error sqrt(p(1-p)/R)
    double stop_fraction;      // fraction whose BF at true_theta fell below k
    /// stop counts per schedule entry; replications that never stop are not counted
    std::vector<long> per_look_counts;
};

/// Estimate coverage of the k < 1 support interval under the given regime.
/// Coverage and stopping are two views of the same events: the interval
/// misses true_theta exactly when the Bayes factor at true_theta is below k,
/// so coverage_estimate = 1 - stop_fraction holds by construction.
SimResult simulate_coverage(const SimConfig& config);

/// Same experiment read through the universal bound: under repeated looks the
/// probability that the Bayes factor at the true value ever drops below k is
/// itself at most k, so stop_fraction is the quantity of interest.
SimResult universal_bound_check(const SimConfig& config);

}  // namespace supcal
