#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace supcal {

/// Parameter estimate and its standard error, the sufficient statistics of
/// the approximate normal likelihood everything else is built on.
struct SummaryData {
    double estimate;
    double se;

    SummaryData(double estimate_, double se_);
};

/// Normal prior for the parameter under the alternative. Parameterized by
/// the standard deviation; a unit-information variance of 4 enters as sd 2.
struct NormalPrior {
    double mean;
    double sd;

    NormalPrior(double mean_, double sd_);
};

/// Normal prior re-centered at each tested null value.
struct LocalNormalPrior {
    double sd;

    explicit LocalNormalPrior(double sd_);
};

/// Normal moment prior: zero density at the null value, scale parameter on
/// the same axis as the estimate.
struct NonlocalMomentPrior {
    double scale;

    explicit NonlocalMomentPrior(double scale_);
};

using PriorSpec = std::variant<NormalPrior, LocalNormalPrior, NonlocalMomentPrior>;

/// Prior classes over which minimum Bayes factors are taken.
enum class MinBfFamily { AllPriors, LocalNormalClass, EpLogP };

struct ConfidenceInterval {
    double level;  // 1 - alpha

    explicit ConfidenceInterval(double level_);
};

struct SupportInterval {
    double k;
    PriorSpec prior;

    SupportInterval(double k_, PriorSpec prior_);
};

struct MinSupportInterval {
    double k;
    MinBfFamily family;

    MinSupportInterval(double k_, MinBfFamily family_);
};

using IntervalMethod = std::variant<ConfidenceInterval, SupportInterval, MinSupportInterval>;

/// Interval on the real line. Empty and WholeLine carry no endpoints.
class RealInterval {
  public:
    enum class Kind { Empty, Point, Bounded, WholeLine };

    static RealInterval empty();
    static RealInterval point(double x);
    static RealInterval bounded(double lower, double upper);
    static RealInterval whole_line();

    Kind kind() const { return kind_; }
    bool has_endpoints() const { return kind_ == Kind::Point || kind_ == Kind::Bounded; }
    double lower() const;
    double upper() const;
    /// Closed-set membership; Empty contains nothing, WholeLine everything.
    bool contains(double x) const;

  private:
    RealInterval(Kind kind, double lower, double upper) : kind_(kind), lower_(lower), upper_(upper) {}

    Kind kind_;
    double lower_;
    double upper_;
};

/// Standard error parameterized as sigma = sqrt(unit_var / n).
struct EffectiveSample {
    double n;
    double unit_var;

    EffectiveSample(double n_, double unit_var_);
};

/// Invert a reported confidence interval into estimate and standard error:
/// the midpoint and width / (2 Phi^-1((1 + level) / 2)).
SummaryData summary_from_ci(double lower, double upper, double level);

struct CiInput {
    double lower;
    double upper;
    double level;
};

/// Reconcile direct {estimate, se} input with a reported CI. The direct pair
/// wins; the CI is cross-checked to relative 1e-6 and a warning is written to
/// *warning on mismatch (published CIs are usually rounded).
SummaryData resolve_summary(const std::optional<SummaryData>& direct,
                            const std::optional<CiInput>& ci, std::string* warning);

}  // namespace supcal
