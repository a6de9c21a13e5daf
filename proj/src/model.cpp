#include "supcal/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "supcal/numerics.hpp"

namespace supcal {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

void require_positive(double x, const char* what) {
    require_finite(x, what);
    if (!(x > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

SummaryData::SummaryData(double estimate_, double se_) : estimate(estimate_), se(se_) {
    require_finite(estimate, "estimate");
    require_positive(se, "standard error");
}

NormalPrior::NormalPrior(double mean_, double sd_) : mean(mean_), sd(sd_) {
    require_finite(mean, "prior mean");
    require_positive(sd, "prior sd");
}

LocalNormalPrior::LocalNormalPrior(double sd_) : sd(sd_) { require_positive(sd, "prior sd"); }

NonlocalMomentPrior::NonlocalMomentPrior(double scale_) : scale(scale_) {
    require_positive(scale, "prior scale");
}

ConfidenceInterval::ConfidenceInterval(double level_) : level(level_) {
    require_finite(level, "confidence level");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must be in (0, 1)");
}

SupportInterval::SupportInterval(double k_, PriorSpec prior_) : k(k_), prior(std::move(prior_)) {
    require_positive(k, "support level k");
}

MinSupportInterval::MinSupportInterval(double k_, MinBfFamily family_) : k(k_), family(family_) {
    require_positive(k, "support level k");
}

RealInterval RealInterval::empty() {
    const double nan = std::nan("");
    return RealInterval(Kind::Empty, nan, nan);
}

RealInterval RealInterval::point(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("point interval needs a finite location");
    return RealInterval(Kind::Point, x, x);
}

RealInterval RealInterval::bounded(double lower, double upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
        throw std::invalid_argument("bounded interval requires finite lower < upper");
    return RealInterval(Kind::Bounded, lower, upper);
}

RealInterval RealInterval::whole_line() {
    return RealInterval(Kind::WholeLine, -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
}

double RealInterval::lower() const {
    if (kind_ == Kind::Empty) throw std::logic_error("empty interval has no endpoints");
    return lower_;
}

double RealInterval::upper() const {
    if (kind_ == Kind::Empty) throw std::logic_error("empty interval has no endpoints");
    return upper_;
}

bool RealInterval::contains(double x) const {
    switch (kind_) {
        case Kind::Empty: return false;
        case Kind::WholeLine: return true;
        case Kind::Point: return x == lower_;
        case Kind::Bounded: return lower_ <= x && x <= upper_;
    }
    return false;
}

EffectiveSample::EffectiveSample(double n_, double unit_var_) : n(n_), unit_var(unit_var_) {
    require_positive(n, "effective sample size");
    require_positive(unit_var, "unit variance");
}

SummaryData summary_from_ci(double lower, double upper, double level) {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
        throw std::invalid_argument("degenerate confidence interval: lower must be < upper");
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must be in (0, 1)");
    const double estimate = 0.5 * (lower + upper);
    const double se = (upper - lower) / (2.0 * norm_quantile(0.5 * (1.0 + level)));
    return SummaryData(estimate, se);
}

SummaryData resolve_summary(const std::optional<SummaryData>& direct,
                            const std::optional<CiInput>& ci, std::string* warning) {
    if (!direct && !ci)
        throw std::invalid_argument("provide either {estimate, se} or a confidence interval");
    if (!direct) return summary_from_ci(ci->lower, ci->upper, ci->level);
    if (ci) {
        const SummaryData from_ci = summary_from_ci(ci->lower, ci->upper, ci->level);
        const double rel_est =
            std::abs(from_ci.estimate - direct->estimate) / std::max(1.0, std::abs(direct->estimate));
        const double rel_se = std::abs(from_ci.se - direct->se) / direct->se;
        if ((rel_est > 1e-6 || rel_se > 1e-6) && warning != nullptr) {
            std::ostringstream os;
            os << "estimate/se input disagrees with the supplied CI (implies estimate "
               << from_ci.estimate << ", se " << from_ci.se << "); using estimate/se";
            *warning = os.str();
        }
    }
    return *direct;
}

}  // namespace supcal
