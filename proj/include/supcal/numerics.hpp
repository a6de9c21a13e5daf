#pragma once

#include <functional>
#include <stdexcept>

namespace supcal {

// Numeric constants used throughout. 1/e is the Lambert W branch point;
// keeping one shared literal makes branch-point comparisons bit-stable.
inline constexpr double kE = 2.718281828459045;
inline constexpr double kInvE = 0.36787944117144233;
inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kSqrtE = 1.6487212707001282;
inline constexpr double kInvSqrt2Pi = 0.3989422804014327;
inline constexpr double kLogSqrt2Pi = 0.9189385332046727;
inline constexpr double kSqrt2Pi = 2.5066282746310002;

/// Root bracket [lo, hi] with lo < hi and a sign change of the target
/// function across it.
struct Bracket {
    double lo;
    double hi;
};

class NoSignChangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonFiniteEvaluationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Principal branch W0 of the Lambert W function (W exp(W) = x, W >= -1).
/// Defined for x >= -1/e; arguments within 1e-15 below the branch point are
/// clamped to it. Throws std::domain_error otherwise.
double lambert_w0(double x);

/// Lower branch W-1 of the Lambert W function (W exp(W) = x, W <= -1).
/// Defined for x in [-1/e, 0); same branch-point clamping as lambert_w0.
double lambert_wm1(double x);

/// Standard normal density.
double norm_pdf(double z);

/// Standard normal distribution function Phi(z).
double norm_cdf(double z);

/// log Phi(z), stable for z down to about -300 where Phi underflows.
double norm_logcdf(double z);

/// Standard normal quantile Phi^-1(p) for p in (0, 1). Accuracy is better
/// than 1e-12 after the erfc-based refinement step.
double norm_quantile(double p);

/// Locate a root of f inside the bracket. Stops when |f(x)| <= tol or the
/// bracket has shrunk to tol (a machine-epsilon floor applies either way).
/// Throws NoSignChangeError when f has the same sign at both ends and
/// NonFiniteEvaluationError when f returns NaN/inf inside the bracket.
double find_root(const std::function<double(double)>& f, Bracket bracket, double tol);

}  // namespace supcal
