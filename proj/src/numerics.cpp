#include "supcal/numerics.hpp"

#include <cmath>
#include <limits>

namespace supcal {

namespace {

constexpr double kBranchClamp = 1e-15;
constexpr int kMaxHalley = 50;
constexpr double kHalleyTol = 1e-13;

// Halley iteration on f(w) = w exp(w) - x, cubically convergent from the
// branch-specific seeds below.
double halley_w(double x, double w) {
    for (int i = 0; i < kMaxHalley; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;  // at the branch point, nothing to refine
        const double denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
        if (denom == 0.0 || !std::isfinite(denom)) break;
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= kHalleyTol * (1.0 + std::abs(w))) break;
    }
    return w;
}

// Series around the branch point w = -1 in p = sign * sqrt(2 (e x + 1)),
// sign +1 for W0 and -1 for W-1 (Corless et al.).
double branch_point_series(double p) {
    return -1.0 +
           p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0 + p * (769.0 / 17280.0)))));
}

double w0_seed(double x) {
    if (x <= 1.0) {
        // Rational seed built from the branch-point variable, good to a few
        // 1e-3 on all of [-1/e, 1] (Iacono & Boyd 2017).
        const double sqeta = std::sqrt(2.0 + 2.0 * kE * x);
        const double n2 =
            3.0 * kSqrt2 + 6.0 -
            (((2237.0 + 1457.0 * kSqrt2) * kE - 4108.0 * kSqrt2 - 5764.0) * sqeta) /
                ((215.0 + 199.0 * kSqrt2) * kE - 430.0 * kSqrt2 - 796.0);
        const double n1 = (1.0 - 1.0 / kSqrt2) * (n2 + kSqrt2);
        return -1.0 + sqeta / (1.0 + n1 * sqeta / (n2 + sqeta));
    }
    return std::log(6.0 * x / (5.0 * std::log(12.0 / 5.0 * (x / std::log(1.0 + 12.0 * x / 5.0)))));
}

double wm1_seed(double x) {
    if (x < -0.25) return branch_point_series(-std::sqrt(2.0 * (kE * x + 1.0)));
    // Asymptotic seed from iterated logarithms, accurate as x -> 0-.
    const double a = std::log(-x);
    const double b = std::log(-a);
    return a - b + b / a + b * (b - 2.0) / (2.0 * a * a);
}

}  // namespace

double lambert_w0(double x) {
    if (x < -kInvE) {
        if (x < -kInvE - kBranchClamp) throw std::domain_error("lambert_w0: argument below -1/e");
        x = -kInvE;
    }
    if (x == -kInvE) return -1.0;
    if (x == 0.0) return 0.0;
    return halley_w(x, w0_seed(x));
}

double lambert_wm1(double x) {
    if (x >= 0.0) throw std::domain_error("lambert_wm1: argument must be negative");
    if (x < -kInvE) {
        if (x < -kInvE - kBranchClamp) throw std::domain_error("lambert_wm1: argument below -1/e");
        x = -kInvE;
    }
    if (x == -kInvE) return -1.0;
    double w = wm1_seed(x);
    if (w < -680.0) {
        // exp(w) underflows; Newton on w + log(-w) = log(-x) instead
        const double target = std::log(-x);
        for (int i = 0; i < 8; ++i) {
            const double step = (w + std::log(-w) - target) / (1.0 + 1.0 / w);
            w -= step;
            if (std::abs(step) <= kHalleyTol * std::abs(w)) break;
        }
        return w;
    }
    return halley_w(x, w);
}

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double norm_logcdf(double z) {
    if (z >= -35.0) return std::log(norm_cdf(z));
    // Mills-ratio asymptotic expansion; erfc underflows long before z = -35
    // matters here.
    const double t = 1.0 / (z * z);
    const double series = 1.0 - t * (1.0 - 3.0 * t * (1.0 - 5.0 * t * (1.0 - 7.0 * t)));
    return -0.5 * z * z - std::log(-z) - kLogSqrt2Pi + std::log(series);
}

namespace {

// Acklam's rational approximation to the normal quantile (relative error
// below 1.2e-9), evaluated on the lower half and refined by one Halley step
// on the erfc-based CDF.
constexpr double kAcklamA[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kAcklamB[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
constexpr double kAcklamC[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kAcklamD[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kAcklamSplit = 0.02425;

double acklam_lower(double p) {
    if (p < kAcklamSplit) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((kAcklamC[0] * q + kAcklamC[1]) * q + kAcklamC[2]) * q + kAcklamC[3]) * q +
                 kAcklamC[4]) *
                    q +
                kAcklamC[5]) /
               ((((kAcklamD[0] * q + kAcklamD[1]) * q + kAcklamD[2]) * q + kAcklamD[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((kAcklamA[0] * r + kAcklamA[1]) * r + kAcklamA[2]) * r + kAcklamA[3]) * r +
             kAcklamA[4]) *
                r +
            kAcklamA[5]) *
           q /
           (((((kAcklamB[0] * r + kAcklamB[1]) * r + kAcklamB[2]) * r + kAcklamB[3]) * r +
             kAcklamB[4]) *
                r +
            1.0);
}

}  // namespace

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("norm_quantile: p must be in (0, 1)");
    // Fold onto the lower half so that quantile(1 - p) = -quantile(p) holds
    // by construction.
    const bool upper = p > 0.5;
    const double q = upper ? 1.0 - p : p;
    double x = acklam_lower(q);
    const double err = norm_cdf(x) - q;
    const double u = err * kSqrt2Pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return upper ? -x : x;
}

double find_root(const std::function<double(double)>& f, Bracket bracket, double tol) {
    if (!(bracket.lo < bracket.hi) || !std::isfinite(bracket.lo) || !std::isfinite(bracket.hi))
        throw std::invalid_argument("find_root: invalid bracket");
    if (tol < 0.0) throw std::invalid_argument("find_root: negative tolerance");

    double a = bracket.lo, b = bracket.hi;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NonFiniteEvaluationError("find_root: non-finite value at bracket endpoint");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NoSignChangeError("find_root: no sign change across bracket");

    // Brent's method: inverse quadratic / secant steps with a bisection
    // fallback that guarantees convergence.
    double c = a, fc = fa;
    double d = b - a, e = d;
    constexpr int kMaxIter = 200;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < kMaxIter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= tol) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {  // secant
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {  // inverse quadratic interpolation
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb))
            throw NonFiniteEvaluationError("find_root: non-finite value inside bracket");
    }
    return b;
}

}  // namespace supcal
