// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "supcal/bayes_factors.hpp"
#include "supcal/calibration.hpp"
#include "supcal/coverage.hpp"
#include "supcal/design.hpp"
#include "supcal/intervals.hpp"
#include "supcal/model.hpp"
#include "supcal/numerics.hpp"

using namespace supcal;

namespace {

std::vector<std::string> g_details;

bool expect(bool ok, const std::string& what) {
    if (!ok) g_details.push_back(what);
    return ok;
}

double r2(double x) { return std::round(x * 100.0) / 100.0; }

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

// log hazard ratio trial data: rate ratio 0.83 with 95% CI 0.75 to 0.93,
// analyzed on the log scale
SummaryData trial_exact() {
    const double est = std::log(0.83);
    const double se = (std::log(0.93) - std::log(0.75)) / (2.0 * norm_quantile(0.975));
    return SummaryData(est, se);
}

bool criterion1_worked_example() {
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    const SummaryData data = summary_from_ci(-0.29, -0.07, 0.95);
    const RealInterval si = support_interval(data, SupportInterval(10.0, NormalPrior(0.0, 2.0)));
    const double ms = elapsed_ms(start);
    ok &= expect(r2(data.estimate) == -0.18, "estimate != -0.18");
    ok &= expect(si.kind() == RealInterval::Kind::Bounded, "interval not bounded");
    ok &= expect(r2(si.lower()) == -0.27, "lower endpoint != -0.27");
    ok &= expect(r2(si.upper()) == -0.09, "upper endpoint != -0.09");
    ok &= expect(ms < 10.0, "runtime " + std::to_string(ms) + " ms >= 10 ms");
    return ok;
}

bool criterion2_trial_values() {
    bool ok = true;
    const SummaryData data = trial_exact();
    const NormalPrior steering(std::log(0.8), 2.0);

    const RealInterval k10 = support_interval(data, SupportInterval(10.0, steering));
    ok &= expect(k10.kind() == RealInterval::Kind::Bounded && r2(k10.lower()) == -0.27 &&
                     r2(k10.upper()) == -0.10,
                 "k=10 normal-prior interval != [-0.27, -0.10]");

    const RealInterval k01 = support_interval(data, SupportInterval(0.1, steering));
    ok &= expect(k01.kind() == RealInterval::Kind::Bounded && r2(k01.lower()) == -0.37 &&
                     r2(k01.upper()) == 0.00,
                 "k=1/10 normal-prior interval != [-0.37, 0.00]");

    // moment-prior scale holding 90% mass within log(2): 0.28 +/- 0.005,
    // then used at its reported 2-decimal value
    const double scale = nm_scale_from_mass(std::log(2.0), 0.90);
    ok &= expect(std::abs(scale - 0.28) <= 0.005, "elicited scale not within 0.28 +/- 0.005");
    const double reported = r2(scale);
    const RealInterval nl = support_interval(data, SupportInterval(10.0, NonlocalMomentPrior(reported)));
    ok &= expect(nl.kind() == RealInterval::Kind::Bounded && r2(nl.lower()) == -0.28 &&
                     r2(nl.upper()) == -0.09,
                 "k=10 nonlocal interval != [-0.28, -0.09]");
    return ok;
}

bool criterion3_level_mappings() {
    bool ok = true;
    ok &= expect(std::abs(ci_level_to_min_support(0.95, MinBfFamily::AllPriors) - 0.1465) <= 5e-4,
                 "95% -> k (all priors) not within 5e-4 of 0.1465");
    ok &= expect(std::abs(ci_level_to_min_support(0.95, MinBfFamily::EpLogP) - 0.4072) <= 5e-4,
                 "95% -> k (eplogp) not within 5e-4 of 0.4072");
    ok &= expect(
        std::abs(ci_level_to_min_support(0.95, MinBfFamily::LocalNormalClass) - 0.4734) <= 5e-4,
        "95% -> k (local normal) not within 5e-4 of 0.4734");
    // 0.01 percentage points = 1e-4 in level units
    ok &= expect(std::abs(min_support_to_ci_level(0.1, MinBfFamily::AllPriors) - 0.9681) <= 1e-4,
                 "k=1/10 -> level (all priors) not within 0.01pp of 96.81%");
    ok &= expect(std::abs(min_support_to_ci_level(0.1, MinBfFamily::EpLogP) - 0.9925) <= 1e-4,
                 "k=1/10 -> level (eplogp) not within 0.01pp of 99.25%");
    ok &= expect(
        std::abs(min_support_to_ci_level(0.1, MinBfFamily::LocalNormalClass) - 0.9943) <= 1e-4,
        "k=1/10 -> level (local normal) not within 0.01pp of 99.43%");
    return ok;
}

bool criterion4_k1_multipliers() {
    bool ok = true;
    const double m_local = min_support_multiplier(1.0, MinBfFamily::LocalNormalClass);
    ok &= expect(std::abs(m_local - 1.0) <= 1e-10, "local-normal M(k=1) != 1 to 1e-10");
    // Phi^-1(1 - 1/(2e)), evaluated independently by bisecting the CDF; the
    // rounded published value is 0.90
    const double m_ep = min_support_multiplier(1.0, MinBfFamily::EpLogP);
    const double target = 1.0 - 1.0 / (2.0 * kE);
    const double ref = oracles::bisect([&](double z) { return norm_cdf(z) - target; }, 0.0, 8.0);
    ok &= expect(std::abs(m_ep - ref) <= 5e-4,
                 "eplogp M(k=1) not within 5e-4 of Phi^-1(1 - 1/(2e))");
    ok &= expect(std::abs(m_ep - 0.90) <= 0.005, "eplogp M(k=1) not 0.90 to 2 decimals");
    return ok;
}

bool criterion5_design() {
    bool ok = true;
    ok &= expect(n_for_existence(DesignSpec(10.0, 1.0, JeffreysApprox{})) == 99,
                 "jeffreys k=10 existence n != 99");
    DesignSpec spec(10.0, 4.0, JeffreysApprox{});
    spec.target_width = 0.2;
    const auto sizes = n_for_width(spec);
    ok &= expect(sizes.has_value(), "width design infeasible unexpectedly");
    if (sizes) {
        ok &= expect(sizes->first == 143, "n1 != 143");
        ok &= expect(sizes->second == 862, "n2 != 862");
    }
    return ok;
}

bool criterion6_coverage() {
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    const long reps = 10000;

    // (a) fixed n = 25, local normal prior sd 1, k = 1/20
    {
        const SimConfig cfg{0.0, 1.0, SupportInterval(0.05, LocalNormalPrior(1.0)),
                            FixedN{25}, reps, 20240801};
        const SimResult r = simulate_coverage(cfg);
        const double slack = 3.0 * std::sqrt(0.95 * 0.05 / static_cast<double>(reps));
        ok &= expect(r.coverage_estimate >= 0.95 - slack,
                     "fixed-n coverage " + std::to_string(r.coverage_estimate) + " below bound");
    }

    // (b) optional stopping, looks at every n = 1..50, k in {1/10, 1/20}
    for (const double k : {0.1, 0.05}) {
        const SimConfig cfg{0.0, 1.0, SupportInterval(k, LocalNormalPrior(1.0)),
                            OptionalStopping{50, {}}, reps, 20240802};
        const SimResult r = universal_bound_check(cfg);
        ok &= expect(r.stop_fraction <= k + 3.0 * r.mc_stderr,
                     "stop fraction " + std::to_string(r.stop_fraction) +
                         " violates the universal bound at k = " + std::to_string(k));
        ok &= expect(r.coverage_estimate >= 1.0 - k - 3.0 * r.mc_stderr,
                     "sequential coverage " + std::to_string(r.coverage_estimate) +
                         " below 1 - k at k = " + std::to_string(k));
    }

    const double seconds = elapsed_ms(start) / 1000.0;
    ok &= expect(seconds < 60.0, "coverage runtime " + std::to_string(seconds) + " s >= 60 s");
    return ok;
}

bool criterion7_numerics() {
    bool ok = true;
    auto g = oracles::rng(20240803);
    int w0_bad = 0, wm1_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const double mag = std::pow(10.0, oracles::uniform(g, -6.0, 6.0));
        const double x0 = (i % 3 == 0) ? oracles::uniform(g, -kInvE, 1.0) : mag;
        const double w0 = lambert_w0(x0);
        if (std::abs(w0 * std::exp(w0) - x0) > 1e-12 * std::max(1.0, std::abs(x0))) ++w0_bad;
        const double xm = oracles::uniform(g, -kInvE, -1e-308);
        const double wm = lambert_wm1(xm);
        if (std::abs(wm * std::exp(wm) - xm) > 1e-12 * std::max(1.0, std::abs(xm))) ++wm1_bad;
    }
    ok &= expect(w0_bad == 0, std::to_string(w0_bad) + " W0 round-trip failures");
    ok &= expect(wm1_bad == 0, std::to_string(wm1_bad) + " W-1 round-trip failures");

    // quantile/cdf round trip for |z| <= 8 through the representable tail:
    // the lower-tail probability carries the information, the upper half
    // follows by the reflection identity
    int q_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const double z = oracles::uniform(g, -8.0, 8.0);
        const double lower = -std::abs(z);
        const double back = norm_quantile(norm_cdf(lower));
        if (std::abs(back - lower) > 1e-9) ++q_bad;
        if (std::abs(-back - std::abs(z)) > 1e-9) ++q_bad;
    }
    ok &= expect(q_bad == 0, std::to_string(q_bad) + " quantile round-trip failures");
    return ok;
}

bool criterion8_duality_and_quadrature() {
    bool ok = true;
    auto g = oracles::rng(20240804);

    const auto endpoint_check = [&](const IntervalMethod& method, const SummaryData& d,
                                    double k) -> int {
        const RealInterval si = support_interval(d, method);
        if (si.kind() != RealInterval::Kind::Bounded) return -1;  // skip, not counted
        const double lk = std::log(k);
        const bool fine = std::abs(log_bf(d, method, si.lower()) - lk) <= 1e-8 &&
                          std::abs(log_bf(d, method, si.upper()) - lk) <= 1e-8;
        return fine ? 1 : 0;
    };

    for (int family = 0; family < 6; ++family) {
        int checked = 0, bad = 0;
        while (checked < 1000) {
            const SummaryData d(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.05, 2.0));
            double k;
            IntervalMethod method = ConfidenceInterval(0.5);
            switch (family) {
                case 0:
                    k = oracles::uniform(g, 0.2, 5.0);
                    method = SupportInterval(
                        k, NormalPrior(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.2, 3.0)));
                    break;
                case 1:
                    k = oracles::uniform(g, 0.2, 5.0);
                    method = SupportInterval(k, LocalNormalPrior(oracles::uniform(g, 0.2, 3.0)));
                    break;
                case 2:
                    k = oracles::uniform(g, 0.2, 5.0);
                    method = SupportInterval(k, NonlocalMomentPrior(oracles::uniform(g, 0.2, 3.0)));
                    break;
                case 3:
                    k = oracles::uniform(g, 0.01, 0.99);
                    method = MinSupportInterval(k, MinBfFamily::AllPriors);
                    break;
                case 4:
                    k = oracles::uniform(g, 0.01, 0.99);
                    method = MinSupportInterval(k, MinBfFamily::LocalNormalClass);
                    break;
                default:
                    k = oracles::uniform(g, 0.01, 0.99);
                    method = MinSupportInterval(k, MinBfFamily::EpLogP);
                    break;
            }
            const int res = endpoint_check(method, d, k);
            if (res < 0) continue;
            ++checked;
            if (res == 0) ++bad;
        }
        ok &= expect(bad == 0,
                     "family " + std::to_string(family) + ": " + std::to_string(bad) +
                         " endpoint duality violations");
    }

    int quad_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const SummaryData d(oracles::uniform(g, -2.0, 2.0), oracles::uniform(g, 0.1, 1.0));
        const double theta0 = d.estimate + oracles::uniform(g, -3.0, 3.0) * d.se;
        double closed, reference;
        if (i % 2 == 0) {
            const NormalPrior p(oracles::uniform(g, -2.0, 2.0), oracles::uniform(g, 0.2, 2.5));
            closed = bf_normal(d, p, theta0);
            const double marginal = oracles::marginal_by_quadrature(
                d.estimate, d.se,
                [&](double t) { return oracles::normal_density(t, p.mean, p.sd * p.sd); }, p.mean,
                p.sd);
            reference = oracles::normal_density(d.estimate, theta0, d.se * d.se) / marginal;
        } else {
            const NonlocalMomentPrior p(oracles::uniform(g, 0.2, 2.5));
            closed = bf_nonlocal_moment(d, p, theta0);
            const double t2 = p.scale * p.scale;
            const double marginal = oracles::marginal_by_quadrature(
                d.estimate, d.se,
                [&](double t) {
                    return oracles::normal_density(t, theta0, t2) * (t - theta0) * (t - theta0) / t2;
                },
                theta0, p.scale);
            reference = oracles::normal_density(d.estimate, theta0, d.se * d.se) / marginal;
        }
        if (std::abs(closed - reference) > 1e-6 * std::abs(reference)) ++quad_bad;
    }
    ok &= expect(quad_bad == 0, std::to_string(quad_bad) + " quadrature mismatches");
    return ok;
}

bool criterion9_nesting_dominance() {
    bool ok = true;
    auto g = oracles::rng(20240805);
    int nest_bad = 0, narrow_bad = 0, minbf_bad = 0;
    for (int i = 0; i < 1000; ++i) {
        const SummaryData d(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.05, 2.0));
        const double k1 = oracles::uniform(g, 0.05, 0.9);
        const double k2 = k1 + oracles::uniform(g, 0.01, 0.999 - k1);

        // nesting in k for a normal-prior support interval
        const NormalPrior np(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.2, 3.0));
        const RealInterval wide = support_interval(d, SupportInterval(k1, np));
        const RealInterval narrow = support_interval(d, SupportInterval(k2, np));
        if (!(wide.lower() <= narrow.lower() && narrow.upper() <= wide.upper())) ++nest_bad;

        // the all-priors minimum support interval is the narrowest
        const double m_all = min_support_multiplier(k1, MinBfFamily::AllPriors);
        const double m_ln = min_support_multiplier(k1, MinBfFamily::LocalNormalClass);
        const double m_ep = min_support_multiplier(k1, MinBfFamily::EpLogP);
        const double m_si = multiplier(SupportInterval(k1, np), d).multiplier;
        if (!(m_all <= m_ln && m_all <= m_ep && m_all <= m_si * (1.0 + 1e-12))) ++narrow_bad;

        // pointwise domination of the minimum Bayes factors
        const double theta0 = d.estimate + oracles::uniform(g, -6.0, 6.0) * d.se;
        const double all = minbf_all(d, theta0);
        if (!(all <= minbf_local_normal(d, theta0) * (1.0 + 1e-12) &&
              all <= minbf_eplogp(d, theta0) * (1.0 + 1e-12)))
            ++minbf_bad;
    }
    ok &= expect(nest_bad == 0, std::to_string(nest_bad) + " nesting violations");
    ok &= expect(narrow_bad == 0, std::to_string(narrow_bad) + " narrowest-interval violations");
    ok &= expect(minbf_bad == 0, std::to_string(minbf_bad) + " min-BF dominance violations");
    return ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {"1 worked example parity (published CI -> k=10 interval, < 10 ms)", criterion1_worked_example},
        {"2 trial intervals and moment-prior elicitation", criterion2_trial_values},
        {"3 confidence <-> minimum support level mappings", criterion3_level_mappings},
        {"4 k = 1 minimum support multipliers", criterion4_k1_multipliers},
        {"5 sample size design (existence and width)", criterion5_design},
        {"6 universal bound and coverage by simulation", criterion6_coverage},
        {"7 special function accuracy", criterion7_numerics},
        {"8 endpoint duality and quadrature agreement", criterion8_duality_and_quadrature},
        {"9 nesting and dominance properties", criterion9_nesting_dominance},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        g_details.clear();
        const bool ok = c.fn();
        std::printf("criterion %s: %s\n", c.name, ok ? "PASS" : "FAIL");
        for (const auto& d : g_details) std::printf("    %s\n", d.c_str());
        if (!ok) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
