#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "supcal/bayes_factors.hpp"
#include "supcal/intervals.hpp"

using namespace supcal;

namespace {

// 2-decimal rounding used for display parity checks
double r2(double x) { return std::round(x * 100.0) / 100.0; }

const SummaryData kTrialFromCi = summary_from_ci(-0.29, -0.07, 0.95);

// exact trial inputs on the log scale (rate ratio 0.83, CI 0.75 to 0.93)
SummaryData trial_exact() {
    const double est = std::log(0.83);
    const double se = (std::log(0.93) - std::log(0.75)) / (2.0 * norm_quantile(0.975));
    return SummaryData(est, se);
}

}  // namespace

TEST_CASE("multiplier catalogue fixed values") {
    const SummaryData d(0.0, 1.0);
    const double q95 = oracles::bisect([](double z) { return norm_cdf(z) - 0.975; }, 0.0, 8.0);
    CHECK(multiplier(ConfidenceInterval(0.95), d).multiplier ==
          doctest::Approx(q95).epsilon(1e-10));

    CHECK(multiplier(MinSupportInterval(1.0, MinBfFamily::AllPriors), d).multiplier == 0.0);
    // branch point of W-1 gives exactly 1
    CHECK(multiplier(MinSupportInterval(1.0, MinBfFamily::LocalNormalClass), d).multiplier == 1.0);
    // Phi^-1(1 - 1/(2e))
    const double ep1 = multiplier(MinSupportInterval(1.0, MinBfFamily::EpLogP), d).multiplier;
    const double ref = oracles::bisect(
        [](double z) { return norm_cdf(z) - (1.0 - 1.0 / (2.0 * kE)); }, 0.0, 8.0);
    CHECK(ep1 == doctest::Approx(ref).epsilon(1e-10));
    CHECK(ep1 == doctest::Approx(0.9004525966377903).epsilon(1e-10));
}

TEST_CASE("minsi with k above 1 raises a typed error") {
    const SummaryData d(0.0, 1.0);
    CHECK_THROWS_AS(multiplier(MinSupportInterval(1.5, MinBfFamily::AllPriors), d),
                    UnsupportedLevelError);
    CHECK_THROWS_AS(support_interval(d, MinSupportInterval(2.0, MinBfFamily::EpLogP)),
                    UnsupportedLevelError);
    CHECK_THROWS_AS(min_support_multiplier(1.0 + 1e-9, MinBfFamily::LocalNormalClass),
                    UnsupportedLevelError);
}

TEST_CASE("trial support intervals reproduce the published values") {
    // published rounded CI: rounded CI, prior mean 0, sd 2, k = 10
    const RealInterval a =
        support_interval(kTrialFromCi, SupportInterval(10.0, NormalPrior(0.0, 2.0)));
    REQUIRE(a.kind() == RealInterval::Kind::Bounded);
    CHECK(r2(a.lower()) == -0.27);
    CHECK(r2(a.upper()) == -0.09);

    const SummaryData exact = trial_exact();
    const NormalPrior steering(std::log(0.8), 2.0);
    const RealInterval k10 = support_interval(exact, SupportInterval(10.0, steering));
    REQUIRE(k10.kind() == RealInterval::Kind::Bounded);
    CHECK(r2(k10.lower()) == -0.27);
    CHECK(r2(k10.upper()) == -0.10);

    const RealInterval k01 = support_interval(exact, SupportInterval(0.1, steering));
    REQUIRE(k01.kind() == RealInterval::Kind::Bounded);
    CHECK(r2(k01.lower()) == -0.37);
    CHECK(r2(k01.upper()) == 0.00);

    const RealInterval nonlocal =
        support_interval(exact, SupportInterval(10.0, NonlocalMomentPrior(0.28)));
    REQUIRE(nonlocal.kind() == RealInterval::Kind::Bounded);
    CHECK(r2(nonlocal.lower()) == -0.28);
    CHECK(r2(nonlocal.upper()) == -0.09);
}

TEST_CASE("support interval that cannot reach k = 10 is empty") {
    const SummaryData d(0.0, 1.0);
    const IntervalMethod m = SupportInterval(10.0, NormalPrior(0.0, 1.0));
    CHECK(support_interval(d, m).kind() == RealInterval::Kind::Empty);
    CHECK_FALSE(multiplier(m, d).exists);
    // grid scan shows the curve never reaches 10
    double max_bf = 0.0;
    for (int i = 0; i <= 2000; ++i)
        max_bf = std::max(max_bf, bf(d, m, -5.0 + i * 0.005));
    CHECK(max_bf < 10.0);
}

TEST_CASE("jeffreys support intervals") {
    // n = k^2 - 1 lands exactly on the existence boundary: a point interval
    const SummaryData d99(0.0, std::sqrt(1.0 / 99.0));
    const EffectiveSample e99(99.0, 1.0);
    CHECK(jeffreys_si(d99, e99, 10.0, JeffreysVariant::Plain).kind() ==
          RealInterval::Kind::Point);
    CHECK(jeffreys_si(d99, e99, 10.0, JeffreysVariant::UnitInformation).kind() ==
          RealInterval::Kind::Point);
    CHECK(jeffreys_si(d99, e99, 11.0, JeffreysVariant::Plain).kind() ==
          RealInterval::Kind::Empty);

    const SummaryData d3(1.0, std::sqrt(2.0 / 3.0));
    const EffectiveSample e3(3.0, 2.0);
    const RealInterval si = jeffreys_si(d3, e3, 1.0, JeffreysVariant::Plain);
    REQUIRE(si.kind() == RealInterval::Kind::Bounded);
    const double m = (si.upper() - si.lower()) / (2.0 * d3.se);
    CHECK(m == doctest::Approx(std::sqrt(std::log(4.0))).epsilon(1e-12));
    CHECK(m == doctest::Approx(1.1774100225154747).epsilon(1e-10));

    // unit-information variant widens by sqrt(1 + 1/n)
    const RealInterval ui = jeffreys_si(d3, e3, 1.0, JeffreysVariant::UnitInformation);
    const double mu = (ui.upper() - ui.lower()) / (2.0 * d3.se);
    CHECK(mu == doctest::Approx(m * std::sqrt(1.0 + 1.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(jeffreys_si(SummaryData(0.0, 1.0), e3, 1.0, JeffreysVariant::Plain),
                    std::invalid_argument);
}

TEST_CASE("nm_scale_from_mass") {
    // trial elicitation: 90% mass within log(2); published rounded scale 0.28
    const double s = nm_scale_from_mass(std::log(2.0), 0.90);
    CHECK(std::abs(s - 0.28) <= 0.005);
    CHECK(s == doctest::Approx(0.27722807653056878).epsilon(1e-9));

    // quadrature oracle: mass of the moment prior over [-1, 1] as a function
    // of the scale, inverted by bisection
    const auto mass_at = [](double scale) {
        const double t2 = scale * scale;
        return oracles::simpson(
            [&](double t) { return oracles::normal_density(t, 0.0, t2) * t * t / t2; }, -1.0, 1.0,
            20000);
    };
    const double ref = oracles::bisect([&](double sc) { return mass_at(sc) - 0.5; }, 0.05, 5.0);
    const double s2 = nm_scale_from_mass(1.0, 0.5);
    CHECK(s2 == doctest::Approx(ref).epsilon(1e-8));
    CHECK(s2 == doctest::Approx(0.65012224547912067).epsilon(1e-9));

    // residual of the defining identity
    const double u = std::log(2.0) / s;
    CHECK(std::abs(2.0 * norm_cdf(u) - 1.0 - 2.0 * u * norm_pdf(u) - 0.90) <= 1e-10);

    // concentration limit: mass -> 1 forces the scale toward zero
    CHECK(nm_scale_from_mass(1.0, 0.9999) < nm_scale_from_mass(1.0, 0.99));
    CHECK(nm_scale_from_mass(1.0, 0.9999) < 0.25);
    CHECK(nm_scale_from_mass(1.0, 0.999999) < nm_scale_from_mass(1.0, 0.9999));

    CHECK_THROWS_AS(nm_scale_from_mass(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(nm_scale_from_mass(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("support intervals nest as k grows") {
    auto g = oracles::rng(511);
    for (int i = 0; i < 1000; ++i) {
        const SummaryData d(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.05, 2.0));
        IntervalMethod base = [&]() -> IntervalMethod {
            switch (i % 4) {
                case 0:
                    return SupportInterval(1.0, NormalPrior(oracles::uniform(g, -3.0, 3.0),
                                                            oracles::uniform(g, 0.2, 3.0)));
                case 1:
                    return SupportInterval(1.0, LocalNormalPrior(oracles::uniform(g, 0.2, 3.0)));
                case 2:
                    return SupportInterval(1.0, NonlocalMomentPrior(oracles::uniform(g, 0.2, 3.0)));
                default:
                    return MinSupportInterval(1.0, MinBfFamily::EpLogP);
            }
        }();
        const double k1 = oracles::uniform(g, 0.05, 0.9);
        const double k2 = k1 + oracles::uniform(g, 0.01, 1.0 - k1 - 1e-6);
        const auto with_k = [&](double k) -> IntervalMethod {
            if (const auto* si = std::get_if<SupportInterval>(&base))
                return SupportInterval(k, si->prior);
            return MinSupportInterval(k, std::get<MinSupportInterval>(base).family);
        };
        const RealInterval wide = support_interval(d, with_k(k1));
        const RealInterval narrow = support_interval(d, with_k(k2));
        REQUIRE(wide.kind() == RealInterval::Kind::Bounded);
        REQUIRE(narrow.kind() == RealInterval::Kind::Bounded);
        CHECK(wide.lower() <= narrow.lower());
        CHECK(narrow.upper() <= wide.upper());
    }
}

TEST_CASE("the all-priors minimum support interval is the narrowest") {
    auto g = oracles::rng(512);
    for (int i = 0; i < 1000; ++i) {
        const SummaryData d(oracles::uniform(g, -3.0, 3.0), oracles::uniform(g, 0.05, 2.0));
        const double k = oracles::uniform(g, 0.02, 0.999);
        const double m_all = multiplier(MinSupportInterval(k, MinBfFamily::AllPriors), d).multiplier;
        CHECK(m_all <=
              multiplier(MinSupportInterval(k, MinBfFamily::LocalNormalClass), d).multiplier);
        CHECK(m_all <= multiplier(MinSupportInterval(k, MinBfFamily::EpLogP), d).multiplier);
        const MultiplierResult m_si = multiplier(
            SupportInterval(k, NormalPrior(oracles::uniform(g, -3.0, 3.0),
                                           oracles::uniform(g, 0.2, 3.0))),
            d);
        REQUIRE(m_si.exists);
        CHECK(m_all <= m_si.multiplier * (1.0 + 1e-12));
        const MultiplierResult m_nl = multiplier(
            SupportInterval(k, NonlocalMomentPrior(oracles::uniform(g, 0.2, 3.0))), d);
        REQUIRE(m_nl.exists);
        CHECK(m_all <= m_nl.multiplier * (1.0 + 1e-12));
    }
}

TEST_CASE("diffuse normal priors blow the interval up") {
    const SummaryData d(0.3, 1.0);
    const double m6 =
        multiplier(SupportInterval(1.0, NormalPrior(0.0, 1e6)), d).multiplier;
    const double m8 =
        multiplier(SupportInterval(1.0, NormalPrior(0.0, 1e8)), d).multiplier;
    CHECK(m6 > 5.0);
    CHECK(m8 > m6);
}

TEST_CASE("nonlocal existence boundary matches the half-threshold of W0") {
    auto g = oracles::rng(513);
    const double threshold = 0.5 * std::exp(0.5);  // W0(t) = 1/2 there
    for (int i = 0; i < 400; ++i) {
        const SummaryData d(oracles::uniform(g, -2.0, 2.0), oracles::uniform(g, 0.05, 2.0));
        const double scale = oracles::uniform(g, 0.05, 2.0);
        const double k = oracles::uniform(g, 1.0, 50.0);
        const double t2 = scale * scale;
        const double s2 = d.se * d.se;
        const double arg = std::pow(1.0 + t2 / s2, 1.5) * std::sqrt(kE) / (2.0 * k);
        if (std::abs(arg - threshold) < 1e-6) continue;  // too close to classify robustly
        const RealInterval si = support_interval(d, SupportInterval(k, NonlocalMomentPrior(scale)));
        if (arg < threshold)
            CHECK(si.kind() == RealInterval::Kind::Empty);
        else
            CHECK(si.kind() == RealInterval::Kind::Bounded);
    }
}
