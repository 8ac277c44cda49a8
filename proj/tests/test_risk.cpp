#include "riskmdp/numeric.hpp"
#include "riskmdp/risk.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace riskmdp;

namespace {

const double kThird = 1.0 / 3.0;

void check_envelope_membership(const WorstCaseRow& wcr, std::span<const double> p,
                               double zeta) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        CHECK(wcr.row[j] >= 0.0);
        CHECK(wcr.row[j] <= p[j] / zeta);
        sum += wcr.row[j];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
}

} // namespace

TEST_CASE("worst_case_row on the documented examples") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const std::vector<double> p = {kThird, kThird, kThird};

    SUBCASE("zeta 0.5 shifts mass onto the two largest coordinates") {
        const auto wcr = worst_case_row(RiskMeasure::cvar(0.5), v, p);
        CHECK(wcr.row[0] == 0.0);
        CHECK(wcr.row[1] == doctest::Approx(kThird).epsilon(1e-14));
        CHECK(wcr.row[2] == doctest::Approx(2.0 * kThird).epsilon(1e-14));
        CHECK(wcr.chi == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("zeta 1 returns the nominal row exactly") {
        const auto wcr = worst_case_row(RiskMeasure::cvar(1.0), v, p);
        CHECK(wcr.row == p);
        CHECK(wcr.chi == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("constant v gives chi equal to that constant") {
        const std::vector<double> flat = {5.0, 5.0, 5.0};
        for (double zeta : {0.2, 0.5, 1.0}) {
            const auto wcr = worst_case_row(RiskMeasure::cvar(zeta), flat, p);
            CHECK(wcr.chi == doctest::Approx(5.0).epsilon(1e-14));
        }
    }
    SUBCASE("small zeta degrades to the maximum coordinate") {
        const auto wcr = worst_case_row(RiskMeasure::cvar(0.2), v, p);
        CHECK(wcr.row == std::vector<double>{0.0, 0.0, 1.0});
        CHECK(wcr.chi == 3.0);
    }
}

TEST_CASE("worst_case_row: expectation measure equals cvar at level 1") {
    testsup::Rng rng(21);
    const auto v = rng.vector(6, -4.0, 4.0);
    const auto p = rng.probability_row(6);
    const auto a = worst_case_row(RiskMeasure::expectation(), v, p);
    const auto b = worst_case_row(RiskMeasure::cvar(1.0), v, p);
    CHECK(a.row == b.row);
    CHECK(a.chi == b.chi);
    CHECK(a.chi == dot(p, v));
}

TEST_CASE("worst_case_row validates its inputs") {
    const std::vector<double> v = {1.0, 2.0};
    const std::vector<double> ok = {0.5, 0.5};
    const std::vector<double> bad_sum = {0.5, 0.6};
    const std::vector<double> negative = {-0.1, 1.1};
    const std::vector<double> short_row = {1.0};
    CHECK_THROWS_AS(worst_case_row(RiskMeasure::cvar(0.0), v, ok), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_row(RiskMeasure::cvar(1.5), v, ok), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_row(RiskMeasure::cvar(0.5), v, bad_sum),
                    std::invalid_argument);
    CHECK_THROWS_AS(worst_case_row(RiskMeasure::cvar(0.5), v, negative),
                    std::invalid_argument);
    CHECK_THROWS_AS(worst_case_row(RiskMeasure::cvar(0.5), v, short_row),
                    std::invalid_argument);
}

TEST_CASE("cvar_primal_value on the documented examples") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const std::vector<double> p = {kThird, kThird, kThird};
    CHECK(cvar_primal_value(v, p, 0.5) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    const std::vector<double> flat = {5.0, 5.0, 5.0};
    CHECK(cvar_primal_value(flat, p, 0.3) == doctest::Approx(5.0));
    CHECK(cvar_primal_value(v, p, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("brute_force_worst_case_chi on the documented examples") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const std::vector<double> p = {kThird, kThird, kThird};
    CHECK(brute_force_worst_case_chi(v, p, 0.5) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    const std::vector<double> single_v = {4.0};
    const std::vector<double> single_p = {1.0};
    CHECK(brute_force_worst_case_chi(single_v, single_p, 0.3) == 4.0);
    CHECK(brute_force_worst_case_chi(v, p, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(brute_force_worst_case_chi(std::vector<double>(13, 0.0),
                                               std::vector<double>(13, 1.0 / 13.0), 0.5),
                    std::invalid_argument);
}

TEST_CASE("oracle agreement: greedy, primal scan and vertex enumeration") {
    testsup::Rng rng(1234);
    double max_gap = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = rng.uniform_int(1, 8);
        const auto v = rng.vector(n, -5.0, 5.0);
        const auto p = rng.probability_row(n, trial % 4 == 0 ? 0.3 : 0.0);
        const double zeta = trial % 7 == 0 ? 1.0 : rng.uniform(0.05, 1.0);

        const double greedy = worst_case_row(RiskMeasure::cvar(zeta), v, p).chi;
        const double primal = cvar_primal_value(v, p, zeta);
        const double vertex = brute_force_worst_case_chi(v, p, zeta);
        max_gap = std::max({max_gap, std::abs(greedy - primal), std::abs(greedy - vertex)});
    }
    CHECK(max_gap <= 1e-10);
}

TEST_CASE("envelope membership and simple order properties") {
    testsup::Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = rng.uniform_int(1, 10);
        const auto v = rng.vector(n, -3.0, 3.0);
        const auto p = rng.probability_row(n, trial % 5 == 0 ? 0.25 : 0.0);
        const double zeta = rng.uniform(0.05, 1.0);
        const RiskMeasure measure = RiskMeasure::cvar(zeta);

        const auto wcr = worst_case_row(measure, v, p);
        check_envelope_membership(wcr, p, zeta);
        CHECK(std::abs(wcr.chi - dot(wcr.row, v)) <= 1e-12 * (1.0 + std::abs(wcr.chi)));

        // dominance over the nominal expectation
        CHECK(wcr.chi >= dot(p, v) - 1e-12);

        // monotonicity: lifting v can only lift chi
        auto lifted = v;
        for (double& x : lifted)
            x += rng.uniform(0.0, 2.0);
        CHECK(worst_case_row(measure, lifted, p).chi >= wcr.chi - 1e-12);

        // translation by a constant shifts chi by the same constant
        const double b = rng.uniform(-2.0, 2.0);
        auto shifted = v;
        for (double& x : shifted)
            x += b;
        CHECK(std::abs(worst_case_row(measure, shifted, p).chi - (wcr.chi + b)) <= 1e-12);

        // positive homogeneity with an identical maximizer
        const double alpha = rng.uniform(0.1, 3.0);
        auto scaled = v;
        for (double& x : scaled)
            x *= alpha;
        const auto scaled_wcr = worst_case_row(measure, scaled, p);
        CHECK(scaled_wcr.row == wcr.row);
        CHECK(std::abs(scaled_wcr.chi - alpha * wcr.chi) <=
              1e-12 * (1.0 + std::abs(alpha * wcr.chi)));
    }
}

TEST_CASE("tie-break rule selects among equal coordinates deterministically") {
    const std::vector<double> v = {1.0, 1.0, 0.0};
    const std::vector<double> p = {0.4, 0.4, 0.2};
    const auto asc = worst_case_row(RiskMeasure::cvar(0.5), v, p);
    // caps are [0.8, 0.8, 0.4]; ascending index fills coordinate 0 first
    CHECK(asc.row[0] == doctest::Approx(0.8));
    CHECK(asc.row[1] == doctest::Approx(0.2));
    CHECK(asc.row[2] == 0.0);
    const auto desc =
        worst_case_row(RiskMeasure::cvar(0.5), v, p, TieBreak::descending_index);
    CHECK(desc.row[1] == doctest::Approx(0.8));
    CHECK(desc.row[0] == doctest::Approx(0.2));
    CHECK(asc.chi == doctest::Approx(desc.chi)); // same optimum either way
}

TEST_CASE("coordinates with zero nominal mass never receive mass") {
    const std::vector<double> v = {9.0, 1.0, 2.0};
    const std::vector<double> p = {0.0, 0.5, 0.5};
    const auto wcr = worst_case_row(RiskMeasure::cvar(0.4), v, p);
    CHECK(wcr.row[0] == 0.0);
}

TEST_CASE("very small confidence levels collapse onto the maximum") {
    testsup::Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = rng.uniform_int(2, 8);
        const auto v = rng.vector(n, -5.0, 5.0);
        auto p = rng.probability_row(n);
        // give every coordinate some mass so the cap exceeds 1 everywhere
        for (double& x : p)
            x = (x + 0.1) / (1.0 + 0.1 * n);
        const auto wcr = worst_case_row(RiskMeasure::cvar(1e-3), v, p);
        const double top = *std::max_element(v.begin(), v.end());
        CHECK(wcr.chi == doctest::Approx(top).epsilon(1e-12));
        CHECK(cvar_primal_value(v, p, 1e-3) == doctest::Approx(top).epsilon(1e-9));
    }
}
