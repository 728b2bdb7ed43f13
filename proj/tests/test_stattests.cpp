#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stylo/errors.hpp"
#include "stylo/stattests.hpp"

using namespace stylo;

namespace {

// High-precision normal CDF oracle: Maclaurin series for erf with long
// double accumulation. Converges quickly for |z| <= 6.
double series_normal_cdf(double z) {
    const long double x = static_cast<long double>(z) / std::sqrt(2.0L);
    long double term = x;
    long double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / k;
        sum += term / (2 * k + 1);
        if (std::fabs(static_cast<double>(term)) < 1e-30) break;
    }
    const long double erf = 2.0L / std::sqrt(std::acos(-1.0L)) * sum;
    return static_cast<double>(0.5L + 0.5L * erf);
}

} // namespace

TEST_CASE("normal CDF matches the series oracle to 1e-7") {
    for (double z = -6.0; z <= 6.0 + 1e-9; z += 0.125)
        CHECK(std::fabs(normal_cdf(z) - series_normal_cdf(z)) < 1e-7);
    // fixed reference points
    CHECK(std::fabs(normal_cdf(1.0) - 0.8413447460685429) < 1e-7);
    CHECK(std::fabs(normal_cdf(-2.5) - 0.006209665325776132) < 1e-7);
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
}

TEST_CASE("normal CDF absolute error stays under 1e-7 on a grid") {
    for (double z = -6.0; z <= 6.0 + 1e-9; z += 0.0625)
        CHECK(std::fabs(normal_cdf(z) - series_normal_cdf(z)) < 1e-7);
}

TEST_CASE("student t p-value reference values") {
    // scipy: 2*t.sf(2.0, 10) = 0.07338803477074039
    CHECK(student_t_two_sided_p(2.0, 10.0) ==
          doctest::Approx(0.07338803477074039).epsilon(1e-9));
    CHECK(student_t_two_sided_p(0.0, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("two-proportion hand example") {
    // x1=10,n1=100 vs x2=20,n2=100: pooled 0.15, z = -1.9803
    TestResult r = two_proportion_test(10, 100, 20, 100);
    CHECK(r.statistic == doctest::Approx(-1.9803).epsilon(1e-3));
    CHECK_FALSE(r.significant);
    CHECK(r.p_value > 0.01);
    CHECK(r.test == TestKind::TwoProportion);
}

TEST_CASE("equal proportions give z = 0, p = 1") {
    TestResult r = two_proportion_test(30, 300, 10, 100);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == doctest::Approx(1.0));
    CHECK_FALSE(r.significant);
}

TEST_CASE("clearly different large-sample proportions are significant") {
    // 5.7% of 37,589 vs 4.2% of 257,495
    TestResult r = two_proportion_test(2143, 37589, 10815, 257495);
    CHECK(r.significant);
    CHECK(r.statistic > 2.5758);
    CHECK(r.p_value < 0.01);
}

TEST_CASE("degenerate pooled proportion is an undefined test") {
    CHECK_THROWS_AS(two_proportion_test(0, 100, 0, 100), UndefinedStatistic);
    CHECK_THROWS_AS(two_proportion_test(100, 100, 50, 50), UndefinedStatistic);
}

TEST_CASE("two-proportion antisymmetry") {
    TestResult a = two_proportion_test(17, 400, 31, 350);
    TestResult b = two_proportion_test(31, 350, 17, 400);
    CHECK(a.statistic == doctest::Approx(-b.statistic).epsilon(1e-12));
    CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
}

TEST_CASE("k-fold replication scales z by sqrt(k)") {
    TestResult base = two_proportion_test(12, 300, 30, 450);
    for (std::size_t k : {2, 4, 9}) {
        TestResult scaled =
            two_proportion_test(k * 12, k * 300, k * 30, k * 450);
        CHECK(scaled.statistic ==
              doctest::Approx(std::sqrt(static_cast<double>(k)) * base.statistic)
                  .epsilon(1e-9));
    }
}

TEST_CASE("p-value decreases as |statistic| grows") {
    double prev = 1.0;
    for (double z = 0.0; z <= 6.0; z += 0.25) {
        const double p = 2.0 * (1.0 - normal_cdf(z));
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    prev = 1.0;
    for (double t = 0.0; t <= 8.0; t += 0.5) {
        const double p = student_t_two_sided_p(t, 7.0);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
}

TEST_CASE("Welch hand example") {
    TestResult r = welch_t_test({4.0, 5.0}, {4.0, 5.0, 6.0});
    CHECK(r.statistic == doctest::Approx(-0.6547).epsilon(1e-3));
    CHECK(r.df == doctest::Approx(2.8823529411764697).epsilon(1e-9));
    // scipy reference: 0.5611508812400856
    CHECK(r.p_value == doctest::Approx(0.5611508812400856).epsilon(1e-5));
    CHECK_FALSE(r.significant);
    CHECK(r.test == TestKind::WelchT);
}

TEST_CASE("identical samples are clearly not significant") {
    TestResult r = welch_t_test({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == doctest::Approx(1.0));
    CHECK_FALSE(r.significant);
}

TEST_CASE("a +10 shift separates the samples decisively") {
    TestResult r = welch_t_test({1.0, 2.0, 3.0}, {11.0, 12.0, 13.0});
    CHECK(std::fabs(r.statistic) > 10.0);
    CHECK(r.significant);
}

TEST_CASE("Welch antisymmetry") {
    std::vector<double> s1 = {1.5, 2.0, 4.5, 3.0};
    std::vector<double> s2 = {2.5, 2.5, 5.0};
    TestResult a = welch_t_test(s1, s2);
    TestResult b = welch_t_test(s2, s1);
    CHECK(a.statistic == doctest::Approx(-b.statistic).epsilon(1e-12));
    CHECK(a.p_value == doctest::Approx(b.p_value).epsilon(1e-12));
    CHECK(a.df == doctest::Approx(b.df).epsilon(1e-12));
}

TEST_CASE("Welch degenerate cases") {
    // too small
    CHECK_THROWS_AS(welch_t_test({1.0}, {1.0, 2.0}), UndefinedStatistic);
    // both variances zero, equal means
    CHECK_THROWS_AS(welch_t_test({2.0, 2.0}, {2.0, 2.0, 2.0}),
                    UndefinedStatistic);
    // both variances zero, unequal means: deterministic separation
    TestResult r = welch_t_test({2.0, 2.0}, {5.0, 5.0});
    CHECK(std::isinf(r.statistic));
    CHECK(r.p_value == 0.0);
    CHECK(r.significant);
}
