#ifndef STYLO_STATTESTS_HPP
#define STYLO_STATTESTS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace stylo {

enum class TestKind { TwoProportion, WelchT };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.01;
    bool significant = false;
    TestKind test = TestKind::TwoProportion;
    double df = 0.0; // Welch-Satterthwaite, t-test only
};

// Standard normal CDF (erfc-based, well under 1e-7 absolute error).
double normal_cdf(double z);

// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided p-value for a Student-t statistic with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Bilateral pooled two-proportion z-test of H0: p1 == p2.
TestResult two_proportion_test(std::size_t x1, std::size_t n1, std::size_t x2,
                               std::size_t n2, double alpha = 0.01);

// Welch's unequal-variance t-test, bilateral.
TestResult welch_t_test(const std::vector<double>& sample1,
                        const std::vector<double>& sample2, double alpha = 0.01);

} // namespace stylo

#endif
