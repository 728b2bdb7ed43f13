#include "stylo/stattests.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "stylo/errors.hpp"

namespace stylo {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    const double eps = 1e-14;
    const double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw ValidationError("t-test: non-positive degrees of freedom");
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

TestResult two_proportion_test(std::size_t x1, std::size_t n1, std::size_t x2,
                               std::size_t n2, double alpha) {
    if (n1 == 0 || n2 == 0)
        throw ValidationError("two_proportion_test: trial counts must be positive");
    if (x1 > n1 || x2 > n2)
        throw ValidationError("two_proportion_test: successes exceed trials");
    const double pooled = static_cast<double>(x1 + x2) / static_cast<double>(n1 + n2);
    if (pooled <= 0.0 || pooled >= 1.0)
        throw UndefinedStatistic("two_proportion_test: pooled proportion is 0 or 1");
    const double p1 = static_cast<double>(x1) / n1;
    const double p2 = static_cast<double>(x2) / n2;
    const double se = std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
    TestResult r;
    r.test = TestKind::TwoProportion;
    r.alpha = alpha;
    r.statistic = (p1 - p2) / se;
    r.p_value = 2.0 * normal_cdf(-std::fabs(r.statistic));
    r.significant = r.p_value < alpha;
    return r;
}

namespace {

std::pair<double, double> mean_and_variance(const std::vector<double>& s) {
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s) ss += (v - mean) * (v - mean);
    return {mean, ss / static_cast<double>(s.size() - 1)};
}

} // namespace

TestResult welch_t_test(const std::vector<double>& sample1,
                        const std::vector<double>& sample2, double alpha) {
    if (sample1.size() < 2 || sample2.size() < 2)
        throw UndefinedStatistic("welch_t_test: each sample needs at least 2 values");
    const auto [m1, v1] = mean_and_variance(sample1);
    const auto [m2, v2] = mean_and_variance(sample2);
    const double k1 = static_cast<double>(sample1.size());
    const double k2 = static_cast<double>(sample2.size());
    TestResult r;
    r.test = TestKind::WelchT;
    r.alpha = alpha;
    if (v1 == 0.0 && v2 == 0.0) {
        if (m1 == m2)
            throw UndefinedStatistic("welch_t_test: zero variance and equal means");
        // degenerate but unambiguous separation
        r.statistic = m1 > m2 ? std::numeric_limits<double>::infinity()
                              : -std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        r.significant = true;
        return r;
    }
    const double se1 = v1 / k1, se2 = v2 / k2;
    r.statistic = (m1 - m2) / std::sqrt(se1 + se2);
    r.df = (se1 + se2) * (se1 + se2) /
           (se1 * se1 / (k1 - 1.0) + se2 * se2 / (k2 - 1.0));
    r.p_value = student_t_two_sided_p(r.statistic, r.df);
    r.significant = r.p_value < alpha;
    return r;
}

} // namespace stylo
