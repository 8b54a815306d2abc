#include <cmath>
#include <limits>
#include <vector>

#include "bestpath/stats.hpp"
#include "doctest.h"

using namespace bestpath;

// Reference values for the regularized incomplete beta function and the
// two-sided t-tail, frozen from an independent high-precision implementation.
TEST_CASE("incomplete beta matches frozen reference values") {
    struct Case {
        double a, b, x, expected;
    };
    const std::vector<Case> cases = {
        {0.5, 0.5, 0.25, 3.3333333333333337e-01},
        {2.0, 3.0, 0.4, 5.2479999999999993e-01},
        {5.0, 1.0, 0.9, 5.9049000000000007e-01},
        {0.5, 8.0, 0.01, 3.0700785029418753e-01},
        {128.0, 0.5, 0.99, 1.0905448556520302e-01},
        {10.0, 10.0, 0.5, 5.0e-01},
        {1.0, 1.0, 0.3, 3.0e-01},
        {3.5, 2.5, 0.7, 7.0324701070433349e-01},
    };
    for (const auto& c : cases) {
        CAPTURE(c.a);
        CAPTURE(c.b);
        CAPTURE(c.x);
        CHECK(incomplete_beta(c.a, c.b, c.x) ==
              doctest::Approx(c.expected).epsilon(1e-10));
    }
}

TEST_CASE("incomplete beta endpoints and symmetry") {
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // I_x(a,b) = 1 - I_{1-x}(b,a)
    for (double x : {0.1, 0.3, 0.5, 0.8, 0.95}) {
        CHECK(incomplete_beta(2.5, 4.0, x) ==
              doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 1.0 - x))
                  .epsilon(1e-12));
    }
    // Monotone in x.
    double prev = -1.0;
    for (double x = 0.0; x <= 1.0; x += 0.05) {
        const double v = incomplete_beta(3.0, 7.0, x);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("two-sided t p-values match frozen reference values") {
    struct Case {
        double t, nu, expected;
    };
    const std::vector<Case> cases = {
        {0.5, 1, 7.0483276469913358e-01},
        {1.0, 1, 4.9999999999999956e-01},
        {2.0, 2, 1.8350341907227391e-01},
        {1.5, 3, 2.3058386524482283e-01},
        {2.5, 5, 5.4490099342376204e-02},
        {3.0, 8, 1.7071681233782634e-02},
        {0.1, 10, 9.2232071856440834e-01},
        {1.96, 30, 5.9342312896050527e-02},
        {2.75, 100, 7.0741251733865331e-03},
        {4.0, 256, 8.2952827516769221e-05},
        {5.535, 256, 7.6948179033715401e-08},
        {0.664, 256, 5.0728788443039674e-01},
        {1.2, 7, 2.6917193682720642e-01},
        {0.05, 2, 9.6466673733312136e-01},
        {10.0, 4, 5.6200362271599112e-04},
        {2.596, 256, 9.9765099351560305e-03},
        {3.982, 256, 8.9095481831705041e-05},
        {4.004, 256, 8.1643561996356628e-05},
        {4.335, 256, 2.0967769826576439e-05},
        {3.961, 256, 9.6808148919939855e-05},
    };
    for (const auto& c : cases) {
        CAPTURE(c.t);
        CAPTURE(c.nu);
        CHECK(student_t_two_sided_p(c.t, c.nu) ==
              doctest::Approx(c.expected).epsilon(1e-10));
    }
}

TEST_CASE("t p-value limits and symmetry") {
    CHECK(student_t_two_sided_p(0.0, 10) == doctest::Approx(1.0));
    CHECK(student_t_two_sided_p(std::numeric_limits<double>::infinity(), 10) ==
          0.0);
    CHECK(student_t_two_sided_p(-2.5, 5) ==
          doctest::Approx(student_t_two_sided_p(2.5, 5)).epsilon(1e-14));
    // Larger |t| -> smaller p.
    CHECK(student_t_two_sided_p(3.0, 12) < student_t_two_sided_p(2.0, 12));
}

TEST_CASE("mean, ML variance, correlation basics") {
    CHECK(mean({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(2.5));
    // ML variance uses divisor n.
    CHECK(variance_ml({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(1.25));
    CHECK(variance_ml({5.0, 5.0, 5.0}) == 0.0);

    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {2, 4, 6, 8, 10};
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    const std::vector<double> c = {10, 8, 6, 4, 2};
    CHECK(pearson_correlation(a, c) == doctest::Approx(-1.0));
    const std::vector<double> flat = {3, 3, 3, 3, 3};
    CHECK(pearson_correlation(a, flat) == 0.0);
}

TEST_CASE("correlation known value") {
    // cor((1,2,3,4),(1,3,2,5)) computed by hand: cov=1.375, sd products
    // sqrt(1.25)*sqrt(2.1875).
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> y = {1, 3, 2, 5};
    CHECK(pearson_correlation(x, y) ==
          doctest::Approx(1.375 / std::sqrt(1.25 * 2.1875)).epsilon(1e-14));
}
