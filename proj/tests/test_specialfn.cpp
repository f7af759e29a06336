#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fracbvp/specialfn.hpp"
#include "support.hpp"

using namespace fracbvp;

namespace {
constexpr double kPi = 3.14159265358979323846;

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }
} // namespace

TEST(Gamma, KnownValues) {
    EXPECT_DOUBLE_EQ(fracbvp::gamma(1.0), 1.0);
    EXPECT_LE(rel(fracbvp::gamma(0.5), std::sqrt(kPi)), 1e-14);
    // mpmath: fracbvp::gamma(7/2)
    EXPECT_LE(rel(fracbvp::gamma(3.5), 3.3233509704478425512), 1e-14);
    EXPECT_LE(rel(fracbvp::gamma(3.5), 15.0 * std::sqrt(kPi) / 8.0), 1e-14);
}

TEST(Gamma, FactorialsExact) {
    double fact = 1.0;
    for (int n = 0; n <= 15; ++n) {
        if (n > 0) fact *= n;
        EXPECT_LE(rel(fracbvp::gamma(n + 1.0), fact), 1e-12) << "n = " << n;
    }
}

TEST(Gamma, HalfIntegerFormula) {
    // Γ(n+1/2) = √π (2n)! / (4^n n!)
    for (int n = 0; n <= 10; ++n) {
        double f2n = 1.0, fn = 1.0;
        for (int k = 2; k <= 2 * n; ++k) f2n *= k;
        for (int k = 2; k <= n; ++k) fn *= k;
        const double expected = std::sqrt(kPi) * f2n / (std::pow(4.0, n) * fn);
        EXPECT_LE(rel(fracbvp::gamma(n + 0.5), expected), 1e-12) << "n = " << n;
    }
}

TEST(Gamma, RecursionProperty) {
    prop::Gen g;
    for (int i = 0; i < 500; ++i) {
        const double x = g.open_closed(0.0, 20.0);
        EXPECT_LE(std::fabs(fracbvp::gamma(x + 1.0) - x * fracbvp::gamma(x)), 1e-10 * fracbvp::gamma(x + 1.0)) << "x = " << x;
    }
}

TEST(Gamma, RejectsNonPositive) {
    EXPECT_THROW(fracbvp::gamma(0.0), DomainError);
    EXPECT_THROW(fracbvp::gamma(-1.5), DomainError);
    EXPECT_THROW(fracbvp::gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
    EXPECT_THROW(fracbvp::gamma(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(LogGamma, MatchesGamma) {
    for (double x : {0.1, 0.5, 1.0, 2.5, 10.0, 49.5})
        EXPECT_NEAR(log_gamma(x), std::log(fracbvp::gamma(x)), 1e-12 * (1.0 + std::fabs(std::log(fracbvp::gamma(x)))));
    EXPECT_NEAR(log_gamma(200.0), std::lgamma(200.0), 1e-10);
}

TEST(Beta, KnownValues) {
    EXPECT_NEAR(fracbvp::beta(1.0, 4.0), 0.25, 1e-15);
    EXPECT_NEAR(fracbvp::beta(2.0, 3.0), 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(fracbvp::beta(3.0, 2.0), 1.0 / 12.0, 1e-15);
    EXPECT_LE(rel(fracbvp::beta(0.5, 0.5), kPi), 1e-13);
}

TEST(Beta, OneOverQ) {
    prop::Gen g(7);
    for (int i = 0; i < 200; ++i) {
        const double q = g.open_closed(0.0, 10.0);
        EXPECT_LE(rel(fracbvp::beta(1.0, q), 1.0 / q), 1e-12);
    }
}

TEST(Beta, SymmetryAndRecursions) {
    prop::Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const double p = g.open_closed(0.0, 10.0);
        const double q = g.open_closed(0.0, 10.0);
        const double b = fracbvp::beta(p, q);
        EXPECT_LE(std::fabs(fracbvp::beta(q, p) - b), 1e-12 * b);
        EXPECT_LE(std::fabs(b - fracbvp::beta(p, q + 1.0) - fracbvp::beta(p + 1.0, q)), 1e-10 * b) << p << "," << q;
        EXPECT_LE(std::fabs(fracbvp::beta(p + 1.0, q) - b * p / (p + q)), 1e-10 * b) << p << "," << q;
    }
}

TEST(Beta, LargeArgumentsStayFinite) {
    const double b = fracbvp::beta(150.0, 150.0);
    EXPECT_TRUE(std::isfinite(b));
    EXPECT_GT(b, 0.0);
}

TEST(Beta, RejectsNonPositive) {
    EXPECT_THROW(fracbvp::beta(0.0, 1.0), DomainError);
    EXPECT_THROW(fracbvp::beta(1.0, -2.0), DomainError);
}
