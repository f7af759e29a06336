#include <gtest/gtest.h>

#include <cmath>

#include "fracbvp/specialfn.hpp"
#include "fracbvp/theorems.hpp"
#include "support.hpp"

using namespace fracbvp;

namespace {

Problem make(double alpha, double eta, double p, const char* a, const char* f) {
    return Problem(alpha, eta, p, Expr::parse(a), Expr::parse(f));
}

const Problem& ex41() {
    static const Problem pb = make(2.5, 0.5, 1.5, "exp(t)", "0.5*t*ln(u+1)");
    return pb;
}
const Problem& ex42() {
    static const Problem pb = make(2.6, 0.5, 1.5, "t", "exp(-t)*sin(u)^2");
    return pb;
}
const Problem& ex43() {
    static const Problem pb = make(2.5, 0.5, 3.5, "2.5*t*sqrt(t)", "(348+sqrt(u)+t)/400");
    return pb;
}

KrasnoselskiiInputs ex43_inputs() {
    KrasnoselskiiInputs in;
    in.rho = 0.5;
    in.rho1 = 1.0 / 120.0;
    in.rho2 = 1.0;
    return in;
}

} // namespace

TEST(SampleExtremum, FindsInteriorMaximum) {
    const auto e = sample_extremum([](double t, double u) { return -(t - 0.3337) * (t - 0.3337) - (u - 1.7) * (u - 1.7); },
                                   Box{0.0, 1.0, 0.0, 3.0}, Sense::max);
    EXPECT_NEAR(e.t, 0.3337, 1e-6);
    EXPECT_NEAR(e.u, 1.7, 1e-6);
    EXPECT_NEAR(e.value, 0.0, 1e-12);
}

TEST(Lambda1, Examples) {
    EXPECT_NEAR(lambda1(ex43()), 0.94952884869938358605, 1e-9);
    EXPECT_NEAR(lambda1(ex43()), 15.0 * fracbvp::gamma(0.5) / 28.0, 1e-9);
    EXPECT_NEAR(lambda1(make(3.0, 0.5, 2.0, "1", "1")), 1.5, 1e-12);
    const double base = lambda1(make(2.5, 0.5, 1.5, "1+t", "1"));
    const double scaled = lambda1(make(2.5, 0.5, 1.5, "4*(1+t)", "1"));
    EXPECT_NEAR(scaled / base, 1.0 / 16.0, 1e-12);
}

TEST(Lambda2, Example43ClosedForm) {
    EXPECT_NEAR(lambda2(ex43(), 0.5), 31.719871448178242261, 1e-6);
}

TEST(Lambda2, BlowsUpAsRhoApproachesOne) {
    double prev = lambda2(ex43(), 0.9);
    for (double rho : {0.99, 0.999, 0.9999}) {
        const double v = lambda2(ex43(), rho);
        EXPECT_GT(v, prev);
        prev = v;
    }
    EXPECT_GT(prev, 1e3);
    EXPECT_THROW(lambda2(ex43(), 1.0), DomainError);
}

TEST(Lambda, OrderingOnRandomProblems) {
    prop::Gen g(61);
    const char* coeffs[] = {"1", "t", "exp(t)", "1+sin(3*t)^2", "2.5*t*sqrt(t)", "(1-t)^2+0.1"};
    for (int i = 0; i < 50; ++i) {
        const Problem pb(g.open_closed(2.0, 3.0), g.uniform(0.05, 0.95), g.uniform(1.1, 5.0),
                         Expr::parse(coeffs[g.integer(0, 5)]), Expr::parse("1"));
        const double rho = g.uniform(0.05, 0.95);
        EXPECT_LT(lambda1(pb), lambda2(pb, rho)) << "trial " << i;
    }
}

TEST(Krasnoselskii, Example43Holds) {
    const auto r = check_krasnoselskii(ex43(), ex43_inputs(), KrasnoselskiiVariant::expansive_3_1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_hold);
    EXPECT_NEAR(*r.quantity("f_max_upper_box"), 0.875, 1e-12);
    EXPECT_NEAR(*r.quantity("phi_p(M1*r_upper)"), 0.87855794424302806227, 1e-9);
    EXPECT_GE(*r.quantity("f_min_lower_box"), 0.87);
    EXPECT_NEAR(*r.quantity("phi_p(M2*r_lower)"), 0.035923234336611208478, 1e-7);
    EXPECT_NEAR(*r.quantity("gamma"), 0.1893398282201787134, 1e-14);
    for (const auto& c : r.conditions)
        if (c.affects_verdict) {
            EXPECT_GE(c.slack(), 0.0) << c.name;
        }
}

TEST(Krasnoselskii, ZeroNonlinearityFails) {
    const auto pb = make(2.5, 0.5, 3.5, "2.5*t*sqrt(t)", "0");
    const auto r = check_krasnoselskii(pb, ex43_inputs(), KrasnoselskiiVariant::expansive_3_1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    const auto fails = r.failures();
    EXPECT_NE(std::find(fails.begin(), fails.end(), "f_lower_box"), fails.end());
    EXPECT_NE(std::find(fails.begin(), fails.end(), "h1_f_at_zero_nontrivial"), fails.end());
    ASSERT_TRUE(r.condition("f_lower_box")->witness.has_value());
}

TEST(Krasnoselskii, PreconditionViolationsNamed) {
    auto in = ex43_inputs();
    in.M1 = 2.0; // above lambda1
    auto r = check_krasnoselskii(ex43(), in, KrasnoselskiiVariant::expansive_3_1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("M1 <= lambda1")->holds);

    r = check_krasnoselskii(ex43(), ex43_inputs(), KrasnoselskiiVariant::compressive_3_2);
    EXPECT_EQ(r.theorem, "3.2");
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("gamma*rho2 < rho1")->holds);
    EXPECT_FALSE(r.condition("M1*rho1 > M2*rho2")->holds);
}

TEST(LeraySchauder, Example41) {
    const auto r = check_leray_schauder(ex41(), 1.0);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_hold);
    EXPECT_NEAR(*r.quantity("L"), 0.5 * std::log(2.0), 1e-6);
    EXPECT_NEAR(*r.quantity("rhs"), 0.37348362145043844614, 1e-8);
    EXPECT_NEAR(*r.quantity("rhs"), 0.372, 0.01);
    EXPECT_NEAR(*r.quantity("margin"), 1.0 - *r.quantity("rhs"), 1e-15);
}

TEST(LeraySchauder, TinyNuFails) {
    const auto r = check_leray_schauder(make(2.5, 0.5, 1.5, "1", "(1+t)/(1+u)"), 1e-6);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("nu > rhs")->holds);
}

TEST(LeraySchauder, ConstantNonlinearityClosedForm) {
    const double c = 0.7;
    const auto pb = make(2.8, 0.4, 2.0, "1", "0.7");
    const double rhs = c * (2.8 + 1.0) / fracbvp::gamma(3.8);
    const auto r = check_leray_schauder(pb, 1.0);
    EXPECT_NEAR(*r.quantity("rhs"), rhs, 1e-10);
    EXPECT_EQ(check_leray_schauder(pb, rhs * 1.01).verdict, Verdict::hypotheses_hold);
    EXPECT_EQ(check_leray_schauder(pb, rhs * 0.99).verdict, Verdict::hypotheses_fail);
}

TEST(LeraySchauder, NonpositiveNuFails) {
    EXPECT_EQ(check_leray_schauder(ex41(), 0.0).verdict, Verdict::hypotheses_fail);
}

TEST(ContractionSmallP, Example42) {
    const auto r = check_contraction_small_p(ex42(), Expr::parse("exp(-t)"), 2.0);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_hold);
    const double closed = 13.0 / 18.0 * fracbvp::gamma(2.6) / (1.0 - 2.0 * std::exp(-1.0));
    EXPECT_NEAR(*r.quantity("bound"), closed, 1e-10);
    EXPECT_NEAR(*r.quantity("bound"), 3.907441184771836938, 1e-10);
    EXPECT_NEAR(*r.quantity("bound"), 3.90744, 1e-4);
    EXPECT_LT(*r.quantity("contraction_constant"), 1.0);
    EXPECT_NEAR(*r.quantity("contraction_constant"), 2.0 / closed, 1e-10);
}

TEST(ContractionSmallP, LargeLFails) {
    const auto r = check_contraction_small_p(ex42(), Expr::parse("exp(-t)"), 5.0);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("L < bound")->holds);
    EXPECT_GT(*r.quantity("contraction_constant"), 1.0);
}

TEST(ContractionSmallP, EnvelopeViolationHasWitness) {
    const auto pb = make(2.6, 0.5, 1.5, "t", "2*exp(-t)*sin(u)^2");
    const auto r = check_contraction_small_p(pb, Expr::parse("exp(-t)"), 2.5);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    const Condition* c = r.condition("f <= k");
    ASSERT_NE(c, nullptr);
    ASSERT_FALSE(c->holds);
    ASSERT_TRUE(c->witness.has_value());
    const double t = c->witness->t, u = c->witness->u;
    EXPECT_GT(2.0 * std::exp(-t) * std::pow(std::sin(u), 2), std::exp(-t));
}

TEST(ContractionSmallP, LipschitzViolationDetected) {
    const auto r = check_contraction_small_p(ex42(), Expr::parse("exp(-t)"), 0.5);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("f_lipschitz_L")->holds);
}

TEST(ContractionSmallP, WrongRegimeReported) {
    const auto pb = make(2.6, 0.5, 2.5, "t", "exp(-t)*sin(u)^2");
    const auto r = check_contraction_small_p(pb, Expr::parse("exp(-t)"), 2.0);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("p < 2")->holds);
}

namespace {
const Problem& large_p() {
    static const Problem pb = make(2.5, 0.5, 3.5, "1", "0.5+0.01*sin(u)^2");
    return pb;
}
} // namespace

TEST(ContractionLargeP, BetaBoundMatchesIntegralOracle) {
    const auto r = check_contraction_large_p(large_p(), 0.5, 1.0, 0.1);
    EXPECT_NEAR(*r.quantity("bound"), 0.46854809699067139959, 1e-9);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_hold);
    EXPECT_LT(*r.quantity("contraction_constant"), 1.0);
    EXPECT_NEAR(*r.quantity("contraction_constant"), 0.1 / *r.quantity("bound"), 1e-12);
}

TEST(ContractionLargeP, SigmaBoundaryRejected) {
    const double q = 1.4;
    const auto r = check_contraction_large_p(large_p(), 0.5, 2.0 / (2.0 - q), 0.1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("sigma < 2/(2-q)")->holds);
}

TEST(ContractionLargeP, MuScaling) {
    const double b1 = *check_contraction_large_p(large_p(), 0.25, 1.0, 0.1).quantity("bound");
    const double b2 = *check_contraction_large_p(large_p(), 0.5, 1.0, 0.1).quantity("bound");
    EXPECT_NEAR(b2 / b1, std::pow(2.0, 0.6), 1e-12);
}

TEST(ContractionLargeP, LowerBoundViolationWitnessed) {
    const auto r = check_contraction_large_p(large_p(), 1.0, 1.0, 0.1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    const Condition* c = r.condition("a*f >= mu*sigma*t^(sigma-1)");
    ASSERT_FALSE(c->holds);
    ASSERT_TRUE(c->witness.has_value());
}

TEST(ContractionLargeP, WrongRegimeReported) {
    const auto r = check_contraction_large_p(ex42(), 0.5, 1.0, 0.1);
    EXPECT_EQ(r.verdict, Verdict::hypotheses_fail);
    EXPECT_FALSE(r.condition("p > 2")->holds);
}

TEST(Reports, Reproducible) {
    const auto a = check_krasnoselskii(ex43(), ex43_inputs(), KrasnoselskiiVariant::expansive_3_1).to_report();
    const auto b = check_krasnoselskii(ex43(), ex43_inputs(), KrasnoselskiiVariant::expansive_3_1).to_report();
    EXPECT_EQ(a.lines(), b.lines());
    EXPECT_EQ(a.lines().back().first, "verdict");
}

TEST(Reports, ExtremaBracketedUnderRefinement) {
    SamplingOptions coarse, fine;
    fine.lattice = 401;
    auto f = [](double t, double u) { return std::exp(-t) * std::pow(std::sin(u), 2) + 0.1 * t * u; };
    for (Sense s : {Sense::max, Sense::min}) {
        const double v1 = sample_extremum(f, Box{0, 1, 0, 5}, s, coarse).value;
        const double v2 = sample_extremum(f, Box{0, 1, 0, 5}, s, fine).value;
        EXPECT_LT(std::fabs(v1 - v2), 1e-3 * (1.0 + std::fabs(v1)));
    }
}
