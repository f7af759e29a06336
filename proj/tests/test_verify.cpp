#include <gtest/gtest.h>

#include <cmath>

#include "fracbvp/greens.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/verify.hpp"
#include "support.hpp"

using namespace fracbvp;

namespace {

Problem make(double alpha, double eta, double p, const char* a, const char* f, Discretization d = {}) {
    return Problem(alpha, eta, p, Expr::parse(a), Expr::parse(f), d);
}

const Problem& nontrivial() {
    static const Problem pb = make(2.5, 0.5, 1.5, "1", "(1+t)/(1+u)");
    return pb;
}

const GridFunction& nontrivial_solution() {
    static const GridFunction u = picard_solve(nontrivial()).solution;
    return u;
}

} // namespace

TEST(IntegralForm, ZeroProblemZeroResidual) {
    const auto pb = make(2.5, 0.5, 1.5, "1", "0");
    EXPECT_EQ(integral_form_residual(pb, GridFunction::constant(pb.partition(), 0.0)), 0.0);
}

TEST(IntegralForm, ConvergedSolutionSmallResidual) {
    EXPECT_LE(integral_form_residual(nontrivial(), nontrivial_solution()), 1e-8);
}

TEST(IntegralForm, DetectsPerturbation) {
    const auto& u = nontrivial_solution();
    std::vector<double> v(u.values().begin(), u.values().end());
    v[v.size() / 2] += 0.1;
    const GridFunction bumped(u.shared_partition(), v);
    EXPECT_GE(integral_form_residual(nontrivial(), bumped), 0.05);
}

TEST(IntegralForm, ResidualDecreasesWithResolution) {
    double prev = HUGE_VAL;
    for (std::size_t n : {32u, 64u, 128u}) {
        Discretization d;
        d.panels = n;
        const auto pb = nontrivial().with_discretization(d);
        const auto sol = picard_solve(pb).solution;
        // Judge the coarse solution on a common fine grid.
        const Discretization fine{512};
        const auto pf = nontrivial().with_discretization(fine);
        const auto u = GridFunction::sample(pf.partition(), [&](double t) { return sol(t); });
        const double r = integral_form_residual(pf, u);
        EXPECT_LT(r, prev) << n;
        prev = r;
    }
}

TEST(RouteEquivalence, RandomNonnegativeSources) {
    prop::Gen g(67);
    const auto part = std::make_shared<const Partition>(Partition::graded(256));
    for (int trial = 0; trial < 10; ++trial) {
        const KernelParams kp(g.open_closed(2.0, 3.0), g.uniform(0.1, 0.9));
        const Exponent q(g.uniform(1.2, 4.0));
        const double c0 = g.uniform(0.0, 2.0), c1 = g.uniform(0.0, 2.0), w = g.uniform(1.0, 8.0);
        const auto h = GridFunction::sample(part, [&](double s) { return c0 + c1 * std::pow(std::sin(w * s), 2); });
        const auto F = cumulative(h);
        const auto k_route = KernelOperator(kp, part, 4).apply(q, F);
        const auto i_route = integral_form_route(kp, q, F, 4);
        EXPECT_LE(sup_distance(k_route, i_route), 1e-8) << "trial " << trial;
    }
}

TEST(Boundary, Examples) {
    const auto pb = make(2.5, 0.5, 1.5, "1", "1");
    const auto c = boundary_residuals(pb, GridFunction::constant(pb.partition(), 2.0));
    EXPECT_NEAR(c.first_derivative_at_0, 0.0, 1e-9);
    EXPECT_NEAR(c.second_derivative_at_0, 0.0, 1e-6);
    EXPECT_NEAR(c.three_point, 2.0, 1e-9);
    const auto cubic = boundary_residuals(pb, GridFunction::sample(pb.partition(), [](double t) { return 1 - t * t * t; }));
    EXPECT_NEAR(cubic.first_derivative_at_0, 0.0, 1e-9);
    EXPECT_NEAR(cubic.second_derivative_at_0, 0.0, 1e-6);
    EXPECT_NEAR(cubic.three_point, 3.0 * (1.0 - 0.25), 1e-9);
}

TEST(Boundary, CoarseGridRejected) {
    const auto part = std::make_shared<const Partition>(Partition::graded(8));
    EXPECT_THROW(boundary_residuals(nontrivial(), GridFunction::constant(part, 1.0)), DomainError);
}

TEST(Boundary, ConvergedSolutionSatisfiesConditions) {
    const auto b = boundary_residuals(nontrivial(), nontrivial_solution());
    EXPECT_LE(b.first_derivative_at_0, 1e-4);
    EXPECT_LE(b.second_derivative_at_0, 1e-2);
    EXPECT_LE(b.three_point, 1e-4);
}

TEST(Cone, Examples) {
    const auto& pb = nontrivial();
    const double g = cone_gamma(pb.kernel(), 0.5);
    EXPECT_NEAR(cone_check(pb, GridFunction::constant(pb.partition(), 3.0), 0.5), 3.0 * (1.0 - g), 1e-14);
    EXPECT_NEAR(cone_check(pb, GridFunction::sample(pb.partition(), [](double t) { return t; }), 0.5), -g, 1e-14);
    EXPECT_GE(cone_check(pb, nontrivial_solution(), 0.5), -1e-10);
}

TEST(VerifySolution, CollectsEverything) {
    const auto v = verify_solution(nontrivial(), nontrivial_solution(), 0.5);
    EXPECT_GT(v.positivity_min, 0.0);
    EXPECT_NEAR(v.sup_norm, nontrivial_solution().sup_norm(), 0.0);
    EXPECT_TRUE(std::isfinite(v.integral_form_residual));
    EXPECT_THROW(verify_solution(nontrivial(), GridFunction::constant(nontrivial().partition(), -1.0), 0.5),
                 SolverError);
}
