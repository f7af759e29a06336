#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fracbvp/error.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/plaplacian.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp {

/// u(t) = -I^alpha[psi](t) + C0 with psi = phi_q(F), the constant C0 fixed by
/// u(1) + u'(1) = u'(eta). I^alpha is the Riemann-Liouville integral
/// (1/Γ(α)) ∫_0^t (t-s)^(alpha-1) psi(s) ds, evaluated on rules layered toward
/// s = t. Returns node values on F's grid.
inline GridFunction integral_form_route(const KernelParams& kp, Exponent q, const GridFunction& F,
                                        std::size_t points_per_panel, LayerOptions layers = {}) {
    const PanelRuleBuilder builder(points_per_panel, layers);
    const Partition& part = F.partition();
    const double alpha = kp.alpha();
    const double eta = kp.eta();
    auto psi = [&](const QuadNode& n) { return phi(q, F.in_panel(n.panel, n.x)); };

    double c0 = 0.0;
    {
        const std::array<double, 2> sing{0.0, 1.0};
        for (const auto& n : builder.over(part, 0.0, 1.0, sing)) {
            const double r = 1.0 - n.x;
            c0 += n.w * psi(n) *
                  (std::pow(r, alpha - 1.0) / kp.gamma_alpha() + std::pow(r, alpha - 2.0) / kp.gamma_alpha_minus_1());
        }
        const std::array<double, 2> sing_eta{0.0, eta};
        for (const auto& n : builder.over(part, 0.0, eta, sing_eta))
            c0 -= n.w * psi(n) * std::pow(eta - n.x, alpha - 2.0) / kp.gamma_alpha_minus_1();
    }

    std::vector<double> out;
    out.reserve(part.size());
    for (double t : part.nodes()) {
        const std::array<double, 2> sing{0.0, t};
        double ia = 0.0;
        for (const auto& n : builder.over(part, 0.0, t, sing))
            ia += n.w * psi(n) * std::pow(std::max(t - n.x, 0.0), alpha - 1.0);
        out.push_back(c0 - ia / kp.gamma_alpha());
    }
    return GridFunction(F.shared_partition(), std::move(out), F.interpolation());
}

/// sup_t |u(t) - u(0) + I^alpha[phi_q(F_u)](t)|, F_u(s) = ∫_0^s a f(·,u).
/// Zero exactly for a solution of the boundary value problem.
inline double integral_form_residual(const Problem& pb, const GridFunction& u) {
    detail::require_nonnegative(u, "solution");
    const auto F = source_integral(pb, u);
    // integral_form_route gives C0 - I^alpha psi; the residual needs u - u(0) + I^alpha psi.
    const auto route = integral_form_route(pb.kernel(), pb.q_exponent(), F,
                                           pb.discretization().points_per_panel);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double i_alpha = route[0] - route[i];
        worst = std::max(worst, std::fabs(u[i] - u[0] + i_alpha));
    }
    return worst;
}

namespace detail {

/// Fornberg's finite-difference weights: w[k][j] is the weight of node j in
/// the k-th derivative at z, k = 0..max_order.
inline std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, std::size_t max_order) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(max_order + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, max_order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k)
                    c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k)
                c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

inline double apply_weights(std::span<const double> w, std::span<const double> v) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

} // namespace detail

struct BoundaryResiduals {
    double first_derivative_at_0;  ///< |u'(0)|
    double second_derivative_at_0; ///< |u''(0)|
    double three_point;            ///< |u(1) + u'(1) - u'(eta)|
};

/// Boundary conditions from one-sided 4-point stencils at 0 and 1 and the
/// derivative of the interpolant at eta. Needs at least 16 nodes.
inline BoundaryResiduals boundary_residuals(const Problem& pb, const GridFunction& u) {
    const std::size_t n = u.size();
    if (n < 16) throw DomainError("boundary_residuals: grid too coarse (need at least 16 nodes)");
    const auto x = u.partition().nodes();
    const auto v = u.values();
    const auto w0 = detail::fd_weights(0.0, x.first(4), 2);
    const auto w1 = detail::fd_weights(1.0, x.last(4), 1);
    const double d1_0 = detail::apply_weights(w0[1], v.first(4));
    const double d2_0 = detail::apply_weights(w0[2], v.first(4));
    const double d1_1 = detail::apply_weights(w1[1], v.last(4));
    const double d1_eta = u.derivative(pb.eta());
    return {std::fabs(d1_0), std::fabs(d2_0), std::fabs(v[n - 1] + d1_1 - d1_eta)};
}

/// min_{t in [0, rho]} u(t) - gamma * sup u; nonnegative for any true solution.
inline double cone_check(const Problem& pb, const GridFunction& u, double rho) {
    const double g = cone_gamma(pb.kernel(), rho);
    double lo = u(rho);
    const auto x = u.partition().nodes();
    for (std::size_t i = 0; i < x.size() && x[i] <= rho; ++i) lo = std::min(lo, u[i]);
    return lo - g * u.sup_norm();
}

struct VerificationReport {
    double integral_form_residual;
    BoundaryResiduals bc_residuals;
    double positivity_min;
    double cone_slack;
    double sup_norm;
};

inline VerificationReport verify_solution(const Problem& pb, const GridFunction& u, double rho) {
    return {integral_form_residual(pb, u), boundary_residuals(pb, u), u.min(), cone_check(pb, u, rho),
            u.sup_norm()};
}

} // namespace fracbvp
