#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/error.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/plaplacian.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"

namespace fracbvp {

/// F(s) = ∫_0^s a(τ) f(τ, u(τ)) dτ at the nodes of u's partition. The
/// integrand is sampled at Gauss points with u interpolated there (clamped
/// at 0, since f is only defined for u >= 0).
inline GridFunction source_integral(const Problem& pb, const GridFunction& u) {
    const Expr& a = pb.a();
    const Expr& f = pb.f();
    return cumulative(
        u.shared_partition(),
        [&](std::size_t panel, double tau) {
            const double uu = std::max(0.0, u.in_panel(panel, tau));
            return a.eval(tau, 0.0) * f.eval(tau, uu);
        },
        pb.discretization().points_per_panel, u.interpolation());
}

/// Precomputed rows of ∫_0^1 K(t_i, s) ψ(s) ds for every node t_i. Each row is
/// split at s = t_i and s = eta and layered toward them and toward 0 and 1.
class KernelOperator {
public:
    KernelOperator(const KernelParams& kp, std::shared_ptr<const Partition> part,
                   std::size_t points_per_panel, LayerOptions layers = {})
        : part_(std::move(part)) {
        const PanelRuleBuilder builder(points_per_panel, layers);
        const auto nodes = part_->nodes();
        offsets_.reserve(nodes.size() + 1);
        offsets_.push_back(0);
        for (double t : nodes) {
            const std::array<double, 4> singular{0.0, kp.eta(), t, 1.0};
            for (const auto& q : builder.over(*part_, 0.0, 1.0, singular))
                entries_.push_back({q.x, q.w * k_kernel(kp, t, q.x), static_cast<std::uint32_t>(q.panel)});
            offsets_.push_back(entries_.size());
        }
    }

    const std::shared_ptr<const Partition>& partition() const noexcept { return part_; }

    /// Row integrals against psi(panel, s).
    template <class Psi>
    std::vector<double> integrate_rows(Psi&& psi) const {
        std::vector<double> out(offsets_.size() - 1, 0.0);
        for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
            double sum = 0.0;
            for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
                const Entry& e = entries_[k];
                sum += e.weight * psi(static_cast<std::size_t>(e.panel), e.s);
            }
            out[i] = sum;
        }
        return out;
    }

    /// ∫_0^1 K(t_i, s) phi_q(F(s)) ds at every node.
    GridFunction apply(Exponent q, const GridFunction& F) const {
        if (F.partition() != *part_) throw DomainError("KernelOperator: grid mismatch");
        auto rows = integrate_rows([&](std::size_t panel, double s) { return phi(q, F.in_panel(panel, s)); });
        return GridFunction(part_, std::move(rows), F.interpolation());
    }

private:
    struct Entry {
        double s;
        double weight;
        std::uint32_t panel;
    };

    std::shared_ptr<const Partition> part_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> offsets_;
};

/// The operator Au(t) = ∫_0^1 K(t,s) phi_q(∫_0^s a f(·,u)) ds on a fixed grid.
class IntegralOperator {
public:
    IntegralOperator(Problem pb, std::shared_ptr<const Partition> grid)
        : pb_(std::move(pb)),
          kernel_(pb_.kernel(), std::move(grid), pb_.discretization().points_per_panel) {}

    explicit IntegralOperator(Problem pb)
        : IntegralOperator(pb, pb.partition()) {}

    const Problem& problem() const noexcept { return pb_; }
    const std::shared_ptr<const Partition>& partition() const noexcept { return kernel_.partition(); }

    GridFunction apply(const GridFunction& u) const {
        return kernel_.apply(pb_.q_exponent(), source_integral(pb_, u));
    }

private:
    Problem pb_;
    KernelOperator kernel_;
};

/// Au at the nodes of u's grid.
inline GridFunction apply_operator(const Problem& pb, const GridFunction& u) {
    return IntegralOperator(pb, u.shared_partition()).apply(u);
}

struct PicardOptions {
    double tol = 1e-10;
    std::size_t max_iter = 500;
    double damping = 1.0;      ///< omega in u <- (1-omega) u + omega Au
    bool auto_fallback = true; ///< drop to omega = 0.5 when the gaps diverge
    /// Called with every new iterate (k = 1, 2, ...).
    std::function<void(std::size_t, const GridFunction&)> on_iterate;
};

struct SolveReport {
    GridFunction solution;
    std::size_t iterations = 0;
    std::vector<double> successive_diffs; ///< sup |u_{k+1} - u_k|
    double residual = 0.0;                ///< sup |u - Au| of the returned solution
    bool converged = false;
    double damping = 1.0; ///< omega in effect at the end
    bool damping_fallback = false;
    std::string certification = "uncertified";
};

namespace detail {

inline constexpr double kNegativeIterateTol = 1e-12;

inline void require_nonnegative(const GridFunction& u, const char* what) {
    const auto v = u.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < -kNegativeIterateTol)
            throw SolverError(std::string(what) + " is negative (" + shortest(v[i]) + ") at t = " +
                              shortest(u.partition()[i]));
}

} // namespace detail

/// Damped Picard iteration for u = Au. Convergence requires both the last
/// successive gap and the residual sup|u - Au| to be <= tol. Running out of
/// iterations is reported through `converged`, not thrown.
inline SolveReport picard_solve(const Problem& pb, const GridFunction& u0, const PicardOptions& opts = {}) {
    if (!(opts.tol > 0.0)) throw DomainError("tolerance must be positive");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw DomainError("damping must lie in (0, 1]");
    detail::require_nonnegative(u0, "initial guess");

    const IntegralOperator op(pb, u0.shared_partition());
    SolveReport rep{u0, 0, {}, 0.0, false, opts.damping, false, "uncertified"};
    rep.damping = opts.damping;

    GridFunction u = u0;
    GridFunction au = op.apply(u);
    double best_gap = HUGE_VAL;
    std::size_t rising = 0;

    for (std::size_t k = 1; k <= opts.max_iter; ++k) {
        const double w = rep.damping;
        std::vector<double> next(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) next[i] = (1.0 - w) * u[i] + w * au[i];
        GridFunction un(u.shared_partition(), std::move(next), u.interpolation());
        detail::require_nonnegative(un, "iterate");

        const double gap = sup_distance(un, u);
        if (!rep.successive_diffs.empty() && gap > rep.successive_diffs.back())
            ++rising;
        else
            rising = 0;
        rep.successive_diffs.push_back(gap);
        best_gap = std::min(best_gap, gap);

        u = std::move(un);
        au = op.apply(u);
        rep.iterations = k;
        if (opts.on_iterate) opts.on_iterate(k, u);

        const double residual = sup_distance(u, au);
        if (gap <= opts.tol && residual <= opts.tol) {
            rep.solution = u;
            rep.residual = residual;
            rep.converged = true;
            return rep;
        }
        if (opts.auto_fallback && rep.damping == 1.0 && (rising >= 5 || gap > 1e6 * best_gap)) {
            rep.damping = 0.5;
            rep.damping_fallback = true;
            rising = 0;
        }
    }
    rep.solution = u;
    rep.residual = sup_distance(u, au);
    return rep;
}

/// Picard iteration from u0 = 0 on the problem's own grid.
inline SolveReport picard_solve(const Problem& pb, const PicardOptions& opts = {}) {
    return picard_solve(pb, GridFunction::constant(pb.partition(), 0.0, pb.discretization().interpolation), opts);
}

} // namespace fracbvp
