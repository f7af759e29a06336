#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>

#include "fracbvp/error.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/plaplacian.hpp"
#include "fracbvp/quadrature.hpp"

namespace fracbvp {

struct Discretization {
    std::size_t panels = 256;
    std::size_t points_per_panel = 4;
    double grading = 2.0;
    Interpolation interpolation = Interpolation::cubic;

    bool operator==(const Discretization&) const = default;
};

/// Lattice on which a(t) >= 0 and f(t,u) >= 0 are checked when a Problem is built.
struct ValidationLattice {
    std::size_t t_points = 101;
    std::size_t u_points = 101;
    double u_max = 10.0;
};

/// One instance of the three-point boundary value problem
///   (phi_p(D^alpha u))' + a(t) f(t, u) = 0,
///   D^alpha u(0) = u'(0) = u''(0) = 0,  u(1) + u'(1) = u'(eta).
class Problem {
public:
    Problem(double alpha, double eta, double p, Expr a, Expr f, Discretization disc = {},
            ValidationLattice lattice = {})
        : kernel_(alpha, eta), p_(p), q_(Exponent(p).conjugate()), a_(std::move(a)),
          f_(std::move(f)), disc_(disc) {
        if (a_.depends_on(Variable::u))
            throw DomainError("coefficient a(t) may not depend on u");
        if (disc_.panels < 4) throw DomainError("discretization needs at least 4 panels");
        if (disc_.points_per_panel < 1) throw DomainError("points_per_panel must be positive");
        if (!(disc_.grading >= 1.0)) throw DomainError("grading exponent must be >= 1");
        validate_signs(lattice);
        partition_ = std::make_shared<const Partition>(Partition::graded(disc_.panels, disc_.grading));
    }

    double alpha() const noexcept { return kernel_.alpha(); }
    double eta() const noexcept { return kernel_.eta(); }
    double p() const noexcept { return p_.value(); }
    double q() const noexcept { return q_.value(); }
    Exponent p_exponent() const noexcept { return p_; }
    Exponent q_exponent() const noexcept { return q_; }
    const KernelParams& kernel() const noexcept { return kernel_; }
    const Expr& a() const noexcept { return a_; }
    const Expr& f() const noexcept { return f_; }
    const Discretization& discretization() const noexcept { return disc_; }
    const std::shared_ptr<const Partition>& partition() const noexcept { return partition_; }

    /// Same problem on a different discretization.
    Problem with_discretization(Discretization disc) const {
        return Problem(alpha(), eta(), p(), a_, f_, disc);
    }

    bool operator==(const Problem& o) const {
        return alpha() == o.alpha() && eta() == o.eta() && p() == o.p() && a_ == o.a_ &&
               f_ == o.f_ && disc_ == o.disc_;
    }

private:
    void validate_signs(const ValidationLattice& lat) const {
        for (std::size_t i = 0; i < lat.t_points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(lat.t_points - 1);
            const double av = a_.eval(t, 0.0);
            if (av < 0.0)
                throw DomainError("a(t) must be nonnegative; a(" + detail::shortest(t) +
                                  ") = " + detail::shortest(av));
            for (std::size_t j = 0; j < lat.u_points; ++j) {
                const double u = lat.u_max * static_cast<double>(j) / static_cast<double>(lat.u_points - 1);
                const double fv = f_.eval(t, u);
                if (fv < 0.0)
                    throw DomainError("f(t,u) must be nonnegative; f(" + detail::shortest(t) + ", " +
                                      detail::shortest(u) + ") = " + detail::shortest(fv));
            }
        }
    }

    KernelParams kernel_;
    Exponent p_;
    Exponent q_;
    Expr a_;
    Expr f_;
    Discretization disc_;
    std::shared_ptr<const Partition> partition_;
};

} // namespace fracbvp
