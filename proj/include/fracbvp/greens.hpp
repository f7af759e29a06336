#pragma once

#include <cmath>
#include <string>

#include "fracbvp/error.hpp"
#include "fracbvp/specialfn.hpp"

namespace fracbvp {

/// Order alpha in (2, 3] and interior point eta in (0, 1) of the three-point
/// problem. Caches Γ(α) and Γ(α-1).
class KernelParams {
public:
    KernelParams(double alpha, double eta) : alpha_(alpha), eta_(eta) {
        if (!std::isfinite(alpha) || !(alpha > 2.0 && alpha <= 3.0))
            throw DomainError("order alpha must lie in (2, 3], got " + std::to_string(alpha));
        if (!std::isfinite(eta) || !(eta > 0.0 && eta < 1.0))
            throw DomainError("eta must lie in (0, 1), got " + std::to_string(eta));
        gamma_a_ = fracbvp::gamma(alpha);
        gamma_a1_ = fracbvp::gamma(alpha - 1.0);
    }

    double alpha() const noexcept { return alpha_; }
    double eta() const noexcept { return eta_; }
    double gamma_alpha() const noexcept { return gamma_a_; }
    double gamma_alpha_minus_1() const noexcept { return gamma_a1_; }

private:
    double alpha_;
    double eta_;
    double gamma_a_;
    double gamma_a1_;
};

namespace detail {

inline constexpr double kSeamSlack = 1e-14;

/// base^exponent for exponent > 0, with tiny negative bases from grid
/// arithmetic clamped to zero.
inline double clamped_pow(double base, double exponent) {
    if (base < -kSeamSlack)
        throw DomainError("kernel power of negative base " + std::to_string(base));
    if (base <= 0.0) return 0.0;
    return std::exp(exponent * std::log(base));
}

inline void require_unit(double x, const char* name) {
    if (!(x >= -kSeamSlack && x <= 1.0 + kSeamSlack))
        throw DomainError(std::string(name) + " outside [0, 1]: " + std::to_string(x));
}

} // namespace detail

/// G(t, s). The upper branch is used on the seam s == t.
inline double g_kernel(const KernelParams& kp, double t, double s) {
    detail::require_unit(t, "t");
    detail::require_unit(s, "s");
    const double e = kp.alpha() - 1.0;
    double v = detail::clamped_pow(1.0 - s, e);
    if (s < t) v -= detail::clamped_pow(t - s, e);
    return v / kp.gamma_alpha();
}

/// H(t, s): same shape as G with exponent alpha-2 and Γ(α-1).
inline double h_kernel(const KernelParams& kp, double t, double s) {
    detail::require_unit(t, "t");
    detail::require_unit(s, "s");
    const double e = kp.alpha() - 2.0;
    double v = detail::clamped_pow(1.0 - s, e);
    if (s < t) v -= detail::clamped_pow(t - s, e);
    return v / kp.gamma_alpha_minus_1();
}

/// K(t, s) = G(t, s) + H(eta, s). The second term does not depend on t.
inline double k_kernel(const KernelParams& kp, double t, double s) {
    return g_kernel(kp, t, s) + h_kernel(kp, kp.eta(), s);
}

/// Phi(s) = (alpha - s)(1 - s)^(alpha-2) / Γ(α) = G(s,s) + H(s,s); bounds K from above.
inline double phi_envelope(const KernelParams& kp, double s) {
    detail::require_unit(s, "s");
    return (kp.alpha() - s) * detail::clamped_pow(1.0 - s, kp.alpha() - 2.0) / kp.gamma_alpha();
}

/// Closed form of the envelope integral over [0, 1]: (alpha+1)/Γ(α+1).
inline double phi_envelope_integral(const KernelParams& kp) {
    return (kp.alpha() + 1.0) / (kp.alpha() * kp.gamma_alpha());
}

/// Cone constant gamma = (1 - eta^(alpha-2))(1 - rho^(alpha-1)), in (0, 1).
inline double cone_gamma(const KernelParams& kp, double rho) {
    if (!std::isfinite(rho) || !(rho > 0.0 && rho < 1.0))
        throw DomainError("cone parameter rho must lie in (0, 1), got " + std::to_string(rho));
    return (1.0 - std::pow(kp.eta(), kp.alpha() - 2.0)) * (1.0 - std::pow(rho, kp.alpha() - 1.0));
}

} // namespace fracbvp
