#pragma once

#include <cmath>
#include <string>

#include "fracbvp/error.hpp"

namespace fracbvp {

namespace detail {

inline void require_positive(double x, const char* what) {
    if (!std::isfinite(x) || !(x > 0.0))
        throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                          std::to_string(x));
}

} // namespace detail

/// Euler gamma function for x > 0.
inline double gamma(double x) {
    detail::require_positive(x, "gamma");
    return std::tgamma(x);
}

/// log Γ(x) for x > 0. Uses tgamma below the overflow threshold so the
/// call never touches the global `signgam` written by lgamma.
inline double log_gamma(double x) {
    detail::require_positive(x, "log_gamma");
    if (x < 170.0) return std::log(std::tgamma(x));
    return std::lgamma(x);
}

/// Euler beta function B(p, q) = Γ(p)Γ(q)/Γ(p+q), evaluated in log space.
inline double beta(double p, double q) {
    detail::require_positive(p, "beta");
    detail::require_positive(q, "beta");
    return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

} // namespace fracbvp
