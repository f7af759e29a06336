#pragma once

#include <cmath>
#include <string>

#include "fracbvp/error.hpp"

namespace fracbvp {

/// Exponent r > 1 of a p-Laplacian map. Serves for p and for its conjugate q.
class Exponent {
public:
    explicit Exponent(double r) : r_(r) {
        if (!std::isfinite(r) || !(r > 1.0))
            throw DomainError("p-Laplacian exponent must exceed 1, got " + std::to_string(r));
    }

    double value() const noexcept { return r_; }

    /// r/(r-1), so that 1/r + 1/conjugate = 1.
    Exponent conjugate() const { return Exponent(r_ / (r_ - 1.0)); }

private:
    double r_;
};

inline double conjugate(double p) { return Exponent(p).conjugate().value(); }

/// phi_r(s) = |s|^(r-2) s, extended by phi_r(0) = 0 for every r > 1.
inline double phi(Exponent r, double s) {
    if (!std::isfinite(s)) throw DomainError("phi: non-finite argument");
    if (s == 0.0) return 0.0;
    return std::copysign(std::pow(std::fabs(s), r.value() - 1.0), s);
}

enum class LipschitzRegime {
    lower_bounded, ///< 1 < r <= 2 and |x|, |y| >= m > 0 with xy > 0
    upper_bounded, ///< r > 2 and |x|, |y| <= M
};

/// Lipschitz constant (r-1) bound^(r-2) of phi_r on the set described by
/// `regime`. The two regimes are disjoint in r.
inline double lipschitz_bound(Exponent r, double bound, LipschitzRegime regime) {
    const double e = r.value();
    if (!std::isfinite(bound) || !(bound > 0.0))
        throw DomainError("lipschitz_bound: bound must be positive");
    if (regime == LipschitzRegime::lower_bounded && e > 2.0)
        throw DomainError("lipschitz_bound: lower_bounded regime requires 1 < r <= 2");
    if (regime == LipschitzRegime::upper_bounded && !(e > 2.0))
        throw DomainError("lipschitz_bound: upper_bounded regime requires r > 2");
    return (e - 1.0) * std::pow(bound, e - 2.0);
}

} // namespace fracbvp
