#pragma once

#include <optional>
#include <string_view>

namespace fracbvp::fixtures {

// Copies of problems/*.problem, so `reproduce` works from any directory.

inline constexpr std::string_view ex41 = R"pf(# Leray-Schauder example: f = t ln(1+u) / 2, a = e^t
[problem]
alpha = 5/2
eta = 1/2
p = 3/2
a = "exp(t)"
f = "0.5*t*ln(u+1)"

[cone]
rho = 1/2
)pf";

inline constexpr std::string_view ex42 = R"pf(# Contraction example, 1 < p < 2: f = e^-t sin^2 u, a = t
[problem]
alpha = 13/5
eta = 1/2
p = 3/2
a = "t"
f = "exp(-t)*sin(u)^2"

[cone]
rho = 1/2
)pf";

inline constexpr std::string_view ex43 = R"pf(# Cone expansion example, p = 7/2
[problem]
alpha = 5/2
eta = 1/2
p = 7/2
a = "2.5*t*sqrt(t)"
f = "(348+sqrt(u)+t)/400"

[cone]
rho = 1/2
)pf";

inline std::optional<std::string_view> find(std::string_view name) {
    if (name == "ex41") return ex41;
    if (name == "ex42") return ex42;
    if (name == "ex43") return ex43;
    return std::nullopt;
}

} // namespace fracbvp::fixtures
