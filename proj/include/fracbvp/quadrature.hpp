#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/error.hpp"

namespace fracbvp {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence.
class GaussLegendre {
public:
    explicit GaussLegendre(std::size_t n) : x_(n), w_(n) {
        if (n == 0) throw DomainError("GaussLegendre: need at least one point");
        const std::size_t m = (n + 1) / 2;
        const double nd = static_cast<double>(n);
        for (std::size_t i = 1; i <= m; ++i) {
            double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) / (nd + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p1 = 1.0;
                double p2 = 0.0;
                for (std::size_t j = 1; j <= n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    const double jd = static_cast<double>(j);
                    p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
                }
                pp = nd * (z * p1 - p2) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) <= 1e-15) break;
            }
            x_[i - 1] = -z;
            x_[n - i] = z;
            w_[i - 1] = w_[n - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }

    std::size_t size() const noexcept { return x_.size(); }
    std::span<const double> nodes() const noexcept { return x_; }
    std::span<const double> weights() const noexcept { return w_; }

    template <class F>
    double apply(F&& f, double a, double b) const {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < x_.size(); ++i) sum += w_[i] * f(c + h * x_[i]);
        return sum * h;
    }

private:
    std::vector<double> x_;
    std::vector<double> w_;
};

namespace detail {

/// 0 = x_0 < ... < x_N = 1 with x_i = 1 - (1 - i/N)^grading (clustered at 1).
inline std::vector<double> graded_unit_nodes(std::size_t panels, double grading) {
    if (!(grading >= 1.0) || !std::isfinite(grading))
        throw DomainError("grading exponent must be >= 1");
    std::vector<double> x(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
        const double r = 1.0 - static_cast<double>(i) / static_cast<double>(panels);
        x[i] = 1.0 - std::pow(r, grading);
    }
    x.front() = 0.0;
    x.back() = 1.0;
    return x;
}

inline std::string format_point(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace detail

/// Strictly increasing nodes from 0 to 1 with at least four panels.
class Partition {
public:
    explicit Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.size() < 5) throw DomainError("partition needs at least 4 panels");
        if (nodes_.front() != 0.0 || nodes_.back() != 1.0)
            throw DomainError("partition must start at 0 and end at 1");
        for (std::size_t i = 1; i < nodes_.size(); ++i)
            if (!(nodes_[i] > nodes_[i - 1]))
                throw DomainError("partition nodes must be strictly increasing");
    }

    /// Panels graded toward s = 1; grading 1 is uniform.
    static Partition graded(std::size_t panels, double grading = 2.0) {
        if (panels < 4) throw DomainError("partition needs at least 4 panels");
        return Partition(detail::graded_unit_nodes(panels, grading));
    }

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t panels() const noexcept { return nodes_.size() - 1; }
    double operator[](std::size_t i) const { return nodes_[i]; }

    /// Panel j with nodes[j] <= x <= nodes[j+1]; arguments outside [0,1] clamp
    /// to the first or last panel.
    std::size_t locate(double x) const {
        auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
        if (it == nodes_.begin()) return 0;
        const auto j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
        return std::min(j, panels() - 1);
    }

    bool operator==(const Partition&) const = default;

private:
    std::vector<double> nodes_;
};

enum class Interpolation { linear, cubic };

/// Values of a function at the nodes of a partition together with the
/// interpolation rule that extends them to [0, 1]. Immutable.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const Partition> partition, std::vector<double> values,
                 Interpolation interpolation = Interpolation::cubic)
        : part_(std::move(partition)), values_(std::move(values)), interp_(interpolation) {
        if (!part_) throw DomainError("grid function without partition");
        if (values_.size() != part_->size())
            throw DomainError("grid function has " + std::to_string(values_.size()) +
                              " values for " + std::to_string(part_->size()) + " nodes");
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw DomainError("non-finite grid value at node " + std::to_string(i));
    }

    template <class F>
    static GridFunction sample(std::shared_ptr<const Partition> partition, F&& f,
                               Interpolation interpolation = Interpolation::cubic) {
        std::vector<double> v;
        v.reserve(partition->size());
        for (double x : partition->nodes()) v.push_back(f(x));
        return GridFunction(std::move(partition), std::move(v), interpolation);
    }

    static GridFunction constant(std::shared_ptr<const Partition> partition, double c,
                                 Interpolation interpolation = Interpolation::cubic) {
        const std::size_t n = partition->size();
        return GridFunction(std::move(partition), std::vector<double>(n, c), interpolation);
    }

    const Partition& partition() const noexcept { return *part_; }
    const std::shared_ptr<const Partition>& shared_partition() const noexcept { return part_; }
    std::span<const double> values() const noexcept { return values_; }
    Interpolation interpolation() const noexcept { return interp_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

    double operator()(double x) const { return in_panel(part_->locate(x), x); }

    /// Interpolant on panel `panel`, evaluated at x (x may lie slightly outside).
    double in_panel(std::size_t panel, double x) const {
        const auto nodes = part_->nodes();
        if (interp_ == Interpolation::linear) {
            const double x0 = nodes[panel];
            const double x1 = nodes[panel + 1];
            const double r = (x - x0) / (x1 - x0);
            return values_[panel] + r * (values_[panel + 1] - values_[panel]);
        }
        const std::size_t k = stencil_start(panel);
        double sum = 0.0;
        for (std::size_t a = 0; a < 4; ++a) {
            double l = 1.0;
            for (std::size_t b = 0; b < 4; ++b)
                if (b != a) l *= (x - nodes[k + b]) / (nodes[k + a] - nodes[k + b]);
            sum += l * values_[k + a];
        }
        return sum;
    }

    /// Derivative of the interpolant.
    double derivative(double x) const {
        const std::size_t panel = part_->locate(x);
        const auto nodes = part_->nodes();
        if (interp_ == Interpolation::linear)
            return (values_[panel + 1] - values_[panel]) / (nodes[panel + 1] - nodes[panel]);
        const std::size_t k = stencil_start(panel);
        double sum = 0.0;
        for (std::size_t a = 0; a < 4; ++a) {
            double da = 0.0;
            for (std::size_t c = 0; c < 4; ++c) {
                if (c == a) continue;
                double term = 1.0 / (nodes[k + a] - nodes[k + c]);
                for (std::size_t b = 0; b < 4; ++b)
                    if (b != a && b != c) term *= (x - nodes[k + b]) / (nodes[k + a] - nodes[k + b]);
                da += term;
            }
            sum += da * values_[k + a];
        }
        return sum;
    }

    double max() const { return *std::max_element(values_.begin(), values_.end()); }
    double min() const { return *std::min_element(values_.begin(), values_.end()); }
    double sup_norm() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::fabs(v));
        return m;
    }

private:
    std::size_t stencil_start(std::size_t panel) const {
        const std::size_t last = values_.size() - 4;
        return panel == 0 ? 0 : std::min(panel - 1, last);
    }

    std::shared_ptr<const Partition> part_;
    std::vector<double> values_;
    Interpolation interp_;
};

/// sup |f - g| over the shared nodes.
inline double sup_distance(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size()) throw DomainError("sup_distance: grids differ");
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::fabs(f[i] - g[i]));
    return m;
}

struct QuadNode {
    double x;
    double w;
    std::size_t panel;
};

/// Geometric refinement used on pieces that end at a point where the
/// integrand loses smoothness: nested layers of relative width `ratio`.
struct LayerOptions {
    std::size_t points = 8;
    double ratio = 0.15;
    std::size_t layers = 12;
};

/// Builds composite Gauss rules over the panels of a partition, with
/// geometric refinement toward designated singular points.
class PanelRuleBuilder {
public:
    explicit PanelRuleBuilder(std::size_t points_per_panel, LayerOptions layers = {})
        : plain_(points_per_panel), layered_(layers.points), opts_(layers) {}

    std::size_t points_per_panel() const noexcept { return plain_.size(); }

    /// Appends a rule for [a, b], layered toward a and/or b.
    void append(std::vector<QuadNode>& out, double a, double b, std::size_t panel, bool toward_a,
                bool toward_b) const {
        if (!(b > a)) return;
        if (toward_a && toward_b) {
            const double m = 0.5 * (a + b);
            append(out, a, m, panel, true, false);
            append(out, m, b, panel, false, true);
            return;
        }
        if (!toward_a && !toward_b) {
            push(out, plain_, a, b, panel);
            return;
        }
        const double len = b - a;
        double outer = 1.0;
        for (std::size_t k = 0; k < opts_.layers; ++k) {
            const double inner = outer * opts_.ratio;
            if (toward_a)
                push(out, layered_, a + len * inner, a + len * outer, panel);
            else
                push(out, layered_, b - len * outer, b - len * inner, panel);
            outer = inner;
        }
        if (toward_a)
            push(out, layered_, a, a + len * outer, panel);
        else
            push(out, layered_, b - len * outer, b, panel);
    }

    /// Rule for the integral over [lo, hi] following the panels of `part`.
    /// Pieces are split at every point of `singular` inside them and layered
    /// toward every piece end that coincides with a singular point.
    std::vector<QuadNode> over(const Partition& part, double lo, double hi,
                               std::span<const double> singular) const {
        std::vector<QuadNode> out;
        if (!(hi > lo)) return out;
        const auto nodes = part.nodes();
        std::vector<double> cuts;
        for (std::size_t j = 0; j < part.panels(); ++j) {
            const double a = std::max(nodes[j], lo);
            const double b = std::min(nodes[j + 1], hi);
            if (!(b > a)) continue;
            cuts.assign({a, b});
            for (double s : singular)
                if (s > a + kMatch && s < b - kMatch) cuts.push_back(s);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                const double len = cuts[c + 1] - cuts[c];
                append(out, cuts[c], cuts[c + 1], j, near_singular(cuts[c], -len, singular),
                       near_singular(cuts[c + 1], len, singular));
            }
        }
        return out;
    }

private:
    static constexpr double kMatch = 1e-14;

    /// True when a singular point sits at x or just outside the piece, within
    /// `reach` beyond x (negative reach looks left). A singularity a hair past
    /// the end of a piece spoils a plain Gauss rule as badly as one on it.
    static bool near_singular(double x, double reach, std::span<const double> singular) {
        const double lo = std::min(x, x + 2.0 * reach) - kMatch;
        const double hi = std::max(x, x + 2.0 * reach) + kMatch;
        return std::any_of(singular.begin(), singular.end(), [&](double s) {
            return std::fabs(s - x) <= kMatch || (s >= lo && s <= hi);
        });
    }

    static void push(std::vector<QuadNode>& out, const GaussLegendre& g, double a, double b,
                     std::size_t panel) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        for (std::size_t i = 0; i < g.size(); ++i)
            out.push_back({c + h * g.nodes()[i], h * g.weights()[i], panel});
    }

    GaussLegendre plain_;
    GaussLegendre layered_;
    LayerOptions opts_;
};

struct QuadratureOptions {
    std::size_t panels = 256;
    std::size_t points_per_panel = 4;
    double grading = 2.0; ///< panel grading toward `hi`
    bool refine_lo = true;
    bool refine_hi = true;
    LayerOptions layers{8, 0.15, 24};
};

struct Integral {
    double value;
    double error_estimate; ///< |value(panels) - value(panels/2)|
};

namespace detail {

template <class F>
double composite_value(F& f, double lo, double hi, std::size_t panels,
                       const QuadratureOptions& opts) {
    const auto unit = graded_unit_nodes(panels, opts.grading);
    std::vector<double> nodes(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) nodes[i] = lo + (hi - lo) * unit[i];
    nodes.back() = hi;
    const PanelRuleBuilder builder(opts.points_per_panel, opts.layers);
    std::vector<QuadNode> rule;
    for (std::size_t j = 0; j < panels; ++j)
        builder.append(rule, nodes[j], nodes[j + 1], j, opts.refine_lo && j == 0,
                       opts.refine_hi && j + 1 == panels);
    double sum = 0.0;
    for (const auto& q : rule) {
        const double v = f(q.x);
        if (!std::isfinite(v))
            throw QuadratureError("non-finite integrand value at s = " + format_point(q.x));
        sum += q.w * v;
    }
    return sum;
}

} // namespace detail

/// Composite Gauss-Legendre integral of f over [lo, hi] on graded panels.
template <class F>
Integral integrate(F&& f, double lo, double hi, const QuadratureOptions& opts = {}) {
    if (!(lo <= hi)) throw DomainError("integrate: need lo <= hi");
    if (opts.panels < 2) throw DomainError("integrate: need at least 2 panels");
    if (lo == hi) return {0.0, 0.0};
    const double fine = detail::composite_value(f, lo, hi, opts.panels, opts);
    const double coarse = detail::composite_value(f, lo, hi, opts.panels / 2, opts);
    return {fine, std::fabs(fine - coarse)};
}

template <class F>
Integral integrate(F&& f, double lo, double hi, std::size_t panels, std::size_t points_per_panel) {
    QuadratureOptions opts;
    opts.panels = panels;
    opts.points_per_panel = points_per_panel;
    return integrate(std::forward<F>(f), lo, hi, opts);
}

/// F(x) = ∫_0^x g for the interpolant of g, exact panel by panel (a
/// `points`-point Gauss rule integrates the cubic interpolant exactly).
inline GridFunction cumulative(const GridFunction& g, std::size_t points = 4) {
    const GaussLegendre rule(points);
    const auto nodes = g.partition().nodes();
    std::vector<double> out(nodes.size(), 0.0);
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double inc =
            rule.apply([&](double x) { return g.in_panel(j, x); }, nodes[j], nodes[j + 1]);
        out[j + 1] = out[j] + inc;
    }
    return GridFunction(g.shared_partition(), std::move(out), g.interpolation());
}

/// F(x_i) = ∫_0^{x_i} integrand, sampling the integrand at the Gauss points of
/// every panel. `integrand(panel, x)` receives the panel index.
template <class F>
GridFunction cumulative(std::shared_ptr<const Partition> part, F&& integrand, std::size_t points,
                        Interpolation interpolation) {
    const GaussLegendre rule(points);
    const auto nodes = part->nodes();
    std::vector<double> out(nodes.size(), 0.0);
    for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double inc = rule.apply(
            [&](double x) {
                const double v = integrand(j, x);
                if (!std::isfinite(v))
                    throw QuadratureError("non-finite integrand value at s = " +
                                          detail::format_point(x));
                return v;
            },
            nodes[j], nodes[j + 1]);
        out[j + 1] = out[j] + inc;
    }
    return GridFunction(std::move(part), std::move(out), interpolation);
}

} // namespace fracbvp
