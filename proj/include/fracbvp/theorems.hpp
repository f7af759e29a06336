#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/error.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/plaplacian.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/report.hpp"
#include "fracbvp/specialfn.hpp"

namespace fracbvp {

// ---------------------------------------------------------------------------
// Extrema of a continuous function over a box, by lattice sampling followed
// by coordinate-wise golden-section refinement around the best lattice cell.
// Only failures are certified exactly; success holds up to the lattice.

struct Box {
    double t_lo, t_hi, u_lo, u_hi;
};

enum class Sense { max, min };

struct Extremum {
    double value;
    double t;
    double u;
};

struct SamplingOptions {
    std::size_t lattice = 201; ///< points per axis
    std::size_t refine_rounds = 3;
    std::size_t golden_iterations = 60;

    std::string describe() const {
        return std::to_string(lattice) + "x" + std::to_string(lattice) + " lattice + golden-section refinement";
    }
};

namespace detail {

template <class F>
Extremum golden_line(F& fn, Sense sense, double lo, double hi, Extremum best, bool along_t,
                     std::size_t iterations) {
    auto better = [sense](double a, double b) { return sense == Sense::max ? a > b : a < b; };
    auto eval = [&](double x) { return along_t ? fn(x, best.u) : fn(best.t, x); };
    auto consider = [&](double x, double v) {
        if (better(v, best.value)) best = along_t ? Extremum{v, x, best.u} : Extremum{v, best.t, x};
    };
    if (!(hi > lo)) return best;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = eval(c), fd = eval(d);
    consider(c, fc);
    consider(d, fd);
    for (std::size_t k = 0; k < iterations; ++k) {
        if (better(fc, fd)) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = eval(c);
            consider(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = eval(d);
            consider(d, fd);
        }
    }
    return best;
}

inline double lattice_point(double lo, double hi, std::size_t i, std::size_t n) {
    if (n < 2) return lo;
    if (i + 1 == n) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace detail

template <class F>
Extremum sample_extremum(F&& fn, const Box& box, Sense sense, const SamplingOptions& opts = {}) {
    const std::size_t n = std::max<std::size_t>(opts.lattice, 2);
    auto better = [sense](double a, double b) { return sense == Sense::max ? a > b : a < b; };
    std::optional<Extremum> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = detail::lattice_point(box.t_lo, box.t_hi, i, n);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = detail::lattice_point(box.u_lo, box.u_hi, j, n);
            const double v = fn(t, u);
            if (!best || better(v, best->value)) {
                best = Extremum{v, t, u};
                bi = i;
                bj = j;
            }
        }
    }
    const double t_lo = detail::lattice_point(box.t_lo, box.t_hi, bi == 0 ? 0 : bi - 1, n);
    const double t_hi = detail::lattice_point(box.t_lo, box.t_hi, std::min(bi + 1, n - 1), n);
    const double u_lo = detail::lattice_point(box.u_lo, box.u_hi, bj == 0 ? 0 : bj - 1, n);
    const double u_hi = detail::lattice_point(box.u_lo, box.u_hi, std::min(bj + 1, n - 1), n);
    Extremum e = *best;
    for (std::size_t r = 0; r < opts.refine_rounds; ++r) {
        e = detail::golden_line(fn, sense, t_lo, t_hi, e, true, opts.golden_iterations);
        e = detail::golden_line(fn, sense, u_lo, u_hi, e, false, opts.golden_iterations);
    }
    return e;
}

// ---------------------------------------------------------------------------
// Normalisation constants.

namespace detail {

inline QuadratureOptions fine_quadrature() { return QuadratureOptions{}; }

inline double integral_of(const Expr& g) {
    return integrate([&](double t) { return g.eval(t, 0.0); }, 0.0, 1.0, fine_quadrature()).value;
}

} // namespace detail

/// ∫_0^1 Phi(s) ds by quadrature; phi_envelope_integral gives the closed form.
inline double envelope_integral(const KernelParams& kp) {
    return integrate([&](double s) { return phi_envelope(kp, s); }, 0.0, 1.0, detail::fine_quadrature()).value;
}

inline double integral_of_a(const Problem& pb) { return detail::integral_of(pb.a()); }

/// Lambda_1 = (phi_q(∫a) ∫Phi)^(-1).
inline double lambda1(const Problem& pb) {
    const double int_a = integral_of_a(pb);
    if (!(int_a > 0.0)) throw DomainError("lambda1: a vanishes identically");
    return 1.0 / (phi(pb.q_exponent(), int_a) * envelope_integral(pb.kernel()));
}

/// Lambda_2 = (gamma ∫_0^rho Phi(s) phi_q(∫_0^s a) ds)^(-1), by nested quadrature.
inline double lambda2(const Problem& pb, double rho, std::size_t panels = 256) {
    const double g = cone_gamma(pb.kernel(), rho);
    const PanelRuleBuilder builder(4, LayerOptions{8, 0.15, 24});
    std::vector<QuadNode> rule;
    for (std::size_t j = 0; j < panels; ++j) {
        const double a = rho * static_cast<double>(j) / static_cast<double>(panels);
        const double b = j + 1 == panels ? rho : rho * static_cast<double>(j + 1) / static_cast<double>(panels);
        builder.append(rule, a, b, j, j == 0, false);
    }
    std::sort(rule.begin(), rule.end(), [](const QuadNode& x, const QuadNode& y) { return x.x < y.x; });
    const GaussLegendre inner(8);
    const Expr& a = pb.a();
    double prev = 0.0;
    double acc = 0.0;
    double sum = 0.0;
    for (const auto& n : rule) {
        acc += inner.apply([&](double t) { return a.eval(t, 0.0); }, prev, n.x);
        prev = n.x;
        sum += n.w * phi_envelope(pb.kernel(), n.x) * phi(pb.q_exponent(), acc);
    }
    if (!(sum > 0.0)) throw DomainError("lambda2: a vanishes on [0, rho]");
    return 1.0 / (g * sum);
}

// ---------------------------------------------------------------------------
// Reports.

enum class Verdict { hypotheses_hold, hypotheses_fail };

inline const char* to_string(Verdict v) {
    return v == Verdict::hypotheses_hold ? "hypotheses_hold" : "hypotheses_fail";
}

enum class Relation { lt, le, gt, ge };

inline const char* to_string(Relation r) {
    switch (r) {
    case Relation::lt: return "<";
    case Relation::le: return "<=";
    case Relation::gt: return ">";
    case Relation::ge: return ">=";
    }
    return "?";
}

struct Witness {
    double t;
    double u;
};

/// One inequality `lhs relation rhs` entering a theorem's hypotheses.
struct Condition {
    std::string name;
    Relation relation;
    double lhs;
    double rhs;
    bool holds;
    bool affects_verdict = true;
    std::optional<Witness> witness; ///< extremal sample point, kept when the condition fails

    /// Positive when the inequality holds with room to spare.
    double slack() const {
        return (relation == Relation::lt || relation == Relation::le) ? rhs - lhs : lhs - rhs;
    }
};

inline Condition make_condition(std::string name, double lhs, Relation rel, double rhs,
                                std::optional<Witness> witness = std::nullopt, bool affects_verdict = true) {
    bool ok = false;
    switch (rel) {
    case Relation::lt: ok = lhs < rhs; break;
    case Relation::le: ok = lhs <= rhs; break;
    case Relation::gt: ok = lhs > rhs; break;
    case Relation::ge: ok = lhs >= rhs; break;
    }
    Condition c{std::move(name), rel, lhs, rhs, ok, affects_verdict, std::nullopt};
    if (!ok) c.witness = witness;
    return c;
}

struct TheoremReport {
    std::string theorem;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> quantities;
    std::vector<Condition> conditions;
    std::vector<std::pair<std::string, std::string>> notes;
    std::string lattice;
    Verdict verdict = Verdict::hypotheses_fail;

    void finalize() {
        const bool ok = std::all_of(conditions.begin(), conditions.end(),
                                    [](const Condition& c) { return c.holds || !c.affects_verdict; });
        verdict = ok ? Verdict::hypotheses_hold : Verdict::hypotheses_fail;
    }

    std::optional<double> input(const std::string& name) const {
        for (const auto& [k, v] : inputs)
            if (k == name) return v;
        return std::nullopt;
    }

    std::optional<double> quantity(const std::string& name) const {
        for (const auto& [k, v] : quantities)
            if (k == name) return v;
        return std::nullopt;
    }

    const Condition* condition(const std::string& name) const {
        for (const auto& c : conditions)
            if (c.name == name) return &c;
        return nullptr;
    }

    /// Names of failed verdict-relevant conditions.
    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : conditions)
            if (!c.holds && c.affects_verdict) out.push_back(c.name);
        return out;
    }

    KeyValueReport to_report() const {
        KeyValueReport r;
        r.add("theorem", theorem);
        for (const auto& [k, v] : inputs) r.add("input." + k, v);
        for (const auto& [k, v] : quantities) r.add("quantity." + k, v);
        for (const auto& c : conditions) {
            const std::string key = "condition." + c.name;
            r.add(key, std::string(c.holds ? "holds" : "fails") + (c.affects_verdict ? "" : " (informational)"));
            r.add(key + ".relation", "lhs " + std::string(to_string(c.relation)) + " rhs");
            r.add(key + ".lhs", c.lhs);
            r.add(key + ".rhs", c.rhs);
            r.add(key + ".slack", c.slack());
            if (c.witness) {
                r.add(key + ".witness_t", c.witness->t);
                r.add(key + ".witness_u", c.witness->u);
            }
        }
        for (const auto& [k, v] : notes) r.add("note." + k, v);
        r.add("lattice", lattice);
        r.add("verdict", to_string(verdict));
        return r;
    }
};

namespace detail {

/// (H1) f >= 0 on [0,1] x [0,u_max] and f(., 0) not identically zero;
/// (H2) a >= 0 with no run of two or more zero samples.
inline void add_standing_hypotheses(TheoremReport& rep, const Problem& pb, double u_max,
                                    const SamplingOptions& opts, bool nontrivial_counts) {
    const Expr& f = pb.f();
    const Expr& a = pb.a();
    const auto fmin = sample_extremum([&](double t, double u) { return f.eval(t, u); },
                                      Box{0.0, 1.0, 0.0, u_max}, Sense::min, opts);
    rep.conditions.push_back(make_condition("h1_f_nonnegative", fmin.value, Relation::ge, 0.0,
                                            Witness{fmin.t, fmin.u}));
    const auto f0max = sample_extremum([&](double t, double) { return f.eval(t, 0.0); },
                                       Box{0.0, 1.0, 0.0, 0.0}, Sense::max, opts);
    rep.conditions.push_back(make_condition("h1_f_at_zero_nontrivial", f0max.value, Relation::gt, 0.0,
                                            Witness{f0max.t, 0.0}, nontrivial_counts));
    if (!nontrivial_counts && !(f0max.value > 0.0))
        rep.notes.emplace_back("h1_f_at_zero_nontrivial",
                               "f(t,0) vanishes on the lattice; the guaranteed solution may be u = 0");

    const std::size_t n = std::max<std::size_t>(opts.lattice, 2);
    double amin = HUGE_VAL, amin_t = 0.0;
    std::size_t run = 0, longest = 0;
    double run_t = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lattice_point(0.0, 1.0, i, n);
        const double v = a.eval(t, 0.0);
        if (v < amin) amin = v, amin_t = t;
        run = v == 0.0 ? run + 1 : 0;
        if (run > longest) longest = run, run_t = t;
    }
    rep.conditions.push_back(make_condition("h2_a_nonnegative", amin, Relation::ge, 0.0, Witness{amin_t, 0.0}));
    rep.conditions.push_back(make_condition("h2_a_no_zero_interval", static_cast<double>(longest), Relation::lt,
                                            2.0, Witness{run_t, 0.0}));
}

/// Largest sampled |f(t,u1) - f(t,u2)| / |u1 - u2| over [0,1] x [0,u_max],
/// from lattice neighbours and short secants. Every quotient is a lower
/// bound for the true Lipschitz constant.
inline Extremum sampled_lipschitz(const Expr& f, double u_max, const SamplingOptions& opts) {
    const std::size_t n = std::max<std::size_t>(opts.lattice, 2);
    const double du = u_max / static_cast<double>(n - 1);
    Extremum best{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = lattice_point(0.0, 1.0, i, n);
        double prev = f.eval(t, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = lattice_point(0.0, u_max, j, n);
            const double fu = j == 0 ? prev : f.eval(t, u);
            const double h = 1e-6 * std::max(1.0, u);
            const double secant = std::fabs(f.eval(t, u + h) - fu) / h;
            const double chord = j == 0 ? 0.0 : std::fabs(fu - prev) / du;
            const double v = std::max(secant, chord);
            if (v > best.value) best = {v, t, u};
            prev = fu;
        }
    }
    return best;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Theorem checkers.

enum class KrasnoselskiiVariant { expansive_3_1, compressive_3_2 };

struct KrasnoselskiiInputs {
    double rho = 0.5;
    double rho1 = 0.0;
    double rho2 = 0.0;
    std::optional<double> M1; ///< defaults to Lambda_1
    std::optional<double> M2; ///< defaults to Lambda_2
};

/// Cone expansion/compression hypotheses: positive
/// solution with rho1 < ||u|| < rho2 when they hold.
inline TheoremReport check_krasnoselskii(const Problem& pb, const KrasnoselskiiInputs& in,
                                         KrasnoselskiiVariant variant, const SamplingOptions& opts = {}) {
    const bool v31 = variant == KrasnoselskiiVariant::expansive_3_1;
    TheoremReport rep;
    rep.theorem = v31 ? "3.1" : "3.2";
    rep.lattice = opts.describe();

    const double g = cone_gamma(pb.kernel(), in.rho);
    const double l1 = lambda1(pb);
    const double l2 = lambda2(pb, in.rho);
    const double m1 = in.M1.value_or(l1);
    const double m2 = in.M2.value_or(l2);
    const double rho1 = in.rho1, rho2 = in.rho2;

    rep.inputs = {{"rho", in.rho}, {"rho1", rho1}, {"rho2", rho2}, {"M1", m1}, {"M2", m2}};
    if (!in.M1) rep.notes.emplace_back("M1", "defaulted to lambda1");
    if (!in.M2) rep.notes.emplace_back("M2", "defaulted to lambda2");
    rep.quantities = {{"lambda1", l1}, {"lambda2", l2}, {"gamma", g}};

    auto& c = rep.conditions;
    c.push_back(make_condition("rho1_positive", rho1, Relation::gt, 0.0));
    c.push_back(make_condition("rho1 < rho2", rho1, Relation::lt, rho2));
    if (v31)
        c.push_back(make_condition("M2*rho1 < M1*rho2", m2 * rho1, Relation::lt, m1 * rho2));
    else {
        c.push_back(make_condition("gamma*rho2 < rho1", g * rho2, Relation::lt, rho1));
        c.push_back(make_condition("M1*rho1 > M2*rho2", m1 * rho1, Relation::gt, m2 * rho2));
    }
    c.push_back(make_condition("M1_positive", m1, Relation::gt, 0.0));
    c.push_back(make_condition("M1 <= lambda1", m1, Relation::le, l1));
    c.push_back(make_condition("M2 >= lambda2", m2, Relation::ge, l2));

    const Expr& f = pb.f();
    auto fn = [&](double t, double u) { return f.eval(t, u); };
    const Exponent p = pb.p_exponent();
    // Upper box: f <= phi_p(M1 * r) on [0,1] x [0, r]; lower box:
    // f >= phi_p(M2 * r') on [0,rho] x [gamma r', r'].
    const double r_up = v31 ? rho2 : rho1;
    const double r_low = v31 ? rho1 : rho2;
    if (rho1 > 0.0 && rho2 > 0.0) {
        const double up_bound = phi(p, m1 * r_up);
        const double low_bound = phi(p, m2 * r_low);
        const auto fmax = sample_extremum(fn, Box{0.0, 1.0, 0.0, r_up}, Sense::max, opts);
        const auto fmin = sample_extremum(fn, Box{0.0, in.rho, g * r_low, r_low}, Sense::min, opts);
        rep.quantities.emplace_back("f_max_upper_box", fmax.value);
        rep.quantities.emplace_back("phi_p(M1*r_upper)", up_bound);
        rep.quantities.emplace_back("f_min_lower_box", fmin.value);
        rep.quantities.emplace_back("phi_p(M2*r_lower)", low_bound);
        c.push_back(make_condition("f_upper_box", fmax.value, Relation::le, up_bound, Witness{fmax.t, fmax.u}));
        c.push_back(make_condition("f_lower_box", fmin.value, Relation::ge, low_bound, Witness{fmin.t, fmin.u}));
    }
    detail::add_standing_hypotheses(rep, pb, std::max({rho1, rho2, 1.0}), opts, true);
    rep.finalize();
    return rep;
}

/// Leray-Schauder hypothesis:
///   nu > L^(q-1) phi_q(∫a) ∫Phi,  L = max f over [0,1] x [0,nu].
inline TheoremReport check_leray_schauder(const Problem& pb, double nu, const SamplingOptions& opts = {}) {
    TheoremReport rep;
    rep.theorem = "3.3";
    rep.lattice = opts.describe();
    rep.inputs = {{"nu", nu}};
    rep.conditions.push_back(make_condition("nu_positive", nu, Relation::gt, 0.0));
    if (nu > 0.0) {
        const Expr& f = pb.f();
        const auto lmax = sample_extremum([&](double t, double u) { return f.eval(t, u); },
                                          Box{0.0, 1.0, 0.0, nu}, Sense::max, opts);
        const double q = pb.q();
        const double int_a = integral_of_a(pb);
        const double int_phi = envelope_integral(pb.kernel());
        const double rhs = std::pow(std::max(lmax.value, 0.0), q - 1.0) * phi(pb.q_exponent(), int_a) * int_phi;
        rep.quantities = {{"L", lmax.value},
                          {"L_t", lmax.t},
                          {"L_u", lmax.u},
                          {"int_a", int_a},
                          {"int_phi", int_phi},
                          {"int_phi_closed_form", phi_envelope_integral(pb.kernel())},
                          {"rhs", rhs},
                          {"margin", nu - rhs}};
        rep.conditions.push_back(make_condition("nu > rhs", nu, Relation::gt, rhs));
        detail::add_standing_hypotheses(rep, pb, nu, opts, false);
    }
    rep.finalize();
    return rep;
}

struct ContractionOptions {
    double u_max = 100.0; ///< u range [0, u_max] standing in for [0, inf)
    double t_min = 1e-3;  ///< t range [t_min, 1] for the lower bound on a*f (t^(sigma-1) may blow up at 0)
    SamplingOptions sampling{};
};

/// Contraction hypotheses for 1 < p < 2: f <= k(t), f is
/// L-Lipschitz in u, and L < Γ(α+1)/((α+1)(q-1)) (∫a)^(-1) (∫a k)^(2-q).
inline TheoremReport check_contraction_small_p(const Problem& pb, const Expr& k_env, double L,
                                               const ContractionOptions& opts = {}) {
    if (k_env.depends_on(Variable::u)) throw DomainError("k(t) may not depend on u");
    TheoremReport rep;
    rep.theorem = "3.5";
    rep.lattice = opts.sampling.describe();
    rep.inputs = {{"L", L}, {"u_max", opts.u_max}};
    rep.notes.emplace_back("k_env", k_env.print());
    auto& c = rep.conditions;
    const double p = pb.p(), q = pb.q(), alpha = pb.alpha();
    c.push_back(make_condition("p < 2", p, Relation::lt, 2.0));

    const auto kmin = sample_extremum([&](double t, double) { return k_env.eval(t, 0.0); },
                                      Box{0.0, 1.0, 0.0, 0.0}, Sense::min, opts.sampling);
    c.push_back(make_condition("k_nonnegative", kmin.value, Relation::ge, 0.0, Witness{kmin.t, 0.0}));
    const Expr& f = pb.f();
    const auto excess = sample_extremum([&](double t, double u) { return f.eval(t, u) - k_env.eval(t, 0.0); },
                                        Box{0.0, 1.0, 0.0, opts.u_max}, Sense::max, opts.sampling);
    c.push_back(make_condition("f <= k", excess.value, Relation::le, 0.0, Witness{excess.t, excess.u}));
    c.push_back(make_condition("L_positive", L, Relation::gt, 0.0));
    const auto lip = detail::sampled_lipschitz(f, opts.u_max, opts.sampling);
    c.push_back(make_condition("f_lipschitz_L", lip.value, Relation::le, L * (1.0 + 1e-9), Witness{lip.t, lip.u}));

    const double int_a = integral_of_a(pb);
    const double int_ak =
        integrate([&](double t) { return pb.a().eval(t, 0.0) * k_env.eval(t, 0.0); }, 0.0, 1.0).value;
    const double g1 = fracbvp::gamma(alpha + 1.0);
    const double bound = g1 / ((alpha + 1.0) * (q - 1.0)) / int_a * std::pow(int_ak, 2.0 - q);
    const double l1 = L * (q - 1.0) * std::pow(int_ak, q - 2.0) * (alpha + 1.0) / g1 * int_a;
    rep.quantities = {{"q", q},
                      {"int_a", int_a},
                      {"int_ak", int_ak},
                      {"bound", bound},
                      {"contraction_constant", l1},
                      {"sampled_lipschitz", lip.value},
                      {"max_f_minus_k", excess.value}};
    c.push_back(make_condition("int_ak_positive", int_ak, Relation::gt, 0.0));
    c.push_back(make_condition("L < bound", L, Relation::lt, bound));
    detail::add_standing_hypotheses(rep, pb, opts.u_max, opts.sampling, false);
    rep.finalize();
    return rep;
}

/// Contraction hypotheses for p > 2: a f >= mu sigma t^(sigma-1),
/// f is k-Lipschitz in u, and k below the beta-function bound.
inline TheoremReport check_contraction_large_p(const Problem& pb, double mu, double sigma, double k,
                                               const ContractionOptions& opts = {}) {
    TheoremReport rep;
    rep.theorem = "3.4";
    rep.lattice = opts.sampling.describe();
    rep.inputs = {{"mu", mu}, {"sigma", sigma}, {"k", k}, {"u_max", opts.u_max}, {"t_min", opts.t_min}};
    auto& c = rep.conditions;
    const double p = pb.p(), q = pb.q(), alpha = pb.alpha();
    c.push_back(make_condition("p > 2", p, Relation::gt, 2.0));
    c.push_back(make_condition("mu_positive", mu, Relation::gt, 0.0));
    c.push_back(make_condition("sigma_positive", sigma, Relation::gt, 0.0));
    c.push_back(make_condition("k_positive", k, Relation::gt, 0.0));

    const Expr& f = pb.f();
    const Expr& a = pb.a();
    const auto lip = detail::sampled_lipschitz(f, opts.u_max, opts.sampling);
    c.push_back(make_condition("f_lipschitz_k", lip.value, Relation::le, k * (1.0 + 1e-9), Witness{lip.t, lip.u}));
    rep.quantities = {{"q", q}, {"sampled_lipschitz", lip.value}};

    if (p > 2.0 && mu > 0.0 && sigma > 0.0) {
        const auto lower = sample_extremum(
            [&](double t, double u) { return a.eval(t, 0.0) * f.eval(t, u) - mu * sigma * std::pow(t, sigma - 1.0); },
            Box{opts.t_min, 1.0, 0.0, opts.u_max}, Sense::min, opts.sampling);
        c.push_back(make_condition("a*f >= mu*sigma*t^(sigma-1)", lower.value, Relation::ge, 0.0,
                                   Witness{lower.t, lower.u}));
        rep.quantities.emplace_back("min_af_minus_lower_bound", lower.value);

        const double sigma_max = 2.0 / (2.0 - q);
        const double e = sigma * (q - 2.0);
        c.push_back(make_condition("sigma < 2/(2-q)", sigma, Relation::lt, sigma_max));
        c.push_back(make_condition("sigma*(q-2)+1 > 0", e + 1.0, Relation::gt, 0.0));
        if (sigma < sigma_max && e + 1.0 > 0.0) {
            const double int_a = integral_of_a(pb);
            const double b = fracbvp::beta(alpha - 1.0, e + 1.0);
            const double ga1 = fracbvp::gamma(alpha - 1.0);
            const double mu_pow = std::pow(mu, q - 2.0);
            const double bound = (e + alpha) * ga1 / ((q - 1.0) * mu_pow * (e + alpha + 1.0) * b) / int_a;
            const double contraction = (q - 1.0) * mu_pow * k * (e + alpha + 1.0) / ((e + alpha) * ga1) * int_a * b;
            rep.quantities.emplace_back("int_a", int_a);
            rep.quantities.emplace_back("beta", b);
            rep.quantities.emplace_back("bound", bound);
            rep.quantities.emplace_back("contraction_constant", contraction);
            c.push_back(make_condition("k < bound", k, Relation::lt, bound));
        }
    }
    detail::add_standing_hypotheses(rep, pb, opts.u_max, opts.sampling, false);
    rep.finalize();
    return rep;
}

} // namespace fracbvp
