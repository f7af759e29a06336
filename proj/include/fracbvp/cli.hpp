#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracbvp/error.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/fixtures.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/problem_file.hpp"
#include "fracbvp/report.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/specialfn.hpp"
#include "fracbvp/theorems.hpp"
#include "fracbvp/verify.hpp"

namespace fracbvp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Flags shared by `check`, `solve` and `reproduce`.
struct TheoremArgs {
    std::string theorem;
    std::optional<double> rho, rho1, rho2, M1, M2, nu, L, mu, sigma, k;
    std::optional<std::string> k_env;
};

struct Overrides {
    std::optional<std::size_t> panels;
    std::optional<double> tol;
};

/// Acceptance thresholds used by `verify` for its verdict.
struct VerifyThresholds {
    double integral_residual = 1e-5;
    double boundary = 1e-4;
    double slack = -1e-10;
};

namespace detail {

template <class T>
T need(const std::optional<T>& v, const char* flag, const std::string& theorem) {
    if (!v) throw InputError("theorem " + theorem + " needs " + flag);
    return *v;
}

inline void apply(ProblemFile& pf, const Overrides& o) {
    if (o.panels) {
        if (*o.panels < 4) throw InputError("--panels must be at least 4");
        pf.discretization.panels = *o.panels;
    }
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw InputError("--tol must be positive");
        pf.solver.tol = *o.tol;
    }
}

inline void emit(std::ostream& out, const std::optional<std::string>& path, const KeyValueReport& rep) {
    if (!path) {
        rep.write(out);
        return;
    }
    std::ofstream f(*path);
    if (!f) throw InputError("cannot write '" + *path + "'");
    rep.write(f);
}

inline std::string certification_for(const TheoremReport& r) {
    if (r.verdict != Verdict::hypotheses_hold) return "uncertified";
    if (r.theorem == "3.4" || r.theorem == "3.5") return "contraction certified";
    return "existence certified, convergence heuristic";
}

inline KeyValueReport solve_report(const SolveReport& s) {
    KeyValueReport r;
    r.add("converged", s.converged);
    r.add("iterations", s.iterations);
    r.add("last_gap", s.successive_diffs.empty() ? 0.0 : s.successive_diffs.back());
    r.add("residual", s.residual);
    r.add("damping", s.damping);
    r.add("damping_fallback", s.damping_fallback);
    r.add("nodes", s.solution.size());
    r.add("sup_norm", s.solution.sup_norm());
    r.add("min", s.solution.min());
    r.add("certification", s.certification);
    return r;
}

inline KeyValueReport verify_report(const VerificationReport& v) {
    KeyValueReport r;
    r.add("integral_form_residual", v.integral_form_residual);
    r.add("bc.first_derivative_at_0", v.bc_residuals.first_derivative_at_0);
    r.add("bc.second_derivative_at_0", v.bc_residuals.second_derivative_at_0);
    r.add("bc.three_point", v.bc_residuals.three_point);
    r.add("positivity_min", v.positivity_min);
    r.add("cone_slack", v.cone_slack);
    r.add("sup_norm", v.sup_norm);
    return r;
}

inline bool passes(const VerificationReport& v, const VerifyThresholds& th) {
    return v.integral_form_residual <= th.integral_residual &&
           v.bc_residuals.first_derivative_at_0 <= th.boundary &&
           v.bc_residuals.second_derivative_at_0 <= th.boundary && v.bc_residuals.three_point <= th.boundary &&
           v.positivity_min >= th.slack && v.cone_slack >= th.slack;
}

} // namespace detail

/// Runs the theorem checker selected by `args.theorem`.
inline TheoremReport check_theorem(const ProblemFile& pf, const TheoremArgs& args) {
    const Problem pb = pf.problem();
    const std::string& th = args.theorem;
    using detail::need;
    if (th == "3.1" || th == "3.2") {
        KrasnoselskiiInputs in;
        in.rho = args.rho.value_or(pf.rho);
        if (!(in.rho > 0.0 && in.rho < 1.0)) throw InputError("--rho must lie in (0, 1)");
        in.rho1 = need(args.rho1, "--rho1", th);
        in.rho2 = need(args.rho2, "--rho2", th);
        in.M1 = args.M1;
        in.M2 = args.M2;
        return check_krasnoselskii(pb, in,
                                   th == "3.1" ? KrasnoselskiiVariant::expansive_3_1
                                               : KrasnoselskiiVariant::compressive_3_2);
    }
    if (th == "3.3") return check_leray_schauder(pb, need(args.nu, "--nu", th));
    if (th == "3.4")
        return check_contraction_large_p(pb, need(args.mu, "--mu", th), need(args.sigma, "--sigma", th),
                                         need(args.k, "--k", th));
    if (th == "3.5") {
        const std::string text = need(args.k_env, "--k-env", th);
        Expr k_env = Expr::parse("0");
        try {
            k_env = Expr::parse(text);
        } catch (const ParseError& e) {
            throw InputError(std::string("--k-env: ") + e.what());
        }
        if (k_env.depends_on(Variable::u)) throw InputError("--k-env may depend on t only");
        return check_contraction_small_p(pb, k_env, need(args.L, "--L", th));
    }
    throw InputError("unknown theorem '" + th + "' (expected 3.1, 3.2, 3.3, 3.4 or 3.5)");
}

namespace detail {

struct Reproduction {
    TheoremArgs theorem;
    std::string name;
};

inline Reproduction reproduction(const std::string& name) {
    Reproduction r{{}, name};
    if (name == "ex41") {
        r.theorem.theorem = "3.3";
        r.theorem.nu = 1.0;
    } else if (name == "ex42") {
        r.theorem.theorem = "3.5";
        r.theorem.k_env = "exp(-t)";
        r.theorem.L = 2.0;
    } else if (name == "ex43") {
        r.theorem.theorem = "3.1";
        r.theorem.rho = 0.5;
        r.theorem.rho1 = 1.0 / 120.0;
        r.theorem.rho2 = 1.0;
    } else {
        throw InputError("unknown example '" + name + "' (expected ex41, ex42 or ex43)");
    }
    return r;
}

/// Published reference values next to the recomputed ones.
inline void add_references(KeyValueReport& rep, const std::string& name, const ProblemFile& pf,
                           const TheoremReport& tr, const SolveReport& sr) {
    if (name == "ex41") {
        rep.add("reference.L_exact", 0.5 * std::log(2.0));
        rep.add("reference.rhs_published", 0.372);
        rep.add("reference.rhs_computed", tr.quantity("rhs").value_or(NAN));
    } else if (name == "ex42") {
        const double closed = 13.0 / 18.0 * fracbvp::gamma(13.0 / 5.0) / (1.0 - 2.0 * std::exp(-1.0));
        rep.add("reference.bound_published", 3.90744);
        rep.add("reference.bound_closed_form", closed);
        rep.add("reference.bound_computed", tr.quantity("bound").value_or(NAN));
    } else {
        const double l1 = tr.quantity("lambda1").value_or(NAN);
        const double m1 = tr.input("M1").value_or(NAN);
        const double pexp = pf.p - 1.0;
        rep.add("reference.lambda1_published", 0.94952);
        rep.add("reference.lambda1_closed_form", 15.0 * fracbvp::gamma(0.5) / 28.0);
        rep.add("reference.lambda1_computed", l1);
        rep.add("reference.M1_pow_published", 0.87855);
        rep.add("reference.M1_pow_computed", std::pow(m1, pexp));
        rep.add("reference.lambda2_computed", tr.quantity("lambda2").value_or(NAN));
        const double norm = sr.solution.sup_norm();
        const double lo = tr.input("rho1").value_or(NAN);
        const double hi = tr.input("rho2").value_or(NAN);
        rep.add("reference.norm_in_rho1_rho2", norm > lo && norm < hi);
    }
}

} // namespace detail

/// Command-line entry point. Returns the process exit code.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional p-Laplacian three-point boundary value problems: solve, check, verify"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::optional<std::string> out_path;
    Overrides ov;
    TheoremArgs targs;
    std::string problem_path;
    std::string solution_path;
    std::string example;
    VerifyThresholds th;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "write the report (or CSV, for solve) to this path");
        sub->add_option("--panels", ov.panels, "override the number of panels");
        sub->add_option("--tol", ov.tol, "override the Picard tolerance");
    };
    auto add_theorem = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--theorem", targs.theorem, "3.1, 3.2, 3.3, 3.4 or 3.5");
        if (required) opt->required();
        sub->add_option("--rho", targs.rho, "cone parameter rho in (0,1)");
        sub->add_option("--rho1", targs.rho1, "inner radius (3.1/3.2)");
        sub->add_option("--rho2", targs.rho2, "outer radius (3.1/3.2)");
        sub->add_option("--M1", targs.M1, "slope M1 (default lambda1)");
        sub->add_option("--M2", targs.M2, "slope M2 (default lambda2)");
        sub->add_option("--nu", targs.nu, "radius nu (3.3)");
        sub->add_option("--L", targs.L, "Lipschitz constant L (3.5)");
        sub->add_option("--k-env", targs.k_env, "envelope k(t) with f <= k (3.5)");
        sub->add_option("--mu", targs.mu, "mu (3.4)");
        sub->add_option("--sigma", targs.sigma, "sigma (3.4)");
        sub->add_option("--k", targs.k, "Lipschitz constant k (3.4)");
    };

    auto* solve = app.add_subcommand("solve", "Picard iteration from u = 0; --out writes the solution CSV");
    add_common(solve);
    add_theorem(solve, false);
    solve->add_option("problem", problem_path, "problem file")->required();

    auto* check = app.add_subcommand("check", "check the hypotheses of one existence theorem");
    add_common(check);
    add_theorem(check, true);
    check->add_option("problem", problem_path, "problem file")->required();

    auto* verify = app.add_subcommand("verify", "verify a saved solution against the problem");
    add_common(verify);
    verify->add_option("--solution", solution_path, "CSV with header t,u")->required();
    verify->add_option("--rho", targs.rho, "cone parameter rho in (0,1)");
    verify->add_option("--max-residual", th.integral_residual, "integral form residual threshold");
    verify->add_option("--max-bc", th.boundary, "boundary residual threshold");
    verify->add_option("problem", problem_path, "problem file")->required();

    auto* reproduce = app.add_subcommand("reproduce", "check, solve and verify a built-in example");
    add_common(reproduce);
    reproduce->add_option("example", example, "ex41, ex42 or ex43")
        ->required()
        ->check(CLI::IsMember({"ex41", "ex42", "ex43"}));

    auto* dump = app.add_subcommand("dump", "print the problem file in canonical form");
    add_common(dump);
    dump->add_option("problem", problem_path, "problem file")->required();

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*dump) {
            ProblemFile pf = load_problem_file(problem_path);
            detail::apply(pf, ov);
            std::ostringstream os;
            dump_problem_file(os, pf);
            if (out_path) {
                std::ofstream f(*out_path);
                if (!f) throw InputError("cannot write '" + *out_path + "'");
                f << os.str();
            } else {
                out << os.str();
            }
            return kExitOk;
        }

        if (*check) {
            ProblemFile pf = load_problem_file(problem_path);
            detail::apply(pf, ov);
            const TheoremReport tr = check_theorem(pf, targs);
            detail::emit(out, out_path, tr.to_report());
            return tr.verdict == Verdict::hypotheses_hold ? kExitOk : kExitFail;
        }

        if (*solve) {
            ProblemFile pf = load_problem_file(problem_path);
            detail::apply(pf, ov);
            KeyValueReport rep;
            std::string certification = "uncertified";
            if (!targs.theorem.empty()) {
                const TheoremReport tr = check_theorem(pf, targs);
                rep.merge("check", tr.to_report());
                certification = detail::certification_for(tr);
            }
            const Problem pb = pf.problem();
            std::optional<SolveReport> solved;
            try {
                solved = picard_solve(pb, pf.picard());
            } catch (const SolverError& e) {
                rep.add("error", e.what());
                rep.add("verdict", "not_converged");
                rep.write(out);
                return kExitFail;
            }
            SolveReport& sr = *solved;
            sr.certification = certification;
            rep.merge("solve", detail::solve_report(sr));
            if (out_path) {
                std::ofstream f(*out_path);
                if (!f) throw InputError("cannot write '" + *out_path + "'");
                write_csv(f, sr.solution);
                rep.add("solution_csv", *out_path);
            }
            rep.add("verdict", sr.converged ? "converged" : "not_converged");
            rep.write(out);
            return sr.converged ? kExitOk : kExitFail;
        }

        if (*verify) {
            ProblemFile pf = load_problem_file(problem_path);
            detail::apply(pf, ov);
            const Problem pb = pf.problem();
            const GridFunction u = load_csv(solution_path, pf.discretization.interpolation);
            const double rho = targs.rho.value_or(pf.rho);
            if (!(rho > 0.0 && rho < 1.0)) throw InputError("--rho must lie in (0, 1)");
            const auto v = verify_solution(pb, u, rho);
            KeyValueReport rep = detail::verify_report(v);
            const bool ok = detail::passes(v, th);
            rep.add("verdict", ok ? "verified" : "not_verified");
            detail::emit(out, out_path, rep);
            return ok ? kExitOk : kExitFail;
        }

        if (*reproduce) {
            const auto rp = detail::reproduction(example);
            ProblemFile pf = parse_problem_text(*fixtures::find(example), example);
            detail::apply(pf, ov);
            const Problem pb = pf.problem();
            KeyValueReport rep;
            rep.add("example", example);
            const TheoremReport tr = check_theorem(pf, rp.theorem);
            rep.merge("check", tr.to_report());
            SolveReport sr = picard_solve(pb, pf.picard());
            sr.certification = detail::certification_for(tr);
            rep.merge("solve", detail::solve_report(sr));
            const auto v = verify_solution(pb, sr.solution, pf.rho);
            rep.merge("verify", detail::verify_report(v));
            detail::add_references(rep, example, pf, tr, sr);
            const bool ok = tr.verdict == Verdict::hypotheses_hold && sr.converged;
            rep.add("verdict", ok ? "hypotheses_hold" : "hypotheses_fail");
            detail::emit(out, out_path, rep);
            return ok ? kExitOk : kExitFail;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitInput;
}

} // namespace fracbvp::cli
