#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fracbvp/error.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp {

struct SolverSettings {
    double tol = 1e-10;
    std::size_t max_iter = 500;
    double damping = 1.0;

    bool operator==(const SolverSettings&) const = default;
};

/// Problem text document:
///
///   [problem]
///   alpha = 5/2
///   eta = 0.5
///   p = 3/2
///   a = "exp(t)"
///   f = "0.5*t*ln(u+1)"
///   [discretization]       (optional; panels, points_per_panel, grading, interpolation)
///   [solver]               (optional; tol, max_iter, damping)
///   [cone]                 (optional; rho)
///
/// Numeric values may be constant expressions. '#' and ';' start comments.
struct ProblemFile {
    double alpha = 0.0;
    double eta = 0.0;
    double p = 0.0;
    Expr a = Expr::parse("0");
    Expr f = Expr::parse("0");
    Discretization discretization{};
    SolverSettings solver{};
    double rho = 0.5;

    Problem problem() const { return Problem(alpha, eta, p, a, f, discretization); }

    PicardOptions picard() const {
        PicardOptions o;
        o.tol = solver.tol;
        o.max_iter = solver.max_iter;
        o.damping = solver.damping;
        return o;
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

/// Strips a comment that is not inside double quotes.
inline std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (!quoted && (s[i] == '#' || s[i] == ';')) return s.substr(0, i);
    }
    return s;
}

class FileParser {
public:
    explicit FileParser(std::string origin) : origin_(std::move(origin)) {}

    [[noreturn]] void fail(std::size_t line, const std::string& msg) const {
        throw InputError(origin_ + ":" + std::to_string(line) + ": " + msg);
    }

    ProblemFile parse(std::istream& in) {
        std::string raw;
        std::size_t line = 0;
        std::string section;
        while (std::getline(in, raw)) {
            ++line;
            const std::string s = trim(strip_comment(raw));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(line, "unterminated section header");
                section = trim(std::string_view(s).substr(1, s.size() - 2));
                if (section != "problem" && section != "discretization" && section != "solver" && section != "cone")
                    fail(line, "unknown section [" + section + "]");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected key = value");
            if (section.empty()) fail(line, "key outside of any section");
            const std::string key = trim(std::string_view(s).substr(0, eq));
            std::string value = trim(std::string_view(s).substr(eq + 1));
            if (key.empty()) fail(line, "empty key");
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
                value = value.substr(1, value.size() - 2);
            else if (value.find('"') != std::string::npos)
                fail(line, "unbalanced quote");
            const std::string full = section + "." + key;
            if (seen_.count(full)) fail(line, "duplicate key " + full);
            seen_[full] = {line, value};
        }
        return build();
    }

private:
    struct Entry {
        std::size_t line;
        std::string value;
    };

    const Entry* get(const std::string& key) const {
        const auto it = seen_.find(key);
        return it == seen_.end() ? nullptr : &it->second;
    }

    const Entry& require(const std::string& key) const {
        if (const Entry* e = get(key)) return *e;
        fail(last_line_, "missing required key " + key);
    }

    double number(const Entry& e, const std::string& key) const {
        try {
            const Expr x = Expr::parse(e.value);
            if (x.depends_on(Variable::t) || x.depends_on(Variable::u))
                fail(e.line, key + " must be a constant, got '" + e.value + "'");
            return x.eval(0.0, 0.0);
        } catch (const ParseError& err) {
            fail(e.line, key + ": " + err.what());
        } catch (const EvalError& err) {
            fail(e.line, key + ": " + err.what());
        }
    }

    std::size_t count(const Entry& e, const std::string& key) const {
        const double v = number(e, key);
        if (!(v >= 1.0) || v != std::floor(v) || v > 1e9) fail(e.line, key + " must be a positive integer");
        return static_cast<std::size_t>(v);
    }

    Expr expression(const Entry& e, const std::string& key) const {
        try {
            return Expr::parse(e.value);
        } catch (const ParseError& err) {
            fail(e.line, key + ": " + err.what());
        }
    }

    ProblemFile build() {
        for (const auto& [k, e] : seen_) last_line_ = std::max(last_line_, e.line);
        static const char* known[] = {"problem.alpha", "problem.eta", "problem.p", "problem.a", "problem.f",
                                      "discretization.panels", "discretization.points_per_panel",
                                      "discretization.grading", "discretization.interpolation",
                                      "solver.tol", "solver.max_iter", "solver.damping", "cone.rho"};
        for (const auto& [k, e] : seen_) {
            bool ok = false;
            for (const char* n : known) ok = ok || k == n;
            if (!ok) fail(e.line, "unknown key " + k);
        }

        ProblemFile pf;
        const Entry& ea = require("problem.alpha");
        pf.alpha = number(ea, "alpha");
        if (!(pf.alpha > 2.0 && pf.alpha <= 3.0)) fail(ea.line, "alpha must lie in (2, 3]");
        const Entry& ee = require("problem.eta");
        pf.eta = number(ee, "eta");
        if (!(pf.eta > 0.0 && pf.eta < 1.0)) fail(ee.line, "eta must lie in (0, 1)");
        const Entry& ep = require("problem.p");
        pf.p = number(ep, "p");
        if (!(pf.p > 1.0) || !std::isfinite(pf.p)) fail(ep.line, "p must be > 1");
        const Entry& eca = require("problem.a");
        pf.a = expression(eca, "a");
        if (pf.a.depends_on(Variable::u)) fail(eca.line, "a may depend on t only");
        const Entry& ef = require("problem.f");
        pf.f = expression(ef, "f");

        if (const Entry* e = get("discretization.panels")) {
            pf.discretization.panels = count(*e, "panels");
            if (pf.discretization.panels < 4) fail(e->line, "panels must be at least 4");
        }
        if (const Entry* e = get("discretization.points_per_panel"))
            pf.discretization.points_per_panel = count(*e, "points_per_panel");
        if (const Entry* e = get("discretization.grading")) {
            pf.discretization.grading = number(*e, "grading");
            if (!(pf.discretization.grading >= 1.0)) fail(e->line, "grading must be >= 1");
        }
        if (const Entry* e = get("discretization.interpolation")) {
            if (e->value == "cubic") pf.discretization.interpolation = Interpolation::cubic;
            else if (e->value == "linear") pf.discretization.interpolation = Interpolation::linear;
            else fail(e->line, "interpolation must be 'linear' or 'cubic'");
        }
        if (const Entry* e = get("solver.tol")) {
            pf.solver.tol = number(*e, "tol");
            if (!(pf.solver.tol > 0.0)) fail(e->line, "tol must be positive");
        }
        if (const Entry* e = get("solver.max_iter")) pf.solver.max_iter = count(*e, "max_iter");
        if (const Entry* e = get("solver.damping")) {
            pf.solver.damping = number(*e, "damping");
            if (!(pf.solver.damping > 0.0 && pf.solver.damping <= 1.0)) fail(e->line, "damping must lie in (0, 1]");
        }
        if (const Entry* e = get("cone.rho")) {
            pf.rho = number(*e, "rho");
            if (!(pf.rho > 0.0 && pf.rho < 1.0)) fail(e->line, "rho must lie in (0, 1)");
        }

        // Sign conditions on a and f; report them against the offending key.
        try {
            (void)pf.problem();
        } catch (const Error& err) {
            const std::string msg = err.what();
            const std::size_t line = msg.find("a(t)") != std::string::npos ? eca.line : ef.line;
            fail(line, msg);
        }
        return pf;
    }

    std::string origin_;
    std::map<std::string, Entry> seen_;
    std::size_t last_line_ = 0;
};

} // namespace detail

inline ProblemFile parse_problem_file(std::istream& in, const std::string& origin = "<input>") {
    return detail::FileParser(origin).parse(in);
}

inline ProblemFile parse_problem_text(std::string_view text, const std::string& origin = "<input>") {
    std::istringstream in{std::string(text)};
    return parse_problem_file(in, origin);
}

inline ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open problem file '" + path + "'");
    return parse_problem_file(in, path);
}

/// Canonical text form; parse_problem_text(dump) reproduces the same file.
inline void dump_problem_file(std::ostream& os, const ProblemFile& pf) {
    using detail::shortest;
    os << "[problem]\n"
       << "alpha = " << shortest(pf.alpha) << '\n'
       << "eta = " << shortest(pf.eta) << '\n'
       << "p = " << shortest(pf.p) << '\n'
       << "a = \"" << pf.a.print() << "\"\n"
       << "f = \"" << pf.f.print() << "\"\n\n"
       << "[discretization]\n"
       << "panels = " << pf.discretization.panels << '\n'
       << "points_per_panel = " << pf.discretization.points_per_panel << '\n'
       << "grading = " << shortest(pf.discretization.grading) << '\n'
       << "interpolation = " << (pf.discretization.interpolation == Interpolation::cubic ? "cubic" : "linear")
       << "\n\n"
       << "[solver]\n"
       << "tol = " << shortest(pf.solver.tol) << '\n'
       << "max_iter = " << pf.solver.max_iter << '\n'
       << "damping = " << shortest(pf.solver.damping) << "\n\n"
       << "[cone]\n"
       << "rho = " << shortest(pf.rho) << '\n';
}

// ---------------------------------------------------------------------------
// CSV of a grid function: header `t,u`, 17 significant digits.

inline void write_csv(std::ostream& os, const GridFunction& u) {
    os << "t,u\n";
    char buf[64];
    const auto x = u.partition().nodes();
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x[i], u[i]);
        os << buf;
    }
}

inline GridFunction read_csv(std::istream& in, Interpolation interp = Interpolation::cubic,
                             const std::string& origin = "<csv>") {
    auto fail = [&](std::size_t line, const std::string& msg) -> void {
        throw InputError(origin + ":" + std::to_string(line) + ": " + msg);
    };
    auto parse = [&](std::string_view s, std::size_t line) {
        const std::string t = detail::trim(s);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
            fail(line, "malformed number '" + t + "'");
        return v;
    };
    std::string raw;
    std::size_t line = 0;
    if (!std::getline(in, raw)) throw InputError(origin + ": empty CSV");
    ++line;
    if (detail::trim(raw) != "t,u") fail(line, "expected header 't,u'");
    std::vector<double> ts, us;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::trim(raw);
        if (s.empty()) continue;
        const auto comma = s.find(',');
        if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
            fail(line, "expected two comma-separated values");
        ts.push_back(parse(std::string_view(s).substr(0, comma), line));
        us.push_back(parse(std::string_view(s).substr(comma + 1), line));
    }
    try {
        return GridFunction(std::make_shared<const Partition>(std::move(ts)), std::move(us), interp);
    } catch (const DomainError& err) {
        throw InputError(origin + ": " + err.what());
    }
}

inline GridFunction load_csv(const std::string& path, Interpolation interp = Interpolation::cubic) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open CSV '" + path + "'");
    return read_csv(in, interp, path);
}

} // namespace fracbvp
