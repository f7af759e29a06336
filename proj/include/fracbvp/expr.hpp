#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "fracbvp/error.hpp"

namespace fracbvp {

enum class Variable { t, u };

/// Parsed real-valued expression in the variables t and u.
///
/// Grammar (whitespace ignored):
///   expr   := term (('+' | '-') term)*
///   term   := factor (('*' | '/') factor)*
///   factor := '-' factor | base ('^' factor)?
///   base   := number | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
///
/// '^' is right-associative and unary minus applies to the whole power, so
/// -x^2 is -(x^2). Identifiers: t, u, pi, e and the functions sin, cos, exp,
/// ln, sqrt, abs (one argument) and pow, min, max (two arguments).
class Expr {
public:
    enum class Kind { number, var_t, var_u, pi, e, neg, add, sub, mul, div, pow, call };
    enum class Func { sin, cos, exp, ln, sqrt, abs, pow, min, max };

    struct Node {
        Kind kind;
        double value = 0.0;
        Func func = Func::sin;
        std::vector<std::shared_ptr<const Node>> args;
    };

    static Expr parse(std::string_view text);

    /// Evaluates at (t, u). Throws EvalError instead of returning NaN or inf.
    double eval(double t, double u) const { return eval_node(*root_, t, u); }
    double operator()(double t, double u) const { return eval(t, u); }

    /// Canonical, fully parenthesised text; parse(print()) == *this.
    std::string print() const { return print_node(*root_); }

    /// The text the expression was parsed from.
    const std::string& source() const noexcept { return source_; }

    bool depends_on(Variable v) const { return depends(*root_, v == Variable::t ? Kind::var_t : Kind::var_u); }

    /// Structural equality of the trees; literals compare exactly.
    friend bool operator==(const Expr& a, const Expr& b) { return same(*a.root_, *b.root_); }

private:
    Expr(std::shared_ptr<const Node> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    class Parser;

    static double eval_node(const Node& n, double t, double u);
    static std::string print_node(const Node& n);
    [[noreturn]] static void domain_failure(const std::string& what, const Node& n, double t, double u);

    static bool depends(const Node& n, Kind var) {
        if (n.kind == var) return true;
        for (const auto& a : n.args)
            if (depends(*a, var)) return true;
        return false;
    }

    static bool same(const Node& a, const Node& b) {
        if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
        if (a.kind == Kind::number && a.value != b.value) return false;
        if (a.kind == Kind::call && a.func != b.func) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!same(*a.args[i], *b.args[i])) return false;
        return true;
    }

    std::shared_ptr<const Node> root_;
    std::string source_;
};

namespace detail {

struct FuncInfo {
    std::string_view name;
    Expr::Func func;
    std::size_t arity;
};

inline constexpr std::array<FuncInfo, 9> kFunctions{{
    {"sin", Expr::Func::sin, 1},
    {"cos", Expr::Func::cos, 1},
    {"exp", Expr::Func::exp, 1},
    {"ln", Expr::Func::ln, 1},
    {"sqrt", Expr::Func::sqrt, 1},
    {"abs", Expr::Func::abs, 1},
    {"pow", Expr::Func::pow, 2},
    {"min", Expr::Func::min, 2},
    {"max", Expr::Func::max, 2},
}};

inline const FuncInfo* find_function(std::string_view name) {
    for (const auto& f : kFunctions)
        if (f.name == name) return &f;
    return nullptr;
}

inline std::string_view function_name(Expr::Func func) {
    for (const auto& f : kFunctions)
        if (f.func == func) return f.name;
    return "?";
}

/// Shortest decimal text that parses back to exactly `v`.
inline std::string shortest(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

} // namespace detail

class Expr::Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::shared_ptr<const Node> parse_all() {
        auto root = parse_expr();
        skip_ws();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return root;
    }

private:
    static constexpr int kMaxDepth = 200;

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > kMaxDepth) throw ParseError("expression nested too deeply", p_.pos_);
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    static std::shared_ptr<const Node> make(Kind kind, std::vector<std::shared_ptr<const Node>> args = {}) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->args = std::move(args);
        return n;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void unexpected() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    }

    std::shared_ptr<const Node> parse_expr() {
        DepthGuard guard(*this);
        auto lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make(Kind::add, {lhs, parse_term()});
            else if (accept('-'))
                lhs = make(Kind::sub, {lhs, parse_term()});
            else
                return lhs;
        }
    }

    std::shared_ptr<const Node> parse_term() {
        auto lhs = parse_factor();
        for (;;) {
            if (accept('*'))
                lhs = make(Kind::mul, {lhs, parse_factor()});
            else if (accept('/'))
                lhs = make(Kind::div, {lhs, parse_factor()});
            else
                return lhs;
        }
    }

    std::shared_ptr<const Node> parse_factor() {
        DepthGuard guard(*this);
        if (accept('-')) return make(Kind::neg, {parse_factor()});
        auto base = parse_base();
        if (accept('^')) return make(Kind::pow, {base, parse_factor()});
        return base;
    }

    std::shared_ptr<const Node> parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) unexpected();
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            if (!accept(')')) unexpected();
            return inner;
        }
        if ((c >= '0' && c <= '9') || c == '.') return parse_number();
        if (is_ident_start(c)) return parse_identifier();
        unexpected();
    }

    static bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    std::shared_ptr<const Node> parse_number() {
        const std::size_t start = pos_;
        std::size_t digits = 0;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++digits;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++digits;
        }
        if (digits == 0) throw ParseError("malformed number", start);
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && is_digit(text_[p])) {
                while (p < text_.size() && is_digit(text_[p])) ++p;
                pos_ = p;
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v))
            throw ParseError("malformed number", start);
        auto n = std::make_shared<Node>();
        n->kind = Kind::number;
        n->value = v;
        return n;
    }

    std::shared_ptr<const Node> parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (is_ident_start(text_[pos_]) || is_digit(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        const std::size_t after = pos_;
        if (accept('(')) {
            const detail::FuncInfo* info = detail::find_function(name);
            if (!info) throw ParseError("unknown function '" + std::string(name) + "'", start);
            std::vector<std::shared_ptr<const Node>> args;
            args.push_back(parse_expr());
            while (accept(',')) args.push_back(parse_expr());
            if (!accept(')')) unexpected();
            if (args.size() != info->arity)
                throw ParseError("function '" + std::string(name) + "' expects " +
                                     std::to_string(info->arity) + " argument(s), got " +
                                     std::to_string(args.size()),
                                 start);
            auto n = std::make_shared<Node>();
            n->kind = Kind::call;
            n->func = info->func;
            n->args = std::move(args);
            return n;
        }
        pos_ = after;
        if (name == "t") return make(Kind::var_t);
        if (name == "u") return make(Kind::var_u);
        if (name == "pi") return make(Kind::pi);
        if (name == "e") return make(Kind::e);
        if (detail::find_function(name))
            throw ParseError("function '" + std::string(name) + "' requires an argument list", start);
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

inline Expr Expr::parse(std::string_view text) {
    Parser p(text);
    return Expr(p.parse_all(), std::string(text));
}

inline void Expr::domain_failure(const std::string& what, const Node& n, double t, double u) {
    throw EvalError(what + " in " + print_node(n) + " at t = " + detail::shortest(t) +
                    ", u = " + detail::shortest(u));
}

inline double Expr::eval_node(const Node& n, double t, double u) {
    double r = 0.0;
    switch (n.kind) {
    case Kind::number: return n.value;
    case Kind::var_t: return t;
    case Kind::var_u: return u;
    case Kind::pi: return std::numbers::pi;
    case Kind::e: return std::numbers::e;
    case Kind::neg: return -eval_node(*n.args[0], t, u);
    case Kind::add: r = eval_node(*n.args[0], t, u) + eval_node(*n.args[1], t, u); break;
    case Kind::sub: r = eval_node(*n.args[0], t, u) - eval_node(*n.args[1], t, u); break;
    case Kind::mul: r = eval_node(*n.args[0], t, u) * eval_node(*n.args[1], t, u); break;
    case Kind::div: {
        const double num = eval_node(*n.args[0], t, u);
        const double den = eval_node(*n.args[1], t, u);
        if (den == 0.0) domain_failure("division by zero", n, t, u);
        r = num / den;
        break;
    }
    case Kind::pow: r = std::pow(eval_node(*n.args[0], t, u), eval_node(*n.args[1], t, u)); break;
    case Kind::call: {
        const double x = eval_node(*n.args[0], t, u);
        switch (n.func) {
        case Func::sin: r = std::sin(x); break;
        case Func::cos: r = std::cos(x); break;
        case Func::exp: r = std::exp(x); break;
        case Func::ln:
            if (!(x > 0.0)) domain_failure("logarithm of nonpositive argument", n, t, u);
            r = std::log(x);
            break;
        case Func::sqrt:
            if (x < 0.0) domain_failure("square root of negative argument", n, t, u);
            r = std::sqrt(x);
            break;
        case Func::abs: r = std::fabs(x); break;
        case Func::pow: r = std::pow(x, eval_node(*n.args[1], t, u)); break;
        case Func::min: r = std::fmin(x, eval_node(*n.args[1], t, u)); break;
        case Func::max: r = std::fmax(x, eval_node(*n.args[1], t, u)); break;
        }
        break;
    }
    }
    if (!std::isfinite(r)) domain_failure("non-finite value", n, t, u);
    return r;
}

inline std::string Expr::print_node(const Node& n) {
    auto bin = [&](const char* op) {
        return "(" + print_node(*n.args[0]) + " " + op + " " + print_node(*n.args[1]) + ")";
    };
    switch (n.kind) {
    case Kind::number: return detail::shortest(n.value);
    case Kind::var_t: return "t";
    case Kind::var_u: return "u";
    case Kind::pi: return "pi";
    case Kind::e: return "e";
    case Kind::neg: return "(-" + print_node(*n.args[0]) + ")";
    case Kind::add: return bin("+");
    case Kind::sub: return bin("-");
    case Kind::mul: return bin("*");
    case Kind::div: return bin("/");
    case Kind::pow: return bin("^");
    case Kind::call: {
        std::string s(detail::function_name(n.func));
        s += "(";
        for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) s += ", ";
            s += print_node(*n.args[i]);
        }
        return s + ")";
    }
    }
    return {};
}

} // namespace fracbvp
