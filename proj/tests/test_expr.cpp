#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "fracbvp/expr.hpp"
#include "support.hpp"

using namespace fracbvp;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST(Parse, ExampleExpressions) {
    EXPECT_NO_THROW(Expr::parse("0.5*t*ln(u+1)"));
    EXPECT_NO_THROW(Expr::parse("(348+sqrt(u)+t)/400"));
    EXPECT_NO_THROW(Expr::parse("exp(-t)*sin(u)^2"));
}

TEST(Parse, DanglingOperatorOffset) {
    try {
        Expr::parse("2*");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
    }
}

TEST(Parse, Errors) {
    EXPECT_THROW(Expr::parse(""), ParseError);
    EXPECT_THROW(Expr::parse("x + 1"), ParseError);
    EXPECT_THROW(Expr::parse("foo(t)"), ParseError);
    EXPECT_THROW(Expr::parse("sin(t, u)"), ParseError);
    EXPECT_THROW(Expr::parse("pow(t)"), ParseError);
    EXPECT_THROW(Expr::parse("sin"), ParseError);
    EXPECT_THROW(Expr::parse("(t + 1"), ParseError);
    EXPECT_THROW(Expr::parse("t u"), ParseError);
    EXPECT_THROW(Expr::parse("1.2.3"), ParseError);
    try {
        Expr::parse("t + bogus");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
}

TEST(Parse, DeepNestingRejectedNotCrashing) {
    std::string s(5000, '(');
    s += "1";
    s += std::string(5000, ')');
    EXPECT_THROW(Expr::parse(s), ParseError);
}

TEST(Eval, Examples) {
    EXPECT_DOUBLE_EQ(Expr::parse("pi").eval(0, 0), kPi);
    EXPECT_NEAR(Expr::parse("0.5*t*ln(u+1)").eval(1.0, std::exp(1.0) - 1.0), 0.5, 1e-15);
    EXPECT_NEAR(Expr::parse("exp(-t)*sin(u)^2").eval(0.0, kPi / 2), 1.0, 1e-15);
    EXPECT_NEAR(Expr::parse("(348+sqrt(u)+t)/400")(1.0, 1.0), 0.875, 1e-15);
}

TEST(Eval, Precedence) {
    EXPECT_DOUBLE_EQ(Expr::parse("-t^2").eval(3.0, 0), -9.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2^3^2").eval(0, 0), 512.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2*3+4").eval(0, 0), 10.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2*(3+4)").eval(0, 0), 14.0);
    EXPECT_DOUBLE_EQ(Expr::parse("8/4/2").eval(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(Expr::parse("1-2-3").eval(0, 0), -4.0);
    EXPECT_DOUBLE_EQ(Expr::parse("2^-1").eval(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(Expr::parse("min(t,u)+max(t,u)+abs(-2)").eval(1, 4), 7.0);
    EXPECT_DOUBLE_EQ(Expr::parse("pow(2, 10)").eval(0, 0), 1024.0);
    EXPECT_DOUBLE_EQ(Expr::parse("1e-2 * 2.5E2").eval(0, 0), 2.5);
    EXPECT_DOUBLE_EQ(Expr::parse("e").eval(0, 0), std::exp(1.0));
}

TEST(Eval, DomainErrorsNamedWithSubexpression) {
    EXPECT_THROW(Expr::parse("ln(u)").eval(0, 0), EvalError);
    EXPECT_THROW(Expr::parse("sqrt(u)").eval(0, -1), EvalError);
    EXPECT_THROW(Expr::parse("1/t").eval(0, 0), EvalError);
    EXPECT_THROW(Expr::parse("exp(u)").eval(0, 1000), EvalError);
    try {
        Expr::parse("t + ln(u - 1)").eval(0.5, 0.25);
        FAIL();
    } catch (const EvalError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("ln"), std::string::npos) << msg;
        EXPECT_NE(msg.find("0.25"), std::string::npos) << msg;
    }
}

TEST(Expr, Dependencies) {
    EXPECT_TRUE(Expr::parse("t*2").depends_on(Variable::t));
    EXPECT_FALSE(Expr::parse("t*2").depends_on(Variable::u));
    EXPECT_TRUE(Expr::parse("sin(u)").depends_on(Variable::u));
    EXPECT_FALSE(Expr::parse("pi + e").depends_on(Variable::t));
}

TEST(Expr, SourceKept) { EXPECT_EQ(Expr::parse(" t + 1 ").source(), " t + 1 "); }

namespace {

// Random well-formed expression text.
std::string random_expr(prop::Gen& g, int depth) {
    if (depth == 0 || g.integer(0, 3) == 0) {
        switch (g.integer(0, 4)) {
        case 0: return "t";
        case 1: return "u";
        case 2: return "pi";
        case 3: return std::to_string(g.uniform(0.0, 10.0));
        default: return std::to_string(g.integer(0, 9));
        }
    }
    const std::string a = random_expr(g, depth - 1);
    const std::string b = random_expr(g, depth - 1);
    switch (g.integer(0, 13)) {
    case 0: return a + "+" + b;
    case 1: return a + "-" + b;
    case 2: return a + "*" + b;
    case 3: return a + "/" + b;
    case 4: return "(" + a + ")^(" + b + ")";
    case 5: return "-" + a;
    case 6: return "sin(" + a + ")";
    case 7: return "cos(" + a + ")";
    case 8: return "exp(" + a + ")";
    case 9: return "ln(" + a + ")";
    case 10: return "sqrt(" + a + ")";
    case 11: return "abs(" + a + ")";
    case 12: return "min(" + a + "," + b + ")";
    default: return "max(" + a + ", " + b + ")";
    }
}

} // namespace

TEST(ExprProperty, PrintParseIdempotent) {
    prop::Gen g(53);
    for (int i = 0; i < 2000; ++i) {
        const Expr e = Expr::parse(random_expr(g, 5));
        const Expr again = Expr::parse(e.print());
        ASSERT_TRUE(again == e) << e.source() << " -> " << e.print();
        ASSERT_EQ(again.print(), e.print());
    }
}

TEST(ExprProperty, NeverSilentNaN) {
    prop::Gen g(59);
    for (int i = 0; i < 2000; ++i) {
        const Expr e = Expr::parse(random_expr(g, 5));
        const double t = g.uniform(-2.0, 2.0), u = g.uniform(-2.0, 2.0);
        try {
            const double v = e.eval(t, u);
            ASSERT_TRUE(std::isfinite(v)) << e.source();
        } catch (const EvalError&) {
        }
        // Deterministic.
        double a = 0, b = 1;
        try {
            a = e.eval(t, u);
            b = e.eval(t, u);
        } catch (const EvalError&) {
            a = b = 0;
        }
        ASSERT_EQ(a, b);
    }
}
