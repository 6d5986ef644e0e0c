#include <doctest.h>

#include "riclag/expr.hpp"
#include "test_support.hpp"

using namespace riclag;
using namespace riclag::testing;

namespace {

Expr w(int k = 0) { return Expr::sym("w", k); }
Expr y(int k = 0) { return Expr::sym("y", k); }

}  // namespace

TEST_CASE("normalize cancels and collects") {
    CHECK(is_zero(w() * w(1) - w(1) * w()));
    CHECK(equal(w() + w(), 2 * w()));
    CHECK(equal(differentiate(Expr::antideriv(Expr::sym("a1", 0))), Expr::sym("a1", 0)));
}

TEST_CASE("normalize is idempotent") {
    for (int i = 0; i < 60; ++i) {
        Expr e = random_expr(4);
        Expr n1 = normalize(e);
        Expr n2 = normalize(n1);
        CHECK(compare(n1, n2) == 0);
    }
}

TEST_CASE("normalize preserves numeric value") {
    OracleGrid grid{1.0 / 64, 65};
    for (int i = 0; i < 40; ++i) {
        Expr e = random_expr(3);
        Assignments fns = random_assignments();
        double a = oracle_eval(e, 48, grid, fns);
        double b = oracle_eval(normalize(e), 48, grid, fns);
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (!std::isfinite(a) || scale > 1e8) continue;  // huge powers lose digits
        CHECK(std::abs(a - b) / scale < 1e-10);
    }
}

TEST_CASE("differentiate: product, chain and power rules") {
    CHECK(equal(differentiate(y() * y(1)), y(1) * y(1) + y() * y(2)));
    Expr e2 = Expr::exp(2 * Expr::antideriv(w()));
    CHECK(equal(differentiate(e2), 2 * w() * e2));
    CHECK(equal(differentiate(Expr::pow(w(), 2)), 2 * w() * w(1)));
}

TEST_CASE("differentiate after Int is the identity") {
    for (int i = 0; i < 40; ++i) {
        Expr e = random_expr(3, false);
        CHECK(equal(differentiate(Expr::antideriv(e)), normalize(e)));
    }
}

TEST_CASE("Leibniz rule on random pairs") {
    for (int i = 0; i < 40; ++i) {
        Expr a = random_expr(3);
        Expr b = random_expr(3);
        CHECK(equal(differentiate(a * b), differentiate(a) * b + a * differentiate(b)));
    }
}

TEST_CASE("partial derivatives treat orders independently") {
    CHECK(equal(partial_derivative(y() * y(2), {"y", 2}), y()));
    CHECK(equal(partial_derivative(y() * y(2) + Expr::pow(y(), 2), {"y", 0}),
                y(2) + 2 * y()));
    CHECK(equal(partial_derivative(w(1) + Expr::pow(w(), 2), {"w", 1}),
                Expr::integer(1)));
    CHECK_THROWS_AS(partial_derivative(Expr::antideriv(w()), FunctionSymbol{"w", 0}),
                    std::invalid_argument);
}

TEST_CASE("total derivative decomposes into partials") {
    // d/dx e = sum_s (de/ds) s-bumped for polynomials in w, w' with no explicit x
    for (int i = 0; i < 30; ++i) {
        Expr e = Expr::integer(0);
        for (int t = 0; t < 4; ++t)
            e = e + Expr::integer(rand_int(-3, 3)) *
                        Expr::pow(w(), rand_int(0, 3)) * Expr::pow(w(1), rand_int(0, 2));
        Expr total = differentiate(e);
        Expr recon = partial_derivative(e, {"w", 0}) * w(1) +
                     partial_derivative(e, {"w", 1}) * w(2);
        CHECK(equal(total, recon));
    }
}

TEST_CASE("substitute replaces exactly one derivative order") {
    CHECK(is_zero(substitute(y(1) - w() * y(), {"y", 1}, w() * y())));
    CHECK(equal(substitute(Expr::pow(w(), 2), {"w", 0}, Expr::sym("u", 0)),
                Expr::pow(Expr::sym("u", 0), 2)));
    Expr closed = Expr::exp(Expr::antideriv(w()));
    CHECK(equal(substitute(y() * y(2), {"y", 0}, closed), closed * y(2)));
}

TEST_CASE("rendering") {
    Expr e = w(1) + Expr::pow(w(), 2);
    CHECK(render(e, RenderFormat::Latex) == "\\omega' + \\omega^{2}");
    CHECK(render(2 * w(), RenderFormat::Plain) == "2*w");
    CHECK(render(e, RenderFormat::Sexpr) == "(+ (dn w 1) (^ (dn w 0) 2))");
}

TEST_CASE("sexpr round-trips through parse") {
    CHECK(equal(parse_sexpr("(+ (dn w 1) (^ (dn w 0) 2))"), w(1) + Expr::pow(w(), 2)));
    CHECK(equal(parse_sexpr("(int (dn a1 0))"), Expr::antideriv(Expr::sym("a1", 0))));
    CHECK(equal(parse_sexpr("-3/4"), Expr::number(Rational(-3, 4))));
    for (int i = 0; i < 40; ++i) {
        Expr e = random_expr(4);
        // the random pool only uses grammar names; u-style symbols are not generated
        Expr n = normalize(e);
        CHECK(compare(parse_sexpr(render(n, RenderFormat::Sexpr)), n) == 0);
    }
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_sexpr("("), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(dn v 0)"), ParseError);   // undeclared name
    CHECK_THROWS_AS(parse_sexpr("(^ x y)"), ParseError);    // non-integer exponent
    CHECK_THROWS_AS(parse_sexpr("(+ 1 2) x"), ParseError);  // trailing input
    try {
        parse_sexpr("(+ 1 #)");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}
