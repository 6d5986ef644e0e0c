#include <doctest.h>

#include "riclag/lagrangian.hpp"
#include "test_support.hpp"

using namespace riclag;
using namespace riclag::testing;

namespace {

Expr w(int k = 0) { return Expr::sym("w", k); }
Expr y(int k = 0) { return Expr::sym("y", k); }
Expr a(int j) { return Expr::sym("a" + std::to_string(j), 0); }
Expr r(int i, int k = 0) { return Expr::sym("r" + std::to_string(i), k); }

Expr ca() { return Expr::constant("a"); }

// a^2 exp(Int(a1) + 2 Int(w)) (w' + w^2 + a1 w + a0), written longhand
Expr first_order_lagrangian_by_hand() {
    Expr mult = Expr::pow(ca(), 2) *
                Expr::exp(Expr::antideriv(a(1)) + 2 * Expr::antideriv(w()));
    return mult * (w(1) + Expr::pow(w(), 2) + a(1) * w() + a(0));
}

Expr s1_by_hand() {
    return w(3) + 4 * w() * w(2) + a(3) * w(2) + 3 * Expr::pow(w(1), 2) +
           6 * Expr::pow(w(), 2) * w(1) + 3 * a(3) * w() * w(1);
}

Expr s2_by_hand() {
    return a(2) * w(1) + Expr::pow(w(), 4) + a(3) * Expr::pow(w(), 3) +
           a(2) * Expr::pow(w(), 2) + a(1) * w() + a(0);
}

Expr third_order_lagrangian_by_hand() {
    return Expr::pow(ca(), 2) * Expr::exp(2 * Expr::antideriv(w())) *
           (s1_by_hand() + s2_by_hand());
}

LinearOperator oscillator() {
    return make_operator({Expr::integer(1), Expr::integer(0), Expr::integer(1)});
}

LinearOperator fourth_order_unit() {
    return make_operator({Expr::integer(1), Expr::integer(0), Expr::integer(0),
                          Expr::integer(0), Expr::integer(1)});
}

LinearOperator random_self_adjoint(int n) {
    auto coeff = [] {
        Expr e = Expr::integer(rand_int(1, 3));
        if (rand_int(0, 1)) e = e + Expr::integer(rand_int(1, 2)) * Expr::x();
        if (rand_int(0, 1)) e = e * a(rand_int(0, 1));
        return e;
    };
    std::vector<Expr> even;
    even.push_back(Expr::integer(1) + (rand_int(0, 1) ? Expr::x() : Expr::integer(0)));
    for (int t = 1; t <= n; ++t) even.push_back(coeff());
    auto odds = odd_coefficients_from_adjoint(n, even);
    std::vector<Expr> coeffs(2 * n + 1, Expr::integer(0));
    for (int t = 0; t <= n; ++t) coeffs[2 * t] = even[t];
    for (int t = 0; t < n; ++t) coeffs[2 * t + 1] = odds[t];
    return make_operator(coeffs);
}

}  // namespace

TEST_CASE("ansatz Lagrangians for the validation operators") {
    auto L2 = ansatz_lagrangian(oscillator(), "y");
    CHECK(equal(L2.expr, y() * (y(2) + y())));
    CHECK(L2.order == 2);

    auto L4 = ansatz_lagrangian(fourth_order_unit(), "y");
    CHECK(equal(L4.expr, y() * (y(4) + y())));

    Expr mu = second_order_multiplier(a(1));
    auto scaled = make_operator({mu, normalize(mu * a(1)), normalize(mu * a(0))});
    auto Lscaled = ansatz_lagrangian(scaled, "y");
    CHECK(equal(Lscaled.expr, y() * mu * (y(2) + a(1) * y(1) + a(0) * y())));

    auto generic = make_operator({Expr::integer(1), a(1), a(0)});
    CHECK_THROWS_AS(ansatz_lagrangian(generic, "y"), NotSelfAdjointError);
    CHECK_NOTHROW(ansatz_lagrangian(generic, "y", /*waive=*/true));
}

TEST_CASE("Euler-Lagrange expansion") {
    CHECK(equal(euler_lagrange(make_lagrangian(y() * (y(2) + y()), "y")),
                2 * (y(2) + y())));
    CHECK(equal(euler_lagrange(make_lagrangian(y() * (y(4) + y()), "y")),
                2 * (y(4) + y())));
    CHECK(equal(euler_lagrange(make_lagrangian(
                    Expr::pow(y(), 2) - Expr::pow(y(1), 2), "y")),
                2 * y() + 2 * y(2)));
}

TEST_CASE("gauge subtraction") {
    auto L2 = make_lagrangian(y() * (y(2) + y()), "y");
    auto red2 = gauge_subtract(L2, y() * y(1));
    CHECK(equal(red2.expr, Expr::pow(y(), 2) - Expr::pow(y(1), 2)));
    CHECK(red2.order == 1);

    auto L4 = make_lagrangian(y() * (y(4) + y()), "y");
    auto red4 = gauge_subtract(L4, y() * y(3));
    CHECK(equal(red4.expr, Expr::pow(y(), 2) - y(1) * y(3)));
    CHECK(red4.order == 3);

    CHECK(equal(gauge_subtract(L2, Expr::integer(0)).expr, L2.expr));
}

TEST_CASE("gauge terms never change the dynamics") {
    for (int i = 0; i < 20; ++i) {
        Expr g = Expr::integer(0);
        for (int t = 0; t < 3; ++t)
            g = g + Expr::integer(rand_int(-2, 2)) * Expr::pow(y(rand_int(0, 3)), rand_int(1, 2));
        CHECK(is_zero(variational_derivative(differentiate(g), "y")));

        auto L = make_lagrangian(Expr::pow(y(), 2) - Expr::pow(y(1), 2), "y");
        CHECK(equal(euler_lagrange(gauge_subtract(L, g)), euler_lagrange(L)));
    }
}

TEST_CASE("first-order chain Lagrangian") {
    auto L = riccati_lagrangian(symbolic_alphas(1), ca());
    CHECK(equal(L.expr, first_order_lagrangian_by_hand()));
    CHECK(L.var == "w");
    CHECK(L.order == 1);

    auto L00 = riccati_lagrangian({Expr::integer(0), Expr::integer(0)}, Expr::integer(1));
    CHECK(equal(L00.expr,
                Expr::exp(2 * Expr::antideriv(w())) * (w(1) + Expr::pow(w(), 2))));
}

TEST_CASE("third-order chain Lagrangian") {
    auto L = riccati3_lagrangian(symbolic_alphas(3), ca());
    CHECK(equal(L.expr, third_order_lagrangian_by_hand()));

    std::vector<Expr> zeros(4, Expr::integer(0));
    auto L0 = riccati3_lagrangian(zeros, Expr::integer(1));
    CHECK(equal(L0.expr,
                Expr::exp(2 * Expr::antideriv(w())) *
                    (w(3) + 4 * w() * w(2) + 3 * Expr::pow(w(1), 2) +
                     6 * Expr::pow(w(), 2) * w(1) + Expr::pow(w(), 4))));
}

TEST_CASE("general odd-order Lagrangian") {
    // at n=1 the general form misses the exp(Int(a1)) multiplier of the
    // dedicated first-order construction
    auto g1 = general_odd_lagrangian(1, symbolic_alphas(1), ca());
    Expr expected1 = Expr::pow(ca(), 2) * Expr::exp(2 * Expr::antideriv(w())) *
                     (w(1) + Expr::pow(w(), 2) + a(1) * w() + a(0));
    CHECK(equal(g1.expr, expected1));

    auto g2 = general_odd_lagrangian(2, symbolic_alphas(3), ca());
    CHECK(equal(g2.expr, third_order_lagrangian_by_hand()));

    std::vector<Expr> zeros(4, Expr::integer(0));
    CHECK(equal(general_odd_lagrangian(2, zeros, Expr::integer(1)).expr,
                riccati3_lagrangian(zeros, Expr::integer(1)).expr));
}

TEST_CASE("EL verification of the first-order chain Lagrangian") {
    auto L = riccati_lagrangian(symbolic_alphas(1), ca());
    auto eq = build_chain_equation(1, symbolic_alphas(1));
    auto v = verify_eom(L, eq.lhs);
    REQUIRE(v.ok);
    Expr expected_factor =
        normalize(2 * Expr::pow(ca(), 2) *
                  Expr::exp(Expr::antideriv(a(1)) + 2 * Expr::sym("W", 0)));
    CHECK(equal(v.factor, expected_factor));
    CHECK(is_zero(v.residual));
}

TEST_CASE("EL verification of validation Lagrangians in y") {
    auto Losc = ansatz_lagrangian(oscillator(), "y");
    auto v = verify_eom(Losc, oscillator().apply("y"));
    REQUIRE(v.ok);
    CHECK(equal(v.factor, Expr::integer(2)));

    auto Lfourth = ansatz_lagrangian(fourth_order_unit(), "y");
    auto v4 = verify_eom(Lfourth, fourth_order_unit().apply("y"));
    REQUIRE(v4.ok);
    CHECK(equal(v4.factor, Expr::integer(2)));
}

TEST_CASE("third-order chain verification needs self-adjoint coefficients") {
    // with all alphas zero the linearized operator is self-adjoint: factor 2 a^2 e^{2W}
    std::vector<Expr> zeros(4, Expr::integer(0));
    auto L0 = riccati3_lagrangian(zeros, ca());
    auto eq0 = build_chain_equation(3, zeros);
    auto v0 = verify_eom(L0, eq0.lhs);
    REQUIRE(v0.ok);
    CHECK(equal(v0.factor, normalize(2 * Expr::pow(ca(), 2) *
                                     Expr::exp(2 * Expr::sym("W", 0)))));

    // fully symbolic alphas: not self-adjoint, so no factor; residual is reported
    auto L = riccati3_lagrangian(symbolic_alphas(3), ca());
    auto eq = build_chain_equation(3, symbolic_alphas(3));
    auto v = verify_eom(L, eq.lhs);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(is_zero(v.residual));
}

TEST_CASE("factor-2 theorem for self-adjoint operators") {
    for (int trial = 0; trial < 10; ++trial) {
        for (int n = 1; n <= 2; ++n) {
            auto Ms = random_self_adjoint(n);
            auto L = ansatz_lagrangian(Ms, "y");
            CHECK(equal(euler_lagrange(L), 2 * Ms.apply("y")));
        }
    }
}

TEST_CASE("non-proportional pairs are rejected") {
    auto L = make_lagrangian(Expr::pow(y(), 2) - Expr::pow(y(1), 2), "y");
    auto v = verify_eom(L, normalize(y(2) + y() * y(1)));
    CHECK_FALSE(v.ok);
}
