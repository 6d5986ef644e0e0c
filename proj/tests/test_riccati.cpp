#include <doctest.h>

#include "riclag/riccati.hpp"
#include "test_support.hpp"

using namespace riclag;

namespace {

Expr w(int k = 0) { return Expr::sym("w", k); }
Expr a(int j) { return Expr::sym("a" + std::to_string(j), 0); }

// Chain equation of order 3 written out longhand, used as a golden reference.
Expr chain3_by_hand() {
    return w(3) + (a(3) + 4 * w()) * w(2) + 3 * Expr::pow(w(1), 2) +
           (6 * Expr::pow(w(), 2) + 3 * a(3) * w() + a(2)) * w(1) +
           Expr::pow(w(), 4) + a(3) * Expr::pow(w(), 3) + a(2) * Expr::pow(w(), 2) +
           a(1) * w() + a(0);
}

}  // namespace

TEST_CASE("theta operator") {
    CHECK(equal(theta_apply(w()), w(1) + Expr::pow(w(), 2)));
    CHECK(equal(theta_apply(theta_apply(w())),
                w(2) + 3 * w() * w(1) + Expr::pow(w(), 3)));
    CHECK(is_zero(theta_apply(Expr::integer(0))));
}

TEST_CASE("chain equations") {
    auto eq1 = build_chain_equation(1, symbolic_alphas(1));
    CHECK(equal(eq1.lhs, w(1) + Expr::pow(w(), 2) + a(1) * w() + a(0)));

    auto eq3 = build_chain_equation(3, symbolic_alphas(3));
    CHECK(equal(eq3.lhs, chain3_by_hand()));

    auto eq2 = build_chain_equation(2, {Expr::integer(0), Expr::integer(0),
                                        Expr::integer(0)});
    CHECK(equal(eq2.lhs, theta_apply(theta_apply(w()))));

    CHECK_THROWS_AS(build_chain_equation(2, symbolic_alphas(1)), std::invalid_argument);
}

TEST_CASE("Cole-Hopf derivative identities") {
    CHECK(equal(cole_hopf_y_derivative(0), Expr::integer(1)));
    CHECK(equal(cole_hopf_y_derivative(1), w()));
    CHECK(equal(cole_hopf_y_derivative(2), w(1) + Expr::pow(w(), 2)));
    CHECK(equal(cole_hopf_y_derivative(3), w(2) + 3 * w() * w(1) + Expr::pow(w(), 3)));

    // recursion law g_{k+1} = g_k' + w g_k
    for (int k = 0; k <= 6; ++k) {
        Expr gk = cole_hopf_y_derivative(k);
        CHECK(equal(cole_hopf_y_derivative(k + 1), differentiate(gk) + w() * gk));
    }
}

TEST_CASE("linearize produces the shifted-coefficient operator") {
    Expr y1 = Expr::sym("y", 1), y0 = Expr::sym("y", 0);
    auto op1 = linearize(build_chain_equation(1, symbolic_alphas(1)));
    CHECK(equal(op1.apply("y"), Expr::sym("y", 2) + a(1) * y1 + a(0) * y0));

    auto op3 = linearize(build_chain_equation(3, symbolic_alphas(3)));
    CHECK(equal(op3.apply("y"), Expr::sym("y", 4) + a(3) * Expr::sym("y", 3) +
                                    a(2) * Expr::sym("y", 2) + a(1) * y1 + a(0) * y0));

    auto ops = linearize(build_chain_equation(1, {Expr::integer(1), Expr::integer(0)}));
    CHECK(equal(ops.apply("y"), Expr::sym("y", 2) + y0));
}

TEST_CASE("delinearize inverts linearize") {
    auto op = make_operator({Expr::integer(1), Expr::integer(0), Expr::integer(1)});
    auto eq = delinearize(op);
    CHECK(equal(eq.lhs, w(1) + Expr::pow(w(), 2) + Expr::integer(1)));

    auto eq1 = delinearize(linearize(build_chain_equation(1, symbolic_alphas(1))));
    CHECK(equal(eq1.lhs, build_chain_equation(1, symbolic_alphas(1)).lhs));

    auto eq3 = delinearize(linearize(build_chain_equation(3, symbolic_alphas(3))));
    CHECK(equal(eq3.lhs, chain3_by_hand()));

    auto bad = make_operator({Expr::integer(2), Expr::integer(0), Expr::integer(1)});
    CHECK_THROWS_AS(delinearize(bad), std::invalid_argument);
}

TEST_CASE("substitution certificate vanishes for N = 1..5") {
    for (int N = 1; N <= 5; ++N) {
        auto eq = build_chain_equation(N, symbolic_alphas(N));
        CHECK(is_zero(linearization_certificate(eq)));
    }
}

TEST_CASE("all-zero coefficients reduce to the pure theta power") {
    for (int N = 1; N <= 4; ++N) {
        std::vector<Expr> zeros(static_cast<std::size_t>(N) + 1, Expr::integer(0));
        Expr lhs = build_chain_equation(N, zeros).lhs;
        Expr g = cole_hopf_y_derivative(N + 1);
        // g_{N+1} = theta^N w for N >= 0 applied to g_1 = w
        Expr theta_n = w();
        for (int i = 0; i < N; ++i) theta_n = theta_apply(theta_n);
        CHECK(equal(lhs, theta_n));
        CHECK(equal(g, theta_n));
    }
}
