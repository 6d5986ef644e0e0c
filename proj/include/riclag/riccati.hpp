#ifndef RICLAG_RICCATI_HPP
#define RICLAG_RICCATI_HPP

#include <string>
#include <vector>

#include "riclag/expr.hpp"

namespace riclag {

// Order-n linear ODE operator: apply(f) = sum_i coeffs[i] * f^{(n-i)}.
// coeffs[0] must not be identically zero.
struct LinearOperator {
    int order = 0;
    std::vector<Expr> coeffs;  // r_0 .. r_n

    // Operator applied to the function symbol `var`.
    Expr apply(const std::string& var) const;
    // Operator applied to an arbitrary expression.
    Expr apply(const Expr& f) const;
};

LinearOperator make_operator(std::vector<Expr> coeffs);

// Chain equation of order N: lhs = theta^N w + sum_j alpha_j theta^{j-1} w + alpha_0.
struct RiccatiChainEq {
    int order = 0;
    std::vector<Expr> alphas;  // alpha_0 .. alpha_N
    Expr lhs;
};

// theta(e) = e' + w*e with w = sym(omega, 0).
Expr theta_apply(const Expr& e, const std::string& omega = "w");

// Throws std::invalid_argument unless alphas.size() == N+1.
RiccatiChainEq build_chain_equation(int N, std::vector<Expr> alphas);

// Symbolic names for fully symbolic coefficient lists a0..aN.
std::vector<Expr> symbolic_alphas(int N);

// g_k with y^{(k)} = g_k * y under w = (ln y)'; g_0 = 1, g_{k+1} = theta(g_k).
Expr cole_hopf_y_derivative(int k, const std::string& omega = "w");

// Linear operator of order N+1 with unit leading coefficient, coefficient of
// y^{(j)} equal to alpha_j.
LinearOperator linearize(const RiccatiChainEq& eq);

// Inverse of linearize; requires r_0 = 1.
RiccatiChainEq delinearize(const LinearOperator& op);

// Replace y^{(k)} by g_k*y for k = 1..max order of `y` in e.
Expr substitute_y_derivatives(const Expr& e, const std::string& y,
                              const std::string& omega = "w");

// apply(linearize(eq), y) with y^{(k)} -> g_k*y, minus eq.lhs * y.
// Normalizes to zero; returned for inspection.
Expr linearization_certificate(const RiccatiChainEq& eq);

}  // namespace riclag

#endif
