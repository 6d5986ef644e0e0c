#ifndef RICLAG_LAGRANGIAN_HPP
#define RICLAG_LAGRANGIAN_HPP

#include <string>
#include <vector>

#include "riclag/selfadjoint.hpp"

namespace riclag {

struct Lagrangian {
    Expr expr;        // canonical
    std::string var;  // dependent variable
    int order = 0;    // highest derivative order of var in expr
};

Lagrangian make_lagrangian(Expr e, std::string var);

struct NotSelfAdjointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// L = var * apply(Ms, var). Rejects a non-self-adjoint operator unless the
// caller waives the check (EL verification then reports what actually comes
// out instead of the factor-2 identity).
Lagrangian ansatz_lagrangian(const LinearOperator& Ms, const std::string& var,
                             bool waive_self_adjoint = false);

// sum_i (-1)^i d^i/dx^i (partial L / partial var^{(i)}).
Expr euler_lagrange(const Lagrangian& L);

// L minus d/dx g; the equation of motion is unchanged.
Lagrangian gauge_subtract(const Lagrangian& L, const Expr& g);

// Lagrangian of the first-order chain equation, in the w variable:
// a^2 exp(Int(a1) + 2 Int(w)) * (w' + w^2 + a1 w + a0).
// alphas = {alpha_0, alpha_1}.
Lagrangian riccati_lagrangian(const std::vector<Expr>& alphas, const Expr& a);

// Lagrangian of the third-order chain equation; alphas = {alpha_0..alpha_3}.
Lagrangian riccati3_lagrangian(const std::vector<Expr>& alphas, const Expr& a);

// Lagrangian of the (2n-1)-th order chain equation; alphas = {alpha_0..alpha_{2n-1}}.
// Note: carries no exp(Int(alpha_{2n-1})) multiplier, so at n=1 it differs
// from riccati_lagrangian by that factor.
Lagrangian general_odd_lagrangian(int n, const std::vector<Expr>& alphas, const Expr& a);

struct EomVerification {
    bool ok = false;
    Expr factor;    // when ok: euler_lagrange(L) = factor * eom
    Expr el;        // the Euler-Lagrange output (after any rewrite)
    Expr eom;       // the equation of motion (after any rewrite)
    Expr residual;  // when !ok: el minus best candidate * eom (or el itself)
};

// Checks euler_lagrange(L) = f * eom for a monomial factor f (constant times
// exponential). Lagrangians in the w variable containing Int(w) are first
// rewritten in the potential variable W (w -> W', Int(w) -> W), which makes
// them local; the eom is rewritten the same way.
EomVerification verify_eom(const Lagrangian& L, const Expr& eom);

// The W-rewrite used by verify_eom, exposed for reports: w^{(k)} -> W^{(k+1)},
// Int(w) -> W.
Expr to_potential_variable(const Expr& e);

}  // namespace riclag

#endif
