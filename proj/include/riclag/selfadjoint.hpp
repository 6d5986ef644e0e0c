#ifndef RICLAG_SELFADJOINT_HPP
#define RICLAG_SELFADJOINT_HPP

#include <string>
#include <vector>

#include "riclag/riccati.hpp"

namespace riclag {

// Adjoint operator: N(z) = sum_i (-1)^{n-i} d^{n-i}/dx^{n-i} (r_i z),
// re-collected into coefficient form.
LinearOperator adjoint(const LinearOperator& M);

// True iff adjoint(M) - M has all coefficients normalizing to zero.
bool is_self_adjoint(const LinearOperator& M);

// True iff z*M(y) - y*N(z) is a total derivative, decided by applying the
// generalized Euler-Lagrange operator in y and in z and checking both vanish.
bool lagrange_identity_check(const LinearOperator& M);

// exp(Int(alpha1)); scaling the order-2 operator y'' + a1 y' + a0 y by it
// yields a self-adjoint operator.
Expr second_order_multiplier(const Expr& alpha1);

// Order-4 self-adjointness conditions: r_1 = 2 r_0', and with q = r_2 - r_0'',
// q' = r_3, as canonical identities.
bool fourth_order_conditions(const LinearOperator& M);

// Unique odd coefficients r_1, r_3, ..., r_{2n-1} making the order-2n operator
// with the given even coefficients r_0, r_2, ..., r_{2n} self-adjoint.
// Ground-truth construction: equate coefficients in adjoint(M) = M and solve
// top-down (the system is triangular).
std::vector<Expr> odd_coefficients_from_adjoint(int n, const std::vector<Expr>& even);

// The published recurrence for r_{2k+1}, implemented exactly as printed
// (final binomial C(2n-2k-1, 2n-2k-1) = 1); 1 <= k <= n-1. `coeffs` holds
// r_0 .. r_{2k}. Cross-check against odd_coefficients_from_adjoint before
// trusting it; see recurrence_audit.
Expr odd_coefficient_recurrence(int n, int k, const std::vector<Expr>& coeffs);

// Member of the index set I_l^m: k_1 odd < m, k_2..k_l even positive, sum m.
struct IndexTuple {
    std::vector<int> entries;
    bool operator==(const IndexTuple&) const = default;
    bool operator<(const IndexTuple& o) const { return entries < o.entries; }
};

// All members of I_l^m in lexicographic order (may be empty).
std::vector<IndexTuple> enumerate_index_set(int l, int m);

// Closed-form solution of the recurrence: r_{2k+1} assembled from binomial
// products over the index sets; 1 <= k <= n-1, `even` holds r_0, r_2, ..
Expr odd_coefficient_closed_form(int n, int k, const std::vector<Expr>& even);

struct CoefficientComparison {
    int index;       // odd coefficient index 2k+1
    Expr oracle;     // adjoint-expansion value (ground truth)
    Expr printed;    // recurrence as printed, lower odds substituted from oracle
    Expr closed;     // closed form
    bool printed_match;
    bool closed_match;
};

// Compares the printed recurrence and its closed-form solution against the
// adjoint oracle for fully symbolic even coefficients r0, r2, ..., r_{2n}.
std::vector<CoefficientComparison> recurrence_audit(int n);

// One line per coefficient: "r{i}: printed=<sexpr> oracle=<sexpr> match={yes|no}".
std::string format_audit(const std::vector<CoefficientComparison>& audit);

}  // namespace riclag

#endif
