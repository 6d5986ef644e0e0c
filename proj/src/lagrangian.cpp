#include "riclag/lagrangian.hpp"

#include <algorithm>
#include <set>

namespace riclag {

Lagrangian make_lagrangian(Expr e, std::string var) {
    Lagrangian L;
    L.expr = normalize(e);
    L.var = std::move(var);
    L.order = std::max(0, max_deriv_order(L.expr, L.var));
    return L;
}

Lagrangian ansatz_lagrangian(const LinearOperator& Ms, const std::string& var,
                             bool waive_self_adjoint) {
    if (!waive_self_adjoint && !is_self_adjoint(Ms))
        throw NotSelfAdjointError(
            "ansatz requires a self-adjoint operator (pass the waiver to proceed)");
    return make_lagrangian(Expr::sym(var, 0) * Ms.apply(var), var);
}

Expr euler_lagrange(const Lagrangian& L) {
    return variational_derivative(L.expr, L.var);
}

Lagrangian gauge_subtract(const Lagrangian& L, const Expr& g) {
    return make_lagrangian(L.expr - differentiate(g), L.var);
}

namespace {

// Substitutes the Cole-Hopf closed form y = a exp(Int(w)) into a Lagrangian
// expressed in y and its derivatives.
Lagrangian chain_substituted(const Expr& lagr_in_y, const Expr& a) {
    Expr sub = substitute_y_derivatives(lagr_in_y, "y");
    Expr y_closed = a * Expr::exp(Expr::antideriv(Expr::sym("w", 0)));
    return make_lagrangian(substitute(sub, {"y", 0}, y_closed), "w");
}

}  // namespace

Lagrangian riccati_lagrangian(const std::vector<Expr>& alphas, const Expr& a) {
    if (alphas.size() != 2)
        throw std::invalid_argument("riccati_lagrangian expects {alpha0, alpha1}");
    LinearOperator op = linearize(build_chain_equation(1, alphas));
    Expr L_y = Expr::sym("y", 0) * second_order_multiplier(alphas[1]) * op.apply("y");
    return chain_substituted(L_y, a);
}

Lagrangian general_odd_lagrangian(int n, const std::vector<Expr>& alphas,
                                  const Expr& a) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (alphas.size() != static_cast<std::size_t>(2 * n))
        throw std::invalid_argument("expected 2n alpha coefficients alpha0..alpha_{2n-1}");
    LinearOperator op = linearize(build_chain_equation(2 * n - 1, alphas));
    Expr L_y = Expr::sym("y", 0) * op.apply("y");
    return chain_substituted(L_y, a);
}

Lagrangian riccati3_lagrangian(const std::vector<Expr>& alphas, const Expr& a) {
    if (alphas.size() != 4)
        throw std::invalid_argument("riccati3_lagrangian expects {alpha0..alpha3}");
    return general_odd_lagrangian(2, alphas, a);
}

namespace {

Expr to_potential_raw(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::ConstSym:
        case Kind::Indep:
            return e;
        case Kind::Symbol:
            if (e.name() == "w") return Expr::sym("W", e.deriv_order() + 1);
            return e;
        case Kind::Sum: {
            std::vector<Expr> args;
            for (auto& x : e.args()) args.push_back(to_potential_raw(x));
            return Expr::sum(std::move(args));
        }
        case Kind::Product: {
            std::vector<Expr> args;
            for (auto& x : e.args()) args.push_back(to_potential_raw(x));
            return Expr::product(std::move(args));
        }
        case Kind::Power:
            return Expr::pow(to_potential_raw(e.args()[0]), e.exponent());
        case Kind::ExpFn:
            return Expr::exp(to_potential_raw(e.args()[0]));
        case Kind::AntiDeriv:
            if (equal(e.args()[0], Expr::sym("w", 0))) return Expr::sym("W", 0);
            return Expr::antideriv(to_potential_raw(e.args()[0]));
    }
    throw std::logic_error("unreachable");
}

std::vector<Expr> sum_terms(const Expr& e) {
    if (e.kind() == Kind::Sum) return e.args();
    return {e};
}

// A factor may only be (rational) * (named constants) * (one exponential).
bool admissible_factor(const Expr& f) {
    std::vector<Expr> factors =
        f.kind() == Kind::Product ? f.args() : std::vector<Expr>{f};
    for (const Expr& x : factors) {
        Expr base = x.kind() == Kind::Power ? x.args()[0] : x;
        switch (base.kind()) {
            case Kind::Number:
            case Kind::ConstSym:
            case Kind::ExpFn:
                break;
            default:
                return false;
        }
    }
    return true;
}

}  // namespace

Expr to_potential_variable(const Expr& e) {
    return normalize(to_potential_raw(normalize(e)));
}

EomVerification verify_eom(const Lagrangian& L, const Expr& eom) {
    Expr lexpr = L.expr;
    Expr eq = normalize(eom);
    std::string var = L.var;
    if (var == "w") {
        lexpr = to_potential_variable(lexpr);
        eq = to_potential_variable(eq);
        var = "W";
    }
    EomVerification v;
    v.eom = eq;
    v.el = euler_lagrange(make_lagrangian(lexpr, var));

    if (is_zero(eq) || is_zero(v.el)) {
        v.ok = is_zero(eq) && is_zero(v.el);
        v.factor = Expr::integer(1);
        v.residual = v.el;
        return v;
    }

    std::vector<Expr> el_terms = sum_terms(v.el);
    std::vector<Expr> eq_terms = sum_terms(eq);
    std::set<std::string> seen;
    std::vector<Expr> candidates;
    auto push = [&](const Expr& num, const Expr& den) {
        Expr f = normalize(num * Expr::pow(den, -1));
        std::string key = render(f, RenderFormat::Sexpr);
        if (seen.insert(key).second) candidates.push_back(f);
    };
    for (const Expr& t : el_terms) push(t, eq_terms.front());
    for (const Expr& u : eq_terms) push(el_terms.front(), u);

    for (const Expr& f : candidates) {
        if (!admissible_factor(f)) continue;
        if (is_zero(v.el - f * eq)) {
            v.ok = true;
            v.factor = f;
            v.residual = Expr::integer(0);
            return v;
        }
    }
    v.ok = false;
    v.residual = v.el;
    return v;
}

}  // namespace riclag
