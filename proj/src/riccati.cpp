#include "riclag/riccati.hpp"

namespace riclag {

Expr LinearOperator::apply(const std::string& var) const {
    std::vector<Expr> terms;
    for (int i = 0; i <= order; ++i)
        terms.push_back(coeffs[i] * Expr::sym(var, order - i));
    return normalize(Expr::sum(std::move(terms)));
}

Expr LinearOperator::apply(const Expr& f) const {
    std::vector<Expr> terms;
    for (int i = 0; i <= order; ++i)
        terms.push_back(coeffs[i] * differentiate(f, order - i));
    return normalize(Expr::sum(std::move(terms)));
}

LinearOperator make_operator(std::vector<Expr> coeffs) {
    if (coeffs.size() < 2)
        throw std::invalid_argument("operator needs order >= 1 (n+1 coefficients)");
    if (is_zero(coeffs[0]))
        throw std::invalid_argument("leading coefficient r_0 must not vanish");
    LinearOperator op;
    op.order = static_cast<int>(coeffs.size()) - 1;
    op.coeffs = std::move(coeffs);
    for (auto& c : op.coeffs) c = normalize(c);
    return op;
}

Expr theta_apply(const Expr& e, const std::string& omega) {
    return normalize(differentiate(e) + Expr::sym(omega, 0) * e);
}

std::vector<Expr> symbolic_alphas(int N) {
    std::vector<Expr> a;
    for (int j = 0; j <= N; ++j) a.push_back(Expr::sym("a" + std::to_string(j), 0));
    return a;
}

RiccatiChainEq build_chain_equation(int N, std::vector<Expr> alphas) {
    if (N < 1) throw std::invalid_argument("chain order must be positive");
    if (alphas.size() != static_cast<std::size_t>(N) + 1)
        throw std::invalid_argument("expected " + std::to_string(N + 1) +
                                    " alpha coefficients, got " +
                                    std::to_string(alphas.size()));
    Expr w = Expr::sym("w", 0);
    std::vector<Expr> theta_powers;  // theta^0 w .. theta^N w
    theta_powers.push_back(w);
    for (int k = 1; k <= N; ++k) theta_powers.push_back(theta_apply(theta_powers.back()));

    std::vector<Expr> terms;
    terms.push_back(theta_powers[N]);
    for (int j = 1; j <= N; ++j) terms.push_back(alphas[j] * theta_powers[j - 1]);
    terms.push_back(alphas[0]);

    RiccatiChainEq eq;
    eq.order = N;
    eq.alphas = std::move(alphas);
    eq.lhs = normalize(Expr::sum(std::move(terms)));
    return eq;
}

Expr cole_hopf_y_derivative(int k, const std::string& omega) {
    if (k < 0) throw std::invalid_argument("derivative order must be non-negative");
    Expr g = Expr::integer(1);
    for (int i = 0; i < k; ++i) g = theta_apply(g, omega);
    return g;
}

LinearOperator linearize(const RiccatiChainEq& eq) {
    int n = eq.order + 1;
    std::vector<Expr> coeffs(n + 1);
    coeffs[0] = Expr::integer(1);
    for (int j = 0; j <= eq.order; ++j) coeffs[n - j] = eq.alphas[j];
    return make_operator(std::move(coeffs));
}

RiccatiChainEq delinearize(const LinearOperator& op) {
    if (!equal(op.coeffs[0], Expr::integer(1)))
        throw std::invalid_argument("delinearize requires unit leading coefficient");
    int N = op.order - 1;
    std::vector<Expr> alphas(N + 1);
    for (int j = 0; j <= N; ++j) alphas[j] = op.coeffs[op.order - j];
    return build_chain_equation(N, std::move(alphas));
}

Expr substitute_y_derivatives(const Expr& e, const std::string& y,
                              const std::string& omega) {
    int top = max_deriv_order(e, y);
    Expr r = normalize(e);
    // highest order first so replacements never reintroduce targets
    for (int k = top; k >= 1; --k)
        r = substitute(r, {y, k},
                       cole_hopf_y_derivative(k, omega) * Expr::sym(y, 0));
    return r;
}

Expr linearization_certificate(const RiccatiChainEq& eq) {
    LinearOperator op = linearize(eq);
    Expr lhs = substitute_y_derivatives(op.apply("y"), "y");
    return normalize(lhs - eq.lhs * Expr::sym("y", 0));
}

}  // namespace riclag
