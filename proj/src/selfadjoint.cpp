#include "riclag/selfadjoint.hpp"

#include <algorithm>
#include <sstream>

namespace riclag {

namespace {

Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    boost::multiprecision::cpp_int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return Rational(r);
}

Expr half() { return Expr::number(Rational(1, 2)); }

}  // namespace

LinearOperator adjoint(const LinearOperator& M) {
    int n = M.order;
    std::vector<Expr> terms;
    Expr z = Expr::sym("z", 0);
    for (int i = 0; i <= n; ++i) {
        Expr t = differentiate(M.coeffs[i] * z, n - i);
        if ((n - i) % 2 == 1) t = normalize(-t);
        terms.push_back(t);
    }
    Expr N = normalize(Expr::sum(std::move(terms)));
    std::vector<Expr> coeffs(n + 1);
    for (int i = 0; i <= n; ++i) coeffs[i] = partial_derivative(N, {"z", n - i});
    return make_operator(std::move(coeffs));
}

bool is_self_adjoint(const LinearOperator& M) {
    LinearOperator N = adjoint(M);
    for (int i = 0; i <= M.order; ++i)
        if (!is_zero(N.coeffs[i] - M.coeffs[i])) return false;
    return true;
}

bool lagrange_identity_check(const LinearOperator& M) {
    LinearOperator N = adjoint(M);
    Expr bilinear =
        normalize(Expr::sym("z", 0) * M.apply("y") - Expr::sym("y", 0) * N.apply("z"));
    return is_zero(variational_derivative(bilinear, "y")) &&
           is_zero(variational_derivative(bilinear, "z"));
}

Expr second_order_multiplier(const Expr& alpha1) {
    return normalize(Expr::exp(Expr::antideriv(alpha1)));
}

bool fourth_order_conditions(const LinearOperator& M) {
    if (M.order != 4)
        throw std::invalid_argument("fourth_order_conditions expects an order-4 operator");
    const Expr& r0 = M.coeffs[0];
    const Expr& r1 = M.coeffs[1];
    const Expr& r2 = M.coeffs[2];
    const Expr& r3 = M.coeffs[3];
    if (!is_zero(r1 - 2 * differentiate(r0))) return false;
    Expr q = normalize(r2 - differentiate(r0, 2));
    return is_zero(differentiate(q) - r3);
}

std::vector<Expr> odd_coefficients_from_adjoint(int n, const std::vector<Expr>& even) {
    if (n < 1) throw std::invalid_argument("order parameter n must be positive");
    if (even.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("expected n+1 even coefficients r0, r2, ..., r2n");
    std::vector<Expr> coeffs(2 * n + 1, Expr::integer(0));
    for (int t = 0; t <= n; ++t) coeffs[2 * t] = normalize(even[t]);

    std::vector<Expr> odds;
    for (int k = 0; k < n; ++k) {
        // With r_{2k+1} still zero, the coefficient mismatch at that slot is
        // exactly twice its required value.
        LinearOperator M = make_operator(coeffs);
        LinearOperator N = adjoint(M);
        Expr r = normalize(half() * (N.coeffs[2 * k + 1] - M.coeffs[2 * k + 1]));
        coeffs[2 * k + 1] = r;
        odds.push_back(r);
    }
    return odds;
}

Expr odd_coefficient_recurrence(int n, int k, const std::vector<Expr>& coeffs) {
    if (k < 1 || k > n - 1)
        throw std::out_of_range("recurrence index k must satisfy 1 <= k <= n-1");
    if (coeffs.size() < static_cast<std::size_t>(2 * k) + 1)
        throw std::invalid_argument("need coefficients r0 .. r_{2k}");
    std::vector<Expr> terms;
    for (int i = 0; i <= 2 * k; ++i) {
        // final binomial exactly as published: C(2n-2k-1, 2n-2k-1) = 1
        Rational b = (i == 2 * k) ? Rational(1) : binom(2 * n - i, 2 * n - 2 * k - 1);
        if (i % 2 == 1) b = -b;
        if (b == 0) continue;
        terms.push_back(Expr::number(b) * differentiate(coeffs[i], 2 * k + 1 - i));
    }
    return normalize(half() * Expr::sum(std::move(terms)));
}

std::vector<IndexTuple> enumerate_index_set(int l, int m) {
    std::vector<IndexTuple> out;
    if (l < 2 || m < 1 || m % 2 == 0) return out;
    // k_1 odd and < m; remaining l-1 entries even positive summing to m - k_1
    std::vector<int> tuple;
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == l) {
            if (remaining == 0) out.push_back({tuple});
            return;
        }
        int slots_after = l - pos - 1;
        for (int v = 2; v <= remaining - 2 * slots_after; v += 2) {
            tuple.push_back(v);
            self(self, pos + 1, remaining - v);
            tuple.pop_back();
        }
    };
    for (int k1 = 1; k1 < m; k1 += 2) {
        tuple = {k1};
        rec(rec, 1, m - k1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Expr odd_coefficient_closed_form(int n, int k, const std::vector<Expr>& even) {
    if (k < 1 || k > n - 1)
        throw std::out_of_range("closed-form index k must satisfy 1 <= k <= n-1");
    if (even.size() < static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("need even coefficients r0 .. r_{2k}");
    std::vector<Expr> terms;
    for (int t = 0; t <= k; ++t) {
        int m = 2 * (k - t) + 1;   // derivative order of r_{2t}
        int base = 2 * n - 2 * t;  // top entry of the binomials in this brace
        Rational brace = binom(base, m) / 2;
        for (int l = 2; l <= (m + 1) / 2; ++l) {
            Rational sign = (l % 2 == 0) ? Rational(-1) : Rational(1);
            Rational scale = sign / Rational(boost::multiprecision::cpp_int(1) << l);
            Rational sum(0);
            for (const auto& tuple : enumerate_index_set(l, m)) {
                Rational prod(1);
                int used = 0;
                for (int ki : tuple.entries) {
                    prod *= binom(base - used, ki);
                    used += ki;
                }
                sum += prod;
            }
            brace += scale * sum;
        }
        if (brace == 0) continue;
        terms.push_back(Expr::number(brace) * differentiate(even[t], m));
    }
    if (terms.empty()) return Expr::integer(0);
    return normalize(Expr::sum(std::move(terms)));
}

std::vector<CoefficientComparison> recurrence_audit(int n) {
    std::vector<Expr> even;
    for (int t = 0; t <= n; ++t) even.push_back(Expr::sym("r" + std::to_string(2 * t), 0));
    std::vector<Expr> oracle = odd_coefficients_from_adjoint(n, even);

    std::vector<CoefficientComparison> audit;
    {
        // initial condition r_1 = n r_0'
        CoefficientComparison c;
        c.index = 1;
        c.oracle = oracle[0];
        c.printed = normalize(Expr::integer(n) * differentiate(even[0]));
        c.closed = c.printed;
        c.printed_match = is_zero(c.printed - c.oracle);
        c.closed_match = c.printed_match;
        audit.push_back(c);
    }
    for (int k = 1; k <= n - 1; ++k) {
        // full coefficient list with lower odd coefficients from the oracle
        std::vector<Expr> coeffs(2 * k + 1, Expr::integer(0));
        for (int t = 0; t <= k; ++t) coeffs[2 * t] = even[t];
        for (int t = 0; t < k; ++t) coeffs[2 * t + 1] = oracle[t];
        CoefficientComparison c;
        c.index = 2 * k + 1;
        c.oracle = oracle[k];
        c.printed = odd_coefficient_recurrence(n, k, coeffs);
        c.closed = odd_coefficient_closed_form(n, k, even);
        c.printed_match = is_zero(c.printed - c.oracle);
        c.closed_match = is_zero(c.closed - c.oracle);
        audit.push_back(c);
    }
    return audit;
}

std::string format_audit(const std::vector<CoefficientComparison>& audit) {
    std::ostringstream os;
    os << "recurrence:\n";
    for (const auto& c : audit)
        os << "r" << c.index << ": printed=" << render(c.printed, RenderFormat::Sexpr)
           << " oracle=" << render(c.oracle, RenderFormat::Sexpr)
           << " match=" << (c.printed_match ? "yes" : "no") << "\n";
    os << "closed-form:\n";
    for (const auto& c : audit)
        os << "r" << c.index << ": printed=" << render(c.closed, RenderFormat::Sexpr)
           << " oracle=" << render(c.oracle, RenderFormat::Sexpr)
           << " match=" << (c.closed_match ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace riclag
