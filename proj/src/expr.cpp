#include "riclag/expr.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace riclag {

Expr make_expr(ExprNode&& n, bool canonical) {
    n.canonical = canonical;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
}

namespace {

Expr make_node(ExprNode&& n) { return make_expr(std::move(n), false); }
Expr make_canonical(ExprNode&& n) { return make_expr(std::move(n), true); }
Expr make_leaf(ExprNode&& n) { return make_expr(std::move(n), true); }

}  // namespace

Expr::Expr() { *this = Expr::integer(0); }

Expr Expr::number(Rational v) {
    ExprNode n;
    n.kind = Kind::Number;
    n.value = std::move(v);
    return make_leaf(std::move(n));
}

Expr Expr::integer(std::int64_t v) { return number(Rational(v)); }

Expr Expr::x() {
    ExprNode n;
    n.kind = Kind::Indep;
    return make_leaf(std::move(n));
}

Expr Expr::sym(std::string name, int deriv_order) {
    if (deriv_order < 0) throw std::invalid_argument("negative derivative order");
    ExprNode n;
    n.kind = Kind::Symbol;
    n.name = std::move(name);
    n.order = deriv_order;
    return make_leaf(std::move(n));
}

Expr Expr::constant(std::string name) {
    ExprNode n;
    n.kind = Kind::ConstSym;
    n.name = std::move(name);
    return make_leaf(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    ExprNode n;
    n.kind = Kind::Sum;
    n.args = std::move(terms);
    return make_node(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    ExprNode n;
    n.kind = Kind::Product;
    n.args = std::move(factors);
    return make_node(std::move(n));
}

Expr Expr::pow(Expr base, std::int64_t exponent) {
    ExprNode n;
    n.kind = Kind::Power;
    n.args = {std::move(base)};
    n.exponent = exponent;
    return make_node(std::move(n));
}

Expr Expr::exp(Expr arg) {
    ExprNode n;
    n.kind = Kind::ExpFn;
    n.args = {std::move(arg)};
    return make_node(std::move(n));
}

Expr Expr::antideriv(Expr arg) {
    ExprNode n;
    n.kind = Kind::AntiDeriv;
    n.args = {std::move(arg)};
    return make_node(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
    return Expr::sum({a, Expr::product({Expr::integer(-1), b})});
}
Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator*(std::int64_t a, const Expr& b) {
    return Expr::product({Expr::integer(a), b});
}

// ---------------------------------------------------------------------------
// Ordering

namespace {

int kind_rank(Kind k) {
    switch (k) {
        case Kind::Number: return 0;
        case Kind::ConstSym: return 1;
        case Kind::Indep: return 2;
        case Kind::Symbol: return 3;
        case Kind::Power: return 4;
        case Kind::ExpFn: return 5;
        case Kind::AntiDeriv: return 6;
        case Kind::Product: return 7;
        case Kind::Sum: return 8;
    }
    return 9;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Symbol class order: a_j < r_i < q < w < W < y < z < (others).
std::pair<int, int> symbol_class(const std::string& name) {
    if (name.size() > 1 && name[0] == 'a' && all_digits(name.substr(1)))
        return {0, std::stoi(name.substr(1))};
    if (name.size() > 1 && name[0] == 'r' && all_digits(name.substr(1)))
        return {1, std::stoi(name.substr(1))};
    if (name == "q") return {2, 0};
    if (name == "w") return {3, 0};
    if (name == "W") return {4, 0};
    if (name == "y") return {5, 0};
    if (name == "z") return {6, 0};
    return {7, 0};
}

template <typename T>
int cmp3(const T& a, const T& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    if (a.raw() == b.raw()) return 0;
    if (int c = cmp3(kind_rank(a.kind()), kind_rank(b.kind()))) return c;
    switch (a.kind()) {
        case Kind::Number:
            return cmp3(a.value(), b.value());
        case Kind::ConstSym:
            return cmp3(a.name(), b.name());
        case Kind::Indep:
            return 0;
        case Kind::Symbol: {
            auto ca = symbol_class(a.name());
            auto cb = symbol_class(b.name());
            if (int c = cmp3(ca, cb)) return c;
            if (int c = cmp3(a.name(), b.name())) return c;
            return cmp3(a.deriv_order(), b.deriv_order());
        }
        case Kind::Power: {
            if (int c = compare(a.args()[0], b.args()[0])) return c;
            return cmp3(a.exponent(), b.exponent());
        }
        case Kind::ExpFn:
        case Kind::AntiDeriv:
            return compare(a.args()[0], b.args()[0]);
        case Kind::Product:
        case Kind::Sum: {
            if (int c = cmp3(a.args().size(), b.args().size())) return c;
            for (std::size_t i = 0; i < a.args().size(); ++i)
                if (int c = compare(a.args()[i], b.args()[i])) return c;
            return 0;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Polynomial normal form

namespace {

// A monomial: sorted (atom, exponent) list, exponents nonzero, at most one
// exp(...) factor. Atoms are canonical Exprs of kind Indep/ConstSym/Symbol/
// ExpFn/AntiDeriv/Power(opaque base).
using Mono = std::vector<std::pair<Expr, std::int64_t>>;

struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const {
        std::int64_t da = 0, db = 0;
        for (auto& f : a) da += f.second;
        for (auto& f : b) db += f.second;
        if (da != db) return da < db;
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (int c = compare(a[i].first, b[i].first)) return c < 0;
            if (a[i].second != b[i].second) return a[i].second < b[i].second;
        }
        return a.size() < b.size();
    }
};

using Poly = std::map<Mono, Rational, MonoLess>;

Poly to_poly(const Expr& e);
Expr poly_to_expr(const Poly& p);

Rational rat_pow(const Rational& c, std::int64_t k) {
    if (k < 0) {
        if (c == 0) throw std::domain_error("zero raised to a negative power");
        return Rational(1) / rat_pow(c, -k);
    }
    Rational r(1), base = c;
    while (k > 0) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

// Canonicalize a factor list: sort, merge duplicates, merge exp atoms into a
// single exp of the combined argument, drop zero exponents.
Mono mono_canonical(Mono factors) {
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    Mono merged;
    for (auto& f : factors) {
        if (!merged.empty() && compare(merged.back().first, f.first) == 0)
            merged.back().second += f.second;
        else
            merged.push_back(f);
    }
    std::vector<Expr> exp_args;
    Mono out;
    for (auto& f : merged) {
        if (f.second == 0) continue;
        if (f.first.kind() == Kind::ExpFn) {
            exp_args.push_back(
                Expr::product({Expr::integer(f.second), f.first.args()[0]}));
        } else {
            out.push_back(f);
        }
    }
    if (!exp_args.empty()) {
        Expr arg = normalize(Expr::sum(std::move(exp_args)));
        if (!is_zero(arg)) {
            ExprNode n;
            n.kind = Kind::ExpFn;
            n.args = {arg};
            out.push_back({make_canonical(std::move(n)), 1});
            std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
                return compare(a.first, b.first) < 0;
            });
        }
    }
    return out;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono f = a;
    f.insert(f.end(), b.begin(), b.end());
    return mono_canonical(std::move(f));
}

Mono mono_pow(const Mono& m, std::int64_t k) {
    Mono f = m;
    for (auto& p : f) p.second *= k;
    return mono_canonical(std::move(f));
}

void poly_add_term(Poly& p, Mono m, Rational c) {
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& t : b) poly_add_term(r, t.first, t.second);
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& ta : a)
        for (auto& tb : b)
            poly_add_term(r, mono_mul(ta.first, tb.first), ta.second * tb.second);
    return r;
}

Poly poly_one() {
    Poly p;
    p.emplace(Mono{}, Rational(1));
    return p;
}

Poly poly_pow(const Poly& p, std::int64_t k) {
    Poly r = poly_one();
    Poly base = p;
    while (k > 0) {
        if (k & 1) r = poly_mul(r, base);
        base = poly_mul(base, base);
        k >>= 1;
    }
    return r;
}

Expr mono_expr(const Mono& m, const Rational& coeff) {
    std::vector<Expr> factors;
    if (coeff != 1 || m.empty()) factors.push_back(Expr::number(coeff));
    for (auto& f : m) {
        if (f.second == 1) {
            factors.push_back(f.first);
        } else {
            ExprNode n;
            n.kind = Kind::Power;
            n.args = {f.first};
            n.exponent = f.second;
            factors.push_back(make_canonical(std::move(n)));
        }
    }
    if (factors.size() == 1) return factors[0];
    ExprNode n;
    n.kind = Kind::Product;
    n.args = std::move(factors);
    return make_canonical(std::move(n));
}

Expr poly_to_expr(const Poly& p) {
    if (p.empty()) return Expr::integer(0);
    std::vector<Expr> terms;
    terms.reserve(p.size());
    for (auto& t : p) terms.push_back(mono_expr(t.first, t.second));
    if (terms.size() == 1) return terms[0];
    ExprNode n;
    n.kind = Kind::Sum;
    n.args = std::move(terms);
    return make_canonical(std::move(n));
}

Poly atom_poly(Expr atom) {
    Poly p;
    p.emplace(Mono{{std::move(atom), 1}}, Rational(1));
    return p;
}

Poly to_poly(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number: {
            Poly p;
            if (e.value() != 0) p.emplace(Mono{}, e.value());
            return p;
        }
        case Kind::Indep:
        case Kind::ConstSym:
        case Kind::Symbol:
            return atom_poly(e);
        case Kind::Sum: {
            Poly r;
            for (auto& t : e.args()) r = poly_add(r, to_poly(t));
            return r;
        }
        case Kind::Product: {
            Poly r = poly_one();
            for (auto& f : e.args()) r = poly_mul(r, to_poly(f));
            return r;
        }
        case Kind::Power: {
            std::int64_t k = e.exponent();
            if (k == 0) return poly_one();
            Poly b = to_poly(e.args()[0]);
            if (k > 0) return poly_pow(b, k);
            if (b.empty()) throw std::domain_error("zero raised to a negative power");
            if (b.size() == 1) {
                auto& t = *b.begin();
                Poly r;
                r.emplace(mono_pow(t.first, k), rat_pow(t.second, k));
                return r;
            }
            // negative power of a sum stays opaque
            ExprNode n;
            n.kind = Kind::Power;
            n.args = {poly_to_expr(b)};
            n.exponent = k;
            return atom_poly(make_canonical(std::move(n)));
        }
        case Kind::ExpFn: {
            Expr arg = normalize(e.args()[0]);
            if (is_zero(arg)) return poly_one();
            ExprNode n;
            n.kind = Kind::ExpFn;
            n.args = {arg};
            return atom_poly(make_canonical(std::move(n)));
        }
        case Kind::AntiDeriv: {
            Poly arg = to_poly(e.args()[0]);
            Poly r;
            for (auto& t : arg) {
                if (t.first.empty()) {
                    // Int(c) = c*x
                    poly_add_term(r, Mono{{Expr::x(), 1}}, t.second);
                } else {
                    ExprNode n;
                    n.kind = Kind::AntiDeriv;
                    n.args = {mono_expr(t.first, Rational(1))};
                    poly_add_term(r, Mono{{make_canonical(std::move(n)), 1}}, t.second);
                }
            }
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Expr normalize(const Expr& e) {
    if (e.is_canonical()) return e;
    return poly_to_expr(to_poly(e));
}

bool is_zero(const Expr& e) {
    Expr n = normalize(e);
    return n.kind() == Kind::Number && n.value() == 0;
}

bool equal(const Expr& a, const Expr& b) {
    return compare(normalize(a), normalize(b)) == 0;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

Expr diff_raw(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::ConstSym:
            return Expr::integer(0);
        case Kind::Indep:
            return Expr::integer(1);
        case Kind::Symbol:
            return Expr::sym(e.name(), e.deriv_order() + 1);
        case Kind::Sum: {
            std::vector<Expr> terms;
            for (auto& t : e.args()) terms.push_back(diff_raw(t));
            return Expr::sum(std::move(terms));
        }
        case Kind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                std::vector<Expr> factors = e.args();
                factors[i] = diff_raw(e.args()[i]);
                terms.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(terms));
        }
        case Kind::Power: {
            const Expr& b = e.args()[0];
            return Expr::product({Expr::integer(e.exponent()),
                                  Expr::pow(b, e.exponent() - 1), diff_raw(b)});
        }
        case Kind::ExpFn:
            return Expr::product({diff_raw(e.args()[0]), Expr::exp(e.args()[0])});
        case Kind::AntiDeriv:
            return e.args()[0];
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Expr differentiate(const Expr& e) { return normalize(diff_raw(e)); }

Expr differentiate(const Expr& e, int times) {
    Expr r = normalize(e);
    for (int i = 0; i < times; ++i) r = differentiate(r);
    return r;
}

// ---------------------------------------------------------------------------
// Partial derivative, substitution, queries

bool occurs(const Expr& e, const FunctionSymbol& s) {
    if (e.kind() == Kind::Symbol)
        return e.name() == s.name && e.deriv_order() == s.deriv_order;
    for (auto& a : e.args())
        if (occurs(a, s)) return true;
    return false;
}

int max_deriv_order(const Expr& e, const std::string& name) {
    int best = -1;
    if (e.kind() == Kind::Symbol && e.name() == name) best = e.deriv_order();
    for (auto& a : e.args()) best = std::max(best, max_deriv_order(a, name));
    return best;
}

namespace {

Expr partial_raw(const Expr& e, const FunctionSymbol& s) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::ConstSym:
        case Kind::Indep:
            return Expr::integer(0);
        case Kind::Symbol:
            return (e.name() == s.name && e.deriv_order() == s.deriv_order)
                       ? Expr::integer(1)
                       : Expr::integer(0);
        case Kind::Sum: {
            std::vector<Expr> terms;
            for (auto& t : e.args()) terms.push_back(partial_raw(t, s));
            return Expr::sum(std::move(terms));
        }
        case Kind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                std::vector<Expr> factors = e.args();
                factors[i] = partial_raw(e.args()[i], s);
                terms.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(terms));
        }
        case Kind::Power: {
            const Expr& b = e.args()[0];
            return Expr::product({Expr::integer(e.exponent()),
                                  Expr::pow(b, e.exponent() - 1), partial_raw(b, s)});
        }
        case Kind::ExpFn:
            return Expr::product({partial_raw(e.args()[0], s), Expr::exp(e.args()[0])});
        case Kind::AntiDeriv:
            if (occurs(e.args()[0], s))
                throw std::invalid_argument(
                    "partial derivative w.r.t. a symbol occurring under Int");
            return Expr::integer(0);
    }
    throw std::logic_error("unreachable");
}

Expr subst_raw(const Expr& e, const FunctionSymbol& target, const Expr& replacement) {
    switch (e.kind()) {
        case Kind::Number:
        case Kind::ConstSym:
        case Kind::Indep:
            return e;
        case Kind::Symbol:
            return (e.name() == target.name && e.deriv_order() == target.deriv_order)
                       ? replacement
                       : e;
        case Kind::Sum: {
            std::vector<Expr> args;
            for (auto& a : e.args()) args.push_back(subst_raw(a, target, replacement));
            return Expr::sum(std::move(args));
        }
        case Kind::Product: {
            std::vector<Expr> args;
            for (auto& a : e.args()) args.push_back(subst_raw(a, target, replacement));
            return Expr::product(std::move(args));
        }
        case Kind::Power:
            return Expr::pow(subst_raw(e.args()[0], target, replacement), e.exponent());
        case Kind::ExpFn:
            return Expr::exp(subst_raw(e.args()[0], target, replacement));
        case Kind::AntiDeriv:
            return Expr::antideriv(subst_raw(e.args()[0], target, replacement));
    }
    throw std::logic_error("unreachable");
}

}  // namespace

Expr partial_derivative(const Expr& e, const FunctionSymbol& s) {
    return normalize(partial_raw(e, s));
}

Expr substitute(const Expr& e, const FunctionSymbol& target, const Expr& replacement) {
    return normalize(subst_raw(e, target, replacement));
}

Expr variational_derivative(const Expr& e, const std::string& var) {
    Expr en = normalize(e);
    int n = max_deriv_order(en, var);
    std::vector<Expr> terms;
    for (int i = 0; i <= n; ++i) {
        Expr term = differentiate(partial_derivative(en, {var, i}), i);
        if (i % 2 == 1) term = normalize(-term);
        terms.push_back(term);
    }
    if (terms.empty()) return Expr::integer(0);
    return normalize(Expr::sum(std::move(terms)));
}

}  // namespace riclag
