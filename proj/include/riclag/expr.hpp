#ifndef RICLAG_EXPR_HPP
#define RICLAG_EXPR_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace riclag {

using Rational = boost::multiprecision::cpp_rational;

// Node kinds of the expression tree. Power exponents are integers; exp and
// the formal antiderivative Int are dedicated nodes.
enum class Kind {
    Number,     // exact rational constant
    Indep,      // the independent variable x
    Symbol,     // function symbol (name, deriv_order)
    ConstSym,   // named constant (derivative is zero), e.g. the integration constant a
    Sum,
    Product,
    Power,      // integer exponent
    ExpFn,      // exp(arg)
    AntiDeriv,  // Int(arg): a formal antiderivative w.r.t. x
};

class Expr;

struct ExprNode {
    Kind kind;
    Rational value;           // Number
    std::string name;         // Symbol, ConstSym
    int order = 0;            // Symbol deriv order
    std::vector<Expr> args;   // Sum, Product; [arg] for Power/ExpFn/AntiDeriv
    std::int64_t exponent = 0;  // Power
    bool canonical = false;
};

// Immutable expression handle with structural sharing. All algebraic
// operations are pure; any Expr may be shared across threads.
class Expr {
public:
    Expr();  // the number 0

    static Expr number(Rational v);
    static Expr integer(std::int64_t v);
    static Expr x();
    static Expr sym(std::string name, int deriv_order = 0);
    static Expr constant(std::string name);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr pow(Expr base, std::int64_t exponent);
    static Expr exp(Expr arg);
    static Expr antideriv(Expr arg);

    Kind kind() const { return node_->kind; }
    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    int deriv_order() const { return node_->order; }
    const std::vector<Expr>& args() const { return node_->args; }
    std::int64_t exponent() const { return node_->exponent; }
    bool is_canonical() const { return node_->canonical; }

    const ExprNode* raw() const { return node_.get(); }

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;

    friend Expr make_expr(ExprNode&& n, bool canonical);
};

// A function symbol occurrence: (name, deriv_order).
struct FunctionSymbol {
    std::string name;
    int deriv_order = 0;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(std::int64_t a, const Expr& b);

// Canonical form: sums/products flattened and expanded into an ordered sum of
// monomials, rationals folded, like terms collected, exp factors merged,
// Int linear in sums with rational coefficients pulled out. Idempotent.
Expr normalize(const Expr& e);

// Total derivative with respect to x. (name,k) -> (name,k+1), exp chain
// rule, d/dx Int(f) = f. Result is canonical.
Expr differentiate(const Expr& e);
Expr differentiate(const Expr& e, int times);

// Formal partial w.r.t. the occurrence (name, deriv_order); other derivative
// orders of the same name are held fixed. Throws std::invalid_argument if the
// symbol occurs under an Int node (no local partial exists there).
Expr partial_derivative(const Expr& e, const FunctionSymbol& s);

// Replace every occurrence of exactly (name, deriv_order); higher orders of
// the same name are untouched. Result is canonical.
Expr substitute(const Expr& e, const FunctionSymbol& target, const Expr& replacement);

bool occurs(const Expr& e, const FunctionSymbol& s);
// Highest deriv_order of `name` occurring in e, or -1 if absent.
int max_deriv_order(const Expr& e, const std::string& name);

// Deterministic total order on canonical expressions; <0, 0, >0.
int compare(const Expr& a, const Expr& b);

// Structural equality of canonical forms (i.e. semantic equality for the
// expression class of this toolkit).
bool equal(const Expr& a, const Expr& b);
bool is_zero(const Expr& e);

// Generalized Euler-Lagrange operator applied to e in the variable `var`:
// sum_{i=0}^{n} (-1)^i d^i/dx^i (partial e / partial var^{(i)}), where n is
// the highest derivative order of `var` in e.
Expr variational_derivative(const Expr& e, const std::string& var);

enum class RenderFormat { Plain, Latex, Sexpr };
std::string render(const Expr& e, RenderFormat format);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

// Parse the sexpr serialization format. Unknown function names are rejected.
Expr parse_sexpr(const std::string& text);

}  // namespace riclag

#endif
