#include "riclag/expr.hpp"

#include <sstream>

namespace riclag {

namespace {

std::string rat_str(const Rational& v) {
    std::ostringstream os;
    os << v;  // prints "n" or "n/d"
    return os.str();
}

// --- sexpr -----------------------------------------------------------------

void sexpr(const Expr& e, std::ostream& os) {
    switch (e.kind()) {
        case Kind::Number:
            os << rat_str(e.value());
            return;
        case Kind::Indep:
            os << "x";
            return;
        case Kind::Symbol:
            os << "(dn " << e.name() << " " << e.deriv_order() << ")";
            return;
        case Kind::ConstSym:
            os << "(const " << e.name() << ")";
            return;
        case Kind::Sum:
        case Kind::Product:
            os << (e.kind() == Kind::Sum ? "(+" : "(*");
            for (auto& a : e.args()) {
                os << " ";
                sexpr(a, os);
            }
            os << ")";
            return;
        case Kind::Power:
            os << "(^ ";
            sexpr(e.args()[0], os);
            os << " " << e.exponent() << ")";
            return;
        case Kind::ExpFn:
            os << "(exp ";
            sexpr(e.args()[0], os);
            os << ")";
            return;
        case Kind::AntiDeriv:
            os << "(int ";
            sexpr(e.args()[0], os);
            os << ")";
            return;
    }
}

// --- plain -----------------------------------------------------------------

std::string plain(const Expr& e);

std::string plain_atom(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number: {
            std::string s = rat_str(e.value());
            if (s.find('/') != std::string::npos || s[0] == '-') return "(" + s + ")";
            return s;
        }
        case Kind::Indep:
            return "x";
        case Kind::ConstSym:
            return e.name();
        case Kind::Symbol: {
            std::string s = e.name();
            for (int i = 0; i < e.deriv_order(); ++i) s += "'";
            return s;
        }
        case Kind::ExpFn:
            return "exp(" + plain(e.args()[0]) + ")";
        case Kind::AntiDeriv:
            return "int(" + plain(e.args()[0]) + ")";
        case Kind::Power:
            return "(" + plain(e.args()[0]) + ")^" + std::to_string(e.exponent());
        default:
            return "(" + plain(e) + ")";
    }
}

std::string plain_term(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            return rat_str(e.value());
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                if (i) s += "*";
                const Expr& f = e.args()[i];
                if (f.kind() == Kind::Number)
                    s += rat_str(f.value());
                else if (f.kind() == Kind::Power && f.args()[0].kind() != Kind::Sum &&
                         f.args()[0].kind() != Kind::Product)
                    s += plain_atom(f.args()[0]) + "^" + std::to_string(f.exponent());
                else
                    s += plain_atom(f);
            }
            return s;
        }
        case Kind::Power:
            if (e.args()[0].kind() != Kind::Sum && e.args()[0].kind() != Kind::Product)
                return plain_atom(e.args()[0]) + "^" + std::to_string(e.exponent());
            return plain_atom(e);
        default:
            return plain_atom(e);
    }
}

// Splits off a negative numeric coefficient for "a - b" style printing.
bool term_negative(const Expr& t, Expr& positive) {
    if (t.kind() == Kind::Number && t.value() < 0) {
        positive = Expr::number(-t.value());
        return true;
    }
    if (t.kind() == Kind::Product && t.args()[0].kind() == Kind::Number &&
        t.args()[0].value() < 0) {
        std::vector<Expr> f = t.args();
        f[0] = Expr::number(-f[0].value());
        positive = normalize(Expr::product(std::move(f)));
        return true;
    }
    return false;
}

std::string plain(const Expr& e) {
    if (e.kind() != Kind::Sum) return plain_term(e);
    std::string s;
    for (std::size_t i = 0; i < e.args().size(); ++i) {
        Expr pos;
        bool neg = term_negative(e.args()[i], pos);
        if (i == 0)
            s += neg ? "-" + plain_term(pos) : plain_term(e.args()[i]);
        else
            s += (neg ? " - " : " + ") + plain_term(neg ? pos : e.args()[i]);
    }
    return s;
}

// --- latex -----------------------------------------------------------------

std::string latex(const Expr& e);

std::string latex_name(const std::string& name) {
    if (name == "w") return "\\omega";
    if (name.size() > 1 && name[0] == 'a') return "\\alpha_{" + name.substr(1) + "}";
    if (name.size() > 1 && name[0] == 'r') return "r_{" + name.substr(1) + "}";
    return name;
}

std::string latex_symbol(const Expr& e) {
    std::string s = latex_name(e.name());
    if (e.deriv_order() >= 1 && e.deriv_order() <= 3) {
        for (int i = 0; i < e.deriv_order(); ++i) s += "'";
    } else if (e.deriv_order() >= 4) {
        s += "^{(" + std::to_string(e.deriv_order()) + ")}";
    }
    return s;
}

std::string latex_coeff(const Rational& v) {
    Rational a = v < 0 ? Rational(-v) : v;
    std::string sign = v < 0 ? "-" : "";
    if (denominator(a) == 1) return sign + numerator(a).str();
    return sign + "\\frac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
}

std::string latex_atom(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            return latex_coeff(e.value());
        case Kind::Indep:
            return "x";
        case Kind::ConstSym:
            return e.name();
        case Kind::Symbol:
            return latex_symbol(e);
        case Kind::ExpFn:
            return "e^{" + latex(e.args()[0]) + "}";
        case Kind::AntiDeriv:
            return "\\int " + latex(e.args()[0]) + "\\,dx";
        default:
            return "\\left(" + latex(e) + "\\right)";
    }
}

std::string latex_power(const Expr& base, std::int64_t k) {
    std::string b = latex_atom(base);
    if (base.kind() == Kind::Symbol && base.deriv_order() > 0) b = "{" + b + "}";
    if (base.kind() == Kind::AntiDeriv) b = "\\left(" + b + "\\right)";
    return b + "^{" + std::to_string(k) + "}";
}

std::string latex_term(const Expr& e) {
    switch (e.kind()) {
        case Kind::Number:
            return latex_coeff(e.value());
        case Kind::Power:
            if (e.args()[0].kind() != Kind::Sum && e.args()[0].kind() != Kind::Product)
                return latex_power(e.args()[0], e.exponent());
            return latex_atom(e);
        case Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                const Expr& f = e.args()[i];
                std::string piece;
                if (f.kind() == Kind::Number)
                    piece = latex_coeff(f.value());
                else if (f.kind() == Kind::Power && f.args()[0].kind() != Kind::Sum &&
                         f.args()[0].kind() != Kind::Product)
                    piece = latex_power(f.args()[0], f.exponent());
                else
                    piece = latex_atom(f);
                if (i) s += " ";
                s += piece;
            }
            return s;
        }
        default:
            return latex_atom(e);
    }
}

std::string latex(const Expr& e) {
    if (e.kind() != Kind::Sum) return latex_term(e);
    std::string s;
    for (std::size_t i = 0; i < e.args().size(); ++i) {
        Expr pos;
        bool neg = term_negative(e.args()[i], pos);
        if (i == 0)
            s += neg ? "-" + latex_term(pos) : latex_term(e.args()[i]);
        else
            s += (neg ? " - " : " + ") + latex_term(neg ? pos : e.args()[i]);
    }
    return s;
}

}  // namespace

std::string render(const Expr& e, RenderFormat format) {
    Expr c = normalize(e);
    switch (format) {
        case RenderFormat::Sexpr: {
            std::ostringstream os;
            sexpr(c, os);
            return os.str();
        }
        case RenderFormat::Plain:
            return plain(c);
        case RenderFormat::Latex:
            return latex(c);
    }
    return {};
}

}  // namespace riclag
