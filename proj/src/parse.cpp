#include "riclag/expr.hpp"

#include <cctype>

namespace riclag {

namespace {

struct Token {
    enum Type { LParen, RParen, Atom, End } type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {Token::End, "", start};
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            return {Token::LParen, "(", start};
        }
        if (c == ')') {
            ++i_;
            return {Token::RParen, ")", start};
        }
        std::string atom;
        while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) &&
               s_[i_] != '(' && s_[i_] != ')')
            atom += s_[i_++];
        return {Token::Atom, atom, start};
    }

    Token peek() {
        std::size_t save = i_;
        Token t = next();
        i_ = save;
        return t;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

bool valid_function_name(const std::string& n) {
    if (n == "w" || n == "y" || n == "z" || n == "W" || n == "q") return true;
    if (n.size() >= 2 && (n[0] == 'a' || n[0] == 'r')) {
        for (std::size_t i = 1; i < n.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(n[i]))) return false;
        return true;
    }
    return false;
}

bool valid_const_name(const std::string& n) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0]))) return false;
    for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
}

Expr parse_atom(const Token& t) {
    if (t.text == "x") return Expr::x();
    auto slash = t.text.find('/');
    if (slash != std::string::npos) {
        std::string num = t.text.substr(0, slash);
        std::string den = t.text.substr(slash + 1);
        if (!is_integer(num) || !is_integer(den))
            throw ParseError(t.pos, "malformed rational '" + t.text + "'");
        using boost::multiprecision::cpp_int;
        cpp_int d(den);
        if (d == 0) throw ParseError(t.pos, "zero denominator");
        return Expr::number(Rational(cpp_int(num), d));
    }
    if (is_integer(t.text))
        return Expr::number(Rational(boost::multiprecision::cpp_int(t.text)));
    throw ParseError(t.pos, "unexpected atom '" + t.text + "'");
}

Expr parse_expr(Lexer& lex) {
    Token t = lex.next();
    if (t.type == Token::End) throw ParseError(t.pos, "unexpected end of input");
    if (t.type == Token::RParen) throw ParseError(t.pos, "unexpected ')'");
    if (t.type == Token::Atom) return parse_atom(t);

    Token head = lex.next();
    if (head.type != Token::Atom)
        throw ParseError(head.pos, "expected operator after '('");

    auto expect_rparen = [&lex]() {
        Token r = lex.next();
        if (r.type != Token::RParen) throw ParseError(r.pos, "expected ')'");
    };

    if (head.text == "+" || head.text == "*") {
        std::vector<Expr> args;
        while (lex.peek().type != Token::RParen) {
            if (lex.peek().type == Token::End)
                throw ParseError(lex.peek().pos, "unterminated list");
            args.push_back(parse_expr(lex));
        }
        lex.next();  // ')'
        if (args.empty()) throw ParseError(head.pos, "empty operator application");
        return head.text == "+" ? Expr::sum(std::move(args))
                                : Expr::product(std::move(args));
    }
    if (head.text == "^") {
        Expr base = parse_expr(lex);
        Token k = lex.next();
        if (k.type != Token::Atom || !is_integer(k.text))
            throw ParseError(k.pos, "expected integer exponent");
        Expr r = Expr::pow(std::move(base), std::stoll(k.text));
        expect_rparen();
        return r;
    }
    if (head.text == "exp" || head.text == "int") {
        Expr arg = parse_expr(lex);
        Expr r = head.text == "exp" ? Expr::exp(std::move(arg))
                                    : Expr::antideriv(std::move(arg));
        expect_rparen();
        return r;
    }
    if (head.text == "dn") {
        Token name = lex.next();
        if (name.type != Token::Atom)
            throw ParseError(name.pos, "expected function name");
        if (!valid_function_name(name.text))
            throw ParseError(name.pos, "unknown function name '" + name.text + "'");
        Token k = lex.next();
        if (k.type != Token::Atom || !is_integer(k.text) || k.text[0] == '-')
            throw ParseError(k.pos, "expected non-negative derivative order");
        Expr r = Expr::sym(name.text, std::stoi(k.text));
        expect_rparen();
        return r;
    }
    if (head.text == "const") {
        Token name = lex.next();
        if (name.type != Token::Atom || !valid_const_name(name.text))
            throw ParseError(name.pos, "expected constant name");
        Expr r = Expr::constant(name.text);
        expect_rparen();
        return r;
    }
    throw ParseError(head.pos, "unknown operator '" + head.text + "'");
}

}  // namespace

Expr parse_sexpr(const std::string& text) {
    Lexer lex(text);
    Expr e = parse_expr(lex);
    Token t = lex.next();
    if (t.type != Token::End) throw ParseError(t.pos, "trailing input");
    return normalize(e);
}

}  // namespace riclag
