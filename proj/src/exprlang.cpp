#include "expofield/exprlang.hpp"

#include <cctype>
#include <set>

#include "expofield/errors.hpp"

namespace expofield {

using Kind = ETerm::Kind;

TermPtr ETerm::integer(Int v, SourcePos p) {
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::IntLit;
    t->num = std::move(v);
    t->pos = p;
    return t;
}

TermPtr ETerm::rational(Int n, Int d, SourcePos p) {
    if (d <= 0) throw UsageError("rational literal needs a positive denominator");
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::RatLit;
    t->num = std::move(n);
    t->den = std::move(d);
    t->pos = p;
    return t;
}

TermPtr ETerm::var(Symbol s, SourcePos p) {
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::Var;
    t->name = std::move(s);
    t->pos = p;
    return t;
}

TermPtr ETerm::binary(Kind k, TermPtr a, TermPtr b, SourcePos p) {
    if (k != Kind::Add && k != Kind::Sub && k != Kind::Mul)
        throw UsageError("not a binary constructor");
    auto t = std::make_shared<ETerm>();
    t->kind = k;
    t->lhs = std::move(a);
    t->rhs = std::move(b);
    t->pos = p;
    return t;
}

TermPtr ETerm::power(TermPtr base, unsigned e, SourcePos p) {
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::Pow;
    t->lhs = std::move(base);
    t->exponent = e;
    t->pos = p;
    return t;
}

TermPtr ETerm::exp(TermPtr arg, SourcePos p) {
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::Exp;
    t->lhs = std::move(arg);
    t->pos = p;
    return t;
}

TermPtr ETerm::neg(TermPtr arg, SourcePos p) {
    auto t = std::make_shared<ETerm>();
    t->kind = Kind::Neg;
    t->lhs = std::move(arg);
    t->pos = p;
    return t;
}

bool same_term(const ETerm& a, const ETerm& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Kind::IntLit: return a.num == b.num;
        case Kind::RatLit: return a.num == b.num && a.den == b.den;
        case Kind::Var: return a.name == b.name;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul: return same_term(*a.lhs, *b.lhs) && same_term(*a.rhs, *b.rhs);
        case Kind::Pow: return a.exponent == b.exponent && same_term(*a.lhs, *b.lhs);
        case Kind::Exp:
        case Kind::Neg: return same_term(*a.lhs, *b.lhs);
    }
    return false;
}

bool same_system(const ESystem& a, const ESystem& b) {
    if (a.atoms.size() != b.atoms.size()) return false;
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        const Atom &x = a.atoms[i], &y = b.atoms[i];
        if (x.rel != y.rel || !same_term(*x.lhs, *y.lhs) || !same_term(*x.rhs, *y.rhs))
            return false;
    }
    return true;
}

// Lexer ----------------------------------------------------------------------

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Eq, Neq, Amp,
                 Newline, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

const char* describe(Tok k) {
    switch (k) {
        case Tok::Int: return "integer";
        case Tok::Ident: return "identifier";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Eq: return "'='";
        case Tok::Neq: return "'!='";
        case Tok::Amp: return "'&'";
        case Tok::Newline: return "newline";
        case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view s, bool newlines) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        i += n;
        col += static_cast<int>(n);
    };
    while (i < s.size()) {
        char c = s[i];
        SourcePos here{line, col};
        if (c == '\n') {
            if (newlines) out.push_back({Tok::Newline, "\n", here});
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, std::string(s.substr(i, j - i)), here});
            advance(j - i);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), here});
            advance(j - i);
            continue;
        }
        Tok k;
        std::size_t len = 1;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            case '=': k = Tok::Eq; break;
            case '&': k = Tok::Amp; break;
            case '!':
                if (i + 1 < s.size() && s[i + 1] == '=') {
                    k = Tok::Neq;
                    len = 2;
                    break;
                }
                [[fallthrough]];
            default: throw SyntaxError(line, col, "a term");
        }
        out.push_back({k, std::string(s.substr(i, len)), here});
        advance(len);
    }
    out.push_back({Tok::End, "", SourcePos{line, col}});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
    const Token& peek() const { return toks_[i_]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    Token expect(Tok k, const std::string& what = "") {
        if (!at(k)) fail(what.empty() ? describe(k) : what);
        return take();
    }
    [[noreturn]] void fail(const std::string& expected) const {
        throw SyntaxError(peek().pos.line, peek().pos.col, expected);
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

// Term grammar ---------------------------------------------------------------

TermPtr parse_sum(Cursor& c);

TermPtr parse_unit(Cursor& c) {
    const Token& t = c.peek();
    SourcePos p = t.pos;
    switch (t.kind) {
        case Tok::Int: {
            Int n(c.take().text);
            if (c.at(Tok::Slash)) {
                c.take();
                Token d = c.expect(Tok::Int, "positive integer");
                Int den(d.text);
                if (den == 0) throw SyntaxError(d.pos.line, d.pos.col, "positive integer");
                return ETerm::rational(n, den, p);
            }
            return ETerm::integer(n, p);
        }
        case Tok::Ident: {
            Token id = c.take();
            if (id.text != "E") return ETerm::var(id.text, p);
            c.expect(Tok::LParen);
            TermPtr arg = parse_sum(c);
            c.expect(Tok::RParen);
            return ETerm::exp(arg, p);
        }
        case Tok::LParen: {
            c.take();
            TermPtr inner = parse_sum(c);
            c.expect(Tok::RParen);
            return inner;
        }
        case Tok::Minus: {
            c.take();
            return ETerm::neg(parse_unit(c), p);
        }
        default: c.fail("a term");
    }
}

TermPtr parse_pow(Cursor& c) {
    SourcePos p = c.peek().pos;
    TermPtr base = parse_unit(c);
    if (!c.at(Tok::Caret)) return base;
    c.take();
    Token e = c.expect(Tok::Int, "natural number");
    Int v(e.text);
    if (!v.fits_uint_p()) throw SyntaxError(e.pos.line, e.pos.col, "smaller exponent");
    return ETerm::power(base, static_cast<unsigned>(v.get_ui()), p);
}

TermPtr parse_prod(Cursor& c) {
    SourcePos p = c.peek().pos;
    TermPtr acc = parse_pow(c);
    while (c.at(Tok::Star)) {
        c.take();
        acc = ETerm::binary(Kind::Mul, acc, parse_pow(c), p);
    }
    return acc;
}

TermPtr parse_sum(Cursor& c) {
    SourcePos p = c.peek().pos;
    TermPtr acc = parse_prod(c);
    while (c.at(Tok::Plus) || c.at(Tok::Minus)) {
        Kind k = c.take().kind == Tok::Plus ? Kind::Add : Kind::Sub;
        acc = ETerm::binary(k, acc, parse_prod(c), p);
    }
    return acc;
}

void skip_newlines(Cursor& c) {
    while (c.at(Tok::Newline)) c.take();
}

}  // namespace

TermPtr parse_term(std::string_view text) {
    Cursor c(lex(text, false));
    TermPtr t = parse_sum(c);
    c.expect(Tok::End, "end of input");
    return t;
}

ESystem parse_system(std::string_view text) {
    Cursor c(lex(text, true));
    ESystem s;
    skip_newlines(c);
    for (;;) {
        Atom a;
        a.lhs = parse_sum(c);
        if (c.at(Tok::Eq)) {
            a.rel = Atom::Rel::Eq;
        } else if (c.at(Tok::Neq)) {
            a.rel = Atom::Rel::Neq;
        } else {
            c.fail("'=' or '!='");
        }
        c.take();
        a.rhs = parse_sum(c);
        s.atoms.push_back(std::move(a));
        if (c.at(Tok::Amp)) {
            c.take();
            skip_newlines(c);
            continue;
        }
        if (c.at(Tok::Newline)) {
            skip_newlines(c);
            if (c.at(Tok::End)) break;
            continue;
        }
        c.expect(Tok::End, "'&', newline or end of input");
        break;
    }
    return s;
}

// Element grammar: like terms, plus general division and the constant zeta.

namespace {

struct ElemParser {
    Cursor c;
    unsigned order;

    FieldElem sum() {
        FieldElem acc = prod();
        while (c.at(Tok::Plus) || c.at(Tok::Minus)) {
            bool plus = c.take().kind == Tok::Plus;
            FieldElem rhs = prod();
            acc = plus ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    FieldElem prod() {
        FieldElem acc = pow();
        while (c.at(Tok::Star) || c.at(Tok::Slash)) {
            Token op = c.take();
            FieldElem rhs = pow();
            if (op.kind == Tok::Star) {
                acc = acc * rhs;
            } else {
                if (rhs.is_zero()) throw DivisionByZero();
                acc = acc / rhs;
            }
        }
        return acc;
    }

    FieldElem pow() {
        FieldElem base = unit();
        if (!c.at(Tok::Caret)) return base;
        c.take();
        bool negative = false;
        if (c.at(Tok::Minus)) {
            c.take();
            negative = true;
        }
        Token e = c.expect(Tok::Int, "integer exponent");
        Int v(e.text);
        if (!v.fits_slong_p()) throw SyntaxError(e.pos.line, e.pos.col, "smaller exponent");
        long k = v.get_si();
        return base.pow(negative ? -k : k);
    }

    FieldElem unit() {
        switch (c.peek().kind) {
            case Tok::Int: return FieldElem(Rat(Int(c.take().text)));
            case Tok::Ident: {
                Token id = c.take();
                if (id.text == "zeta") {
                    if (order <= 1)
                        throw UsageError("zeta used in an element without a cyclotomic order");
                    return FieldElem(CycElem::zeta(order));
                }
                return FieldElem::var(id.text);
            }
            case Tok::LParen: {
                c.take();
                FieldElem inner = sum();
                c.expect(Tok::RParen);
                return inner;
            }
            case Tok::Minus: c.take(); return -pow();
            default: c.fail("an element");
        }
    }
};

}  // namespace

FieldElem parse_elem(std::string_view text, unsigned order) {
    ElemParser p{Cursor(lex(text, false)), order};
    FieldElem e = p.sum();
    p.c.expect(Tok::End, "end of input");
    return e;
}

// Printer ----------------------------------------------------------------------

namespace {

// Binding levels: 0 sum, 1 product, 2 power operand, 3 power base.
int level(const ETerm& t) {
    switch (t.kind) {
        case Kind::Add:
        case Kind::Sub: return 0;
        case Kind::Mul: return 1;
        case Kind::Pow: return 2;
        default: return 3;
    }
}

void emit(const ETerm& t, std::string& out);

void emit_at(const ETerm& t, int min_level, std::string& out) {
    if (level(t) < min_level) {
        out += '(';
        emit(t, out);
        out += ')';
    } else {
        emit(t, out);
    }
}

void emit(const ETerm& t, std::string& out) {
    switch (t.kind) {
        case Kind::IntLit: out += t.num.get_str(); break;
        case Kind::RatLit:
            out += t.num.get_str();
            out += '/';
            out += t.den.get_str();
            break;
        case Kind::Var: out += t.name; break;
        case Kind::Add:
        case Kind::Sub:
            emit_at(*t.lhs, 0, out);
            out += t.kind == Kind::Add ? '+' : '-';
            emit_at(*t.rhs, 1, out);
            break;
        case Kind::Mul:
            emit_at(*t.lhs, 1, out);
            out += '*';
            emit_at(*t.rhs, 2, out);
            break;
        case Kind::Pow:
            // A rational base is bracketed for the reader; the parse is the same.
            if (t.lhs->kind == Kind::RatLit) {
                out += '(';
                emit(*t.lhs, out);
                out += ')';
            } else {
                emit_at(*t.lhs, 3, out);
            }
            out += '^';
            out += std::to_string(t.exponent);
            break;
        case Kind::Exp:
            out += "E(";
            emit(*t.lhs, out);
            out += ')';
            break;
        case Kind::Neg:
            out += '-';
            emit_at(*t.lhs, 3, out);
            break;
    }
}

void collect(const ETerm& t, std::vector<Symbol>& out, std::set<Symbol>& seen) {
    if (t.kind == Kind::Var) {
        if (seen.insert(t.name).second) out.push_back(t.name);
        return;
    }
    if (t.lhs) collect(*t.lhs, out, seen);
    if (t.rhs) collect(*t.rhs, out, seen);
}

}  // namespace

std::string print(const ETerm& t) {
    std::string out;
    emit(t, out);
    return out;
}

std::string print(const ESystem& s) {
    std::string out;
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (i) out += " & ";
        out += print(*s.atoms[i].lhs);
        out += s.atoms[i].rel == Atom::Rel::Eq ? " = " : " != ";
        out += print(*s.atoms[i].rhs);
    }
    return out;
}

std::vector<Symbol> free_symbols(const ETerm& t) {
    std::vector<Symbol> out;
    std::set<Symbol> seen;
    collect(t, out, seen);
    return out;
}

std::vector<Symbol> free_symbols(const ESystem& s) {
    std::vector<Symbol> out;
    std::set<Symbol> seen;
    for (auto& a : s.atoms) {
        collect(*a.lhs, out, seen);
        collect(*a.rhs, out, seen);
    }
    return out;
}

int exp_depth(const ETerm& t) {
    int d = 0;
    if (t.lhs) d = exp_depth(*t.lhs);
    if (t.rhs) d = std::max(d, exp_depth(*t.rhs));
    return t.kind == Kind::Exp ? d + 1 : d;
}

FieldElem evaluate_term(const ETerm& t, const std::map<Symbol, FieldElem>& env,
                        const ExpOracle& exp) {
    switch (t.kind) {
        case Kind::IntLit: return FieldElem(Rat(t.num));
        case Kind::RatLit: return FieldElem(make_rat(t.num, t.den));
        case Kind::Var: {
            auto it = env.find(t.name);
            if (it == env.end()) throw UsageError("unbound variable " + t.name);
            return it->second;
        }
        case Kind::Add: return evaluate_term(*t.lhs, env, exp) + evaluate_term(*t.rhs, env, exp);
        case Kind::Sub: return evaluate_term(*t.lhs, env, exp) - evaluate_term(*t.rhs, env, exp);
        case Kind::Mul: return evaluate_term(*t.lhs, env, exp) * evaluate_term(*t.rhs, env, exp);
        case Kind::Pow: return evaluate_term(*t.lhs, env, exp).pow(t.exponent);
        case Kind::Exp: return exp(evaluate_term(*t.lhs, env, exp));
        case Kind::Neg: return -evaluate_term(*t.lhs, env, exp);
    }
    return FieldElem();
}

bool system_holds(const ESystem& s, const std::map<Symbol, FieldElem>& env,
                  const ExpOracle& exp) {
    for (auto& a : s.atoms) {
        bool eq = evaluate_term(*a.lhs, env, exp) == evaluate_term(*a.rhs, env, exp);
        if (eq != (a.rel == Atom::Rel::Eq)) return false;
    }
    return true;
}

}  // namespace expofield
