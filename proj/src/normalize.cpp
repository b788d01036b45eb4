#include <set>
#include <sstream>

#include "expofield/errors.hpp"
#include "expofield/exprlang.hpp"
#include "expofield/fresh.hpp"

namespace expofield {

using Kind = ETerm::Kind;

namespace {

using Fresh = FreshNamer;

std::set<Symbol> symbol_set(const ESystem& s, const std::vector<Symbol>& extra) {
    auto v = free_symbols(s);
    std::set<Symbol> out(v.begin(), v.end());
    out.insert(extra.begin(), extra.end());
    return out;
}

bool is_zero_literal(const ETerm& t) { return t.kind == Kind::IntLit && t.num == 0; }

struct Flattener {
    std::set<Symbol> params;
    std::set<Symbol> unknowns;
    Fresh fresh;
    FlatSystem out;
    std::map<std::string, Symbol> pair_of;  // canonical argument text -> y

    MPoly to_poly(const ETerm& t) {
        switch (t.kind) {
            case Kind::IntLit: return MPoly(CycElem(Rat(t.num)));
            case Kind::RatLit: return MPoly(CycElem(make_rat(t.num, t.den)));
            case Kind::Var: return MPoly::var(t.name);
            case Kind::Add: return to_poly(*t.lhs) + to_poly(*t.rhs);
            case Kind::Sub: return to_poly(*t.lhs) + to_poly(*t.rhs).scaled(CycElem(-1));
            case Kind::Mul: return to_poly(*t.lhs) * to_poly(*t.rhs);
            case Kind::Pow: return to_poly(*t.lhs).pow(t.exponent);
            case Kind::Neg: return to_poly(*t.lhs).scaled(CycElem(-1));
            case Kind::Exp: return MPoly::var(pair(*t.lhs));
        }
        return MPoly();
    }

    Symbol pair(const ETerm& arg) {
        MPoly p = to_poly(arg);
        std::string key = p.str();
        if (auto it = pair_of.find(key); it != pair_of.end()) return it->second;
        Symbol x;
        if (p.terms().size() == 1 && p.total_degree() == 1 &&
            p.leading_coeff().is_one() && unknowns.count(p.leading_monomial().factors()[0].first)) {
            x = p.leading_monomial().factors()[0].first;
        } else {
            x = fresh.next("_u");
            out.polys.push_back(MPoly::var(x) - p);
            out.aliases[x] = std::make_shared<ETerm>(arg);
            ++out.aux_count;
        }
        Symbol y = fresh.next("_v");
        out.xvars.push_back(x);
        out.yvars.push_back(y);
        pair_of[key] = y;
        return y;
    }
};

}  // namespace

ESystem eliminate_inequations(const ESystem& s, FreshNames fresh_names) {
    Fresh fresh(symbol_set(s, {}), fresh_names.start);
    ESystem out;
    for (auto& a : s.atoms) {
        if (a.rel == Atom::Rel::Eq) {
            out.atoms.push_back(a);
            continue;
        }
        TermPtr w = ETerm::var(fresh.next("_w"));
        TermPtr diff = is_zero_literal(*a.rhs) ? a.lhs : ETerm::binary(Kind::Sub, a.lhs, a.rhs);
        out.atoms.push_back(Atom{ETerm::binary(Kind::Mul, diff, w), Atom::Rel::Eq,
                                 ETerm::integer(1)});
    }
    return out;
}

FlatSystem flatten(const ESystem& s, const std::vector<Symbol>& params, FreshNames fresh_names) {
    for (auto& a : s.atoms)
        if (a.rel != Atom::Rel::Eq)
            throw UsageError("flatten needs an equation-only system; eliminate inequations first");
    auto syms = free_symbols(s);
    Flattener f{std::set<Symbol>(params.begin(), params.end()), {},
                Fresh(symbol_set(s, params), fresh_names.start), {}, {}};
    for (auto& v : syms)
        if (!f.params.count(v)) f.unknowns.insert(v);
    for (auto& a : s.atoms) {
        MPoly p = f.to_poly(*a.lhs) - f.to_poly(*a.rhs);
        if (!p.is_zero()) f.out.polys.push_back(std::move(p));
    }
    // Unknowns that never occur under E are still declared, each with a free partner.
    std::set<Symbol> paired(f.out.xvars.begin(), f.out.xvars.end());
    for (auto& v : syms) {
        if (!f.unknowns.count(v) || paired.count(v)) continue;
        f.out.xvars.push_back(v);
        f.out.yvars.push_back(f.fresh.next("_v"));
    }
    for (auto& v : syms)
        if (f.params.count(v)) f.out.params.push_back(v);
    return std::move(f.out);
}

FlatSystem normalize(const ESystem& s, const std::vector<Symbol>& params, FreshNames fresh) {
    ESystem eq = eliminate_inequations(s, fresh);
    std::size_t witnesses = 0;
    for (auto& a : s.atoms) witnesses += a.rel == Atom::Rel::Neq;
    FlatSystem f = flatten(eq, params, fresh);
    f.aux_count += witnesses;
    return f;
}

std::string print(const FlatSystem& f) {
    std::ostringstream os;
    unsigned order = 1;
    for (auto& p : f.polys) order = std::max(order, p.order());
    if (order > 1) os << "order: " << order << '\n';
    if (!f.params.empty()) {
        os << "params:";
        for (std::size_t i = 0; i < f.params.size(); ++i) os << (i ? ", " : " ") << f.params[i];
        os << '\n';
    }
    os << "aux_count: " << f.aux_count << '\n';
    for (std::size_t i = 0; i < f.xvars.size(); ++i)
        os << f.yvars[i] << " := E(" << f.xvars[i] << ")\n";
    for (auto& p : f.polys) os << p.str() << " = 0\n";
    return os.str();
}

FlatSystem parse_flat(std::string_view text) {
    FlatSystem f;
    unsigned order = 1;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        auto field = [&](const std::string& key) -> std::optional<std::string> {
            if (line.rfind(key + ":", 0) != 0) return std::nullopt;
            return trim(line.substr(key.size() + 1));
        };
        if (auto v = field("order")) {
            order = static_cast<unsigned>(std::stoul(*v));
        } else if (auto v = field("aux_count")) {
            f.aux_count = std::stoul(*v);
        } else if (auto v = field("params")) {
            std::istringstream ps(*v);
            std::string p;
            while (std::getline(ps, p, ',')) f.params.push_back(trim(p));
        } else if (auto pos = line.find(":="); pos != std::string::npos) {
            std::string y = trim(line.substr(0, pos));
            std::string rhs = trim(line.substr(pos + 2));
            if (rhs.size() < 4 || rhs.rfind("E(", 0) != 0 || rhs.back() != ')')
                throw SyntaxError(lineno, static_cast<int>(pos) + 3, "E(x)");
            f.yvars.push_back(y);
            f.xvars.push_back(trim(rhs.substr(2, rhs.size() - 3)));
        } else if (auto pos = line.rfind('='); pos != std::string::npos) {
            if (trim(line.substr(pos + 1)) != "0")
                throw SyntaxError(lineno, static_cast<int>(pos) + 2, "0");
            FieldElem e = parse_elem(line.substr(0, pos), order);
            if (!e.den().is_constant()) throw SyntaxError(lineno, 1, "a polynomial");
            f.polys.push_back(e.num().scaled(e.den().constant().inverse()));
        } else {
            throw SyntaxError(lineno, 1, "a pairing or an equation");
        }
    }
    return f;
}

bool flat_holds(const FlatSystem& f, const std::map<Symbol, FieldElem>& xvalues,
                const ExpOracle& exp) {
    std::map<Symbol, FieldElem> env;
    for (std::size_t i = 0; i < f.xvars.size(); ++i) {
        auto it = xvalues.find(f.xvars[i]);
        if (it == xvalues.end()) throw UsageError("no value for " + f.xvars[i]);
        env[f.xvars[i]] = it->second;
        env[f.yvars[i]] = exp(it->second);
    }
    for (auto& p : f.polys)
        if (!evaluate(p, env).is_zero()) return false;
    return true;
}

}  // namespace expofield
