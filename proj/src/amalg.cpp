#include "expofield/amalg.hpp"

#include <algorithm>
#include <set>

#include "expofield/errors.hpp"
#include "expofield/tdeg.hpp"

namespace expofield {

namespace {

nlohmann::json to_json(const ZVector& v) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& x : v) {
        if (x.fits_slong_p())
            j.push_back(x.get_si());
        else
            j.push_back(x.get_str());
    }
    return j;
}

std::vector<FieldElem> concat(std::vector<FieldElem> a, const std::vector<FieldElem>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<FieldElem> generators(const EFieldPresentation& f) {
    std::vector<FieldElem> g;
    for (auto& t : f.transcendentals) g.push_back(FieldElem::var(t));
    return g;
}

bool integral(const Rat& q) { return q.get_den() == 1; }

[[noreturn]] void ill_formed(const std::string& what, nlohmann::json cert) {
    throw DomainError("IllFormedExtension", what, std::move(cert));
}

// amb symbol -> base symbol, after checking that the inclusion is a renaming
// that respects the graph.
std::map<Symbol, Symbol> check_embedding(const EFieldPresentation& base,
                                         const EmbeddedPresentation& e) {
    const auto& amb = e.amb;
    if (amb.cyclotomic_order != base.cyclotomic_order)
        ill_formed(amb.name + " has a different cyclotomic order than the base",
                   {{"field", amb.name}});
    for (auto& [k, v] : e.inclusion)
        if (!base.declares(k)) ill_formed("inclusion maps an unknown symbol " + k, {{"symbol", k}});
    std::map<Symbol, Symbol> back;
    std::map<Symbol, FieldElem> subst;
    for (auto& t : base.transcendentals) {
        FieldElem img = FieldElem::var(t);
        if (auto it = e.inclusion.find(t); it != e.inclusion.end()) img = it->second;
        auto syms = img.symbols();
        if (syms.size() != 1 || img != FieldElem::var(*syms.begin()) || !amb.declares(*syms.begin()))
            ill_formed("inclusion of " + t + " is not a transcendental of " + amb.name,
                       {{"symbol", t}, {"image", img.str()}});
        if (!back.emplace(*syms.begin(), t).second)
            ill_formed("inclusion is not injective", {{"symbol", t}, {"image", img.str()}});
        subst[t] = img;
    }
    for (auto& p : base.egraph) {
        FieldElem arg = p.arg.substitute(subst), val = p.val.substitute(subst);
        auto r = e_eval(amb, arg);
        if (!r.defined() || *r.value != val)
            ill_formed("inclusion into " + amb.name + " does not preserve the graph",
                       {{"arg", p.arg.str()}, {"expected", val.str()},
                        {"actual", r.defined() ? nlohmann::json(r.value->str()) : nlohmann::json()}});
    }
    return back;
}

std::map<Symbol, FieldElem> renaming(const EFieldPresentation& amb,
                                     const std::map<Symbol, Symbol>& back,
                                     const std::string& prefix, std::set<Symbol>& used,
                                     std::vector<Symbol>& fresh) {
    std::map<Symbol, FieldElem> g;
    for (auto& s : amb.transcendentals) {
        if (auto it = back.find(s); it != back.end()) {
            g[s] = FieldElem::var(it->second);
            continue;
        }
        Symbol name = prefix + "_" + s;
        for (unsigned k = 2; used.count(name); ++k) name = prefix + "_" + s + "_" + std::to_string(k);
        used.insert(name);
        fresh.push_back(name);
        g[s] = FieldElem::var(name);
    }
    return g;
}

}  // namespace

bool acf_indep(const std::vector<FieldElem>& a, const std::vector<FieldElem>& b,
               const std::vector<FieldElem>& c) {
    auto ac = concat(a, c);
    return tdeg(ac, concat(b, c)) == tdeg(ac, c);
}

bool indep(const EFieldPresentation& f, const std::vector<FieldElem>& a,
           const std::vector<FieldElem>& b, const std::vector<FieldElem>& c) {
    auto ha = hull(f, concat(a, c)).generators;
    auto hb = hull(f, concat(b, c)).generators;
    auto hc = hull(f, c).generators;
    return acf_indep(ha, hb, hc);
}

bool WellDefCheck::ok() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](bool v) { return v; });
}

MergedGraph merge_graphs(const std::vector<GraphPair>& pairs) {
    MergedGraph out;
    auto& chk = out.check;
    for (auto& p : pairs) {
        chk.args.push_back(p.arg);
        chk.values.push_back(p.val);
    }
    if (pairs.empty()) return out;
    QMatrix m = coefficient_matrix(chk.args);
    chk.kernel_basis = integer_kernel(m);
    for (auto& z : chk.kernel_basis) {
        FieldElem prod = power_product(chk.values, z);
        chk.products.push_back(prod);
        chk.verdicts.push_back(prod.is_one());
        if (!prod.is_one())
            throw DomainError("WellDefFailure", "relation among graph arguments with product " + prod.str(),
                              {{"vector", to_json(z)}, {"product", prod.str()}});
    }

    Echelon ech = rref(m);
    const auto& piv = ech.pivots;
    bool all_integral = true;
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < pairs.size(); ++c)
            all_integral = all_integral && integral(ech.reduced(r, c));
    if (all_integral) {
        for (auto c : piv) out.pairs.push_back(pairs[c]);
        return out;
    }
    // Some argument is only a rational combination of the pivots: take a
    // Z-basis of the span through a Smith form of the coordinate matrix.
    Int l = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            Int d = ech.reduced(r, c).get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
    std::vector<ZVector> coords(piv.size(), ZVector(pairs.size()));
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t c = 0; c < pairs.size(); ++c)
            coords[r][c] = Rat(ech.reduced(r, c) * l).get_num();
    SmithForm sf = smith_form(coords, pairs.size());
    for (std::size_t j = 0; j < sf.diagonal.size(); ++j) {
        ZVector col(pairs.size());
        FieldElem arg;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            col[i] = sf.v[i][j];
            if (col[i] != 0) arg += FieldElem(Rat(col[i])) * pairs[i].arg;
        }
        out.pairs.push_back({arg, power_product(chk.values, col)});
    }
    return out;
}

Amalgam amalgamate2(const EFieldPresentation& base, const EmbeddedPresentation& f1,
                    const EmbeddedPresentation& f2) {
    auto back1 = check_embedding(base, f1);
    auto back2 = check_embedding(base, f2);
    std::string p1 = f1.amb.name, p2 = f2.amb.name;
    if (p1 == p2) {
        p1 += "1";
        p2 += "2";
    }
    std::set<Symbol> used(base.transcendentals.begin(), base.transcendentals.end());
    Amalgam out;
    auto& g = out.field;
    g.name = "G";
    g.cyclotomic_order = base.cyclotomic_order;
    g.transcendentals = base.transcendentals;
    out.g1 = renaming(f1.amb, back1, p1, used, g.transcendentals);
    out.g2 = renaming(f2.amb, back2, p2, used, g.transcendentals);
    std::vector<GraphPair> pairs;
    for (auto& p : f1.amb.egraph) pairs.push_back({p.arg.substitute(out.g1), p.val.substitute(out.g1)});
    for (auto& p : f2.amb.egraph) pairs.push_back({p.arg.substitute(out.g2), p.val.substitute(out.g2)});
    MergedGraph merged = merge_graphs(pairs);
    g.egraph = std::move(merged.pairs);
    out.check = std::move(merged.check);
    return out;
}

std::string subset_name(Subset s) {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < 32; ++i) {
        if (!(s & (1u << i))) continue;
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    }
    return out + "}";
}

Subset parse_subset(const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw UsageError("bad subset name: " + text);
    Subset s = 0;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (item.empty() || item.size() > 2 || !std::all_of(item.begin(), item.end(), ::isdigit))
            throw UsageError("bad subset name: " + text);
        unsigned i = std::stoul(item);
        if (i >= kMaxSystemSize) throw UsageError("subset element out of range: " + text);
        s |= 1u << i;
        if (comma == std::string::npos) break;
        pos = comma + 1;
        if (pos == body.size()) throw UsageError("bad subset name: " + text);
    }
    return s;
}

namespace {

void check_shape(const IndepSystem& s) {
    if (s.n < 3 || s.n > kMaxSystemSize)
        throw UsageError("system size must be between 3 and " + std::to_string(kMaxSystemSize));
    for (auto& [a, f] : s.nodes)
        if (a > s.full()) throw UsageError("node " + subset_name(a) + " is outside n");
    for (Subset a = 0; a < s.full(); ++a)
        if (!s.nodes.count(a)) throw UsageError("missing node " + subset_name(a));
}

bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

std::vector<FieldElem> union_generators(const IndepSystem& s, const std::vector<Subset>& which) {
    std::set<Symbol> seen;
    std::vector<FieldElem> out;
    for (auto w : which)
        for (auto& t : s.nodes.at(w).transcendentals)
            if (seen.insert(t).second) out.push_back(FieldElem::var(t));
    return out;
}

}  // namespace

SystemReport verify_independent_system(const IndepSystem& s) {
    check_shape(s);
    SystemReport rep;
    for (auto& [b, fb] : s.nodes) {
        for (auto& [a, fa] : s.nodes) {
            if (a == b || !is_subset(a, b)) continue;
            ++rep.checked;
            for (auto& t : fa.transcendentals)
                if (!fb.declares(t)) {
                    rep.failures.push_back({a, b, "functoriality", {{"symbol", t}}});
                    goto next;
                }
            for (auto& p : fa.egraph) {
                auto r = e_eval(fb, p.arg);
                if (!r.defined() || *r.value != p.val) {
                    rep.failures.push_back({a, b, "functoriality", {{"arg", p.arg.str()}}});
                    goto next;
                }
            }
            {
                std::vector<Subset> below, beside;
                for (auto& [c, fc] : s.nodes) {
                    if (c != a && is_subset(c, a)) below.push_back(c);
                    if (is_subset(c, b) && !is_subset(a, c)) beside.push_back(c);
                }
                if (beside.empty()) continue;
                auto A = generators(fa);
                auto B = union_generators(s, beside);
                auto C = union_generators(s, below);
                auto ha = hull(fb, concat(A, C)).generators;
                auto hb = hull(fb, concat(B, C)).generators;
                auto hc = hull(fb, C).generators;
                auto ac = concat(ha, hc);
                std::size_t over_c = tdeg(ac, hc), over_bc = tdeg(ac, concat(hb, hc));
                if (over_c != over_bc)
                    rep.failures.push_back({a, b, "independence",
                                            {{"tdeg_over_base", over_c}, {"tdeg_over_side", over_bc}}});
            }
        next:;
        }
    }
    return rep;
}

Completion complete_system(const IndepSystem& s) {
    check_shape(s);
    Completion out;
    out.system = s;
    out.system.nodes.erase(s.full());
    EFieldPresentation top;
    top.name = "F" + subset_name(s.full());
    top.cyclotomic_order = s.nodes.at(0).cyclotomic_order;
    std::set<Symbol> seen;
    std::vector<GraphPair> pairs;
    for (unsigned i = 0; i < s.n; ++i) {
        const auto& node = s.nodes.at(s.full() & ~(1u << i));
        if (node.cyclotomic_order != top.cyclotomic_order)
            throw UsageError("nodes disagree on the cyclotomic order");
        for (auto& t : node.transcendentals)
            if (seen.insert(t).second) top.transcendentals.push_back(t);
        pairs.insert(pairs.end(), node.egraph.begin(), node.egraph.end());
    }
    MergedGraph merged = merge_graphs(pairs);
    top.egraph = std::move(merged.pairs);
    out.check = std::move(merged.check);
    out.system.nodes[s.full()] = std::move(top);
    return out;
}

}  // namespace expofield
