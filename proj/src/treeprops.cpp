#include "expofield/treeprops.hpp"

#include <set>
#include <stdexcept>

#include "expofield/errors.hpp"
#include "expofield/fresh.hpp"

namespace expofield {

namespace {

TermPtr rename(const TermPtr& t, const std::map<Symbol, Symbol>& names) {
    if (!t) return t;
    switch (t->kind) {
        case ETerm::Kind::IntLit:
        case ETerm::Kind::RatLit:
            return t;
        case ETerm::Kind::Var: {
            auto it = names.find(t->name);
            return it == names.end() ? t : ETerm::var(it->second, t->pos);
        }
        case ETerm::Kind::Pow:
            return ETerm::power(rename(t->lhs, names), t->exponent, t->pos);
        case ETerm::Kind::Exp:
            return ETerm::exp(rename(t->lhs, names), t->pos);
        case ETerm::Kind::Neg:
            return ETerm::neg(rename(t->lhs, names), t->pos);
        default:
            return ETerm::binary(t->kind, rename(t->lhs, names), rename(t->rhs, names), t->pos);
    }
}

bool uses_exp(const ESystem& s) {
    for (auto& a : s.atoms)
        if (exp_depth(*a.lhs) > 0 || exp_depth(*a.rhs) > 0) return true;
    return false;
}

FieldElem no_exp(const FieldElem&) {
    throw DomainError("UnsupportedShape", "psi must not mention E");
}

nlohmann::json elems_json(const std::vector<FieldElem>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (auto& e : v) j.push_back(e.str());
    return j;
}

bool builtin_templates(const ESystem& phi, const ESystem& psi, const std::vector<Symbol>& params) {
    return same_system(phi, default_phi()) && same_system(psi, default_psi()) &&
           params == std::vector<Symbol>{"y", "z"};
}

Verdict condition_ii(const ESystem& phi, const ESystem& psi, const std::vector<Symbol>& params) {
    if (builtin_templates(phi, psi, params))
        return {"pass",
                {{"argument", "E is a function: E(y1*x) = z1 and E(y2*x) = z2 with y1 = y2 force z1 = z2"}}};
    return {"unverified", {{"reason", "joint inconsistency is only checked for the built-in templates"}}};
}

bool psi_holds(const ESystem& psi, const std::vector<Symbol>& params,
               const std::vector<FieldElem>& left, const std::vector<FieldElem>& right) {
    std::map<Symbol, FieldElem> env;
    for (std::size_t k = 0; k < params.size(); ++k) {
        env[params[k] + "1"] = left[k];
        env[params[k] + "2"] = right[k];
    }
    return system_holds(psi, env, no_exp);
}

void check_psi_shape(const ESystem& psi) {
    if (uses_exp(psi)) throw DomainError("UnsupportedShape", "psi must not mention E", {{"psi", print(psi)}});
}

// Checks that the rows of parameters give a consistent instance of phi by
// realising it in an extension of f.
BranchCheck check_branch(const EFieldPresentation& f, const ESystem& phi,
                         const std::vector<Symbol>& params, std::vector<std::vector<FieldElem>> rows,
                         nlohmann::json label, bool builtin) {
    BranchCheck out;
    out.label = std::move(label);
    {
        std::set<std::string> seen;
        std::vector<std::vector<FieldElem>> unique;
        for (auto& r : rows)
            if (seen.insert(elems_json(r).dump()).second) unique.push_back(r);
        rows = std::move(unique);
    }
    ESystem inst;
    std::map<Symbol, FieldElem> env;
    std::vector<Symbol> names;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::map<Symbol, Symbol> ren;
        for (std::size_t p = 0; p < params.size(); ++p) {
            Symbol s = "_a" + std::to_string(k + 1) + "_" + params[p];
            ren[params[p]] = s;
            env[s] = rows[k][p];
            names.push_back(s);
        }
        for (auto& a : phi.atoms) inst.atoms.push_back({rename(a.lhs, ren), a.rel, rename(a.rhs, ren)});
    }
    std::set<Symbol> param_set(params.begin(), params.end());
    std::vector<Symbol> objects;
    for (auto& s : free_symbols(phi))
        if (!param_set.count(s)) objects.push_back(s);

    std::map<Symbol, std::size_t> index;
    try {
        if (builtin) {
            ParametricVariety& w = out.variety;
            w.base_params = f.transcendentals;
            w.locus_params = {"u", "r"};
            w.cyclotomic_order = f.cyclotomic_order;
            FieldElem u = FieldElem::var("u");
            w.X = {u};
            w.Y = {FieldElem::var("r")};
            for (auto& r : rows) {
                w.X.push_back(r[0] * u);
                w.Y.push_back(r[1]);
            }
            w.recompute_flags();
            index["x"] = 0;
        } else {
            FlatSystem flat = normalize(inst, names);
            for (auto& p : flat.polys) p = evaluate(p, env).num();
            flat.params.clear();
            out.variety = from_flat(flat, f.transcendentals, f.cyclotomic_order);
            for (std::size_t i = 0; i < flat.xvars.size(); ++i) index[flat.xvars[i]] = i;
        }
        out.freeness = additive_freeness(out.variety);
        if (!out.freeness.free) {
            out.error = "not additively free";
            return out;
        }
        SolveResult s = solve(f, out.variety);
        for (auto& o : objects) out.point[o] = s.d.at(index.at(o));
        std::map<Symbol, FieldElem> full = env;
        full.insert(out.point.begin(), out.point.end());
        const EFieldPresentation& g = s.field;
        out.realized = system_holds(inst, full, [&](const FieldElem& a) {
            auto r = e_eval(g, a);
            if (!r.defined())
                throw DomainError("MissingExponential", "E undefined at " + a.str(), {{"arg", a.str()}});
            return *r.value;
        });
        if (!out.realized) out.error = "realised point does not satisfy the branch";
        out.extension = s.field;
    } catch (const DomainError& e) {
        out.error = e.kind() + ": " + e.what();
    }
    return out;
}

Verdict condition_i(const std::vector<BranchCheck>& branches) {
    if (branches.empty()) return {"vacuous", {{"branches", 0}}};
    nlohmann::json failed = nlohmann::json::array();
    for (auto& b : branches)
        if (!b.realized) failed.push_back({{"branch", b.label}, {"error", b.error}});
    if (failed.empty()) return {"pass", {{"branches", branches.size()}}};
    return {"fail", {{"branches", branches.size()}, {"failures", failed}}};
}

void finish(VerifyReport& rep) {
    rep.condition_i = condition_i(rep.branches);
    for (auto& b : rep.branches)
        if (b.realized) {
            rep.realizing_extension = b.extension;
            break;
        }
}

}  // namespace

ESystem default_phi() { return parse_system("E(y*x) = z"); }
ESystem default_psi() { return parse_system("y1 = y2 & z1 != z2"); }

bool VerifyReport::ok() const {
    auto good = [](const Verdict& v) { return v.status == "pass" || v.status == "vacuous"; };
    return good(condition_i) && good(condition_ii) && good(condition_iii);
}

TP2Witness make_tp2(unsigned n, unsigned J, std::vector<FieldElem> c) {
    if (n < 1 || J < 1) throw UsageError("n and J must be at least 1");
    TP2Witness w;
    w.n = n;
    w.J = J;
    for (unsigned i = 1; i <= n; ++i) {
        Symbol t = "t" + std::to_string(i);
        w.field.transcendentals.push_back(t);
        w.b.push_back(FieldElem::var(t));
    }
    if (c.empty())
        for (unsigned j = 1; j <= J; ++j) c.push_back(FieldElem(static_cast<long>(j)));
    if (c.size() != J) throw UsageError("need exactly J values of c");
    for (std::size_t j = 0; j < J; ++j) {
        if (c[j].is_zero()) throw UsageError("c values must be nonzero");
        for (std::size_t k = 0; k < j; ++k)
            if (c[j] == c[k]) throw UsageError("c values must be distinct");
        for (auto& s : c[j].symbols())
            if (!w.field.declares(s)) throw UsageError("unknown symbol in c: " + s);
    }
    w.c = std::move(c);
    std::vector<FieldElem> one_b{FieldElem(1)};
    one_b.insert(one_b.end(), w.b.begin(), w.b.end());
    if (rank(coefficient_matrix(one_b)) != one_b.size())
        throw std::logic_error("1, b_1, ..., b_n are not linearly independent");
    return w;
}

VerifyReport verify_finite_witness(const TP2Witness& w,
                                   const std::vector<std::vector<unsigned>>& branches) {
    check_psi_shape(w.psi);
    VerifyReport rep;
    rep.condition_ii = condition_ii(w.phi, w.psi, w.phi_params);
    nlohmann::json failures = nlohmann::json::array();
    for (unsigned i = 0; i < w.n; ++i)
        for (unsigned j = 0; j < w.J; ++j)
            for (unsigned k = 0; k < w.J; ++k) {
                if (j == k) {
                    ++rep.non_applicable;
                    continue;
                }
                ++rep.pairs_checked;
                if (!psi_holds(w.psi, w.phi_params, w.param(i, j), w.param(i, k)))
                    failures.push_back({{"row", i + 1}, {"columns", {j + 1, k + 1}}});
            }
    if (rep.pairs_checked == 0)
        rep.condition_iii = {"vacuous", {{"pairs", 0}}};
    else if (failures.empty())
        rep.condition_iii = {"pass", {{"pairs", rep.pairs_checked}}};
    else
        rep.condition_iii = {"fail", {{"pairs", rep.pairs_checked}, {"failures", failures}}};

    bool builtin = builtin_templates(w.phi, w.psi, w.phi_params);
    for (auto& sigma : branches) {
        if (sigma.size() != w.n) throw UsageError("branch must have one entry per row");
        std::vector<std::vector<FieldElem>> rows;
        for (unsigned i = 0; i < w.n; ++i) {
            if (sigma[i] < 1 || sigma[i] > w.J) throw UsageError("branch entries must lie in 1..J");
            rows.push_back(w.param(i, sigma[i] - 1));
        }
        rep.branches.push_back(check_branch(w.field, w.phi, w.phi_params, rows, sigma, builtin));
    }
    finish(rep);
    return rep;
}

std::pair<TP2Witness, VerifyReport> tp2_witness(unsigned n, unsigned J,
                                                const std::vector<unsigned>& sigma) {
    TP2Witness w = make_tp2(n, J);
    VerifyReport r = verify_finite_witness(w, {sigma});
    return {std::move(w), std::move(r)};
}

VerifyReport verify_finite_witness(const SOP1Candidate& s, std::vector<std::string> branches) {
    check_psi_shape(s.psi);
    for (auto& [key, tuple] : s.tree) {
        if (key.size() >= s.depth || key.find_first_not_of("01") != std::string::npos)
            throw UsageError("tree key outside the tree: '" + key + "'");
        if (tuple.size() != s.phi_params.size()) throw UsageError("wrong tuple size at '" + key + "'");
    }
    std::size_t expected = s.depth == 0 ? 0 : (std::size_t{1} << s.depth) - 1;
    if (s.tree.size() != expected) throw UsageError("tree is not complete to the given depth");

    VerifyReport rep;
    rep.condition_ii = condition_ii(s.phi, s.psi, s.phi_params);
    nlohmann::json failures = nlohmann::json::array();
    for (auto& [eta, a] : s.tree) {
        auto one = s.tree.find(eta + "1");
        if (one == s.tree.end()) continue;
        std::string zero = eta + "0";
        for (auto& [nu, b] : s.tree) {
            if (nu.compare(0, zero.size(), zero) != 0) continue;
            ++rep.pairs_checked;
            if (!psi_holds(s.psi, s.phi_params, one->second, b))
                failures.push_back({{"eta", eta}, {"nu", nu}});
        }
    }
    if (rep.pairs_checked == 0)
        rep.condition_iii = {"vacuous", {{"pairs", 0}}};
    else if (failures.empty())
        rep.condition_iii = {"pass", {{"pairs", rep.pairs_checked}}};
    else
        rep.condition_iii = {"fail", {{"pairs", rep.pairs_checked}, {"failures", failures}}};

    if (branches.empty() && s.depth > 0) {
        for (std::size_t m = 0; m < (std::size_t{1} << s.depth); ++m) {
            std::string b;
            for (unsigned k = 0; k < s.depth; ++k) b += (m >> (s.depth - 1 - k)) & 1 ? '1' : '0';
            branches.push_back(b);
        }
    }
    bool builtin = builtin_templates(s.phi, s.psi, s.phi_params);
    for (auto& br : branches) {
        if (br.size() > s.depth || br.find_first_not_of("01") != std::string::npos)
            throw UsageError("bad branch '" + br + "'");
        std::vector<std::vector<FieldElem>> rows;
        for (std::size_t k = 0; k < br.size(); ++k) rows.push_back(s.tree.at(br.substr(0, k)));
        rep.branches.push_back(check_branch(s.field, s.phi, s.phi_params, rows, br, builtin));
    }
    finish(rep);
    return rep;
}

StabilizerWitness z_stabilizer_rational(const EFieldPresentation& f, const Rat& c) {
    if (c.get_den() == 1)
        throw DomainError("IntegerMultiplier", "integers stabilise the kernel; no witness exists",
                          {{"c", c.get_str()}});
    Int n = c.get_num(), m = c.get_den();
    unsigned order = f.cyclotomic_order;
    if (!m.fits_ulong_p() || order % m.get_ui() != 0)
        throw DomainError("CyclotomicOrderMismatch",
                          "the cyclotomic layer must contain the " + m.get_str() + "-th roots of unity",
                          {{"order", order}, {"m", m.get_str()}});
    std::set<Symbol> used(f.transcendentals.begin(), f.transcendentals.end());
    Symbol b = FreshNamer(used).next("b");
    FieldElem zeta(CycElem::zeta(order).pow(static_cast<long>(order / m.get_ui())));
    StabilizerWitness w;
    w.field = extend_graph(f, {{FieldElem::var(b), zeta}}, {b});
    w.c = FieldElem(c);
    w.a = FieldElem(Rat(m)) * FieldElem::var(b);
    w.e_a = *e_eval(w.field, w.a).value;
    w.e_ca = *e_eval(w.field, w.c * w.a).value;
    if (!w.e_a.is_one() || w.e_ca.is_one()) throw std::logic_error("stabiliser witness does not verify");
    return w;
}

StabilizerWitness z_stabilizer_transcendental(const EFieldPresentation& f, const FieldElem& c,
                                              const FieldElem& d) {
    for (auto* e : {&c, &d})
        for (auto& s : e->symbols())
            if (!f.declares(s)) throw UsageError("unknown symbol " + s);
    if (c.is_constant())
        throw DomainError("NotTranscendental", "c must be transcendental", {{"c", c.str()}});
    if (d.is_zero()) throw DomainError("ZeroValue", "d must be nonzero", {{"d", d.str()}});
    if (d.is_one()) throw UsageError("d must differ from 1");
    ParametricVariety v;
    v.base_params = f.transcendentals;
    v.locus_params = {"u"};
    v.cyclotomic_order = f.cyclotomic_order;
    FieldElem u = FieldElem::var("u");
    v.X = {u, c * u};
    v.Y = {FieldElem(1), d};
    v.recompute_flags();
    SolveResult s = solve(f, v);
    StabilizerWitness w;
    w.field = s.field;
    w.c = c;
    w.a = s.d[0];
    w.e_a = *e_eval(w.field, w.a).value;
    w.e_ca = *e_eval(w.field, c * w.a).value;
    if (!w.e_a.is_one() || w.e_ca != d) throw std::logic_error("stabiliser witness does not verify");
    return w;
}

TypeFamily type_family(const EFieldPresentation& f,
                       const std::vector<std::map<unsigned, FieldElem>>& assignments) {
    TypeFamily t;
    std::set<Symbol> used(f.transcendentals.begin(), f.transcendentals.end());
    t.x = used.count("x") ? FreshNamer(used).next("x") : Symbol("x");
    FieldElem x = FieldElem::var(t.x);
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        std::vector<GraphPair> pairs;
        for (auto& [n, v] : assignments[i]) {
            if (n == 0) throw UsageError("exponents must be positive");
            if (v.is_zero())
                throw DomainError("ZeroValue", "E(x^" + std::to_string(n) + ") must be nonzero",
                                  {{"assignment", i}, {"n", n}});
            pairs.push_back({x.pow(n), v});
        }
        EFieldPresentation g = extend_graph(f, pairs, {t.x});
        g.name = "T" + std::to_string(i + 1);
        t.fields.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < assignments.size(); ++i)
        for (std::size_t j = i + 1; j < assignments.size(); ++j)
            for (auto& [n, v] : assignments[i]) {
                auto it = assignments[j].find(n);
                if (it == assignments[j].end() || it->second == v) continue;
                t.certificates.push_back({i, j, n, v, it->second});
                break;
            }
    return t;
}

bool verify_distinction(const TypeFamily& t, const Distinction& d) {
    if (d.left >= t.fields.size() || d.right >= t.fields.size() || d.left_value == d.right_value)
        return false;
    FieldElem arg = FieldElem::var(t.x).pow(d.n);
    auto l = e_eval(t.fields[d.left], arg), r = e_eval(t.fields[d.right], arg);
    return l.defined() && r.defined() && *l.value == d.left_value && *r.value == d.right_value;
}

}  // namespace expofield
