#include "expofield/json_io.hpp"

#include <cctype>
#include <set>

namespace expofield {

namespace {

json strs(const std::vector<FieldElem>& v) {
    json j = json::array();
    for (auto& e : v) j.push_back(e.str());
    return j;
}

json ints(const std::vector<Int>& v) {
    json j = json::array();
    for (auto& x : v) j.push_back(int_json(x));
    return j;
}

json elem_map(const std::map<Symbol, FieldElem>& m) {
    json j = json::object();
    for (auto& [k, v] : m) j[k] = v.str();
    return j;
}

json pairs_json(const std::vector<GraphPair>& g) {
    json j = json::array();
    for (auto& p : g) j.push_back({{"arg", p.arg.str()}, {"val", p.val.str()}});
    return j;
}

json verdict_json(const Verdict& v) { return {{"status", v.status}, {"evidence", v.evidence}}; }

// Reading ------------------------------------------------------------------

std::string ptr(const std::string& at, const std::string& key) {
    std::string k;
    for (char c : key) {
        if (c == '~')
            k += "~0";
        else if (c == '/')
            k += "~1";
        else
            k += c;
    }
    return at + "/" + k;
}
std::string ptr(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

const json& need(const json& j, const std::string& key, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(ptr(at, key), "missing field");
    return *it;
}

const json* maybe(const json& j, const std::string& key, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

void allow_only(const json& j, std::initializer_list<const char*> keys, const std::string& at) {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw SchemaError(ptr(at, it.key()), "unknown field");
}

const json& array_at(const json& j, const std::string& at) {
    if (!j.is_array()) throw SchemaError(at, "expected an array");
    return j;
}

std::string string_at(const json& j, const std::string& at) {
    if (!j.is_string()) throw SchemaError(at, "expected a string");
    return j.get<std::string>();
}

long integer_at(const json& j, const std::string& at, long lo, long hi) {
    if (!j.is_number_integer()) throw SchemaError(at, "expected an integer");
    long v = j.get<long>();
    if (v < lo || v > hi)
        throw SchemaError(at, "expected an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
    return v;
}

bool identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return s != "E" && s != "zeta";
}

Symbol symbol_at(const json& j, const std::string& at) {
    std::string s = string_at(j, at);
    if (!identifier(s)) throw SchemaError(at, "not an identifier: " + s);
    return s;
}

std::vector<Symbol> symbols_at(const json& j, const std::string& at) {
    std::vector<Symbol> out;
    std::set<Symbol> seen;
    for (std::size_t i = 0; i < array_at(j, at).size(); ++i) {
        Symbol s = symbol_at(j[i], ptr(at, i));
        if (!seen.insert(s).second) throw SchemaError(ptr(at, i), "duplicate symbol " + s);
        out.push_back(s);
    }
    return out;
}

FieldElem declared_elem(const json& j, unsigned order, const std::string& at,
                        const std::set<Symbol>& declared) {
    FieldElem e = elem_from_json(j, order, at);
    for (auto& s : e.symbols())
        if (!declared.count(s)) throw SchemaError(at, "undeclared symbol " + s);
    return e;
}

std::vector<FieldElem> elems_at(const json& j, unsigned order, const std::string& at,
                                const std::set<Symbol>& declared) {
    std::vector<FieldElem> out;
    for (std::size_t i = 0; i < array_at(j, at).size(); ++i)
        out.push_back(declared_elem(j[i], order, ptr(at, i), declared));
    return out;
}

unsigned order_at(const json& j, const std::string& at) {
    const json* o = maybe(j, "cyclotomic_order", at);
    return o ? static_cast<unsigned>(integer_at(*o, ptr(at, "cyclotomic_order"), 1, 1000)) : 1;
}

}  // namespace

json int_json(const Int& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

std::string canonical(const json& j) { return j.dump(2) + "\n"; }

json to_json(const EFieldPresentation& f) {
    json tr = json::array();
    for (auto& t : f.transcendentals) tr.push_back(t);
    return {{"name", f.name},
            {"cyclotomic_order", f.cyclotomic_order},
            {"transcendentals", tr},
            {"egraph", pairs_json(f.egraph)}};
}

json to_json(const ParametricVariety& v) {
    json flags = json::array();
    for (bool b : v.free_Y) flags.push_back(b);
    return {{"base_params", v.base_params}, {"locus_params", v.locus_params},
            {"X", strs(v.X)},               {"Y", strs(v.Y)},
            {"free_Y", flags},              {"cyclotomic_order", v.cyclotomic_order}};
}

json to_json(const FlatSystem& f) {
    json polys = json::array();
    for (auto& p : f.polys) polys.push_back(p.str());
    json aliases = json::object();
    for (auto& [k, t] : f.aliases) aliases[k] = print(*t);
    return {{"xvars", f.xvars}, {"yvars", f.yvars},     {"polys", polys},
            {"aux_count", f.aux_count}, {"aliases", aliases}, {"params", f.params},
            {"text", print(f)}};
}

json to_json(const FreenessCertificate& c) {
    if (c.free) return {{"free", true}};
    return {{"free", false}, {"m", ints(c.m)}, {"a", c.a.str()}};
}

json to_json(const ReductionResult& r) {
    json a = json::array();
    for (std::size_t i = 0; i < r.A.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < r.A.cols(); ++k) row.push_back(r.A(i, k).get_str());
        a.push_back(row);
    }
    return {{"vprime", to_json(r.vprime)}, {"A", a},
            {"b", strs(r.b)},              {"N", int_json(r.N)},
            {"index_map", r.index_map}};
}

json to_json(const SolveResult& s) {
    return {{"field", to_json(s.field)},
            {"d", strs(s.d)},
            {"Ed", strs(s.Ed)},
            {"assignment", elem_map(s.assignment)},
            {"auto_extended", pairs_json(s.auto_extended)},
            {"reduction", to_json(s.reduction)}};
}

json to_json(const HullPresentation& h) {
    return {{"generators", strs(h.generators)}, {"closed_under_graph", h.closed_under_graph}};
}

json to_json(const PresentationReport& r) {
    json v = json::array();
    for (auto& x : r.violations)
        v.push_back({{"kind", x.kind}, {"message", x.message}, {"certificate", x.certificate}});
    return {{"ok", r.ok()}, {"violations", v}, {"spot_checks", r.spot_checks}};
}

json to_json(const EmbeddedPresentation& e) {
    return {{"amb", to_json(e.amb)}, {"base_name", e.base_name}, {"inclusion", elem_map(e.inclusion)}};
}

json to_json(const WellDefCheck& c) {
    json k = json::array();
    for (auto& z : c.kernel_basis) k.push_back(ints(z));
    json verdicts = json::array();
    for (bool b : c.verdicts) verdicts.push_back(b);
    return {{"args", strs(c.args)},          {"values", strs(c.values)},
            {"kernel_basis", k},             {"products", strs(c.products)},
            {"verdicts", verdicts},          {"ok", c.ok()}};
}

json to_json(const Amalgam& a) {
    return {{"field", to_json(a.field)}, {"g1", elem_map(a.g1)}, {"g2", elem_map(a.g2)},
            {"check", to_json(a.check)}};
}

json to_json(const IndepSystem& s) {
    json nodes = json::object();
    for (auto& [a, f] : s.nodes) nodes[subset_name(a)] = to_json(f);
    json arrows = json::array();
    for (auto& [a, fa] : s.nodes)
        for (auto& [b, fb] : s.nodes)
            if ((a & ~b) == 0 && __builtin_popcount(b) == __builtin_popcount(a) + 1)
                arrows.push_back({{"from", subset_name(a)}, {"to", subset_name(b)}, {"map", json::object()}});
    return {{"n", s.n}, {"nodes", nodes}, {"arrows", arrows}};
}

json to_json(const SystemReport& r) {
    json f = json::array();
    for (auto& x : r.failures)
        f.push_back({{"a", subset_name(x.a)}, {"b", subset_name(x.b)}, {"reason", x.reason},
                     {"certificate", x.certificate}});
    return {{"ok", r.ok()}, {"checked", r.checked}, {"failures", f}};
}

json to_json(const Completion& c) {
    return {{"system", to_json(c.system)}, {"check", to_json(c.check)}};
}

json to_json(const VerifyReport& r) {
    json branches = json::array();
    for (auto& b : r.branches) {
        json j = {{"label", b.label},
                  {"variety", to_json(b.variety)},
                  {"freeness", to_json(b.freeness)},
                  {"realized", b.realized},
                  {"point", elem_map(b.point)}};
        if (!b.error.empty()) j["error"] = b.error;
        branches.push_back(j);
    }
    json out = {{"condition_i", verdict_json(r.condition_i)},
                {"condition_ii", verdict_json(r.condition_ii)},
                {"condition_iii", verdict_json(r.condition_iii)},
                {"branches", branches},
                {"pairs_checked", r.pairs_checked},
                {"non_applicable", r.non_applicable},
                {"ok", r.ok()}};
    if (r.realizing_extension) out["realizing_extension"] = to_json(*r.realizing_extension);
    return out;
}

json to_json(const SOP1Candidate& s) {
    json tree = json::object();
    for (auto& [k, v] : s.tree) tree[k] = strs(v);
    return {{"depth", s.depth}, {"field", to_json(s.field)}, {"tree", tree},
            {"phi", print(s.phi)}, {"psi", print(s.psi)}, {"phi_params", s.phi_params}};
}

json to_json(const StabilizerWitness& w) {
    return {{"field", to_json(w.field)}, {"c", w.c.str()}, {"a", w.a.str()},
            {"E_a", w.e_a.str()},        {"E_ca", w.e_ca.str()}};
}

json to_json(const TypeFamily& t) {
    json fields = json::array();
    for (auto& f : t.fields) fields.push_back(to_json(f));
    json certs = json::array();
    for (auto& c : t.certificates)
        certs.push_back({{"left", c.left}, {"right", c.right}, {"n", c.n},
                         {"left_value", c.left_value.str()}, {"right_value", c.right_value.str()}});
    return {{"x", t.x}, {"fields", fields}, {"certificates", certs}};
}

FieldElem elem_from_json(const json& j, unsigned order, const std::string& at) {
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number_integer())
        text = std::to_string(j.get<long long>());
    else
        throw SchemaError(at, "expected an element as a string");
    try {
        return parse_elem(text, order);
    } catch (const SyntaxError& e) {
        throw SchemaError(at, e.what());
    } catch (const DivisionByZero&) {
        throw SchemaError(at, "division by zero");
    } catch (const UsageError& e) {
        throw SchemaError(at, e.what());
    }
}

EFieldPresentation presentation_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    allow_only(j, {"name", "cyclotomic_order", "transcendentals", "egraph"}, at);
    EFieldPresentation f;
    if (auto* n = maybe(j, "name", at)) f.name = string_at(*n, ptr(at, "name"));
    f.cyclotomic_order = order_at(j, at);
    f.transcendentals = symbols_at(need(j, "transcendentals", at), ptr(at, "transcendentals"));
    std::set<Symbol> declared(f.transcendentals.begin(), f.transcendentals.end());
    std::string gat = ptr(at, "egraph");
    const json& g = array_at(need(j, "egraph", at), gat);
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::string pat = ptr(gat, i);
        if (!g[i].is_object()) throw SchemaError(pat, "expected an object");
        allow_only(g[i], {"arg", "val"}, pat);
        FieldElem arg = declared_elem(need(g[i], "arg", pat), f.cyclotomic_order, ptr(pat, "arg"), declared);
        FieldElem val = declared_elem(need(g[i], "val", pat), f.cyclotomic_order, ptr(pat, "val"), declared);
        if (arg.is_zero()) throw SchemaError(ptr(pat, "arg"), "graph arguments must be nonzero");
        if (val.is_zero()) throw SchemaError(ptr(pat, "val"), "graph values must be nonzero");
        f.egraph.push_back({arg, val});
    }
    return f;
}

ParametricVariety variety_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    allow_only(j, {"base_params", "locus_params", "X", "Y", "free_Y", "cyclotomic_order"}, at);
    ParametricVariety v;
    v.cyclotomic_order = order_at(j, at);
    v.base_params = symbols_at(need(j, "base_params", at), ptr(at, "base_params"));
    v.locus_params = symbols_at(need(j, "locus_params", at), ptr(at, "locus_params"));
    std::set<Symbol> declared(v.base_params.begin(), v.base_params.end());
    for (auto& s : v.locus_params)
        if (!declared.insert(s).second) throw SchemaError(ptr(at, "locus_params"), "symbol declared twice: " + s);
    v.X = elems_at(need(j, "X", at), v.cyclotomic_order, ptr(at, "X"), declared);
    v.Y = elems_at(need(j, "Y", at), v.cyclotomic_order, ptr(at, "Y"), declared);
    if (v.X.size() != v.Y.size()) throw SchemaError(ptr(at, "Y"), "X and Y differ in length");
    v.recompute_flags();
    if (auto* fy = maybe(j, "free_Y", at)) {
        std::string fat = ptr(at, "free_Y");
        if (array_at(*fy, fat).size() != v.X.size()) throw SchemaError(fat, "wrong length");
        for (std::size_t i = 0; i < fy->size(); ++i)
            if (!(*fy)[i].is_boolean() || (*fy)[i].get<bool>() != v.free_Y[i])
                throw SchemaError(ptr(fat, i), "does not match Y");
    }
    try {
        v.validate();
    } catch (const UsageError& e) {
        throw SchemaError(at, e.what());
    }
    return v;
}

EmbeddedPresentation embedded_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    allow_only(j, {"amb", "base_name", "inclusion"}, at);
    EmbeddedPresentation e;
    e.amb = presentation_from_json(need(j, "amb", at), ptr(at, "amb"));
    if (auto* b = maybe(j, "base_name", at)) e.base_name = string_at(*b, ptr(at, "base_name"));
    if (auto* inc = maybe(j, "inclusion", at)) {
        std::string iat = ptr(at, "inclusion");
        if (!inc->is_object()) throw SchemaError(iat, "expected an object");
        std::set<Symbol> declared(e.amb.transcendentals.begin(), e.amb.transcendentals.end());
        for (auto it = inc->begin(); it != inc->end(); ++it) {
            if (!identifier(it.key())) throw SchemaError(ptr(iat, it.key()), "not an identifier");
            e.inclusion[it.key()] = declared_elem(it.value(), e.amb.cyclotomic_order, ptr(iat, it.key()), declared);
        }
    }
    return e;
}

IndepSystem system_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    allow_only(j, {"n", "nodes", "arrows"}, at);
    IndepSystem s;
    s.n = static_cast<unsigned>(integer_at(need(j, "n", at), ptr(at, "n"), 3, kMaxSystemSize));
    std::string nat = ptr(at, "nodes");
    const json& nodes = need(j, "nodes", at);
    if (!nodes.is_object()) throw SchemaError(nat, "expected an object");
    for (auto it = nodes.begin(); it != nodes.end(); ++it) {
        Subset a;
        try {
            a = parse_subset(it.key());
        } catch (const UsageError& e) {
            throw SchemaError(ptr(nat, it.key()), e.what());
        }
        if (a > s.full()) throw SchemaError(ptr(nat, it.key()), "subset outside n");
        if (subset_name(a) != it.key()) throw SchemaError(ptr(nat, it.key()), "subset name is not canonical");
        s.nodes[a] = presentation_from_json(it.value(), ptr(nat, it.key()));
    }
    for (Subset a = 0; a < s.full(); ++a)
        if (!s.nodes.count(a)) throw SchemaError(nat, "missing node " + subset_name(a));
    if (auto* arrows = maybe(j, "arrows", at)) {
        std::string aat = ptr(at, "arrows");
        for (std::size_t i = 0; i < array_at(*arrows, aat).size(); ++i) {
            std::string pat = ptr(aat, i);
            const json& ar = (*arrows)[i];
            if (!ar.is_object()) throw SchemaError(pat, "expected an object");
            allow_only(ar, {"from", "to", "map"}, pat);
            Subset from, to;
            try {
                from = parse_subset(string_at(need(ar, "from", pat), ptr(pat, "from")));
                to = parse_subset(string_at(need(ar, "to", pat), ptr(pat, "to")));
            } catch (const SchemaError&) {
                throw;
            } catch (const UsageError& e) {
                throw SchemaError(pat, e.what());
            }
            if ((from & ~to) != 0) throw SchemaError(pat, "arrow does not follow inclusion");
            if (auto* m = maybe(ar, "map", pat)) {
                if (!m->is_object()) throw SchemaError(ptr(pat, "map"), "expected an object");
                for (auto it = m->begin(); it != m->end(); ++it)
                    if (!it.value().is_string() || it.value().get<std::string>() != it.key())
                        throw SchemaError(ptr(ptr(pat, "map"), it.key()),
                                          "inclusions must be the identity on symbols");
            }
        }
    }
    return s;
}

SOP1Candidate sop1_from_json(const json& j, const std::string& at) {
    if (!j.is_object()) throw SchemaError(at, "expected an object");
    allow_only(j, {"depth", "field", "tree", "phi", "psi", "phi_params"}, at);
    SOP1Candidate s;
    s.depth = static_cast<unsigned>(integer_at(need(j, "depth", at), ptr(at, "depth"), 0, 12));
    s.field = presentation_from_json(need(j, "field", at), ptr(at, "field"));
    auto text = [&](const char* key) -> std::optional<ESystem> {
        const json* t = maybe(j, key, at);
        if (!t) return std::nullopt;
        try {
            return parse_system(string_at(*t, ptr(at, key)));
        } catch (const SyntaxError& e) {
            throw SchemaError(ptr(at, key), e.what());
        }
    };
    if (auto p = text("phi")) s.phi = *p;
    if (auto p = text("psi")) s.psi = *p;
    if (auto* pp = maybe(j, "phi_params", at)) s.phi_params = symbols_at(*pp, ptr(at, "phi_params"));
    std::set<Symbol> declared(s.field.transcendentals.begin(), s.field.transcendentals.end());
    std::string tat = ptr(at, "tree");
    const json& tree = need(j, "tree", at);
    if (!tree.is_object()) throw SchemaError(tat, "expected an object");
    for (auto it = tree.begin(); it != tree.end(); ++it) {
        const std::string& key = it.key();
        if (key.size() >= s.depth || key.find_first_not_of("01") != std::string::npos)
            throw SchemaError(ptr(tat, key), "not a node of the tree");
        auto tuple = elems_at(it.value(), s.field.cyclotomic_order, ptr(tat, key), declared);
        if (tuple.size() != s.phi_params.size()) throw SchemaError(ptr(tat, key), "wrong tuple size");
        s.tree[key] = std::move(tuple);
    }
    std::size_t expected = s.depth == 0 ? 0 : (std::size_t{1} << s.depth) - 1;
    if (s.tree.size() != expected) throw SchemaError(tat, "tree is not complete to the given depth");
    return s;
}

}  // namespace expofield
