#pragma once

// Random presentations, extensions and independent systems.

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "expofield/amalg.hpp"

namespace expofield::testing {

inline std::string digits(Subset a) {
    std::string s;
    for (unsigned i = 0; i < kMaxSystemSize; ++i)
        if (a & (1u << i)) s += std::to_string(i);
    return s;
}

// Adds fresh transcendentals s, v and usually the pair (s + k*old -> v * old').
inline void add_fresh_pair(std::mt19937& rng, EFieldPresentation& f, const std::string& tag) {
    std::vector<Symbol> old = f.transcendentals;
    Symbol s = "s" + tag, v = "v" + tag;
    f.transcendentals.push_back(s);
    f.transcendentals.push_back(v);
    std::uniform_int_distribution<int> coin(0, 3), k(-2, 2);
    if (coin(rng) == 0) return;
    FieldElem arg = FieldElem::var(s), val = FieldElem::var(v);
    if (!old.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, old.size() - 1);
        arg += FieldElem(k(rng)) * FieldElem::var(old[pick(rng)]);
        if (coin(rng) == 1) val *= FieldElem::var(old[pick(rng)]);
    }
    if (coin(rng) == 2) val = val.pow(2);
    f.egraph.push_back({arg, val});
}

inline EFieldPresentation random_base(std::mt19937& rng, bool shared_pair) {
    EFieldPresentation f;
    if (shared_pair) {
        f.transcendentals.push_back("tau");
        f.egraph.push_back({FieldElem(1), FieldElem::var("tau")});
    }
    add_fresh_pair(rng, f, "b");
    return f;
}

// An extension of `base` with the base transcendentals possibly renamed.
inline EmbeddedPresentation random_extension(std::mt19937& rng, const EFieldPresentation& base,
                                             const std::string& name, bool rename) {
    EmbeddedPresentation e;
    e.amb = base;
    e.amb.name = name;
    if (rename) {
        std::map<Symbol, FieldElem> sub;
        std::vector<Symbol> ts;
        for (auto& t : base.transcendentals) {
            Symbol r = t + "_" + name;
            sub[t] = FieldElem::var(r);
            e.inclusion[t] = FieldElem::var(r);
            ts.push_back(r);
        }
        e.amb.transcendentals = ts;
        for (auto& p : e.amb.egraph) p = {p.arg.substitute(sub), p.val.substitute(sub)};
    }
    std::uniform_int_distribution<int> extra(1, 2);
    int k = extra(rng);
    for (int i = 0; i < k; ++i) add_fresh_pair(rng, e.amb, name + std::to_string(i));
    return e;
}

// Each node is the union of its subnodes plus fresh transcendentals and a
// fresh pair; everything new is generic, so the system is independent.
inline IndepSystem random_system(std::mt19937& rng, unsigned n, bool shared_pair) {
    IndepSystem s;
    s.n = n;
    std::vector<Subset> order;
    for (Subset a = 0; a < s.full(); ++a) order.push_back(a);
    std::stable_sort(order.begin(), order.end(),
                     [](Subset x, Subset y) { return __builtin_popcount(x) < __builtin_popcount(y); });
    for (Subset a : order) {
        EFieldPresentation f;
        f.name = "F" + subset_name(a);
        std::set<Symbol> seen;
        std::set<std::string> pairs;
        for (auto& [c, fc] : s.nodes) {
            if (c == a || (c & ~a) != 0) continue;
            for (auto& t : fc.transcendentals)
                if (seen.insert(t).second) f.transcendentals.push_back(t);
            for (auto& p : fc.egraph)
                if (pairs.insert(p.arg.str() + "|" + p.val.str()).second) f.egraph.push_back(p);
        }
        if (a == 0 && shared_pair) {
            f.transcendentals.push_back("tau");
            f.egraph.push_back({FieldElem(1), FieldElem::var("tau")});
        }
        add_fresh_pair(rng, f, "_" + digits(a));
        s.nodes[a] = std::move(f);
    }
    return s;
}

// Pairs of elements in the Z-span of the graph.
inline FieldElem random_span_elem(std::mt19937& rng, const EFieldPresentation& f) {
    std::uniform_int_distribution<int> z(-3, 3);
    FieldElem a;
    for (auto& p : f.egraph) a += FieldElem(z(rng)) * p.arg;
    return a;
}

// Number of (a, b) pairs among 20 random span pairs where E(a+b) != E(a)E(b).
inline int homomorphism_violations(std::mt19937& rng, const EFieldPresentation& f) {
    int bad = 0;
    for (int k = 0; k < 20; ++k) {
        FieldElem a = random_span_elem(rng, f), b = random_span_elem(rng, f);
        auto ea = e_eval(f, a), eb = e_eval(f, b), eab = e_eval(f, a + b);
        if (!ea.defined() || !eb.defined() || !eab.defined() || *eab.value != *ea.value * *eb.value)
            ++bad;
    }
    return bad;
}

}  // namespace expofield::testing
