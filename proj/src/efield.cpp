#include "expofield/efield.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "expofield/errors.hpp"
#include "expofield/fresh.hpp"
#include "expofield/tdeg.hpp"

namespace expofield {

FieldElem power_product(const std::vector<FieldElem>& base, const ZVector& exps) {
    FieldElem acc(1);
    for (std::size_t i = 0; i < base.size(); ++i)
        if (exps[i] != 0) acc *= base[i].pow(exps[i].get_si());
    return acc;
}

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

// Coordinates of `target` over `basis` inside their common coefficient space.
std::optional<QVector> coordinates(const std::vector<FieldElem>& basis, const FieldElem& target) {
    std::vector<FieldElem> cols = basis;
    cols.push_back(target);
    QMatrix m = coefficient_matrix(cols);
    QMatrix b(m.rows(), basis.size());
    QVector t(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < basis.size(); ++c) b(r, c) = m(r, c);
        t[r] = m(r, basis.size());
    }
    return qlin_solve(b, t);
}

bool integral(const QVector& v) {
    for (auto& q : v)
        if (q.get_den() != 1) return false;
    return true;
}

}  // namespace

std::vector<FieldElem> EFieldPresentation::args() const {
    std::vector<FieldElem> a;
    for (auto& p : egraph) a.push_back(p.arg);
    return a;
}

bool EFieldPresentation::declares(const Symbol& s) const {
    return std::find(transcendentals.begin(), transcendentals.end(), s) != transcendentals.end();
}

EEvalResult e_eval(const EFieldPresentation& f, const FieldElem& a) {
    EEvalResult r;
    if (a.is_zero()) {
        r.value = FieldElem(1);
        r.coords = QVector(f.egraph.size(), Rat(0));
        return r;
    }
    auto q = coordinates(f.args(), a);
    if (!q) {
        r.needs_fresh = true;
        return r;
    }
    r.coords = q;
    FieldElem v(1);
    for (std::size_t i = 0; i < q->size(); ++i) {
        const Rat& c = (*q)[i];
        if (c == 0) continue;
        if (c.get_den() != 1)
            r.roots.push_back({f.egraph[i].val, c.get_den()});
        else
            v *= f.egraph[i].val.pow(c.get_num().get_si());
    }
    if (r.roots.empty()) r.value = v;
    return r;
}

EFieldPresentation extend_graph(const EFieldPresentation& f, const std::vector<GraphPair>& pairs,
                                const std::vector<Symbol>& new_transcendentals) {
    EFieldPresentation g = f;
    for (auto& s : new_transcendentals)
        if (!g.declares(s)) g.transcendentals.push_back(s);
    for (auto& p : pairs) {
        for (auto* e : {&p.arg, &p.val})
            for (auto& s : e->symbols())
                if (!g.declares(s)) throw UsageError("undeclared symbol " + s + " in graph pair");
        if (p.val.is_zero())
            throw DomainError("ZeroValue", "graph value is zero",
                              nlohmann::json{{"arg", p.arg.str()}});
        g.egraph.push_back(p);
    }
    auto ker = integer_kernel(coefficient_matrix(g.args()));
    if (!ker.empty())
        throw DomainError("LinearDependence", "graph arguments are Q-linearly dependent",
                          nlohmann::json{{"vector", to_json(ker.front())}});
    return g;
}

std::optional<FieldElem> exact_root(const FieldElem& t, const Int& d) {
    if (d == 1) return t;
    if (d < 1 || !d.fits_ulong_p()) return std::nullopt;
    const unsigned long k = d.get_ui();
    if (!t.num().is_single_term() || !t.den().is_single_term()) return std::nullopt;
    CycElem cn = t.num().leading_coeff(), cd = t.den().leading_coeff();
    if (!cn.is_rational() || !cd.is_rational()) return std::nullopt;
    Rat c = cn.rational() / cd.rational();
    bool negative = c < 0;
    if (negative && k % 2 == 0) return std::nullopt;
    Int n = abs(c.get_num()), m = c.get_den(), rn, rm;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(rm.get_mpz_t(), m.get_mpz_t(), k)) return std::nullopt;
    Monomial top, bottom;
    for (auto& [s, e] : t.num().leading_monomial().factors()) {
        if (e % k) return std::nullopt;
        top = top * Monomial::var(s, static_cast<unsigned>(e / k));
    }
    for (auto& [s, e] : t.den().leading_monomial().factors()) {
        if (e % k) return std::nullopt;
        bottom = bottom * Monomial::var(s, static_cast<unsigned>(e / k));
    }
    Rat root = make_rat(negative ? Int(-rn) : rn, rm);
    return FieldElem(MPoly::term(top, CycElem(root)), MPoly::term(bottom, CycElem(1)));
}

// Solving --------------------------------------------------------------------

SolveResult solve(const EFieldPresentation& f, const ParametricVariety& v,
                  const SolveOptions& opts) {
    v.validate();
    for (auto& s : v.base_params)
        if (!f.declares(s)) throw UsageError("base parameter " + s + " is not in the field");
    const ReductionResult red = reduce(v);
    const std::size_t n = v.dim(), k = red.A.cols();
    if (k > 0) {
        FreenessCertificate fc = additive_freeness(red.vprime);
        if (!fc.free)
            throw DomainError("NotAdditivelyFree", "reduced variety is not additively free",
                              nlohmann::json{{"m", to_json(fc.m)}, {"a", fc.a.str()}});
    }

    // Each reduced coordinate is X_sel / scale_j with scale_j the lcm of the
    // denominators in its own column of A (a divisor of N), so columns
    // without fractions never need roots.
    std::vector<Int> scale(k, Int(1));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) scale[j] = lcm(scale[j], Int(red.A(i, j).get_den()));

    std::set<Symbol> used(f.transcendentals.begin(), f.transcendentals.end());
    for (auto& p : f.egraph)
        for (auto* e : {&p.arg, &p.val})
            for (auto& s : e->symbols()) used.insert(s);
    used.insert(v.locus_params.begin(), v.locus_params.end());

    auto attempt = [&](bool invert) {
        SolveResult res;
        res.reduction = red;
        FreshNamer fresh(used, opts.fresh_start);

        // Generic point: fresh transcendentals for every locus parameter that is
        // not a free exponential coordinate.
        std::set<Symbol> flagged;
        for (std::size_t i = 0; i < n; ++i)
            if (v.free_Y[i]) flagged.insert(v.Y[i].num().leading_monomial().factors()[0].first);
        // With `invert`, a constrained Y_i that is linear in a locus parameter
        // occurring in no other constrained Y_j is solved for that parameter once
        // the exponential values are fixed, instead of the other way round.
        std::map<std::size_t, Symbol> inverted;
        if (invert) {
            std::set<Symbol> taken;
            for (std::size_t i = 0; i < n; ++i) {
                if (v.free_Y[i]) continue;
                for (auto& u : v.locus_params) {
                    if (flagged.count(u) || taken.count(u) || v.Y[i].den().mentions(u) ||
                        v.Y[i].num().degree_in(u) != 1)
                        continue;
                    bool elsewhere = false;
                    for (std::size_t j = 0; j < n; ++j)
                        elsewhere = elsewhere || (j != i && !v.free_Y[j] && v.Y[j].mentions(u));
                    if (elsewhere) continue;
                    inverted[i] = u;
                    taken.insert(u);
                    break;
                }
            }
            if (inverted.empty()) throw DomainError("RootRequired", "no coordinate can be inverted");
        }
        std::set<Symbol> deferred;
        for (auto& [i, u] : inverted) deferred.insert(u);
        std::map<Symbol, FieldElem>& s = res.assignment;
        std::vector<Symbol> new_syms;
        for (auto& u : v.locus_params) {
            if (flagged.count(u) || deferred.count(u)) continue;
            Symbol c = fresh.next("_c");
            new_syms.push_back(c);
            s[u] = FieldElem::var(c);
        }

        // E(b_i): known part K_i times unknown new values G^beta_i.
        const std::vector<FieldElem> fargs = f.args();
        const std::size_t p = fargs.size();
        std::vector<FieldElem> known(n, FieldElem(1));
        std::vector<std::size_t> unresolved;
        for (std::size_t i = 0; i < n; ++i) {
            EEvalResult r = e_eval(f, red.b[i]);
            if (r.defined())
                known[i] = *r.value;
            else
                unresolved.push_back(i);
        }
        if (!unresolved.empty() && !opts.auto_extend) {
            nlohmann::json missing = nlohmann::json::array();
            for (auto i : unresolved) missing.push_back(red.b[i].str());
            throw DomainError("MissingExponential", "E is not defined at " + missing[0].get<std::string>(),
                              nlohmann::json{{"args", missing}});
        }
        std::vector<FieldElem> basis = fargs;  // F's arguments, then new directions
        for (auto i : unresolved)
            if (!coordinates(basis, red.b[i])) basis.push_back(red.b[i]);
        const std::size_t dim = basis.size();
        std::vector<QVector> gens;
        for (std::size_t c = 0; c < p; ++c) {
            QVector e(dim, Rat(0));
            e[c] = 1;
            gens.push_back(e);
        }
        std::map<std::size_t, QVector> bcoord;
        for (auto i : unresolved) {
            bcoord[i] = *coordinates(basis, red.b[i]);
            gens.push_back(bcoord[i]);
        }
        std::vector<QVector> lattice = dim > 0 ? lattice_basis(gens, dim) : std::vector<QVector>{};
        std::vector<QVector> wrows;
        for (auto& row : lattice) {
            bool new_part = false;
            for (std::size_t c = p; c < dim; ++c) new_part = new_part || row[c] != 0;
            if (new_part) {
                wrows.push_back(row);
            } else if (!integral(row)) {
                nlohmann::json missing = nlohmann::json::array();
                for (auto i : unresolved) missing.push_back(red.b[i].str());
                throw DomainError("MissingExponential",
                                  "a root of an existing exponential value would be required",
                                  nlohmann::json{{"args", missing}});
            }
        }
        const std::size_t L = wrows.size();
        std::vector<FieldElem> wargs;
        for (auto& row : wrows) {
            FieldElem w;
            for (std::size_t c = 0; c < dim; ++c)
                if (row[c] != 0) w += FieldElem(row[c]) * basis[c];
            wargs.push_back(w);
        }
        std::vector<ZVector> beta(n, ZVector(L, Int(0)));
        if (L > 0 || !unresolved.empty()) {
            QMatrix cols(dim, p + L);
            for (std::size_t c = 0; c < p; ++c) cols(c, c) = 1;
            for (std::size_t l = 0; l < L; ++l)
                for (std::size_t c = 0; c < dim; ++c) cols(c, p + l) = wrows[l][c];
            for (auto i : unresolved) {
                auto z = qlin_solve(cols, bcoord[i]);
                if (!z || !integral(*z)) throw std::logic_error("lattice coordinates not integral");
                ZVector alpha(p);
                for (std::size_t c = 0; c < p; ++c) alpha[c] = (*z)[c].get_num();
                std::vector<FieldElem> fvals;
                for (auto& pr : f.egraph) fvals.push_back(pr.val);
                known[i] = power_product(fvals, alpha);
                for (std::size_t l = 0; l < L; ++l) beta[i][l] = (*z)[p + l].get_num();
            }
        }

        // Multiplicative system over the unknown values [W'_1..W'_k | G_1..G_L].
        const std::size_t C = k + L;
        std::vector<ZVector> rows;
        std::vector<FieldElem> targets;
        for (std::size_t i = 0; i < n; ++i) {
            if (v.free_Y[i] || inverted.count(i)) continue;
            ZVector row(C);
            for (std::size_t j = 0; j < k; ++j) row[j] = Rat(red.A(i, j) * Rat(scale[j])).get_num();
            for (std::size_t l = 0; l < L; ++l) row[k + l] = beta[i][l];
            rows.push_back(row);
            targets.push_back(v.Y[i].substitute(s) / known[i]);
        }
        SmithForm sm = smith_form(rows, C);
        const std::size_t rk = sm.diagonal.size();
        std::vector<FieldElem> z(C);
        for (std::size_t q = 0; q < rows.size(); ++q) {
            FieldElem t(1);
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (sm.u[q][i] != 0) t *= targets[i].pow(sm.u[q][i].get_si());
            if (q < rk) {
                auto root = exact_root(t, sm.diagonal[q]);
                if (!root)
                    throw DomainError("RootRequired",
                                      "a " + sm.diagonal[q].get_str() + "-th root of " + t.str() +
                                          " is needed",
                                      nlohmann::json{{"value", t.str()}, {"degree", sm.diagonal[q].get_str()}});
                z[q] = *root;
            } else if (!t.is_one()) {
                throw DomainError("Inconsistent",
                                  "the multiplicative constraints force " + t.str() + " = 1",
                                  nlohmann::json{{"value", t.str()}});
            }
        }
        for (std::size_t l = rk; l < C; ++l) {
            std::size_t hot = C, nonzero = 0;
            for (std::size_t j = 0; j < C; ++j)
                if (sm.v[j][l] != 0) {
                    ++nonzero;
                    hot = j;
                }
            bool g_unit = nonzero == 1 && hot >= k && abs(sm.v[hot][l]) == 1;
            Symbol name = fresh.next(g_unit ? "_g" : "_r");
            new_syms.push_back(name);
            z[l] = FieldElem::var(name);
        }
        std::vector<FieldElem> unknown(C);
        for (std::size_t j = 0; j < C; ++j) {
            ZVector exps(C);
            for (std::size_t l = 0; l < C; ++l) exps[l] = sm.v[j][l];
            unknown[j] = power_product(z, exps);
        }

        for (auto& [i, u] : inverted) {
            FieldElem target = known[i];
            for (std::size_t j = 0; j < k; ++j) {
                Int e = Rat(red.A(i, j) * Rat(scale[j])).get_num();
                if (e != 0) target *= unknown[j].pow(e.get_si());
            }
            for (std::size_t l = 0; l < L; ++l)
                if (beta[i][l] != 0) target *= unknown[k + l].pow(beta[i][l].get_si());
            auto c = v.Y[i].num().coefficients_in(u);
            FieldElem lead = evaluate(c[1], s);
            if (lead.is_zero()) throw DomainError("RootRequired", "inverted coordinate degenerates");
            s[u] = (target * evaluate(v.Y[i].den(), s) - evaluate(c[0], s)) / lead;
        }
        std::vector<FieldElem> xprime;
        for (std::size_t j = 0; j < k; ++j)
            xprime.push_back(v.X[red.index_map[j]].substitute(s) / FieldElem(Rat(scale[j])));

        std::vector<GraphPair> pairs;
        for (std::size_t j = 0; j < k; ++j) pairs.push_back({xprime[j], unknown[j]});
        for (std::size_t l = 0; l < L; ++l) {
            pairs.push_back({wargs[l], unknown[k + l]});
            res.auto_extended.push_back(pairs.back());
        }
        res.field = extend_graph(f, pairs, new_syms);

        for (std::size_t i = 0; i < n; ++i) {
            FieldElem d = v.X[i].substitute(s);
            FieldElem ed = known[i];
            for (std::size_t j = 0; j < k; ++j) {
                Int e = Rat(red.A(i, j) * Rat(scale[j])).get_num();
                if (e != 0) ed *= unknown[j].pow(e.get_si());
            }
            for (std::size_t l = 0; l < L; ++l)
                if (beta[i][l] != 0) ed *= unknown[k + l].pow(beta[i][l].get_si());
            EEvalResult check = e_eval(res.field, d);
            if (!check.defined() || *check.value != ed)
                throw std::logic_error("solve produced a point off the exponential graph");
            res.d.push_back(d);
            res.Ed.push_back(ed);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (v.free_Y[i]) s[v.Y[i].num().leading_monomial().factors()[0].first] = res.Ed[i];
        if (!point_matches(v, s, res.d, res.Ed))
            throw std::logic_error("solve produced a point off the variety");
        return res;
    };
    try {
        return attempt(false);
    } catch (const DomainError& err) {
        if (err.kind() != "RootRequired") throw;
        // Retry with the exponential values chosen first.
        try {
            return attempt(true);
        } catch (const DomainError&) {
        }
        throw;
    }
}

// Hulls ----------------------------------------------------------------------

HullPresentation hull(const EFieldPresentation& f, const std::vector<FieldElem>& a) {
    HullPresentation h;
    h.generators = a;
    const std::vector<FieldElem> args = f.args();
    for (;;) {
        std::vector<FieldElem> everything = h.generators;
        everything.insert(everything.end(), args.begin(), args.end());
        auto syms = occurring_symbols(everything);
        for (auto& t : f.transcendentals)
            if (std::find(syms.begin(), syms.end(), t) == syms.end()) syms.push_back(t);
        auto null = ff_nullspace(jacobian(h.generators, syms), syms.size());
        // q is admissible when d(sum q_i arg_i) annihilates every null vector,
        // i.e. the combination is algebraic over the generators.
        std::vector<QVector> rows;
        auto jargs = jacobian(args, syms);
        for (auto& nv : null) {
            std::vector<FieldElem> pairing;
            for (auto& row : jargs) {
                FieldElem acc;
                for (std::size_t c = 0; c < syms.size(); ++c)
                    if (!row[c].is_zero() && !nv[c].is_zero()) acc += row[c] * nv[c];
                pairing.push_back(acc);
            }
            QMatrix block = coefficient_matrix(pairing);
            for (std::size_t r = 0; r < block.rows(); ++r) {
                QVector qrow(args.size());
                for (std::size_t c = 0; c < args.size(); ++c) qrow[c] = block(r, c);
                rows.push_back(qrow);
            }
        }
        auto combos = integer_kernel(QMatrix::from_rows(rows, args.size()));
        bool added = false;
        for (auto& zv : combos) {
            std::vector<FieldElem> vals;
            for (auto& pr : f.egraph) vals.push_back(pr.val);
            FieldElem val = power_product(vals, zv);
            if (tdeg({val}, h.generators) > 0) {
                h.generators.push_back(val);
                added = true;
                break;
            }
        }
        if (!added) break;
    }
    h.closed_under_graph = true;
    return h;
}

EFieldPresentation minimal_ea_family(const std::vector<Rat>& prefix) {
    EFieldPresentation f;
    f.name = "M";
    f.transcendentals = {"tau"};
    FieldElem tau = FieldElem::var("tau");
    f.egraph.push_back({FieldElem(1), tau});
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i] == 0)
            throw DomainError("ZeroValue", "prefix entry " + std::to_string(i + 2) + " is zero",
                              nlohmann::json{{"index", i + 2}});
        f.egraph.push_back({tau.pow(static_cast<long>(i + 2)), FieldElem(prefix[i])});
    }
    return f;
}

std::optional<GraphConflict> joint_embedding_conflict(const EFieldPresentation& a,
                                                      const EFieldPresentation& b) {
    for (auto& p : a.egraph) {
        EEvalResult r = e_eval(b, p.arg);
        if (r.defined() && *r.value != p.val) return GraphConflict{p.arg, p.val, *r.value};
    }
    for (auto& p : b.egraph) {
        EEvalResult r = e_eval(a, p.arg);
        if (r.defined() && *r.value != p.val) return GraphConflict{p.arg, *r.value, p.val};
    }
    return std::nullopt;
}

PresentationReport check_presentation(const EFieldPresentation& f, unsigned seed,
                                      std::size_t samples) {
    PresentationReport rep;
    for (std::size_t i = 0; i < f.egraph.size(); ++i) {
        const GraphPair& p = f.egraph[i];
        for (auto* e : {&p.arg, &p.val})
            for (auto& s : e->symbols())
                if (!f.declares(s))
                    rep.violations.push_back({"undeclared symbol", "symbol " + s + " is not declared",
                                              nlohmann::json{{"index", i}, {"symbol", s}}});
        if (p.val.is_zero())
            rep.violations.push_back({"nonzero value", "E(" + p.arg.str() + ") is 0",
                                      nlohmann::json{{"index", i}}});
        if (p.arg.is_zero())
            rep.violations.push_back({"zero argument", "0 appears as a graph argument",
                                      nlohmann::json{{"index", i}}});
    }
    auto ker = integer_kernel(coefficient_matrix(f.args()));
    if (!ker.empty())
        rep.violations.push_back({"linear dependence", "graph arguments are Q-linearly dependent",
                                  nlohmann::json{{"vector", to_json(ker.front())}}});
    if (!rep.ok()) return rep;

    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::vector<FieldElem> vals;
    for (auto& p : f.egraph) vals.push_back(p.val);
    for (std::size_t k = 0; k < samples && !f.egraph.empty(); ++k) {
        ZVector z(f.egraph.size());
        FieldElem arg;
        for (std::size_t i = 0; i < z.size(); ++i) {
            z[i] = coeff(rng);
            arg += FieldElem(Rat(z[i])) * f.egraph[i].arg;
        }
        EEvalResult r = e_eval(f, arg);
        ++rep.spot_checks;
        if (!r.defined() || *r.value != power_product(vals, z)) {
            rep.violations.push_back({"homomorphism law", "E fails to be additive at " + arg.str(),
                                      nlohmann::json{{"vector", to_json(z)}}});
            break;
        }
    }
    return rep;
}

}  // namespace expofield
