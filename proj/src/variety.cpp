#include "expofield/variety.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "expofield/errors.hpp"
#include "expofield/fresh.hpp"

namespace expofield {

namespace {

std::set<Symbol> symbols_of(const std::vector<FieldElem>& v) {
    std::set<Symbol> out;
    for (auto& e : v) {
        auto s = e.symbols();
        out.insert(s.begin(), s.end());
    }
    return out;
}

}  // namespace

void ParametricVariety::validate() const {
    if (X.empty()) throw UsageError("variety of dimension 0");
    if (X.size() != Y.size() || free_Y.size() != Y.size())
        throw UsageError("X, Y and free_Y must have equal length");
    std::set<Symbol> base(base_params.begin(), base_params.end());
    std::set<Symbol> locus(locus_params.begin(), locus_params.end());
    for (auto& u : locus)
        if (base.count(u)) throw UsageError("locus parameter " + u + " is also a base parameter");
    for (auto& s : symbols_of(X)) {
        if (!base.count(s) && !locus.count(s)) throw UsageError("undeclared symbol " + s);
    }
    for (auto& s : symbols_of(Y)) {
        if (!base.count(s) && !locus.count(s)) throw UsageError("undeclared symbol " + s);
    }
    for (auto& y : Y)
        if (y.is_zero()) throw UsageError("multiplicative coordinate is zero");
    ParametricVariety copy = *this;
    copy.recompute_flags();
    if (copy.free_Y != free_Y) throw UsageError("free_Y flags do not match the coordinates");
}

void ParametricVariety::recompute_flags() {
    std::set<Symbol> locus(locus_params.begin(), locus_params.end());
    free_Y.assign(Y.size(), false);
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if (!Y[i].den().is_constant() || !Y[i].num().is_single_term()) continue;
        const MPoly& p = Y[i].num();
        if (p.total_degree() != 1 || !p.leading_coeff().is_one() || !Y[i].den().constant().is_one())
            continue;
        const Symbol& s = p.leading_monomial().factors()[0].first;
        if (!locus.count(s)) continue;
        bool alone = true;
        for (auto& x : X) alone = alone && !x.mentions(s);
        for (std::size_t j = 0; j < Y.size(); ++j) alone = alone && (j == i || !Y[j].mentions(s));
        free_Y[i] = alone;
    }
}

// Locus reading -------------------------------------------------------------

ParametricVariety from_flat(const FlatSystem& fs, const std::vector<Symbol>& base_params,
                            unsigned cyclotomic_order) {
    if (fs.xvars.empty())
        throw DomainError("UnsupportedShape", "system has no exponential pairs");
    std::set<Symbol> xs(fs.xvars.begin(), fs.xvars.end());
    std::set<Symbol> ys(fs.yvars.begin(), fs.yvars.end());
    std::set<Symbol> base(base_params.begin(), base_params.end());
    FreshNamer fresh;
    for (auto* group : {&xs, &ys, &base})
        for (auto& s : *group) fresh.reserve(s);
    for (auto& p : fs.polys)
        for (auto& s : p.symbols())
            if (!xs.count(s) && !ys.count(s) && !base.count(s))
                throw UsageError("symbol " + s + " is neither a variable nor a base parameter");

    auto inconsistent = [](const std::string& why, nlohmann::json cert = nullptr) {
        return DomainError("Inconsistent", why, std::move(cert));
    };
    auto x_mentioned = [&](const MPoly& p) {
        for (auto& s : p.symbols())
            if (xs.count(s)) return true;
        return false;
    };
    std::vector<MPoly> polys = fs.polys;
    std::map<Symbol, FieldElem> value;  // resolved variables

    // Equations y = (base element) are substituted first.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < polys.size(); ++i) {
            const MPoly& p = polys[i];
            std::vector<Symbol> py;
            for (auto& s : p.symbols())
                if (ys.count(s) && !value.count(s)) py.push_back(s);
            if (x_mentioned(p) || py.size() > 1) continue;
            if (py.empty()) {
                if (!p.is_zero()) throw inconsistent("base equation " + p.str() + " = 0 fails");
            } else {
                if (p.degree_in(py[0]) != 1) continue;
                auto c = p.coefficients_in(py[0]);
                FieldElem v = -FieldElem(c[0]) / FieldElem(c[1]);
                if (v.is_zero())
                    throw inconsistent("E(" + fs.xvars[std::find(fs.yvars.begin(), fs.yvars.end(),
                                                                  py[0]) - fs.yvars.begin()] +
                                       ") is forced to 0");
                value[py[0]] = v;
                for (auto& q : polys) q = evaluate(q, {{py[0], v}}).num();
            }
            polys.erase(polys.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
            break;
        }
    }

    // Remaining non-affine equations must each define a variable that occurs
    // in no other equation.
    std::vector<Symbol> unknowns;
    for (auto it = fs.xvars.rbegin(); it != fs.xvars.rend(); ++it) unknowns.push_back(*it);
    for (auto it = fs.yvars.rbegin(); it != fs.yvars.rend(); ++it)
        if (!value.count(*it)) unknowns.push_back(*it);
    auto is_affine = [&](const MPoly& p) {
        for (auto& s : p.symbols())
            if (ys.count(s) && !value.count(s)) return false;
        for (auto& [m, c] : p.terms()) {
            unsigned d = 0;
            for (auto& [s, e] : m.factors())
                if (xs.count(s)) d += e;
            if (d > 1) return false;
        }
        return true;
    };
    struct Definition {
        Symbol var;
        MPoly lead, rest;
    };
    std::vector<Definition> defs;
    std::set<Symbol> defined;
    std::vector<MPoly> affine;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (is_affine(polys[i])) {
            affine.push_back(polys[i]);
            continue;
        }
        std::optional<Symbol> pick;
        for (auto& v : unknowns) {
            if (defined.count(v) || polys[i].degree_in(v) != 1) continue;
            bool elsewhere = false;
            for (std::size_t j = 0; j < polys.size(); ++j)
                elsewhere = elsewhere || (j != i && polys[j].mentions(v));
            if (!elsewhere) {
                pick = v;
                break;
            }
        }
        if (!pick)
            throw DomainError("UnsupportedShape",
                              "equation " + polys[i].str() + " = 0 is outside the supported fragment",
                              nlohmann::json{{"poly", polys[i].str()}});
        auto c = polys[i].coefficients_in(*pick);
        defs.push_back({*pick, c[1], c[0]});
        defined.insert(*pick);
    }

    // Gauss-Jordan on the affine part over the base field.
    // Columns run backwards so that leading variables stay free parameters.
    std::vector<Symbol> avars;
    for (auto it = fs.xvars.rbegin(); it != fs.xvars.rend(); ++it)
        if (!defined.count(*it)) avars.push_back(*it);
    const std::size_t nv = avars.size();
    FMatrix m;
    for (auto& p : affine) {
        std::vector<FieldElem> row;
        std::map<Symbol, FieldElem> zero;
        for (auto& v : avars) {
            row.emplace_back(p.derivative(v));
            zero[v] = FieldElem();
        }
        row.push_back(-evaluate(p, zero));
        m.push_back(std::move(row));
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col <= nv && r < m.size(); ++col) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        if (col == nv) throw inconsistent("the affine equations have no common solution");
        std::swap(m[piv], m[r]);
        FieldElem inv = m[r][col].inverse();
        for (std::size_t c = col; c <= nv; ++c) m[r][c] = m[r][c] * inv;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k == r || m[k][col].is_zero()) continue;
            FieldElem f = m[k][col];
            for (std::size_t c = col; c <= nv; ++c) m[k][c] = m[k][c] - f * m[r][c];
        }
        pivots.push_back(col);
        ++r;
    }

    ParametricVariety v;
    v.base_params = base_params;
    v.cyclotomic_order = cyclotomic_order;
    std::vector<bool> is_pivot(nv, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t c = nv; c-- > 0;) {
        if (is_pivot[c]) continue;
        Symbol u = fresh.next("u");
        v.locus_params.push_back(u);
        value[avars[c]] = FieldElem::var(u);
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        FieldElem x = m[i][nv];
        for (std::size_t c = 0; c < nv; ++c)
            if (!is_pivot[c] && !m[i][c].is_zero()) x -= m[i][c] * value.at(avars[c]);
        value[avars[pivots[i]]] = x;
    }
    for (auto& y : fs.yvars) {
        if (value.count(y) || defined.count(y)) continue;
        Symbol rname = fresh.next("r");
        v.locus_params.push_back(rname);
        value[y] = FieldElem::var(rname);
    }
    for (auto& d : defs) {
        FieldElem lead = evaluate(d.lead, value);
        FieldElem rest = evaluate(d.rest, value);
        if (lead.is_zero()) {
            if (!rest.is_zero())
                throw inconsistent("equation defining " + d.var + " has no solution");
            Symbol u = fresh.next("u");
            v.locus_params.push_back(u);
            value[d.var] = FieldElem::var(u);
        } else {
            value[d.var] = -rest / lead;
        }
    }
    for (std::size_t i = 0; i < fs.xvars.size(); ++i) {
        v.X.push_back(value.at(fs.xvars[i]));
        v.Y.push_back(value.at(fs.yvars[i]));
        if (v.Y.back().is_zero())
            throw inconsistent("E(" + fs.xvars[i] + ") is forced to 0");
    }
    v.recompute_flags();
    return v;
}

// Freeness ------------------------------------------------------------------

namespace {

// Rows expressing "the derivative of sum m_i X_i along every locus parameter
// vanishes" as a Q-linear system in m.
QMatrix relation_matrix(const std::vector<FieldElem>& X, const std::vector<Symbol>& locus) {
    std::vector<QVector> rows;
    for (auto& u : locus) {
        std::vector<FieldElem> d;
        for (auto& x : X) d.push_back(x.derivative(u));
        QMatrix block = coefficient_matrix(d);
        for (std::size_t r = 0; r < block.rows(); ++r) {
            QVector row(X.size());
            for (std::size_t c = 0; c < X.size(); ++c) row[c] = block(r, c);
            rows.push_back(std::move(row));
        }
    }
    return QMatrix::from_rows(rows, X.size());
}

}  // namespace

FieldElem drop_locus(const FieldElem& e, const std::vector<Symbol>& locus) {
    bool mentioned = false;
    for (auto& u : locus) mentioned = mentioned || e.mentions(u);
    if (!mentioned) return e;
    for (long attempt = 0; attempt < 1000; ++attempt) {
        std::map<Symbol, FieldElem> s;
        for (std::size_t j = 0; j < locus.size(); ++j)
            s[locus[j]] = FieldElem(attempt + 7 * static_cast<long>(j) + 1);
        try {
            return e.substitute(s);
        } catch (const DivisionByZero&) {
        }
    }
    throw std::logic_error("no admissible specialisation found");
}

std::optional<std::vector<Int>> brute_force_relation(const ParametricVariety& v, int bound,
                                                     unsigned seed) {
    const std::size_t n = v.dim();
    if (n == 0 || bound <= 0) return std::nullopt;
    std::vector<std::vector<FieldElem>> derivs;  // derivs[p][i]
    for (auto& u : v.locus_params) {
        std::vector<FieldElem> d;
        for (auto& x : v.X) d.push_back(x.derivative(u));
        derivs.push_back(std::move(d));
    }
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> val(-50, 50);
    std::vector<Symbol> all = v.base_params;
    all.insert(all.end(), v.locus_params.begin(), v.locus_params.end());
    std::vector<std::vector<Rat>> samples;
    for (auto& d : derivs) {
        for (int k = 0, tries = 0; k < 3 && tries < 50; ++tries) {
            std::map<Symbol, FieldElem> pt;
            for (auto& s : all) pt[s] = FieldElem(make_rat(val(rng), 1 + (val(rng) + 50) % 11));
            try {
                std::vector<Rat> row;
                bool rational = true;
                for (auto& di : d) {
                    CycElem c = di.substitute(pt).constant_value();
                    rational = rational && c.is_rational();
                    row.push_back(c.is_rational() ? c.rational() : Rat(0));
                }
                if (!rational) break;
                samples.push_back(std::move(row));
                ++k;
            } catch (const DivisionByZero&) {
            }
        }
    }
    auto exact = [&](const std::vector<int>& m) {
        for (auto& d : derivs) {
            FieldElem s;
            for (std::size_t i = 0; i < n; ++i)
                if (m[i] != 0) s += FieldElem(m[i]) * d[i];
            if (!s.is_zero()) return false;
        }
        return true;
    };
    std::vector<int> m(n, -bound);
    for (;;) {
        bool nonzero = std::any_of(m.begin(), m.end(), [](int x) { return x != 0; });
        bool pass = nonzero;
        for (std::size_t r = 0; pass && r < samples.size(); ++r) {
            Rat s = 0;
            for (std::size_t i = 0; i < n; ++i) s += samples[r][i] * m[i];
            pass = s == 0;
        }
        if (pass && exact(m)) return std::vector<Int>(m.begin(), m.end());
        std::size_t i = 0;
        while (i < n && m[i] == bound) m[i++] = -bound;
        if (i == n) return std::nullopt;
        ++m[i];
    }
}

FreenessCertificate additive_freeness(const ParametricVariety& v) {
    FreenessCertificate cert;
    auto ker = integer_kernel(relation_matrix(v.X, v.locus_params));
    if (ker.empty()) return cert;
    cert.free = false;
    cert.m = ker.front();
    FieldElem sum;
    for (std::size_t i = 0; i < v.X.size(); ++i) sum += FieldElem(Rat(cert.m[i])) * v.X[i];
    cert.a = drop_locus(sum, v.locus_params);
    return cert;
}

ReductionResult reduce(const ParametricVariety& v) {
    const std::size_t n = v.dim();
    ReductionResult res;
    res.original = v;
    std::vector<std::size_t> sel;
    std::vector<QVector> coeff_rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<FieldElem> cols;
        for (auto j : sel) cols.push_back(v.X[j]);
        cols.push_back(v.X[i]);
        QMatrix m = relation_matrix(cols, v.locus_params);
        QMatrix sel_m(m.rows(), sel.size());
        QVector target(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < sel.size(); ++c) sel_m(r, c) = m(r, c);
            target[r] = m(r, sel.size());
        }
        auto q = qlin_solve(sel_m, target);
        if (q) {
            coeff_rows[i] = *q;
        } else {
            coeff_rows[i] = QVector(sel.size(), Rat(0));
            coeff_rows[i].push_back(Rat(1));
            sel.push_back(i);
        }
    }
    const std::size_t k = sel.size();
    res.index_map = sel;
    res.A = QMatrix(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < coeff_rows[i].size(); ++j) res.A(i, j) = coeff_rows[i][j];
    QVector all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) all.push_back(res.A(i, j));
    res.N = lcm_of_denominators(all);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElem b = v.X[i];
        for (std::size_t j = 0; j < k; ++j)
            if (res.A(i, j) != 0) b -= FieldElem(res.A(i, j)) * v.X[sel[j]];
        res.b.push_back(drop_locus(b, v.locus_params));
    }

    ParametricVariety& w = res.vprime;
    w.base_params = v.base_params;
    w.cyclotomic_order = v.cyclotomic_order;
    FreshNamer fresh;
    for (auto& s : v.base_params) fresh.reserve(s);
    for (auto& s : v.locus_params) fresh.reserve(s);
    std::set<Symbol> used;
    for (auto j : sel) {
        w.X.push_back(v.X[j] / FieldElem(Rat(res.N)));
        auto s = v.X[j].symbols();
        used.insert(s.begin(), s.end());
    }
    for (auto& u : v.locus_params)
        if (used.count(u)) w.locus_params.push_back(u);
    for (std::size_t j = 0; j < k; ++j) {
        Symbol r = fresh.next("r");
        w.locus_params.push_back(r);
        w.Y.push_back(FieldElem::var(r));
    }
    w.recompute_flags();
    return res;
}

PulledBackPoint pullback(const ReductionResult& r, const std::vector<FieldElem>& c,
                         const std::vector<FieldElem>& Ec, const BaseExp& exp_of) {
    const std::size_t k = r.A.cols();
    if (c.size() != k || Ec.size() != k) throw UsageError("point has the wrong length");
    for (auto& e : Ec)
        if (e.is_zero()) throw UsageError("exponential value is zero");
    PulledBackPoint p;
    for (std::size_t i = 0; i < r.A.rows(); ++i) {
        FieldElem d = r.b[i];
        FieldElem ed(1);
        for (std::size_t j = 0; j < k; ++j) {
            Rat na = r.A(i, j) * Rat(r.N);
            if (na == 0) continue;
            d += FieldElem(na) * c[j];
            ed *= Ec[j].pow(na.get_num().get_si());
        }
        if (!r.b[i].is_zero()) {
            auto eb = exp_of(r.b[i]);
            if (!eb)
                throw DomainError("MissingExponential", "E(" + r.b[i].str() + ") is not available",
                                  nlohmann::json{{"arg", r.b[i].str()}});
            ed *= *eb;
        }
        p.d.push_back(std::move(d));
        p.Ed.push_back(std::move(ed));
    }
    return p;
}

bool point_matches(const ParametricVariety& v, const std::map<Symbol, FieldElem>& s,
                   const std::vector<FieldElem>& d, const std::vector<FieldElem>& Ed) {
    if (d.size() != v.dim() || Ed.size() != v.dim()) return false;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (v.X[i].substitute(s) != d[i]) return false;
        if (v.Y[i].substitute(s) != Ed[i]) return false;
    }
    return true;
}

}  // namespace expofield
