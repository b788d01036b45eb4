#include <doctest.h>

#include <random>

#include "expofield/errors.hpp"
#include "expofield/variety.hpp"

using namespace expofield;

namespace {

FieldElem e(const char* s) { return parse_elem(s); }

ParametricVariety locus(std::vector<Symbol> base, std::vector<Symbol> params,
                        std::vector<FieldElem> X, std::vector<FieldElem> Y) {
    ParametricVariety v;
    v.base_params = std::move(base);
    v.locus_params = std::move(params);
    v.X = std::move(X);
    v.Y = std::move(Y);
    v.recompute_flags();
    return v;
}

ParametricVariety read(const char* system, std::vector<Symbol> base) {
    return from_flat(normalize(parse_system(system), base), base);
}

// Independent oracle: a relation sum m_i X_i lies in the base iff every
// derivative along the locus vanishes. Derivatives are sampled at random
// rational points and the integer box |m_i| <= M is searched exhaustively.
struct BruteForce {
    std::vector<std::vector<Rat>> samples;  // samples[k][i]
    std::size_t n;

    BruteForce(const ParametricVariety& v, std::mt19937& rng) : n(v.dim()) {
        std::uniform_int_distribution<int> val(-40, 40);
        std::vector<Symbol> all = v.base_params;
        all.insert(all.end(), v.locus_params.begin(), v.locus_params.end());
        for (auto& u : v.locus_params) {
            std::vector<FieldElem> d;
            for (auto& x : v.X) d.push_back(x.derivative(u));
            for (int k = 0; k < 4;) {
                std::map<Symbol, FieldElem> pt;
                for (auto& s : all) pt[s] = FieldElem(make_rat(val(rng), 1 + val(rng) % 7 + 7));
                try {
                    std::vector<Rat> row;
                    for (auto& di : d) row.push_back(di.substitute(pt).constant_value().rational());
                    samples.push_back(row);
                    ++k;
                } catch (const DivisionByZero&) {
                }
            }
        }
    }

    std::optional<std::vector<int>> search(int M) const {
        std::vector<int> m(n, -M);
        for (;;) {
            bool nonzero = false;
            for (int x : m) nonzero = nonzero || x != 0;
            if (nonzero) {
                bool all_zero = true;
                for (auto& row : samples) {
                    Rat s = 0;
                    for (std::size_t i = 0; i < n; ++i) s += row[i] * m[i];
                    if (s != 0) {
                        all_zero = false;
                        break;
                    }
                }
                if (all_zero) return m;
            }
            std::size_t i = 0;
            while (i < n && m[i] == M) m[i++] = -M;
            if (i == n) return std::nullopt;
            ++m[i];
        }
    }
};

}  // namespace

TEST_CASE("from_flat examples") {
    ParametricVariety v = read("E(x) = 5", {});
    REQUIRE(v.dim() == 1);
    CHECK(v.X[0] == FieldElem::var(v.locus_params[0]));
    CHECK(v.Y[0] == FieldElem(5));
    CHECK(!v.free_Y[0]);

    ParametricVariety w = read("t*x1 = x2 & E(x1) = 1 & E(x2) = d", {"t", "d"});
    REQUIRE(w.dim() == 2);
    REQUIRE(w.locus_params.size() == 1);
    FieldElem u = FieldElem::var(w.locus_params[0]);
    CHECK(w.X[0] == u);
    CHECK(w.X[1] == e("t") * u);
    CHECK(w.Y[0] == FieldElem(1));
    CHECK(w.Y[1] == e("d"));
    CHECK_NOTHROW(w.validate());

    try {
        read("x = 1 & x = 2", {});
        FAIL("expected inconsistency");
    } catch (const DomainError& err) {
        CHECK(err.kind() == "Inconsistent");
    }
    CHECK_THROWS_AS(read("E(x) = 0", {}), DomainError);

    // a plain unknown gets a free exponential
    ParametricVariety one = read("x = 1", {});
    CHECK(one.X[0] == FieldElem(1));
    CHECK(one.free_Y[0]);
}

TEST_CASE("from_flat defined variables") {
    // witness of an inequation
    ParametricVariety v = read("E(x) != 1", {});
    REQUIRE(v.dim() == 2);
    FieldElem r = v.Y[0];
    CHECK(v.X[1] == FieldElem(1) / (r - FieldElem(1)));
    CHECK(!v.free_Y[0]);
    CHECK_NOTHROW(v.validate());

    // E(x) = x
    ParametricVariety f = read("E(x) = x", {});
    REQUIRE(f.dim() == 1);
    CHECK(f.X[0] == f.Y[0]);

    // a y-equation with two multiplicative unknowns
    ParametricVariety g = read("E(x)*E(z) = 1", {});
    CHECK(g.Y[0] * g.Y[1] == FieldElem(1));

    CHECK_THROWS_AS(read("x^2 = 2", {}), DomainError);
    CHECK_THROWS_AS(from_flat(normalize(parse_system("E(x) = s"), {"s"}), {}), UsageError);
    CHECK_THROWS_AS(from_flat(FlatSystem{}, {}), DomainError);
    try {
        read("x^2 + x = 2", {});
    } catch (const DomainError& err) {
        CHECK(err.kind() == "UnsupportedShape");
    }
}

TEST_CASE("additive freeness examples") {
    // X = (u, t1 u, t2 u), Y = (r, 2, 3)
    ParametricVariety w = locus({"t1", "t2"}, {"u", "r"}, {e("u"), e("t1*u"), e("t2*u")},
                                {e("r"), e("2"), e("3")});
    CHECK(additive_freeness(w).free);

    ParametricVariety v = locus({}, {"u"}, {e("u"), e("2*u+3")}, {e("u"), e("u")});
    FreenessCertificate c = additive_freeness(v);
    REQUIRE(!c.free);
    CHECK(c.m == std::vector<Int>{Int(-2), Int(1)});
    CHECK(c.a == FieldElem(3));

    ParametricVariety ind = locus({}, {"u1", "u2", "u3"}, {e("u1"), e("u2"), e("u3")},
                                  {e("1"), e("1"), e("1")});
    CHECK(additive_freeness(ind).free);

    // constant coordinates are never free
    ParametricVariety k = locus({"t"}, {}, {e("t")}, {e("2")});
    CHECK(!additive_freeness(k).free);

    // brute-force oracle over |m_i| <= 5 on the second example
    std::mt19937 rng(41);
    auto hit = BruteForce(v, rng).search(5);
    REQUIRE(hit);
    CHECK((*hit)[1] == -(*hit)[0] / 2);
}

TEST_CASE("property: additive freeness agrees with brute force") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> small(-2, 2);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> deg(1, 3);
    const std::vector<Symbol> params{"u1", "u2"};
    int free_count = 0, dependent = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = dim(rng);
        // A few building blocks; coordinates are small integer combinations of
        // them plus a base constant, so relations occur often.
        std::vector<FieldElem> blocks{e("u1"), e("u2")};
        blocks.push_back(FieldElem::var("u1").pow(deg(rng)) * e("t"));
        blocks.push_back(FieldElem::var("u2") / (e("t") + FieldElem(small(rng) + 3)));
        std::vector<FieldElem> X;
        for (int i = 0; i < n; ++i) {
            FieldElem x = FieldElem(small(rng)) * e("t");
            for (auto& b : blocks) x += FieldElem(small(rng)) * b;
            X.push_back(x);
        }
        ParametricVariety v = locus({"t"}, params, X, std::vector<FieldElem>(n, FieldElem(1)));
        FreenessCertificate c = additive_freeness(v);
        BruteForce oracle(v, rng);
        if (c.free) {
            ++free_count;
            for (int M = 1; M <= 6; ++M) CHECK(!oracle.search(M));
        } else {
            ++dependent;
            FieldElem sum;
            for (int i = 0; i < n; ++i) sum += FieldElem(Rat(c.m[i])) * X[i];
            CHECK(sum - c.a == FieldElem());
            CHECK(!c.a.mentions("u1"));
            CHECK(!c.a.mentions("u2"));
            Int norm = 0;
            for (auto& x : c.m) norm = std::max(norm, Int(abs(x)));
            if (norm <= 6) CHECK(oracle.search(static_cast<int>(norm.get_si())));
        }
    }
    CHECK(free_count > 0);
    CHECK(dependent > 0);
}

TEST_CASE("reduce examples") {
    ParametricVariety v = locus({}, {"u", "r1", "r2"}, {e("u"), e("2*u+3")}, {e("r1"), e("r2")});
    ReductionResult r = reduce(v);
    REQUIRE(r.A.cols() == 1);
    CHECK(r.A(0, 0) == 1);
    CHECK(r.A(1, 0) == 2);
    CHECK(r.b[0] == FieldElem(0));
    CHECK(r.b[1] == FieldElem(3));
    CHECK(r.N == 1);
    CHECK(r.vprime.X == std::vector<FieldElem>{e("u")});
    CHECK(r.vprime.free_Y == std::vector<bool>{true});

    ParametricVariety h = locus({}, {"u"}, {e("u"), e("u/2")}, {e("1"), e("1")});
    ReductionResult rh = reduce(h);
    CHECK(rh.N == 2);
    CHECK(rh.A(1, 0) == Rat(1, 2));
    CHECK(rh.vprime.X == std::vector<FieldElem>{e("u/2")});

    // an already free variety reduces to itself
    ParametricVariety f = locus({"t"}, {"u", "w"}, {e("u"), e("t*w")}, {e("2"), e("3")});
    ReductionResult rf = reduce(f);
    CHECK(rf.N == 1);
    CHECK(rf.index_map == std::vector<std::size_t>{0, 1});
    CHECK(rf.vprime.X == f.X);
}

TEST_CASE("property: reduction identities") {
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> small(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<FieldElem> blocks{e("u1"), e("t*u2"), e("u1^2/(t+1)")};
        std::vector<FieldElem> X;
        int n = 1 + trial % 4;
        for (int i = 0; i < n; ++i) {
            FieldElem x = FieldElem(make_rat(small(rng), den(rng))) * e("t");
            for (auto& b : blocks) x += FieldElem(make_rat(small(rng), den(rng))) * b;
            X.push_back(x);
        }
        ParametricVariety v = locus({"t"}, {"u1", "u2"}, X, std::vector<FieldElem>(n, FieldElem(2)));
        ReductionResult r = reduce(v);
        const std::size_t k = r.A.cols();
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            FieldElem rhs = r.b[i];
            for (std::size_t j = 0; j < k; ++j) rhs += FieldElem(r.A(i, j)) * X[r.index_map[j]];
            CHECK(rhs == X[i]);
            for (std::size_t j = 0; j < k; ++j) CHECK(Rat(r.A(i, j) * Rat(r.N)).get_den() == 1);
        }
        if (k > 0) CHECK(additive_freeness(r.vprime).free);
    }
}

TEST_CASE("pullback") {
    ParametricVariety v = locus({}, {"u", "r1", "r2"}, {e("u"), e("2*u+3")}, {e("r1"), e("r2")});
    ReductionResult r = reduce(v);
    BaseExp known = [](const FieldElem& a) -> std::optional<FieldElem> {
        if (a == FieldElem(3)) return e("g");
        return std::nullopt;
    };
    PulledBackPoint p = pullback(r, {FieldElem(5)}, {e("r")}, known);
    CHECK(p.d == std::vector<FieldElem>{FieldElem(5), FieldElem(13)});
    CHECK(p.Ed == std::vector<FieldElem>{e("r"), e("r^2*g")});

    BaseExp none = [](const FieldElem&) -> std::optional<FieldElem> { return std::nullopt; };
    try {
        pullback(r, {FieldElem(5)}, {e("r")}, none);
        FAIL("expected MissingExponential");
    } catch (const DomainError& err) {
        CHECK(err.kind() == "MissingExponential");
    }

    ParametricVariety h = locus({}, {"u"}, {e("u"), e("u/2")}, {e("1"), e("1")});
    ReductionResult rh = reduce(h);
    CHECK(rh.N == 2);
    PulledBackPoint q = pullback(rh, {e("c")}, {e("s")}, none);
    CHECK(q.d == std::vector<FieldElem>{e("2*c"), e("c")});
    CHECK(q.Ed == std::vector<FieldElem>{e("s^2"), e("s")});

    ParametricVariety id = locus({}, {"u"}, {e("u")}, {e("1")});
    PulledBackPoint same = pullback(reduce(id), {e("c")}, {e("s")}, none);
    CHECK(same.d[0] == e("c"));
    CHECK(same.Ed[0] == e("s"));
}
