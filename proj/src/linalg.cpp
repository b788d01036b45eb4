#include "expofield/linalg.hpp"

#include "expofield/errors.hpp"

#include <map>
#include <stdexcept>

namespace expofield {

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw UsageError("ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

QVector QMatrix::apply(const QVector& x) const {
    if (x.size() != cols_) throw UsageError("dimension mismatch in matrix-vector product");
    QVector y(rows_, Rat(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
}

QMatrix QMatrix::transposed() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Echelon rref(QMatrix m) {
    Echelon e;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        Rat inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            Rat f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.reduced = std::move(m);
    return e;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVector v(m.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> qlin_solve(const QMatrix& m, const QVector& target) {
    if (target.size() != m.rows()) throw UsageError("dimension mismatch in linear solve");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = target[r];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
    QVector x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

Int lcm_of_denominators(const QVector& v) {
    Int l = 1;
    for (auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

namespace {

// Floor-free quotient rounding toward zero keeps the gcd loop terminating.
Int tdiv(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Row Hermite-like echelon form of integer rows, eliminating coordinates from
// the last one down. Pivots are made positive and entries above them reduced.
std::vector<ZVector> echelon_from_back(std::vector<ZVector> rows, std::size_t dim) {
    std::size_t top = 0;
    for (std::size_t k = dim; k-- > 0 && top < rows.size();) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i) {
                if (rows[i][k] == 0) continue;
                if (best == rows.size() || abs(rows[i][k]) < abs(rows[best][k])) best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool done = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][k] == 0) continue;
                Int q = tdiv(rows[i][k], rows[top][k]);
                for (std::size_t c = 0; c < dim; ++c) rows[i][c] -= q * rows[top][c];
                if (rows[i][k] != 0) done = false;
            }
            if (done) {
                if (rows[top][k] < 0)
                    for (auto& x : rows[top]) x = -x;
                for (std::size_t i = 0; i < top; ++i) {
                    Int q;
                    mpz_fdiv_q(q.get_mpz_t(), rows[i][k].get_mpz_t(), rows[top][k].get_mpz_t());
                    Int r = rows[i][k] - q * rows[top][k];
                    if (2 * r > rows[top][k]) q += 1;
                    if (q != 0)
                        for (std::size_t c = 0; c < dim; ++c) rows[i][c] -= q * rows[top][c];
                }
                ++top;
                break;
            }
        }
    }
    rows.resize(top);
    return rows;
}

}  // namespace

std::vector<ZVector> integer_kernel(const QMatrix& m) {
    const std::size_t n = m.cols();
    std::vector<ZVector> b(m.rows(), ZVector(n));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        QVector row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = m(r, c);
        Int l = lcm_of_denominators(row);
        for (std::size_t c = 0; c < n; ++c) b[r][c] = Rat(row[c] * Rat(l)).get_num();
    }
    // Column operations on b, mirrored in v (columns of v track combinations).
    std::vector<ZVector> v(n, ZVector(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1;
    auto col_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        for (auto& row : b) row[dst] -= q * row[src];
        for (auto& row : v) row[dst] -= q * row[src];
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (auto& row : b) std::swap(row[x], row[y]);
        for (auto& row : v) std::swap(row[x], row[y]);
    };
    std::size_t p = 0;
    for (std::size_t r = 0; r < b.size() && p < n; ++r) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t c = p; c < n; ++c) {
                if (b[r][c] == 0) continue;
                if (best == n || abs(b[r][c]) < abs(b[r][best])) best = c;
            }
            if (best == n) break;
            col_swap(p, best);
            bool done = true;
            for (std::size_t c = p + 1; c < n; ++c) {
                if (b[r][c] == 0) continue;
                col_axpy(c, tdiv(b[r][c], b[r][p]), p);
                if (b[r][c] != 0) done = false;
            }
            if (done) {
                ++p;
                break;
            }
        }
    }
    std::vector<ZVector> basis;
    for (std::size_t c = p; c < n; ++c) {
        ZVector k(n);
        for (std::size_t i = 0; i < n; ++i) k[i] = v[i][c];
        basis.push_back(std::move(k));
    }
    return echelon_from_back(std::move(basis), n);
}

std::vector<QVector> lattice_basis(const std::vector<QVector>& gens, std::size_t dim) {
    Int d = 1;
    for (auto& g : gens) {
        if (g.size() != dim) throw UsageError("lattice generator of wrong dimension");
        Int l = lcm_of_denominators(g);
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), l.get_mpz_t());
    }
    std::vector<ZVector> rows;
    for (auto& g : gens) {
        ZVector z(dim);
        for (std::size_t i = 0; i < dim; ++i) z[i] = Rat(g[i] * Rat(d)).get_num();
        rows.push_back(std::move(z));
    }
    auto ech = echelon_from_back(std::move(rows), dim);
    std::vector<QVector> out;
    for (auto& z : ech) {
        QVector q(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            q[i] = Rat(z[i], d);
            q[i].canonicalize();
        }
        out.push_back(std::move(q));
    }
    return out;
}

SmithForm smith_form(const std::vector<ZVector>& m, std::size_t cols) {
    const std::size_t rows = m.size();
    std::vector<ZVector> a = m;
    SmithForm s;
    s.u.assign(rows, ZVector(rows, Int(0)));
    s.v.assign(cols, ZVector(cols, Int(0)));
    for (std::size_t i = 0; i < rows; ++i) s.u[i][i] = 1;
    for (std::size_t i = 0; i < cols; ++i) s.v[i][i] = 1;

    auto row_swap = [&](std::size_t x, std::size_t y) {
        std::swap(a[x], a[y]);
        std::swap(s.u[x], s.u[y]);
    };
    auto col_swap = [&](std::size_t x, std::size_t y) {
        for (auto& r : a) std::swap(r[x], r[y]);
        for (auto& r : s.v) std::swap(r[x], r[y]);
    };
    auto row_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        for (std::size_t c = 0; c < cols; ++c) a[dst][c] -= q * a[src][c];
        for (std::size_t c = 0; c < rows; ++c) s.u[dst][c] -= q * s.u[src][c];
    };
    auto col_axpy = [&](std::size_t dst, const Int& q, std::size_t src) {
        for (auto& r : a) r[dst] -= q * r[src];
        for (auto& r : s.v) r[dst] -= q * r[src];
    };

    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            std::size_t br = rows, bc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (br == rows || abs(a[i][j]) < abs(a[br][bc]))) {
                        br = i;
                        bc = j;
                    }
            if (br == rows) return s;
            row_swap(t, br);
            col_swap(t, bc);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                row_axpy(i, tdiv(a[i][t], a[t][t]), t);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                col_axpy(j, tdiv(a[t][j], a[t][t]), t);
                if (a[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : s.u[t]) x = -x;
        }
        s.diagonal.push_back(a[t][t]);
    }
    return s;
}

namespace {

MPoly common_denominator(const std::vector<const FieldElem*>& elems) {
    MPoly l(1);
    for (auto* e : elems) {
        if (e->den().is_constant()) continue;
        if (l.divide_exact(e->den())) continue;
        l = l * e->den();
    }
    return l;
}

MPoly cleared(const FieldElem& e, const MPoly& l) {
    if (e.den().is_constant()) return e.num() * l;
    auto q = l.divide_exact(e.den());
    if (!q) throw std::logic_error("common denominator does not absorb a denominator");
    return e.num() * *q;
}

std::vector<std::vector<MPoly>> clear_rows(const FMatrix& m) {
    std::vector<std::vector<MPoly>> out;
    for (auto& row : m) {
        std::vector<const FieldElem*> ptrs;
        for (auto& e : row) ptrs.push_back(&e);
        MPoly l = common_denominator(ptrs);
        std::vector<MPoly> r;
        for (auto& e : row) r.push_back(cleared(e, l));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::size_t ff_rank(const FMatrix& fm) {
    auto m = clear_rows(fm);
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    MPoly prev(1);
    std::size_t k = 0;
    for (std::size_t c = 0; c < cols && k < rows; ++c) {
        std::size_t piv = k;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[k]);
        for (std::size_t i = k + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                MPoly t = m[k][c] * m[i][j] - m[i][c] * m[k][j];
                auto q = t.divide_exact(prev);
                if (!q) throw std::logic_error("Bareiss step not exact");
                m[i][j] = std::move(*q);
            }
            m[i][c] = MPoly();
        }
        prev = m[k][c];
        ++k;
    }
    return k;
}

std::vector<std::vector<FieldElem>> ff_nullspace(const FMatrix& fm, std::size_t cols) {
    FMatrix m = fm;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        FieldElem inv = m[row][col].inverse();
        for (std::size_t c = col; c < cols; ++c) m[row][c] = m[row][c] * inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col].is_zero()) continue;
            FieldElem f = m[r][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] = m[r][c] - f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<FieldElem>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElem> v(cols);
        v[free] = FieldElem(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

QMatrix coefficient_matrix(const std::vector<FieldElem>& elems) {
    std::vector<const FieldElem*> ptrs;
    for (auto& e : elems) ptrs.push_back(&e);
    MPoly l = common_denominator(ptrs);
    struct Key {
        Monomial m;
        std::size_t coord;
    };
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const {
            if (a.m != b.m) return GrlexGreater{}(a.m, b.m);
            return a.coord < b.coord;
        }
    };
    std::map<Key, std::size_t, KeyLess> index;
    std::vector<MPoly> polys;
    for (auto& e : elems) {
        polys.push_back(cleared(e, l));
        for (auto& [m, c] : polys.back().terms())
            for (std::size_t k = 0; k < c.coeffs().size(); ++k)
                if (c.coeffs()[k] != 0) index.try_emplace(Key{m, k}, 0);
    }
    std::size_t r = 0;
    for (auto& [key, row] : index) row = r++;
    QMatrix out(index.size(), elems.size());
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (auto& [m, c] : polys[j].terms())
            for (std::size_t k = 0; k < c.coeffs().size(); ++k)
                if (c.coeffs()[k] != 0) out(index.at(Key{m, k}), j) = c.coeffs()[k];
    return out;
}

}  // namespace expofield
