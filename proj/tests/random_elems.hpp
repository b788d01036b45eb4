#pragma once

// Hand-rolled generators for property tests.

#include <random>
#include <string>
#include <vector>

#include "expofield/field_elem.hpp"
#include "expofield/linalg.hpp"

namespace expofield::testing {

inline MPoly random_poly(std::mt19937& rng, const std::vector<Symbol>& vars, unsigned max_deg,
                         int max_terms = 4, int coeff_range = 3) {
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
    MPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        unsigned d = deg(rng);
        for (unsigned k = 0; k < d && !vars.empty(); ++k) m = m * Monomial::var(vars[pick(rng)]);
        p += MPoly::term(m, CycElem(coeff(rng)));
    }
    return p;
}

inline MPoly random_nonzero_poly(std::mt19937& rng, const std::vector<Symbol>& vars,
                                 unsigned max_deg) {
    for (;;) {
        MPoly p = random_poly(rng, vars, max_deg);
        if (!p.is_zero()) return p;
    }
}

inline FieldElem random_elem(std::mt19937& rng, const std::vector<Symbol>& vars,
                             unsigned max_deg = 2) {
    std::bernoulli_distribution polynomial(0.5);
    MPoly num = random_poly(rng, vars, max_deg);
    if (polynomial(rng)) return FieldElem(num);
    return FieldElem(num, random_nonzero_poly(rng, vars, max_deg));
}

inline QMatrix random_qmatrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                              int range = 3) {
    std::uniform_int_distribution<int> v(-range, range);
    std::uniform_int_distribution<int> den(1, 3);
    QMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = Rat(v(rng), den(rng));
            m(r, c).canonicalize();
        }
    return m;
}

}  // namespace expofield::testing
