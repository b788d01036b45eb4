#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expofield/cyclotomic.hpp"

namespace expofield {

using Symbol = std::string;

/// A power product, stored as (symbol, exponent) pairs sorted by symbol with
/// positive exponents only.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(const Symbol& s, unsigned e = 1);

    const std::vector<std::pair<Symbol, unsigned>>& factors() const noexcept { return f_; }
    unsigned degree() const noexcept { return deg_; }
    unsigned degree_in(const Symbol& s) const;
    bool is_one() const noexcept { return f_.empty(); }

    /// Quotient when `d` divides this monomial.
    std::optional<Monomial> divide(const Monomial& d) const;
    Monomial without(const Symbol& s) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string str() const;

private:
    std::vector<std::pair<Symbol, unsigned>> f_;
    unsigned deg_ = 0;
};

/// Graded lexicographic order (symbols compared by name), greatest first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Multivariate polynomial over Q(zeta_m). Zero coefficients are never stored,
/// and iteration runs from the leading term downwards.
class MPoly {
public:
    using Terms = std::map<Monomial, CycElem, GrlexGreater>;

    MPoly() = default;
    MPoly(const CycElem& c);  // NOLINT(google-explicit-constructor)
    MPoly(long c) : MPoly(CycElem(c)) {}  // NOLINT(google-explicit-constructor)
    static MPoly var(const Symbol& s);
    static MPoly term(const Monomial& m, const CycElem& c);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero when absent).
    CycElem constant() const;
    const Monomial& leading_monomial() const;
    const CycElem& leading_coeff() const;
    unsigned total_degree() const;
    unsigned degree_in(const Symbol& s) const;
    std::set<Symbol> symbols() const;
    bool mentions(const Symbol& s) const;
    /// Common layer order of the coefficients (1 when rational).
    unsigned order() const;

    MPoly derivative(const Symbol& s) const;
    MPoly pow(unsigned e) const;
    /// Coefficients of `s^k` for k = 0..degree_in(s); each free of `s`.
    std::vector<MPoly> coefficients_in(const Symbol& s) const;
    /// Largest monomial dividing every term.
    Monomial monomial_content() const;

    /// Exact quotient when `d` divides this polynomial, nullopt otherwise.
    std::optional<MPoly> divide_exact(const MPoly& d) const;

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const CycElem& c) const;
    MPoly times_monomial(const Monomial& m) const;

    friend bool operator==(const MPoly& a, const MPoly& b);
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    /// Canonical text, terms in descending graded lexicographic order.
    std::string str() const;
    bool is_single_term() const { return terms_.size() == 1; }

private:
    void add_term(const Monomial& m, const CycElem& c);
    Terms terms_;
};

}  // namespace expofield
