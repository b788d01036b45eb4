#pragma once

#include <map>
#include <string>

#include "expofield/mpoly.hpp"

namespace expofield {

/// An element of Q(zeta_m)(t_1, ..., t_k) held as num/den.
///
/// Canonical form: den is monic in graded lex order, the common monomial
/// factor of num and den is cancelled, and den is dropped when it divides num
/// exactly. Common non-monomial factors may survive, so equality is always
/// decided by cross-multiplication.
class FieldElem {
public:
    FieldElem() : den_(1) {}
    FieldElem(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    FieldElem(const Rat& v) : num_(CycElem(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
    FieldElem(const CycElem& v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    FieldElem(MPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
    FieldElem(MPoly num, MPoly den);

    static FieldElem var(const Symbol& s) { return FieldElem(MPoly::var(s)); }

    const MPoly& num() const noexcept { return num_; }
    const MPoly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    /// Constant value; only meaningful when is_constant().
    CycElem constant_value() const;
    bool is_rational_constant() const;
    std::set<Symbol> symbols() const;
    bool mentions(const Symbol& s) const { return num_.mentions(s) || den_.mentions(s); }
    unsigned order() const;

    FieldElem inverse() const;
    FieldElem pow(long e) const;
    FieldElem derivative(const Symbol& s) const;
    /// Simultaneous substitution of symbols by field elements.
    FieldElem substitute(const std::map<Symbol, FieldElem>& values) const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const { return FieldElem(-num_, den_, Raw{}); }
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    /// Canonical text: "num" or "num/den" with parentheses where needed.
    std::string str() const;

private:
    struct Raw {};
    FieldElem(MPoly num, MPoly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
    void normalize();

    MPoly num_;
    MPoly den_;
};

/// Evaluates a polynomial with symbols replaced by field elements.
FieldElem evaluate(const MPoly& p, const std::map<Symbol, FieldElem>& values);

}  // namespace expofield
