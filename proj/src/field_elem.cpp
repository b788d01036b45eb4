#include "expofield/field_elem.hpp"

#include "expofield/errors.hpp"

namespace expofield {

FieldElem::FieldElem(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void FieldElem::normalize() {
    if (den_.is_zero()) throw DivisionByZero();
    if (num_.is_zero()) {
        den_ = MPoly(1);
        return;
    }
    if (den_.is_constant()) {
        if (!den_.constant().is_one()) {
            num_ = num_.scaled(den_.constant().inverse());
            den_ = MPoly(1);
        }
        return;
    }
    Monomial g = num_.monomial_content();
    Monomial h = den_.monomial_content();
    // gcd of the two monomials
    Monomial common;
    for (auto& [v, e] : g.factors()) {
        unsigned f = h.degree_in(v);
        if (f > 0) common = common * Monomial::var(v, std::min(e, f));
    }
    if (!common.is_one()) {
        MPoly nn, dd;
        for (auto& [m, c] : num_.terms()) nn += MPoly::term(*m.divide(common), c);
        for (auto& [m, c] : den_.terms()) dd += MPoly::term(*m.divide(common), c);
        num_ = std::move(nn);
        den_ = std::move(dd);
    }
    if (!den_.leading_coeff().is_one()) {
        CycElem inv = den_.leading_coeff().inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
    if (den_.is_constant()) return;
    if (num_.total_degree() >= den_.total_degree()) {
        if (auto q = num_.divide_exact(den_)) {
            num_ = std::move(*q);
            den_ = MPoly(1);
            return;
        }
    }
    if (den_.total_degree() > num_.total_degree() && !num_.is_constant()) {
        if (auto q = den_.divide_exact(num_)) {
            CycElem inv = q->leading_coeff().inverse();
            num_ = MPoly(inv);
            den_ = q->scaled(inv);
        }
    }
}

bool FieldElem::is_one() const {
    return den_.is_constant() && num_.is_constant() && num_.constant().is_one();
}

CycElem FieldElem::constant_value() const { return num_.constant() / den_.constant(); }

bool FieldElem::is_rational_constant() const {
    return is_constant() && num_.constant().is_rational();
}

std::set<Symbol> FieldElem::symbols() const {
    auto s = num_.symbols();
    auto d = den_.symbols();
    s.insert(d.begin(), d.end());
    return s;
}

unsigned FieldElem::order() const {
    unsigned a = num_.order();
    return a != 1 ? a : den_.order();
}

FieldElem FieldElem::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return FieldElem(den_, num_);
}

FieldElem FieldElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    if (e == 0) return FieldElem(1);
    if (den_.is_constant()) return FieldElem(num_.pow(static_cast<unsigned>(e)));
    return FieldElem(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

FieldElem FieldElem::derivative(const Symbol& s) const {
    if (den_.is_constant()) return FieldElem(num_.derivative(s));
    MPoly top = num_.derivative(s) * den_ - num_ * den_.derivative(s);
    return FieldElem(std::move(top), den_ * den_);
}

FieldElem evaluate(const MPoly& p, const std::map<Symbol, FieldElem>& values) {
    FieldElem acc;
    for (auto& [m, c] : p.terms()) {
        FieldElem t(c);
        MPoly untouched(1);
        for (auto& [v, e] : m.factors()) {
            auto it = values.find(v);
            if (it == values.end())
                untouched = untouched * MPoly::var(v).pow(e);
            else
                t = t * it->second.pow(e);
        }
        acc += t * FieldElem(untouched);
    }
    return acc;
}

FieldElem FieldElem::substitute(const std::map<Symbol, FieldElem>& values) const {
    FieldElem n = evaluate(num_, values);
    if (den_.is_constant()) return n / FieldElem(den_);
    return n / evaluate(den_, values);
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_constant()) return FieldElem(a.num_ + b.num_, MPoly(1), FieldElem::Raw{});
        return FieldElem(a.num_ + b.num_, a.den_);
    }
    if (b.den_.is_constant()) return FieldElem(a.num_ + b.num_ * a.den_, a.den_);
    if (a.den_.is_constant()) return FieldElem(a.num_ * b.den_ + b.num_, b.den_);
    return FieldElem(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    if (a.is_zero() || b.is_zero()) return FieldElem();
    if (a.den_.is_constant() && b.den_.is_constant())
        return FieldElem(a.num_ * b.num_, MPoly(1), FieldElem::Raw{});
    return FieldElem(a.num_ * b.num_, a.den_ * b.den_);
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    if (b.is_zero()) throw DivisionByZero();
    if (a.is_zero()) return FieldElem();
    return FieldElem(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::string FieldElem::str() const {
    if (den_.is_constant()) return num_.str();
    bool bare_num = num_.is_single_term() && (!num_.leading_monomial().is_one() ||
                                               num_.leading_coeff().term_count() <= 1);
    std::string n = bare_num ? num_.str() : "(" + num_.str() + ")";
    bool bare_den = den_.is_single_term() && den_.leading_coeff().is_one() &&
                    den_.leading_monomial().factors().size() == 1;
    return n + "/" + (bare_den ? den_.str() : "(" + den_.str() + ")");
}

}  // namespace expofield
