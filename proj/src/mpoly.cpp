#include "expofield/mpoly.hpp"

#include "expofield/errors.hpp"

#include <algorithm>
#include <sstream>

namespace expofield {

Monomial Monomial::var(const Symbol& s, unsigned e) {
    Monomial m;
    if (e > 0) {
        m.f_.emplace_back(s, e);
        m.deg_ = e;
    }
    return m;
}

unsigned Monomial::degree_in(const Symbol& s) const {
    for (auto& [v, e] : f_)
        if (v == s) return e;
    return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin();
    auto j = b.f_.begin();
    while (i != a.f_.end() || j != b.f_.end()) {
        if (j == b.f_.end() || (i != a.f_.end() && i->first < j->first)) {
            r.f_.push_back(*i++);
        } else if (i == a.f_.end() || j->first < i->first) {
            r.f_.push_back(*j++);
        } else {
            r.f_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& d) const {
    Monomial r;
    auto j = d.f_.begin();
    for (auto& [v, e] : f_) {
        if (j != d.f_.end() && j->first < v) return std::nullopt;
        if (j != d.f_.end() && j->first == v) {
            if (j->second > e) return std::nullopt;
            if (j->second < e) r.f_.emplace_back(v, e - j->second);
            ++j;
        } else {
            r.f_.emplace_back(v, e);
        }
    }
    if (j != d.f_.end()) return std::nullopt;
    r.deg_ = deg_ - d.deg_;
    return r;
}

Monomial Monomial::without(const Symbol& s) const {
    Monomial r;
    for (auto& [v, e] : f_) {
        if (v == s) continue;
        r.f_.emplace_back(v, e);
        r.deg_ += e;
    }
    return r;
}

std::string Monomial::str() const {
    std::string out;
    for (auto& [v, e] : f_) {
        if (!out.empty()) out += "*";
        out += v;
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    auto i = a.factors().begin();
    auto j = b.factors().begin();
    while (i != a.factors().end() && j != b.factors().end()) {
        if (i->first != j->first) return i->first < j->first;
        if (i->second != j->second) return i->second > j->second;
        ++i;
        ++j;
    }
    return i != a.factors().end() && j == b.factors().end();
}

MPoly::MPoly(const CycElem& c) {
    if (!c.is_zero()) terms_.emplace(Monomial(), c);
}

MPoly MPoly::var(const Symbol& s) { return term(Monomial::var(s), CycElem(1)); }

MPoly MPoly::term(const Monomial& m, const CycElem& c) {
    MPoly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

void MPoly::add_term(const Monomial& m, const CycElem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

CycElem MPoly::constant() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? CycElem(0) : it->second;
}

const Monomial& MPoly::leading_monomial() const {
    if (terms_.empty()) throw UsageError("leading monomial of zero polynomial");
    return terms_.begin()->first;
}

const CycElem& MPoly::leading_coeff() const {
    if (terms_.empty()) throw UsageError("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

unsigned MPoly::total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned MPoly::degree_in(const Symbol& s) const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(s));
    return d;
}

std::set<Symbol> MPoly::symbols() const {
    std::set<Symbol> out;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors()) out.insert(v);
    return out;
}

bool MPoly::mentions(const Symbol& s) const {
    for (auto& [m, c] : terms_)
        if (m.degree_in(s) > 0) return true;
    return false;
}

unsigned MPoly::order() const {
    for (auto& [m, c] : terms_)
        if (c.order() != 1) return c.order();
    return 1;
}

MPoly MPoly::derivative(const Symbol& s) const {
    MPoly r;
    for (auto& [m, c] : terms_) {
        unsigned e = m.degree_in(s);
        if (e == 0) continue;
        Monomial rest = m.without(s) * Monomial::var(s, e - 1);
        r.add_term(rest, c * CycElem(static_cast<long>(e)));
    }
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly acc(1);
    MPoly base = *this;
    while (e > 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return acc;
}

std::vector<MPoly> MPoly::coefficients_in(const Symbol& s) const {
    std::vector<MPoly> out(degree_in(s) + 1);
    for (auto& [m, c] : terms_) out[m.degree_in(s)].add_term(m.without(s), c);
    return out;
}

Monomial MPoly::monomial_content() const {
    if (terms_.empty()) return {};
    std::map<Symbol, unsigned> lowest;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (first) {
            for (auto& [v, e] : m.factors()) lowest[v] = e;
            first = false;
            continue;
        }
        for (auto it = lowest.begin(); it != lowest.end();) {
            unsigned e = m.degree_in(it->first);
            if (e == 0) {
                it = lowest.erase(it);
            } else {
                it->second = std::min(it->second, e);
                ++it;
            }
        }
    }
    Monomial r;
    for (auto& [v, e] : lowest) r = r * Monomial::var(v, e);
    return r;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& d) const {
    if (d.is_zero()) throw DivisionByZero();
    if (is_zero()) return MPoly();
    if (d.is_constant()) return scaled(d.constant().inverse());
    const Monomial& lm = d.leading_monomial();
    CycElem lc_inv = d.leading_coeff().inverse();
    MPoly rem = *this;
    MPoly quot;
    while (!rem.is_zero()) {
        auto q = rem.leading_monomial().divide(lm);
        if (!q) return std::nullopt;
        CycElem c = rem.leading_coeff() * lc_inv;
        quot.add_term(*q, c);
        for (auto& [m, dc] : d.terms_) rem.add_term(*q * m, -(c * dc));
    }
    return quot;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    r += b;
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    r -= b;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

MPoly MPoly::scaled(const CycElem& c) const {
    if (c.is_zero()) return {};
    MPoly r = *this;
    for (auto& [m, v] : r.terms_) v = v * c;
    return r;
}

MPoly MPoly::times_monomial(const Monomial& mono) const {
    MPoly r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m * mono, c);
    return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (i->first != j->first || i->second != j->second) return false;
    return true;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [m, c] : terms_) {
        std::string t;
        if (m.is_one()) {
            t = c.str();
        } else if (c.is_rational()) {
            const Rat& r = c.rational();
            if (r == 1)
                t = m.str();
            else if (r == -1)
                t = "-" + m.str();
            else
                t = r.get_str() + "*" + m.str();
        } else {
            t = "(" + c.str() + ")*" + m.str();
        }
        if (!out.empty() && t[0] != '-') out += "+";
        out += t;
    }
    return out;
}

}  // namespace expofield
