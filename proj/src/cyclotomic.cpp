#include "expofield/cyclotomic.hpp"

#include "expofield/errors.hpp"

#include <sstream>

namespace expofield {

namespace {

using QPoly = std::vector<Rat>;  // constant term first

void trim(QPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.push_back(0);
}

bool is_zero_poly(const QPoly& p) { return p.size() == 1 && p[0] == 0; }

std::size_t deg(const QPoly& p) { return p.size() - 1; }

// Quotient and remainder of a by b (b nonzero) in Q[x].
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(1, Rat(0));
    if (deg(a) >= deg(b) && !is_zero_poly(a)) q.assign(deg(a) - deg(b) + 1, Rat(0));
    while (!is_zero_poly(a) && deg(a) >= deg(b)) {
        const std::size_t shift = deg(a) - deg(b);
        Rat f = a.back() / b.back();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

// Reduce a polynomial modulo the monic modulus of `ring`, padded to degree().
std::vector<Rat> reduce(QPoly p, const CyclotomicRing& ring) {
    const auto& m = ring.modulus();
    const std::size_t d = ring.degree();
    for (std::size_t top = p.size(); top-- > d;) {
        if (p[top] == 0) continue;
        Rat f = p[top];
        for (std::size_t i = 0; i <= d; ++i) p[top - d + i] -= f * Rat(m[i]);
    }
    p.resize(d, Rat(0));
    return p;
}

std::vector<Rat> lift(const CycElem& a, const CyclotomicRing& ring) {
    if (a.order() != 1) return a.coeffs();
    std::vector<Rat> c(ring.degree(), Rat(0));
    c[0] = a.coeffs()[0];
    return c;
}

}  // namespace

unsigned euler_phi(unsigned m) {
    unsigned result = m;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<Int> cyclotomic_polynomial(unsigned m) {
    if (m == 0) throw UsageError("cyclotomic order must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    QPoly num(m + 1, Rat(0));
    num[0] = -1;
    num[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        auto phi_d = cyclotomic_polynomial(d);
        QPoly den(phi_d.begin(), phi_d.end());
        num = divmod(num, den).first;
    }
    std::vector<Int> out;
    out.reserve(num.size());
    for (auto& c : num) out.push_back(c.get_num());
    return out;
}

CyclotomicRing::CyclotomicRing(unsigned order)
    : order_(order), modulus_(cyclotomic_polynomial(order)) {
    if (order < 2) throw UsageError("cyclotomic ring needs order >= 2");
}

std::shared_ptr<const CyclotomicRing> common_ring(const CycElem& a, const CycElem& b) {
    if (a.order() == 1) return b.ring();
    if (b.order() == 1 || a.order() == b.order()) return a.ring();
    throw UsageError("elements from different cyclotomic layers (" +
                     std::to_string(a.order()) + " vs " + std::to_string(b.order()) + ")");
}

CycElem CycElem::zeta(unsigned order) {
    if (order == 1) return CycElem(1);
    auto ring = std::make_shared<const CyclotomicRing>(order);
    std::vector<Rat> c(ring->degree(), Rat(0));
    if (ring->degree() == 1) {
        // order 2: zeta = -1
        c[0] = -ring->modulus()[0];
    } else {
        c[1] = 1;
    }
    return from_coeffs(std::move(ring), std::move(c));
}

CycElem CycElem::from_coeffs(std::shared_ptr<const CyclotomicRing> ring,
                             std::vector<Rat> coeffs) {
    CycElem e;
    if (!ring) {
        e.coeffs_ = {coeffs.empty() ? Rat(0) : coeffs[0]};
        return e;
    }
    coeffs.resize(ring->degree(), Rat(0));
    e.ring_ = std::move(ring);
    e.coeffs_ = std::move(coeffs);
    return e;
}

bool CycElem::is_zero() const {
    for (auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycElem::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

bool CycElem::is_one() const { return is_rational() && coeffs_[0] == 1; }

std::size_t CycElem::term_count() const {
    std::size_t n = 0;
    for (auto& c : coeffs_)
        if (c != 0) ++n;
    return n;
}

CycElem operator+(const CycElem& a, const CycElem& b) {
    if (!a.ring_ && !b.ring_) return CycElem(a.coeffs_[0] + b.coeffs_[0]);
    auto ring = common_ring(a, b);
    auto x = lift(a, *ring);
    auto y = lift(b, *ring);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return CycElem::from_coeffs(ring, std::move(x));
}

CycElem CycElem::operator-() const {
    CycElem r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycElem operator-(const CycElem& a, const CycElem& b) { return a + (-b); }

CycElem operator*(const CycElem& a, const CycElem& b) {
    if (!a.ring_ && !b.ring_) return CycElem(a.coeffs_[0] * b.coeffs_[0]);
    auto ring = common_ring(a, b);
    if (!a.ring_ || !b.ring_) {
        const Rat& s = a.ring_ ? b.coeffs_[0] : a.coeffs_[0];
        auto x = a.ring_ ? a.coeffs_ : b.coeffs_;
        for (auto& c : x) c *= s;
        return CycElem::from_coeffs(ring, std::move(x));
    }
    QPoly p = mul(a.coeffs_, b.coeffs_);
    return CycElem::from_coeffs(ring, reduce(std::move(p), *ring));
}

CycElem CycElem::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (!ring_) return CycElem(1 / coeffs_[0]);
    // Extended Euclid: find s with s*a = 1 mod Phi_m.
    QPoly r0(ring_->modulus().begin(), ring_->modulus().end());
    QPoly r1 = coeffs_;
    trim(r1);
    QPoly s0{Rat(0)}, s1{Rat(1)};
    while (!is_zero_poly(r1)) {
        auto [q, r] = divmod(r0, r1);
        QPoly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant since Phi_m is irreducible.
    Rat c = r0[0];
    for (auto& v : s0) v /= c;
    return from_coeffs(ring_, reduce(std::move(s0), *ring_));
}

CycElem operator/(const CycElem& a, const CycElem& b) { return a * b.inverse(); }

CycElem CycElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycElem base = *this;
    CycElem acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

bool operator==(const CycElem& a, const CycElem& b) {
    if (a.order() == b.order() || a.order() == 1 || b.order() == 1) {
        const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
        for (std::size_t i = 0; i < n; ++i) {
            Rat x = i < a.coeffs_.size() ? a.coeffs_[i] : Rat(0);
            Rat y = i < b.coeffs_.size() ? b.coeffs_[i] : Rat(0);
            if (x != y) return false;
        }
        return true;
    }
    return false;
}

std::string CycElem::str() const {
    if (is_rational()) return coeffs_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rat& c = coeffs_[i];
        if (c == 0) continue;
        Rat mag = abs(c);
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "zeta";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace expofield
