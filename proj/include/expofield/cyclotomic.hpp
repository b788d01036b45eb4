#pragma once

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace expofield {

using Int = mpz_class;
using Rat = mpq_class;

/// n/d in lowest terms; gmp leaves two-argument construction unreduced.
inline Rat make_rat(const Int& n, const Int& d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

/// Q[x]/Phi_m(x) for a fixed order m >= 2.
class CyclotomicRing {
public:
    explicit CyclotomicRing(unsigned order);

    unsigned order() const noexcept { return order_; }
    std::size_t degree() const noexcept { return modulus_.size() - 1; }
    /// Monic coefficients of Phi_m, constant term first.
    const std::vector<Int>& modulus() const noexcept { return modulus_; }

private:
    unsigned order_;
    std::vector<Int> modulus_;
};

/// Integer coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_polynomial(unsigned m);
unsigned euler_phi(unsigned m);

/// An element of Q(zeta_m), stored in the power basis of Q[x]/Phi_m(x).
/// Order 1 is the plain rational layer.
class CycElem {
public:
    CycElem() : coeffs_{Rat(0)} {}
    CycElem(long v) : coeffs_{Rat(v)} {}  // NOLINT(google-explicit-constructor)
    CycElem(Rat v) : coeffs_{std::move(v)} {}  // NOLINT(google-explicit-constructor)

    /// The generator zeta of the order-m layer.
    static CycElem zeta(unsigned order);
    static CycElem from_coeffs(std::shared_ptr<const CyclotomicRing> ring,
                               std::vector<Rat> coeffs);

    unsigned order() const noexcept { return ring_ ? ring_->order() : 1; }
    const std::shared_ptr<const CyclotomicRing>& ring() const noexcept { return ring_; }
    const std::vector<Rat>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Only meaningful when is_rational().
    const Rat& rational() const { return coeffs_[0]; }
    /// Number of nonzero power-basis coordinates.
    std::size_t term_count() const;

    CycElem inverse() const;
    CycElem pow(long e) const;

    /// Power-basis text, e.g. "3/2", "1+2*zeta^2". Never wrapped in parentheses.
    std::string str() const;

    friend CycElem operator+(const CycElem& a, const CycElem& b);
    friend CycElem operator-(const CycElem& a, const CycElem& b);
    friend CycElem operator*(const CycElem& a, const CycElem& b);
    friend CycElem operator/(const CycElem& a, const CycElem& b);
    CycElem operator-() const;
    CycElem& operator+=(const CycElem& o) { return *this = *this + o; }
    CycElem& operator-=(const CycElem& o) { return *this = *this - o; }
    CycElem& operator*=(const CycElem& o) { return *this = *this * o; }

    friend bool operator==(const CycElem& a, const CycElem& b);
    friend bool operator!=(const CycElem& a, const CycElem& b) { return !(a == b); }

private:
    std::shared_ptr<const CyclotomicRing> ring_;
    std::vector<Rat> coeffs_;
};

/// Returns the common layer of two elements; throws UsageError on nested layers.
std::shared_ptr<const CyclotomicRing> common_ring(const CycElem& a, const CycElem& b);

}  // namespace expofield
