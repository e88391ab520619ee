#pragma once

#include <string>
#include <utility>

#include "flk/laurent.hpp"

namespace flk {

/// Element of the fraction field of Z[q,q^-1] (with rational coefficients),
/// kept in a canonical reduced form:
///   - denominator is an ordinary monic polynomial with nonzero constant term,
///   - numerator is a Laurent polynomial,
///   - gcd of the polynomial part of the numerator and the denominator is 1.
/// Equality is syntactic after normalization.
class GenericScalar {
public:
    GenericScalar() : num_(Laurent::zero()), den_(Laurent::one()) {}

    GenericScalar(long n) : num_(Laurent::monomial(0, mpq_class(n))), den_(Laurent::one()) {}

    explicit GenericScalar(const mpq_class& c)
        : num_(Laurent::monomial(0, c)), den_(Laurent::one()) {}

    explicit GenericScalar(Laurent n) : num_(std::move(n)), den_(Laurent::one()) {}

    GenericScalar(Laurent n, Laurent d) : num_(std::move(n)), den_(std::move(d)) {
        normalize();
    }

    static GenericScalar q_power(long e) {
        return GenericScalar(Laurent::monomial(e));
    }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    /// True when the canonical denominator is 1, i.e. the value is an honest
    /// Laurent polynomial.
    bool is_laurent() const { return den_.is_one(); }

    GenericScalar operator-() const {
        GenericScalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    GenericScalar operator+(const GenericScalar& o) const {
        return GenericScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    GenericScalar operator-(const GenericScalar& o) const {
        return GenericScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    GenericScalar operator*(const GenericScalar& o) const {
        return GenericScalar(num_ * o.num_, den_ * o.den_);
    }

    GenericScalar operator/(const GenericScalar& o) const {
        if (o.is_zero()) throw Error("GenericScalar: division by zero");
        return GenericScalar(num_ * o.den_, den_ * o.num_);
    }

    GenericScalar& operator+=(const GenericScalar& o) { return *this = *this + o; }
    GenericScalar& operator-=(const GenericScalar& o) { return *this = *this - o; }
    GenericScalar& operator*=(const GenericScalar& o) { return *this = *this * o; }
    GenericScalar& operator/=(const GenericScalar& o) { return *this = *this / o; }

    bool operator==(const GenericScalar& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const GenericScalar& o) const { return !(*this == o); }

    std::string str() const {
        if (den_.is_one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw Error("GenericScalar: zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent::one();
            return;
        }
        // Make the denominator an ordinary polynomial with nonzero constant
        // term; the compensating unit q^k moves into the numerator.
        long k = den_.min_deg();
        den_ = den_.shifted(-k);
        num_ = num_.shifted(-k);
        if (den_.is_one()) return;
        if (den_.is_monomial()) {
            num_ = num_ * Laurent::monomial(0, mpq_class(1) / den_.raw_coeffs()[0]);
            den_ = Laurent::one();
            return;
        }
        // Reduce the polynomial parts by their gcd.
        long m = num_.min_deg();
        Laurent n0 = num_.shifted(-m);
        Laurent g = Laurent::gcd(n0, den_);
        if (!g.is_one() && !g.is_zero()) {
            n0 = Laurent::divide_exact(n0, g);
            den_ = Laurent::divide_exact(den_, g);
        }
        // Monic denominator.
        mpq_class lead = den_.raw_coeffs().back();
        if (lead != 1) {
            Laurent inv = Laurent::monomial(0, mpq_class(1) / lead);
            den_ = den_ * inv;
            n0 = n0 * inv;
        }
        num_ = n0.shifted(m);
    }

    Laurent num_;
    Laurent den_;
};

inline GenericScalar operator*(long a, const GenericScalar& b) {
    return GenericScalar(a) * b;
}

}  // namespace flk
