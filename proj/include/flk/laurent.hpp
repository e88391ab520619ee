#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "flk/errors.hpp"

namespace flk {

/// Laurent polynomial in the deformation variable q, with rational coefficients.
/// Stored densely as coefficients of q^(lo), q^(lo+1), ..., with zero ends trimmed.
class Laurent {
public:
    Laurent() = default;

    static Laurent zero() { return Laurent(); }

    static Laurent one() { return monomial(0); }

    static Laurent monomial(long exp, const mpq_class& c = mpq_class(1)) {
        Laurent r;
        if (c != 0) {
            r.lo_ = exp;
            r.coeffs_.push_back(c);
        }
        return r;
    }

    static Laurent from_coeffs(long lo, std::vector<mpq_class> coeffs) {
        Laurent r;
        r.lo_ = lo;
        r.coeffs_ = std::move(coeffs);
        r.trim();
        return r;
    }

    bool is_zero() const { return coeffs_.empty(); }

    bool is_one() const {
        return coeffs_.size() == 1 && lo_ == 0 && coeffs_[0] == 1;
    }

    /// True if this is c*q^e for a single term.
    bool is_monomial() const { return coeffs_.size() == 1; }

    long min_deg() const { return lo_; }  // undefined on zero
    long max_deg() const { return lo_ + static_cast<long>(coeffs_.size()) - 1; }

    mpq_class coeff(long exp) const {
        if (is_zero() || exp < lo_ || exp > max_deg()) return mpq_class(0);
        return coeffs_[exp - lo_];
    }

    const std::vector<mpq_class>& raw_coeffs() const { return coeffs_; }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    Laurent operator+(const Laurent& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        long lo = std::min(lo_, o.lo_);
        long hi = std::max(max_deg(), o.max_deg());
        std::vector<mpq_class> c(static_cast<size_t>(hi - lo + 1));
        for (size_t i = 0; i < coeffs_.size(); ++i) c[lo_ - lo + i] += coeffs_[i];
        for (size_t i = 0; i < o.coeffs_.size(); ++i) c[o.lo_ - lo + i] += o.coeffs_[i];
        return from_coeffs(lo, std::move(c));
    }

    Laurent operator-(const Laurent& o) const { return *this + (-o); }

    Laurent operator*(const Laurent& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<mpq_class> c(coeffs_.size() + o.coeffs_.size() - 1);
        for (size_t i = 0; i < coeffs_.size(); ++i)
            for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
        return from_coeffs(lo_ + o.lo_, std::move(c));
    }

    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    bool operator==(const Laurent& o) const {
        return lo_ == o.lo_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// Shift by q^k.
    Laurent shifted(long k) const {
        Laurent r = *this;
        if (!r.is_zero()) r.lo_ += k;
        return r;
    }

    /// Substitute q -> q^d.
    Laurent substitute_power(long d) const {
        Laurent r;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) r += monomial((lo_ + static_cast<long>(i)) * d, coeffs_[i]);
        }
        return r;
    }

    /// Exact polynomial division; requires lo_ >= 0 on both and zero remainder.
    static Laurent divide_exact(const Laurent& num, const Laurent& den) {
        Laurent q, r;
        divmod(num, den, q, r);
        if (!r.is_zero()) throw Error("Laurent::divide_exact: nonzero remainder");
        return q;
    }

    /// Polynomial division of ordinary polynomials (min_deg >= 0).
    static void divmod(const Laurent& num, const Laurent& den, Laurent& quot, Laurent& rem) {
        if (den.is_zero()) throw Error("Laurent division by zero");
        quot = zero();
        rem = num;
        mpq_class dl = den.coeffs_.back();
        long dd = den.max_deg();
        while (!rem.is_zero() && rem.max_deg() >= dd) {
            mpq_class c = rem.coeffs_.back() / dl;
            long e = rem.max_deg() - dd;
            Laurent t = monomial(e, c);
            quot += t;
            rem -= t * den;
        }
    }

    /// Monic gcd of ordinary polynomials over Q.
    static Laurent gcd(Laurent a, Laurent b) {
        while (!b.is_zero()) {
            Laurent q, r;
            divmod(a, b, q, r);
            a = b;
            b = r;
        }
        if (a.is_zero()) return a;
        mpq_class lead = a.coeffs_.back();
        for (auto& c : a.coeffs_) c /= lead;
        return a;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            const mpq_class& c = coeffs_[i];
            if (c == 0) continue;
            long e = lo_ + static_cast<long>(i);
            if (!s.empty()) s += c > 0 ? " + " : " - ";
            else if (c < 0) s += "-";
            mpq_class a = abs(c);
            if (a != 1 || e == 0) s += a.get_str();
            if (e != 0) {
                if (a != 1) s += "*";
                s += "q";
                if (e != 1) s += "^" + std::to_string(e);
            }
        }
        return s;
    }

    /// Sparse map exponent -> coefficient (nonzero entries only).
    std::map<long, mpq_class> terms() const {
        std::map<long, mpq_class> t;
        for (size_t i = 0; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) t[lo_ + static_cast<long>(i)] = coeffs_[i];
        return t;
    }

private:
    void trim() {
        size_t front = 0;
        while (front < coeffs_.size() && coeffs_[front] == 0) ++front;
        if (front == coeffs_.size()) {
            coeffs_.clear();
            lo_ = 0;
            return;
        }
        size_t back = coeffs_.size();
        while (coeffs_[back - 1] == 0) --back;
        if (front > 0 || back < coeffs_.size()) {
            coeffs_ = std::vector<mpq_class>(coeffs_.begin() + front, coeffs_.begin() + back);
            lo_ += static_cast<long>(front);
        }
    }

    long lo_ = 0;
    std::vector<mpq_class> coeffs_;  // empty means zero
};

}  // namespace flk
