#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "flk/errors.hpp"
#include "flk/generic_scalar.hpp"

namespace flk {

// ---------------------------------------------------------------------------
// Integer and mod-p polynomial helpers (coefficients ascending).
// ---------------------------------------------------------------------------

using ZPoly = std::vector<mpz_class>;

inline ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
    ZPoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

/// Exact division of integer polynomials (monic divisor).
inline ZPoly zpoly_div_exact(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() - den.size() + 1);
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        mpz_class c = num[i + den.size() - 1];
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw Error("zpoly_div_exact: nonzero remainder");
    return q;
}

/// n-th cyclotomic polynomial over Z, via Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
inline ZPoly cyclotomic_polynomial(long n) {
    ZPoly num(static_cast<size_t>(n) + 1);
    num[0] = -1;
    num[static_cast<size_t>(n)] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = zpoly_div_exact(num, cyclotomic_polynomial(d));
    }
    return num;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

using PPoly = std::vector<int64_t>;  // over F_p, ascending, no trailing zeros

inline void ppoly_trim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly ppoly_from_z(const ZPoly& a, long p) {
    PPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        mpz_class m = a[i] % p;
        if (m < 0) m += p;
        r[i] = m.get_si();
    }
    ppoly_trim(r);
    return r;
}

inline PPoly ppoly_mul(const PPoly& a, const PPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    ppoly_trim(c);
    return c;
}

inline int64_t mod_inverse(int64_t a, int64_t p) {
    int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        int64_t qt = r / nr;
        t -= qt * nt;
        std::swap(t, nt);
        r -= qt * nr;
        std::swap(r, nr);
    }
    if (r != 1) throw Error("mod_inverse: not invertible");
    return ((t % p) + p) % p;
}

inline PPoly ppoly_mod(PPoly a, const PPoly& m, long p) {
    int64_t linv = mod_inverse(m.back(), p);
    while (a.size() >= m.size()) {
        int64_t c = a.back() * linv % p;
        size_t off = a.size() - m.size();
        for (size_t j = 0; j < m.size(); ++j) a[off + j] = ((a[off + j] - c * m[j]) % p + p) % p;
        ppoly_trim(a);
    }
    return a;
}

/// Quotient of an exact division over F_p.
inline PPoly ppoly_div_exact(const PPoly& num, const PPoly& den, long p) {
    PPoly n = num;
    PPoly q(n.size() - den.size() + 1, 0);
    int64_t linv = mod_inverse(den.back(), p);
    for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
        int64_t c = n[i + den.size() - 1] * linv % p;
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j)
            n[i + j] = ((n[i + j] - c * den[j]) % p + p) % p;
    }
    return q;
}

inline PPoly ppoly_gcd(PPoly a, PPoly b, long p) {
    while (!b.empty()) {
        PPoly r = ppoly_mod(a, b, p);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        int64_t linv = mod_inverse(a.back(), p);
        for (auto& c : a) c = c * linv % p;
    }
    return a;
}

inline PPoly ppoly_powmod(PPoly base, mpz_class e, const PPoly& m, long p) {
    PPoly r{1};
    base = ppoly_mod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = ppoly_mod(ppoly_mul(r, base, p), m, p);
        base = ppoly_mod(ppoly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

/// Cantor–Zassenhaus equal-degree factorization of a squarefree product of
/// irreducibles of degree d over F_p.  Deterministically seeded.
inline void ppoly_equal_degree_factor(const PPoly& f, long d, long p,
                                      std::vector<PPoly>& out, uint64_t& seed) {
    long deg = static_cast<long>(f.size()) - 1;
    if (deg == d) {
        out.push_back(f);
        return;
    }
    mpz_class pd;
    mpz_ui_pow_ui(pd.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(d));
    mpz_class e = (pd - 1) / 2;
    while (true) {
        // random polynomial of degree < deg
        PPoly a(static_cast<size_t>(deg));
        for (auto& c : a) {
            seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
            c = static_cast<int64_t>((seed >> 33) % static_cast<uint64_t>(p));
        }
        ppoly_trim(a);
        if (a.empty()) continue;
        PPoly b = ppoly_powmod(a, e, f, p);
        if (b.empty()) continue;
        b[0] = (b[0] + p - 1) % p;  // a^e - 1
        ppoly_trim(b);
        PPoly g = ppoly_gcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            ppoly_equal_degree_factor(g, d, p, out, seed);
            ppoly_equal_degree_factor(ppoly_div_exact(f, g, p), d, p, out, seed);
            return;
        }
    }
}

/// Order of p modulo ell.
inline long multiplicative_order(long p, long ell) {
    long x = p % ell, o = 1;
    while (x != 1) {
        x = x * p % ell;
        ++o;
        if (o > ell) throw BadParameters("multiplicative_order: gcd(p, ell) != 1");
    }
    return o;
}

/// Check Phi_{p^r * ell} == Phi_ell^{phi(p^r)} mod p.
inline bool cyclotomic_factorization_holds(long p, long ell, long r) {
    long pr = 1;
    for (long i = 0; i < r; ++i) pr *= p;
    PPoly lhs = ppoly_from_z(cyclotomic_polynomial(pr * ell), p);
    PPoly base = ppoly_from_z(cyclotomic_polynomial(ell), p);
    PPoly rhs{1};
    for (long i = 0; i < euler_phi(pr); ++i) rhs = ppoly_mul(rhs, base, p);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Field context: F_p(zeta) or Q(xi), zeta/xi a primitive ell-th root of unity.
// ---------------------------------------------------------------------------

class FieldElement;

class FieldCtx {
public:
    /// p == 0 selects the characteristic-zero cyclotomic field Q(xi).
    static std::shared_ptr<const FieldCtx> make(long p, long ell, size_t factor_index = 0) {
        if (ell < 3 || ell % 2 == 0) throw BadParameters("ell must be odd and >= 3");
        if (p != 0) {
            if (p < 3 || p % 2 == 0) throw BadParameters("p must be an odd prime or 0");
            if (std::gcd(p, ell) != 1) throw BadParameters("gcd(p, ell) must be 1");
        }
        return std::shared_ptr<const FieldCtx>(new FieldCtx(p, ell, factor_index));
    }

    long p() const { return p_; }
    long ell() const { return ell_; }
    bool finite() const { return p_ != 0; }
    long degree() const {
        return finite() ? static_cast<long>(min_poly_.size()) - 1
                        : static_cast<long>(phi_ell_q_.size()) - 1;
    }
    /// Number of field elements (finite mode only), as long; throws if too big.
    mpz_class order() const {
        if (!finite()) throw BadParameters("order: infinite field");
        mpz_class o;
        mpz_ui_pow_ui(o.get_mpz_t(), static_cast<unsigned long>(p_),
                      static_cast<unsigned long>(degree()));
        return o;
    }

    const PPoly& min_poly() const { return min_poly_; }
    size_t factor_index() const { return factor_index_; }
    size_t factor_count() const { return factor_count_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_long(long n) const;
    FieldElement from_mpq(const mpq_class& c) const;
    /// zeta^e (exponent taken mod ell).
    FieldElement zeta_power(long e) const;

    bool operator==(const FieldCtx& o) const {
        return p_ == o.p_ && ell_ == o.ell_ && min_poly_ == o.min_poly_;
    }

private:
    FieldCtx(long p, long ell, size_t factor_index)
        : p_(p), ell_(ell), factor_index_(factor_index) {
        if (finite()) {
            long d = multiplicative_order(p, ell);
            PPoly phi = ppoly_from_z(cyclotomic_polynomial(ell), p);
            std::vector<PPoly> factors;
            if (static_cast<long>(phi.size()) - 1 == d) {
                factors.push_back(phi);
            } else {
                uint64_t seed = 0x5eedf1e1dULL;
                ppoly_equal_degree_factor(phi, d, p, factors, seed);
            }
            std::sort(factors.begin(), factors.end());
            factor_count_ = factors.size();
            if (factor_index >= factors.size())
                throw BadParameters("factor_index out of range");
            min_poly_ = factors[factor_index];
        } else {
            ZPoly phi = cyclotomic_polynomial(ell);
            phi_ell_q_.resize(phi.size());
            for (size_t i = 0; i < phi.size(); ++i) phi_ell_q_[i] = mpq_class(phi[i]);
            factor_count_ = 1;
        }
    }

    friend class FieldElement;

    long p_;
    long ell_;
    size_t factor_index_;
    size_t factor_count_ = 1;
    PPoly min_poly_;                     // finite mode
    std::vector<mpq_class> phi_ell_q_;   // char-zero mode
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

class FieldElement {
public:
    FieldElement() = default;

    const FieldCtx* ctx() const { return ctx_; }

    bool is_zero() const {
        for (const auto& c : fin_)
            if (c != 0) return false;
        for (const auto& c : rat_)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const { return ctx_ && *this == ctx_->one(); }

    FieldElement operator-() const {
        FieldElement r = *this;
        for (auto& c : r.fin_) c = c == 0 ? 0 : ctx_->p_ - c;
        for (auto& c : r.rat_) c = -c;
        return r;
    }

    FieldElement operator+(const FieldElement& o) const {
        FieldElement r = *this;
        for (size_t i = 0; i < r.fin_.size(); ++i) r.fin_[i] = (r.fin_[i] + o.fin_[i]) % ctx_->p_;
        for (size_t i = 0; i < r.rat_.size(); ++i) r.rat_[i] += o.rat_[i];
        return r;
    }

    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }

    FieldElement operator*(const FieldElement& o) const {
        FieldElement r(ctx_);
        if (ctx_->finite()) {
            long p = ctx_->p_;
            size_t n = fin_.size();
            std::vector<int64_t> prod(2 * n - 1, 0);
            for (size_t i = 0; i < n; ++i) {
                if (fin_[i] == 0) continue;
                for (size_t j = 0; j < n; ++j)
                    prod[i + j] = (prod[i + j] + fin_[i] * o.fin_[j]) % p;
            }
            // reduce mod the (monic) minimal polynomial
            const PPoly& m = ctx_->min_poly_;
            for (long i = static_cast<long>(prod.size()) - 1;
                 i >= static_cast<long>(n); --i) {
                int64_t c = prod[i];
                if (c == 0) continue;
                prod[i] = 0;
                for (size_t j = 0; j + 1 < m.size(); ++j)
                    prod[i - m.size() + 1 + j] =
                        ((prod[i - m.size() + 1 + j] - c * m[j]) % p + p) % p;
            }
            std::copy(prod.begin(), prod.begin() + n, r.fin_.begin());
        } else {
            size_t n = rat_.size();
            std::vector<mpq_class> prod(2 * n - 1);
            for (size_t i = 0; i < n; ++i) {
                if (rat_[i] == 0) continue;
                for (size_t j = 0; j < n; ++j) prod[i + j] += rat_[i] * o.rat_[j];
            }
            const auto& m = ctx_->phi_ell_q_;
            for (long i = static_cast<long>(prod.size()) - 1;
                 i >= static_cast<long>(n); --i) {
                mpq_class c = prod[i];
                if (c == 0) continue;
                prod[i] = 0;
                for (size_t j = 0; j + 1 < m.size(); ++j)
                    prod[i - m.size() + 1 + j] -= c * m[j];
            }
            std::copy(prod.begin(), prod.begin() + n, r.rat_.begin());
        }
        return r;
    }

    FieldElement inverse() const {
        if (is_zero()) throw Error("FieldElement: inverse of zero");
        if (ctx_->finite()) {
            // extended Euclid in F_p[x] mod m
            long p = ctx_->p_;
            PPoly a = fin_poly(), m = ctx_->min_poly_;
            PPoly t0{}, t1{1};  // coefficients tracking a
            PPoly r0 = m, r1 = a;
            while (!r1.empty()) {
                // r0 = q*r1 + r2
                PPoly q(std::max<size_t>(r0.size(), r1.size()), 0);
                PPoly rem = r0;
                int64_t linv = mod_inverse(r1.back(), p);
                while (rem.size() >= r1.size() && !rem.empty()) {
                    int64_t c = rem.back() * linv % p;
                    size_t off = rem.size() - r1.size();
                    q[off] = c;
                    for (size_t j = 0; j < r1.size(); ++j)
                        rem[off + j] = ((rem[off + j] - c * r1[j]) % p + p) % p;
                    ppoly_trim(rem);
                }
                ppoly_trim(q);
                // t2 = t0 - q*t1
                PPoly qt = ppoly_mul(q, t1, p);
                PPoly t2(std::max(t0.size(), qt.size()), 0);
                for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
                for (size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
                ppoly_trim(t2);
                t0 = t1;
                t1 = t2;
                r0 = r1;
                r1 = rem;
            }
            // r0 = gcd (a constant since m irreducible)
            if (r0.size() != 1) throw Error("FieldElement: inverse failed");
            int64_t s = mod_inverse(r0[0], p);
            FieldElement r(ctx_);
            for (size_t i = 0; i < t0.size() && i < r.fin_.size(); ++i)
                r.fin_[i] = t0[i] * s % p;
            return r;
        }
        // char-zero: extended Euclid over Q[x]
        std::vector<mpq_class> a = rat_, m = ctx_->phi_ell_q_;
        auto trim = [](std::vector<mpq_class>& v) {
            while (!v.empty() && v.back() == 0) v.pop_back();
        };
        trim(a);
        std::vector<mpq_class> t0, t1{mpq_class(1)};
        std::vector<mpq_class> r0 = m, r1 = a;
        while (!r1.empty()) {
            std::vector<mpq_class> q(std::max(r0.size(), r1.size()));
            std::vector<mpq_class> rem = r0;
            mpq_class linv = 1 / r1.back();
            while (rem.size() >= r1.size() && !rem.empty()) {
                mpq_class c = rem.back() * linv;
                size_t off = rem.size() - r1.size();
                q[off] = c;
                for (size_t j = 0; j < r1.size(); ++j) rem[off + j] -= c * r1[j];
                trim(rem);
            }
            trim(q);
            std::vector<mpq_class> qt(q.size() + t1.size());
            if (!q.empty() && !t1.empty()) {
                qt.assign(q.size() + t1.size() - 1, mpq_class(0));
                for (size_t i = 0; i < q.size(); ++i)
                    for (size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
            } else {
                qt.clear();
            }
            std::vector<mpq_class> t2(std::max(t0.size(), qt.size()));
            for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
            for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
            trim(t2);
            t0 = t1;
            t1 = t2;
            r0 = r1;
            r1 = rem;
        }
        if (r0.size() != 1) throw Error("FieldElement: inverse failed (char 0)");
        mpq_class s = 1 / r0[0];
        FieldElement r(ctx_);
        for (size_t i = 0; i < t0.size() && i < r.rat_.size(); ++i) r.rat_[i] = t0[i] * s;
        return r;
    }

    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    bool operator==(const FieldElement& o) const {
        return fin_ == o.fin_ && rat_ == o.rat_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = "[";
        if (ctx_ && ctx_->finite()) {
            for (size_t i = 0; i < fin_.size(); ++i)
                s += (i ? "," : "") + std::to_string(fin_[i]);
        } else {
            for (size_t i = 0; i < rat_.size(); ++i)
                s += (i ? "," : "") + rat_[i].get_str();
        }
        return s + "]";
    }

    const std::vector<int64_t>& finite_coeffs() const { return fin_; }
    const std::vector<mpq_class>& rational_coeffs() const { return rat_; }

private:
    explicit FieldElement(const FieldCtx* ctx) : ctx_(ctx) {
        if (ctx_->finite())
            fin_.assign(static_cast<size_t>(ctx_->degree()), 0);
        else
            rat_.assign(static_cast<size_t>(ctx_->degree()), mpq_class(0));
    }

    PPoly fin_poly() const {
        PPoly a = fin_;
        ppoly_trim(a);
        return a;
    }

    friend class FieldCtx;

    const FieldCtx* ctx_ = nullptr;
    std::vector<int64_t> fin_;
    std::vector<mpq_class> rat_;
};

inline FieldElement FieldCtx::zero() const { return FieldElement(this); }

inline FieldElement FieldCtx::one() const { return from_long(1); }

inline FieldElement FieldCtx::from_long(long n) const {
    FieldElement r(this);
    if (finite()) {
        r.fin_[0] = ((n % p_) + p_) % p_;
    } else {
        r.rat_[0] = n;
    }
    return r;
}

inline FieldElement FieldCtx::from_mpq(const mpq_class& c) const {
    FieldElement r(this);
    if (finite()) {
        mpz_class num = c.get_num() % p_;
        if (num < 0) num += p_;
        mpz_class den = c.get_den() % p_;
        if (den == 0) throw Error("from_mpq: denominator divisible by p");
        r.fin_[0] = num.get_si() * mod_inverse(den.get_si(), p_) % p_;
    } else {
        r.rat_[0] = c;
    }
    return r;
}

inline FieldElement FieldCtx::zeta_power(long e) const {
    e %= ell_;
    if (e < 0) e += ell_;
    FieldElement r(this);
    // x^e reduced by the minimal polynomial / Phi_ell
    if (finite()) {
        PPoly x{0, 1};
        PPoly v = ppoly_powmod(x, mpz_class(e), min_poly_, p_);
        for (size_t i = 0; i < v.size(); ++i) r.fin_[i] = v[i];
    } else {
        std::vector<mpq_class> v{mpq_class(1)};
        for (long i = 0; i < e; ++i) {
            v.insert(v.begin(), mpq_class(0));
            if (v.size() == phi_ell_q_.size()) {
                mpq_class c = v.back();
                v.pop_back();
                for (size_t j = 0; j < v.size(); ++j) v[j] -= c * phi_ell_q_[j];
            }
        }
        for (size_t i = 0; i < v.size(); ++i) r.rat_[i] = v[i];
    }
    return r;
}

inline FieldPtr make_field(long p, long ell, size_t factor_index = 0) {
    return FieldCtx::make(p, ell, factor_index);
}

/// Evaluate a GenericScalar at q = zeta.  Throws PoleAtRootOfUnity if the
/// canonical denominator vanishes there (the input was not in the A-form).
inline FieldElement specialize(const GenericScalar& s, const FieldCtx& F) {
    auto eval = [&F](const Laurent& l) {
        FieldElement v = F.zero();
        for (const auto& [e, c] : l.terms()) v += F.from_mpq(c) * F.zeta_power(e);
        return v;
    };
    FieldElement den = eval(s.den());
    if (den.is_zero())
        throw PoleAtRootOfUnity("denominator " + s.den().str() + " vanishes at zeta");
    if (s.den().is_one()) return eval(s.num());
    return eval(s.num()) / den;
}

}  // namespace flk
