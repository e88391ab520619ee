#pragma once

#include <memory>

#include "flk/based_algebra.hpp"
#include "flk/qint.hpp"

namespace flk {

/// Rank-1 higher Frobenius-Lusztig kernels via divided powers.  Basis
/// F^(a) tau_c E^(b) with 0 <= a, b, c < M = p^r l; tau_c are the orthogonal
/// idempotents of the toral function algebra on X/(M) (the character value on
/// weight mu only depends on mu mod M).  Parts: 'u' = U_r (unipotent, F side),
/// 'b' = B_r (adds the torus), 'g' = G_r (full).  r = 0 recovers a small
/// quantum group presented in divided powers.
class KernelA1 {
public:
    KernelA1(FieldPtr F, long r, char part)
        : F_(std::move(F)), r_(r), part_(part), p_(F_->p()), ell_(F_->ell()) {
        if (part != 'u' && part != 'b' && part != 'g')
            throw BadParameters("kernel: part must be u, b or g");
        if (r < 0) throw BadParameters("kernel: r < 0");
        if (r >= 1 && p_ == 0) throw BadParameters("kernel: r >= 1 requires positive p");
        M_ = ell_;
        for (long i = 0; i < r; ++i) M_ *= p_;
        has_t_ = part != 'u';
        has_e_ = part == 'g';
    }

    FieldPtr field() const { return F_; }
    long p() const { return p_; }
    long r() const { return r_; }
    long ell() const { return ell_; }
    long order() const { return M_; }  // M = p^r l
    char part() const { return part_; }

    size_t dim() const {
        size_t d = static_cast<size_t>(M_);
        if (has_t_) d *= M_;
        if (has_e_) d *= M_;
        return d;
    }

    size_t index_of(long a, long c, long b) const {
        size_t i = static_cast<size_t>(a);
        if (has_t_) i += static_cast<size_t>(M_) * static_cast<size_t>(c);
        if (has_e_) i += static_cast<size_t>(M_) * static_cast<size_t>(M_) * static_cast<size_t>(b);
        return i;
    }

    void decode(size_t i, long& a, long& c, long& b) const {
        a = static_cast<long>(i % M_);
        i /= M_;
        c = has_t_ ? static_cast<long>(i % M_) : 0;
        if (has_t_) i /= M_;
        b = has_e_ ? static_cast<long>(i) : 0;
    }

    long res(long x) const { return ((x % M_) + M_) % M_; }

    /// [n choose k] at zeta in characteristic p (n may be negative); this only
    /// depends on n mod M for k < M, which keeps tau-evaluations consistent.
    FieldElement qbin(long n, long k) const {
        auto key = std::make_pair(n, k);
        auto it = bin_cache_.find(key);
        if (it != bin_cache_.end()) return it->second;
        FieldElement v = specialize(quantum_binomial_z(n, k, 1), *F_);
        bin_cache_.emplace(key, v);
        return v;
    }

    /// Structure constants.  Straightening uses the divided-power commutation
    ///   E^(b) F^(a') = sum_j F^(a'-j) [K; 2j-a'-b; j] E^(b-j)
    /// with the bracket evaluated on the weight class fixed by the adjacent
    /// idempotent, and Lucas vanishing guaranteeing closure of the F/E ranges.
    SparseVec mul_indices(size_t i, size_t j) const {
        long a, c, b, a2, c2, b2;
        decode(i, a, c, b);
        decode(j, a2, c2, b2);
        SparseVec out;
        long jmax = std::min(a2, b);
        for (long t = 0; t <= jmax; ++t) {
            if (has_t_) {
                long d1 = res(c + 2 * (a2 - t)), d2 = res(c2 + 2 * (b - t));
                if (d1 != d2) continue;
            }
            long d = has_t_ ? res(c + 2 * (a2 - t)) : 0;
            FieldElement cf = qbin(a + a2 - t, a);
            FieldElement ce = qbin(b - t + b2, b2);
            FieldElement ct = t == 0 ? F_->one() : qbin(d + 2 * t - a2 - b, t);
            FieldElement coeff = cf * ce * ct;
            if (a + a2 - t >= M_ || b - t + b2 >= M_) {
                if (!coeff.is_zero())
                    throw ClosureViolation("kernel: divided power exponent overflow survives");
                continue;
            }
            if (coeff.is_zero()) continue;
            size_t k = index_of(a + a2 - t, d, b - t + b2);
            auto it = out.find(k);
            if (it == out.end()) {
                out.emplace(k, coeff);
            } else {
                it->second += coeff;
                if (it->second.is_zero()) out.erase(it);
            }
        }
        return out;
    }

    /// theta-adic filtration degree: base-(l, p, ..., p) digits of the F and E
    /// exponents in increasing significance, with the total weight height on
    /// top, so straightening lower terms drop strictly.
    long filtration_degree(long a, long b) const {
        long theta = 2 * M_;
        std::vector<long> da = digits(a), db = digits(b);
        long deg = 0, pw = 1;
        for (long x : da) {
            deg += pw * x;
            pw *= theta;
        }
        for (long x : db) {
            deg += pw * x;
            pw *= theta;
        }
        return deg + pw * (a + b);
    }

    std::vector<long> digits(long a) const {
        std::vector<long> d{a % ell_};
        a /= ell_;
        for (long i = 0; i < r_; ++i) {
            d.push_back(a % p_);
            a /= p_;
        }
        return d;
    }

    // --- distinguished elements (as sparse vectors in the basis) ---
    SparseVec elem_F(long a) const {
        SparseVec v;
        if (!has_t_) return {{index_of(a, 0, 0), F_->one()}};
        for (long c = 0; c < M_; ++c) v.emplace(index_of(a, c, 0), F_->one());
        return v;
    }
    SparseVec elem_E(long b) const {
        SparseVec v;
        for (long c = 0; c < M_; ++c) v.emplace(index_of(0, c, b), F_->one());
        return v;
    }
    SparseVec elem_tau(long c) const { return {{index_of(0, res(c), 0), F_->one()}}; }
    /// K^m = sum_c zeta^{mc} tau_c.
    SparseVec elem_K(long m) const {
        SparseVec v;
        for (long c = 0; c < M_; ++c) {
            FieldElement z = F_->zeta_power(m * c);
            if (!z.is_zero()) v.emplace(index_of(0, c, 0), z);
        }
        return v;
    }

    BasedAlgebra algebra() const {
        auto core = std::make_shared<BasedAlgebra>();
        core->field = F_;
        char up = part_ == 'u' ? 'U' : part_ == 'b' ? 'B' : 'G';
        core->kind = "U_zeta(" + std::string(1, up) + "_" + std::to_string(r_) +
                     ")[A1,p=" + std::to_string(p_) + ",l=" + std::to_string(ell_) + "]";
        size_t n = dim();
        auto self = std::make_shared<KernelA1>(*this);
        for (size_t i = 0; i < n; ++i) {
            long a, c, b;
            decode(i, a, c, b);
            std::string lab = "F^(" + std::to_string(a) + ")";
            if (has_t_) lab += "tau_" + std::to_string(c);
            if (has_e_) lab += "E^(" + std::to_string(b) + ")";
            core->labels.push_back(lab);
            core->weights.push_back(Weight{std::vector<long>{2 * (b - a)}});
            bool aug = a == 0 && b == 0 && (!has_t_ || c == 0);
            core->augmentation.push_back(aug ? F_->one() : F_->zero());
            core->filtration.push_back(filtration_degree(a, b));
        }
        if (has_t_) {
            core->unit_index = index_of(0, 0, 0);
            for (long c = 0; c < M_; ++c) core->unit_vec.emplace(index_of(0, c, 0), F_->one());
        } else {
            core->unit_index = 0;
        }
        core->mul_fn = [self](size_t i, size_t j) { return self->mul_indices(i, j); };
        BasedAlgebra out = *core;
        if (has_t_ && has_e_) attach_hopf(out, core, self);
        return out;
    }

private:
    /// Full Hopf data (every basis element), from
    ///   D(F^(a)) = sum_j q^{j(a-j)} F^(j) (x) F^(a-j) K^{-j},
    ///   D(E^(b)) = sum_i q^{-i(b-i)} K^i E^(b-i) (x) E^(i),
    ///   D(tau_c) = sum_{t+u=c} tau_t (x) tau_u,
    /// and S(F^(a)) = (-1)^a q^{-a(a-1)} F^(a) K^a, S(E^(b)) = (-1)^b q^{b(b-1)}
    /// K^{-b} E^(b), S(tau_c) = tau_{-c}.
    static void attach_hopf(BasedAlgebra& A, std::shared_ptr<BasedAlgebra> core,
                            std::shared_ptr<KernelA1> self) {
        A.coproduct = [self](size_t idx) -> SparseVec2 {
            long a, c, b;
            self->decode(idx, a, c, b);
            long M = self->M_;
            SparseVec2 out;
            for (long j = 0; j <= a; ++j)
                for (long i = 0; i <= b; ++i)
                    for (long t = 0; t < M; ++t) {
                        long u = self->res(c - t);
                        FieldElement z =
                            self->F_->zeta_power(j * (a - j) - j * u - i * (b - i) + i * t);
                        size_t l = self->index_of(j, t, b - i);
                        size_t rr = self->index_of(a - j, u, i);
                        auto key = std::make_pair(l, rr);
                        auto it = out.find(key);
                        if (it == out.end()) {
                            if (!z.is_zero()) out.emplace(key, z);
                        } else {
                            it->second += z;
                            if (it->second.is_zero()) out.erase(it);
                        }
                    }
            return out;
        };
        A.antipode = [self, core](size_t idx) -> SparseVec {
            long a, c, b;
            self->decode(idx, a, c, b);
            FieldPtr F = self->F_;
            long M = self->M_;
            // S(E^(b)) then S(tau_c) then S(F^(a)), multiplied in the algebra.
            SparseVec se, sf;
            FieldElement sgn_e = (b % 2 ? F->zero() - F->one() : F->one());
            FieldElement sgn_f = (a % 2 ? F->zero() - F->one() : F->one());
            for (long t = 0; t < M; ++t) {
                se.emplace(self->index_of(0, t, b),
                           sgn_e * F->zeta_power(b * (b - 1) - b * t));
                sf.emplace(self->index_of(a, t, 0),
                           sgn_f * F->zeta_power(-a * (a - 1) + a * t));
            }
            SparseVec st{{self->index_of(0, self->res(-c), 0), F->one()}};
            return core->mul_elem(core->mul_elem(se, st), sf);
        };
    }

    FieldPtr F_;
    long r_, p_, ell_, M_ = 0;
    char part_;
    bool has_t_ = false, has_e_ = false;
    mutable std::map<std::pair<long, long>, FieldElement> bin_cache_;
};

inline KernelA1 build_dividedpower_kernel_A1(FieldPtr F, long r, char part) {
    return KernelA1(std::move(F), r, part);
}

}  // namespace flk
