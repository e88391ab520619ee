#pragma once

#include <memory>

#include "flk/based_algebra.hpp"
#include "flk/qint.hpp"
#include "flk/uq_engine.hpp"

namespace flk {

/// Shared per-type cache of generic engines (rule derivation is pure).
inline std::shared_ptr<UqGeneric> generic_engine(const RootDatum& R) {
    static std::map<std::pair<char, int>, std::shared_ptr<UqGeneric>> cache;
    auto key = std::make_pair(R.series(), R.rank());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto eng = build_generic_engine(R);
    cache[key] = eng;
    return eng;
}

/// Small quantum group u_zeta(u/b/g) with the PBW monomial basis indexed in
/// mixed radix, so arbitrary dimensions need no materialized tables.
class SmallQuantum {
public:
    SmallQuantum(const RootDatum& R, FieldPtr F, char part)
        : R_(R), F_(std::move(F)), part_(part), ell_(F_->ell()) {
        if (part != 'u' && part != 'b' && part != 'g')
            throw BadParameters("small quantum: part must be u, b or g");
        if (R.series() == 'A' && R.rank() == 3)
            throw UnsupportedType("small quantum groups implemented for rank <= 2");
        if (ell_ <= R_.coxeter_number())
            warned_ = true;  // l > h recommended for the cohomology identities
        gen_ = generic_engine(R_);
        eng_ = specialize_engine(*gen_, F_, ell_, ell_);
        N_ = eng_->num_roots();
        n_ = R_.rank();
        auto ipow = [](long b, int e) {
            size_t r = 1;
            for (int i = 0; i < e; ++i) r *= static_cast<size_t>(b);
            return r;
        };
        nf_ = ipow(ell_, N_);
        nk_ = part == 'u' ? 1 : ipow(ell_, n_);
        ne_ = part == 'g' ? nf_ : 1;
    }

    const RootDatum& root_datum() const { return R_; }
    FieldPtr field() const { return F_; }
    char part() const { return part_; }
    long ell() const { return ell_; }
    bool hypothesis_warning() const { return warned_; }
    const UqSpecial& engine() const { return *eng_; }
    const UqGeneric& generic() const { return *gen_; }

    size_t dim() const { return nf_ * nk_ * ne_; }

    using Mono = UqSpecial::Mono;

    Mono mono_at(size_t idx) const {
        size_t fi = idx % nf_;
        idx /= nf_;
        size_t ki = idx % nk_;
        size_t ei = idx / nk_;
        Mono m = eng_->unit_mono();
        for (int g = 0; g < N_; ++g) {
            m.f[g] = static_cast<long>(fi % ell_);
            fi /= ell_;
        }
        if (part_ != 'u')
            for (int i = 0; i < n_; ++i) {
                m.k[i] = static_cast<long>(ki % ell_);
                ki /= ell_;
            }
        if (part_ == 'g')
            for (int g = 0; g < N_; ++g) {
                m.e[g] = static_cast<long>(ei % ell_);
                ei /= ell_;
            }
        return m;
    }

    size_t index_of(const Mono& m) const {
        size_t fi = 0, ki = 0, ei = 0;
        for (int g = N_ - 1; g >= 0; --g) fi = fi * ell_ + static_cast<size_t>(m.f[g]);
        if (part_ != 'u')
            for (int i = n_ - 1; i >= 0; --i) ki = ki * ell_ + static_cast<size_t>(m.k[i]);
        if (part_ == 'g')
            for (int g = N_ - 1; g >= 0; --g) ei = ei * ell_ + static_cast<size_t>(m.e[g]);
        return (ei * nk_ + ki) * nf_ + fi;
    }

    /// Basis elements outside the declared part must not appear in products.
    bool in_part(const Mono& m) const {
        if (part_ == 'u') {
            for (long k : m.k)
                if (k != 0) return false;
        }
        if (part_ != 'g') {
            for (long e : m.e)
                if (e != 0) return false;
        }
        return true;
    }

    SparseVec mul_indices(size_t i, size_t j) const {
        UqSpecial::Elem p = eng_->mul_mono(mono_at(i), mono_at(j));
        SparseVec out;
        for (const auto& [m, c] : p) {
            if (!in_part(m))
                throw ClosureViolation("small quantum: product left the subalgebra");
            out.emplace(index_of(m), c);
        }
        return out;
    }

    Weight weight_of(const Mono& m) const {
        Weight w(std::vector<long>(n_, 0));
        const auto& conv = eng_->convex_order();
        for (int g = 0; g < N_; ++g) {
            if (m.f[g]) w = w - R_.root_to_weight(conv[g]) * m.f[g];
            if (m.e[g]) w = w + R_.root_to_weight(conv[g]) * m.e[g];
        }
        return w;
    }

    std::string label_of(const Mono& m) const {
        auto vec = [](const std::vector<long>& v) {
            std::string s = "(";
            for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s + ")";
        };
        std::string s = "F^" + vec(m.f);
        if (part_ != 'u') s += "K^" + vec(m.k);
        if (part_ == 'g') s += "E^" + vec(m.e);
        return s;
    }

    /// N-filtration degree (theta-mixed-radix; r = 0, theta = 2l).
    long filtration_degree(const Mono& m) const {
        long theta = 2 * ell_;
        long d = 0, ht = 0;
        const auto& conv = eng_->convex_order();
        long pw = 1;
        for (int g = N_ - 1; g >= 0; --g) {
            d += pw * m.f[g];
            pw *= theta;
        }
        for (int g = 0; g < N_; ++g) {
            d += pw * m.e[g];
            pw *= theta;
        }
        for (int g = 0; g < N_; ++g) {
            long h = 0;
            for (long c : conv[g]) h += c;
            ht += (m.f[g] + m.e[g]) * h;
        }
        return d + pw * ht;
    }

    /// Materialize as a BasedAlgebra (requires modest dimension).
    BasedAlgebra algebra(size_t limit = 500000) const {
        if (dim() > limit)
            throw BudgetExceeded("small quantum: dimension " + std::to_string(dim()) +
                                 " exceeds materialization limit");
        BasedAlgebra A;
        A.field = F_;
        A.kind = "u_zeta(" + std::string(1, part_) + ")[" + std::string(1, R_.series()) +
                 std::to_string(R_.rank()) + ",l=" + std::to_string(ell_) + "]";
        size_t d = dim();
        for (size_t i = 0; i < d; ++i) {
            Mono m = mono_at(i);
            A.labels.push_back(label_of(m));
            A.weights.push_back(weight_of(m));
            bool is_toral = true;
            for (long x : m.f) is_toral = is_toral && x == 0;
            for (long x : m.e) is_toral = is_toral && x == 0;
            A.augmentation.push_back(is_toral ? F_->one() : F_->zero());
            A.filtration.push_back(filtration_degree(m));
        }
        A.unit_index = index_of(eng_->unit_mono());
        auto self = std::make_shared<SmallQuantum>(*this);
        A.mul_fn = [self](size_t i, size_t j) { return self->mul_indices(i, j); };
        attach_hopf(A, self);
        return A;
    }

    /// Index of a single-generator basis element, or the unit/K-monomials.
    size_t generator_F(int simple) const { return index_of(gen_mono('F', simple)); }
    size_t generator_E(int simple) const { return index_of(gen_mono('E', simple)); }
    size_t generator_K(int simple, long pw = 1) const { return index_of(gen_mono('K', simple, pw)); }

    Mono gen_mono(char kind, int simple, long pw = 1) const {
        Mono m = eng_->unit_mono();
        if (kind == 'K') {
            m.k[simple] = ((pw % ell_) + ell_) % ell_;
            return m;
        }
        const auto& conv = eng_->convex_order();
        int pos = -1;
        for (int g = 0; g < N_; ++g) {
            long h = 0;
            for (long c : conv[g]) h += c;
            if (h == 1 && conv[g][simple] == 1) pos = g;
        }
        if (kind == 'F')
            m.f[pos] = pw;
        else
            m.e[pos] = pw;
        return m;
    }

private:
    /// Hopf structure on generators:
    ///   D(E) = E(x)1 + K(x)E,  D(F) = F(x)K^{-1} + 1(x)F,  D(K) = K(x)K,
    ///   S(E) = -K^{-1}E,       S(F) = -FK,                 S(K) = K^{-1}.
    /// Defined on basis elements that are single generators (or K-monomials);
    /// anything else raises HopfDataMissing.
    void attach_hopf(BasedAlgebra& A, std::shared_ptr<SmallQuantum> self) const {
        auto classify = [self](size_t idx) -> std::tuple<char, int, long> {
            Mono m = self->mono_at(idx);
            long ftot = 0, etot = 0, ktot = 0;
            int fpos = -1, epos = -1, kpos = -1;
            for (int g = 0; g < self->N_; ++g) {
                ftot += m.f[g];
                etot += m.e[g];
                if (m.f[g]) fpos = g;
                if (m.e[g]) epos = g;
            }
            for (int i = 0; i < self->n_; ++i) {
                ktot += m.k[i];
                if (m.k[i]) kpos = i;
            }
            if (ftot + etot == 0) return {'K', 0, 0};  // pure K-monomial (incl. unit)
            const auto& conv = self->eng_->convex_order();
            auto simple_of = [&](int pos) {
                long h = 0;
                int s = -1;
                for (int c = 0; c < self->n_; ++c) {
                    h += conv[pos][c];
                    if (conv[pos][c] == 1) s = c;
                }
                return h == 1 ? s : -1;
            };
            if (ftot == 1 && etot == 0 && ktot == 0 && simple_of(fpos) >= 0)
                return {'F', simple_of(fpos), 0};
            if (etot == 1 && ftot == 0 && ktot == 0 && simple_of(epos) >= 0)
                return {'E', simple_of(epos), 0};
            return {'?', kpos, 0};
        };
        if (part_ == 'u') return;  // no antipode-stable toral part to express K^{-1}
        A.coproduct = [self, classify](size_t idx) -> SparseVec2 {
            auto [kind, s, unused] = classify(idx);
            FieldPtr F = self->F_;
            if (kind == 'K') {
                return {{{idx, idx}, F->one()}};
            }
            if (kind == 'F') {
                size_t one = self->index_of(self->eng_->unit_mono());
                size_t kinv = self->generator_K(s, -1);
                return {{{idx, kinv}, F->one()}, {{one, idx}, F->one()}};
            }
            if (kind == 'E') {
                size_t one = self->index_of(self->eng_->unit_mono());
                size_t k = self->generator_K(s, 1);
                return {{{idx, one}, F->one()}, {{k, idx}, F->one()}};
            }
            throw HopfDataMissing("coproduct only provided on algebra generators");
        };
        A.antipode = [self, classify](size_t idx) -> SparseVec {
            auto [kind, s, unused] = classify(idx);
            FieldPtr F = self->F_;
            Mono m = self->mono_at(idx);
            if (kind == 'K') {
                Mono inv = m;
                for (int i = 0; i < self->n_; ++i)
                    inv.k[i] = (self->ell_ - m.k[i]) % self->ell_;
                return {{self->index_of(inv), F->one()}};
            }
            if (kind == 'F') {
                // -F_s K_s
                Mono r = self->gen_mono('F', s);
                r.k[s] = 1;
                return {{self->index_of(r), F->zero() - F->one()}};
            }
            if (kind == 'E') {
                // -K_s^{-1} E_s (already in normal K-before-E order)
                Mono r = self->gen_mono('E', s);
                r.k[s] = self->ell_ - 1;
                return {{self->index_of(r), F->zero() - F->one()}};
            }
            throw HopfDataMissing("antipode only provided on algebra generators");
        };
    }

    RootDatum R_;
    FieldPtr F_;
    char part_;
    long ell_;
    bool warned_ = false;
    std::shared_ptr<UqGeneric> gen_;
    std::shared_ptr<UqSpecial> eng_;
    int N_ = 0, n_ = 0;
    size_t nf_ = 1, nk_ = 1, ne_ = 1;
};

inline SmallQuantum build_small_quantum(const RootDatum& R, FieldPtr F, char part) {
    return SmallQuantum(R, std::move(F), part);
}

/// A-form integrality and engine-consistency assertion: products of u-part
/// basis monomials computed over generic q must (a) have coefficients without
/// poles at zeta, (b) have overflow terms (exponent >= l) whose divided-power
/// coefficients vanish at zeta, and (c) agree with the specialized engine.
inline void verify_aform(const SmallQuantum& U, size_t samples = 400, uint64_t seed = 5) {
    const UqGeneric& gen = U.generic();
    const UqSpecial& eng = U.engine();
    const RootDatum& R = U.root_datum();
    long ell = U.ell();
    int N = eng.num_roots();
    const auto& conv = eng.convex_order();
    std::vector<long> dsym(N);
    for (int g = 0; g < N; ++g) dsym[g] = R.root_norm(conv[g]) / 2;
    uint64_t s = seed;
    auto rnd = [&s](long m) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((s >> 33) % static_cast<uint64_t>(m));
    };
    for (size_t t = 0; t < samples; ++t) {
        PbwExp a(N), b(N);
        for (int g = 0; g < N; ++g) {
            a[g] = rnd(ell);
            b[g] = rnd(ell);
        }
        auto gp = gen.mul_half(a, b, true);
        auto sp = eng.mul_half(a, b, true);
        UqSpecial::FMap expect;
        for (const auto& [m, c] : gp) {
            bool overflow = false;
            for (long x : m) overflow = overflow || x >= ell;
            if (overflow) {
                GenericScalar dp = c;
                for (int g = 0; g < N; ++g) dp *= quantum_factorial(m[g], dsym[g]);
                if (!specialize(dp, *U.field()).is_zero())
                    throw ClosureViolation("A-form: overflow term survives specialization");
            } else {
                FieldElement v = specialize(c, *U.field());
                if (!v.is_zero()) expect.emplace(m, v);
            }
        }
        if (expect != sp) throw Error("A-form: generic and specialized products disagree");
    }
}

}  // namespace flk
