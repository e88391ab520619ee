#pragma once

#include <memory>

#include "flk/field.hpp"
#include "flk/letter_calculus.hpp"

namespace flk {

/// Coefficient policy for the triangular-monomial engine: exact generic q.
struct GenericUqPolicy {
    using S = GenericScalar;
    S zero() const { return GenericScalar(0); }
    S one() const { return GenericScalar(1); }
    S qpow(long e) const { return GenericScalar::q_power(e); }
    S inv_q_minus(long d) const {
        return GenericScalar(1) /
               GenericScalar(Laurent::monomial(d) - Laurent::monomial(-d));
    }
    long kmod = 0;   // K exponents live in Z
    long trunc = 0;  // no truncation of F/E exponents
};

/// Coefficient policy at q = zeta; optionally with K_i^kmod = 1 and plain
/// powers F_gamma^a = 0 for a >= trunc (the small-quantum-group quotientless
/// vanishing F_gamma^ell = [ell]! F_gamma^(ell) = 0).
struct FieldUqPolicy {
    using S = FieldElement;
    FieldPtr F;
    long kmod = 0;
    long trunc = 0;
    S zero() const { return F->zero(); }
    S one() const { return F->one(); }
    S qpow(long e) const { return F->zeta_power(e); }
    S inv_q_minus(long d) const {
        return (F->zeta_power(d) - F->zeta_power(-d)).inverse();
    }
};

/// Exact arithmetic in the triangular PBW basis F^a K^b E^c of U_q (or its
/// specializations): products are straightened with the Levendorskii-Soibelman
/// rules of a OneSidedPBW on each side and recursively derived E-F crossing
/// rules.
template <class P>
class UqEngineT {
public:
    using S = typename P::S;

    struct Mono {
        PbwExp f;             // exponents over the convex order, F side
        std::vector<long> k;  // K_i exponents (simple roots)
        PbwExp e;             // exponents over the convex order, E side
        bool operator<(const Mono& o) const {
            if (f != o.f) return f < o.f;
            if (k != o.k) return k < o.k;
            return e < o.e;
        }
        bool operator==(const Mono& o) const { return f == o.f && k == o.k && e == o.e; }
    };
    using Elem = std::map<Mono, S>;
    using FMap = std::map<PbwExp, S>;  // element of one one-sided half

    UqEngineT(const RootDatum& R, P policy)
        : R_(R), pol_(std::move(policy)), conv_(convex_positive_roots(R, R.longest_element().word)) {
        N_ = static_cast<int>(conv_.size());
        n_ = R_.rank();
        pair_.assign(N_, std::vector<long>(N_));
        for (int i = 0; i < N_; ++i)
            for (int j = 0; j < N_; ++j) pair_[i][j] = R_.root_pairing(conv_[i], conv_[j]);
        simple_pair_.assign(n_, std::vector<long>(N_));
        for (int i = 0; i < n_; ++i) {
            RootVec ai(n_, 0);
            ai[i] = 1;
            for (int g = 0; g < N_; ++g) simple_pair_[i][g] = R_.root_pairing(ai, conv_[g]);
        }
        ht_.resize(N_);
        for (int g = 0; g < N_; ++g) {
            ht_[g] = 0;
            for (long c : conv_[g]) ht_[g] += c;
        }
    }

    const RootDatum& root_datum() const { return R_; }
    const std::vector<RootVec>& convex_order() const { return conv_; }
    int num_roots() const { return N_; }
    const P& policy() const { return pol_; }

    /// Install one-sided straightening tables (coefficients already in S).
    void set_swap_tables(std::map<std::pair<int, int>, FMap> fswap,
                         std::map<std::pair<int, int>, FMap> eswap,
                         std::vector<OneSidedPBW::RootDef> defs) {
        fswap_ = std::move(fswap);
        eswap_ = std::move(eswap);
        defs_ = std::move(defs);
    }

    void set_ef_rules(std::map<std::pair<int, int>, Elem> ef) { ef_ = std::move(ef); }

    /// Derive all E-F crossing rules recursively from the simple-letter
    /// commutator [E_i, F_j] = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1}),
    /// in order of increasing total height.
    void derive_ef_rules() {
        std::vector<std::pair<long, std::pair<int, int>>> order;
        for (int g = 0; g < N_; ++g)
            for (int d = 0; d < N_; ++d) order.push_back({ht_[g] + ht_[d], {g, d}});
        std::sort(order.begin(), order.end());
        for (const auto& [h, gd] : order) derive_ef_pair(gd.first, gd.second);
    }

    const std::map<std::pair<int, int>, FMap>& fswap_tables() const { return fswap_; }
    const std::map<std::pair<int, int>, FMap>& eswap_tables() const { return eswap_; }
    const std::map<std::pair<int, int>, Elem>& ef_rules() const { return ef_; }
    const std::vector<OneSidedPBW::RootDef>& root_defs() const { return defs_; }

    Mono mono(PbwExp f, std::vector<long> k, PbwExp e) const {
        return Mono{std::move(f), std::move(k), std::move(e)};
    }
    Mono unit_mono() const {
        return Mono{PbwExp(N_, 0), std::vector<long>(n_, 0), PbwExp(N_, 0)};
    }

    /// Drop-or-keep after truncation/K-reduction; returns false if killed.
    bool normalize_mono(Mono& m) const {
        if (pol_.trunc > 0)
            for (int g = 0; g < N_; ++g)
                if (m.f[g] >= pol_.trunc || m.e[g] >= pol_.trunc) return false;
        if (pol_.kmod > 0)
            for (int i = 0; i < n_; ++i)
                m.k[i] = ((m.k[i] % pol_.kmod) + pol_.kmod) % pol_.kmod;
        return true;
    }

    void add_term(Elem& acc, Mono m, const S& c) const {
        if (c.is_zero()) return;
        if (!normalize_mono(m)) return;
        auto it = acc.find(m);
        if (it == acc.end()) {
            acc.emplace(std::move(m), c);
        } else {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }

    /// Full product in the triangular basis.
    Elem mul(const Elem& x, const Elem& y) const {
        Elem acc;
        for (const auto& [mx, cx] : x)
            for (const auto& [my, cy] : y) {
                Elem t = mul_mono(mx, my);
                S c = cx * cy;
                for (const auto& [m, v] : t) add_term(acc, m, v * c);
            }
        return acc;
    }

    Elem mul_mono(const Mono& x, const Mono& y) const {
        // x = F^a K^b E^c,  y = F^{a'} K^{b'} E^{c'}
        Elem cross = cross_ef(x.e, y.f);  // E^c F^{a'}
        Elem acc;
        for (const auto& [mid, cmid] : cross) {
            // piece: F^a K^b (F^p K^q E^s) K^{b'} E^{c'}
            long phase = 0;
            // K^b past F^p:  K_mu F = q^{-(mu,phi)} F K_mu
            for (int i = 0; i < n_; ++i)
                for (int g = 0; g < N_; ++g) phase -= x.k[i] * mid.f[g] * simple_pair_[i][g];
            // E^s K^{b'} = q^{-(mu',eps)} K^{b'} E^s
            for (int i = 0; i < n_; ++i)
                for (int g = 0; g < N_; ++g) phase -= y.k[i] * mid.e[g] * simple_pair_[i][g];
            S coeff = cmid * pol_.qpow(phase);
            FMap fpart = mul_one_sided(x.f, mid.f, fswap_, fcache_);
            FMap epart = mul_one_sided(mid.e, y.e, eswap_, ecache_);
            std::vector<long> kvec(n_);
            for (int i = 0; i < n_; ++i) kvec[i] = x.k[i] + mid.k[i] + y.k[i];
            for (const auto& [fa, fc] : fpart)
                for (const auto& [ea, ec] : epart)
                    add_term(acc, Mono{fa, kvec, ea}, coeff * fc * ec);
        }
        return acc;
    }

    /// Product of two ordered monomials within one one-sided half.
    FMap mul_half(const PbwExp& a, const PbwExp& b, bool f_side) const {
        return f_side ? mul_one_sided(a, b, fswap_, fcache_)
                      : mul_one_sided(a, b, eswap_, ecache_);
    }

private:
    struct LetterCache {
        std::map<std::pair<PbwExp, int>, FMap> letter;
    };

    FMap mul_one_sided(const PbwExp& a, const PbwExp& b,
                       const std::map<std::pair<int, int>, FMap>& table,
                       LetterCache& cache) const {
        FMap acc{{a, pol_.one()}};
        for (int g = 0; g < N_; ++g)
            for (long t = 0; t < b[g]; ++t) {
                FMap next;
                for (const auto& [m, c] : acc) {
                    FMap lm = letter_mul(m, g, table, cache);
                    for (const auto& [m2, c2] : lm) fmap_add(next, m2, c * c2);
                }
                acc = std::move(next);
            }
        return acc;
    }

    void fmap_add(FMap& acc, const PbwExp& m, const S& c) const {
        if (c.is_zero()) return;
        if (pol_.trunc > 0)
            for (long x : m)
                if (x >= pol_.trunc) return;
        auto it = acc.find(m);
        if (it == acc.end()) {
            acc.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }

    /// Normal form of (ordered monomial a) * (single letter at position g).
    FMap letter_mul(const PbwExp& a, int g,
                    const std::map<std::pair<int, int>, FMap>& table,
                    LetterCache& cache) const {
        auto key = std::make_pair(a, g);
        auto it = cache.letter.find(key);
        if (it != cache.letter.end()) return it->second;
        FMap result;
        int h = -1;  // highest position beyond g with a nonzero exponent
        for (int t = N_ - 1; t > g; --t)
            if (a[t] > 0) {
                h = t;
                break;
            }
        if (h < 0) {
            PbwExp m = a;
            ++m[g];
            result = FMap{};
            fmap_add(result, m, pol_.one());
        } else {
            PbwExp head = a;
            --head[h];  // a = head * X_h  (head keeps everything else)
            const FMap& rule = table.at({h, g});
            for (const auto& [mid, c] : rule) {
                // head * mid, mid an ordered monomial
                FMap prod{{head, pol_.one()}};
                for (int t = 0; t < N_; ++t)
                    for (long rep = 0; rep < mid[t]; ++rep) {
                        FMap next;
                        for (const auto& [m2, c2] : prod) {
                            FMap lm = letter_mul(m2, t, table, cache);
                            for (const auto& [m3, c3] : lm) fmap_add(next, m3, c2 * c3);
                        }
                        prod = std::move(next);
                    }
                for (const auto& [m2, c2] : prod) fmap_add(result, m2, c * c2);
            }
        }
        cache.letter.emplace(std::move(key), result);
        return result;
    }

    /// Normal form of E^c * F^a.
    Elem cross_ef(const PbwExp& c, const PbwExp& a) const {
        bool ctrivial = true, atrivial = true;
        for (long x : c) ctrivial = ctrivial && x == 0;
        for (long x : a) atrivial = atrivial && x == 0;
        if (ctrivial || atrivial) {
            Elem r;
            add_term(r, Mono{a, std::vector<long>(n_, 0), c}, pol_.one());
            return r;
        }
        auto key = std::make_pair(c, a);
        auto it = cross_cache_.find(key);
        if (it != cross_cache_.end()) return it->second;
        // split off the innermost pair: E^c = E^{c-} E_g,  F^a = F_d F^{a-}
        int g = -1, d = -1;
        for (int t = N_ - 1; t >= 0; --t)
            if (c[t] > 0) {
                g = t;
                break;
            }
        for (int t = 0; t < N_; ++t)
            if (a[t] > 0) {
                d = t;
                break;
            }
        PbwExp cm = c, am = a;
        --cm[g];
        --am[d];
        const Elem& rule = ef_.at({g, d});
        // E^{c-} * rule * F^{a-}
        Elem left;
        add_term(left, Mono{PbwExp(N_, 0), std::vector<long>(n_, 0), cm}, pol_.one());
        Elem mid = mul(left, rule);
        Elem right;
        add_term(right, Mono{am, std::vector<long>(n_, 0), PbwExp(N_, 0)}, pol_.one());
        Elem res = mul(mid, right);
        cross_cache_.emplace(std::move(key), res);
        return res;
    }

    void derive_ef_pair(int g, int d) {
        if (ef_.count({g, d})) return;
        Elem res;
        const auto& gd = defs_[g];
        const auto& dd = defs_[d];
        if (gd.simple && dd.simple) {
            int i = gd.letter, j = dd.letter;
            // E_i F_j = F_j E_i + delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})
            PbwExp fe(N_, 0), ee(N_, 0);
            fe[d] = 1;
            ee[g] = 1;
            add_term(res, Mono{fe, std::vector<long>(n_, 0), PbwExp(N_, 0)}, pol_.one());
            // reorder: the term above must carry E after F; build it properly
            res.clear();
            add_term(res, Mono{fe, std::vector<long>(n_, 0), ee}, pol_.one());
            if (i == j) {
                long dsym = R_.symmetrizers()[i];
                S c = pol_.inv_q_minus(dsym);
                std::vector<long> kp(n_, 0), km(n_, 0);
                kp[i] = 1;
                km[i] = -1;
                add_term(res, Mono{PbwExp(N_, 0), kp, PbwExp(N_, 0)}, c);
                add_term(res, Mono{PbwExp(N_, 0), km, PbwExp(N_, 0)},
                         pol_.zero() - c);
            }
        } else if (!dd.simple) {
            // F_d = F_{k} F_{j} - q^t F_{j} F_{k}
            Elem eg = atom(false, g);
            Elem fj = atom(true, dd.j), fk = atom(true, dd.k);
            Elem t1 = mul(mul(eg, fk), fj);
            Elem t2 = mul(mul(eg, fj), fk);
            for (const auto& [m, c] : t2) add_term(t1, m, pol_.zero() - pol_.qpow(dd.qpow) * c);
            res = std::move(t1);
        } else {
            // E_g = E_{k} E_{j} - q^t E_{j} E_{k}
            Elem fd = atom(true, d);
            Elem ej = atom(false, gd.j), ek = atom(false, gd.k);
            Elem t1 = mul(ek, mul(ej, fd));
            Elem t2 = mul(ej, mul(ek, fd));
            for (const auto& [m, c] : t2) add_term(t1, m, pol_.zero() - pol_.qpow(gd.qpow) * c);
            res = std::move(t1);
        }
        ef_[{g, d}] = std::move(res);
    }

    Elem atom(bool f_side, int pos) const {
        PbwExp f(N_, 0), e(N_, 0);
        (f_side ? f : e)[pos] = 1;
        Elem r;
        add_term(r, Mono{f, std::vector<long>(n_, 0), e}, pol_.one());
        return r;
    }

    RootDatum R_;
    P pol_;
    std::vector<RootVec> conv_;
    int N_ = 0, n_ = 0;
    std::vector<std::vector<long>> pair_;
    std::vector<std::vector<long>> simple_pair_;
    std::vector<long> ht_;
    std::vector<OneSidedPBW::RootDef> defs_;
    std::map<std::pair<int, int>, FMap> fswap_, eswap_;
    std::map<std::pair<int, int>, Elem> ef_;
    mutable LetterCache fcache_, ecache_;
    mutable std::map<std::pair<PbwExp, PbwExp>, Elem> cross_cache_;
};

using UqGeneric = UqEngineT<GenericUqPolicy>;
using UqSpecial = UqEngineT<FieldUqPolicy>;

/// Build the generic engine for a root datum: derives one-sided straightening
/// via letter calculus (independently for the F and E halves) and the E-F
/// crossing rules.
inline std::shared_ptr<UqGeneric> build_generic_engine(const RootDatum& R) {
    OneSidedPBW fside(R), eside(R);
    auto eng = std::make_shared<UqGeneric>(R, GenericUqPolicy{});
    std::map<std::pair<int, int>, UqGeneric::FMap> fswap, eswap;
    int N = fside.num_roots();
    std::vector<OneSidedPBW::RootDef> defs;
    for (int i = 0; i < N; ++i) defs.push_back(fside.definition(i));
    for (int j = 1; j < N; ++j)
        for (int i = 0; i < j; ++i) {
            fswap[{j, i}] = fside.swap_rule(j, i);
            eswap[{j, i}] = eside.swap_rule(j, i);
        }
    eng->set_swap_tables(std::move(fswap), std::move(eswap), std::move(defs));
    eng->derive_ef_rules();
    return eng;
}

/// Specialize a generic engine at zeta.  kmod/trunc configure the small
/// quantum group quotient behavior (typically both = ell).  Coefficients with
/// poles at zeta abort with PoleAtRootOfUnity (A-form violation).
inline std::shared_ptr<UqSpecial> specialize_engine(const UqGeneric& gen, FieldPtr F,
                                                    long kmod, long trunc) {
    FieldUqPolicy pol{F, kmod, trunc};
    auto eng = std::make_shared<UqSpecial>(gen.root_datum(), pol);
    auto conv_fmap = [&](const UqGeneric::FMap& m) {
        UqSpecial::FMap r;
        for (const auto& [k, c] : m) r.emplace(k, specialize(c, *F));
        return r;
    };
    std::map<std::pair<int, int>, UqSpecial::FMap> fswap, eswap;
    for (const auto& [k, m] : gen.fswap_tables()) fswap[k] = conv_fmap(m);
    for (const auto& [k, m] : gen.eswap_tables()) eswap[k] = conv_fmap(m);
    eng->set_swap_tables(std::move(fswap), std::move(eswap), gen.root_defs());
    std::map<std::pair<int, int>, UqSpecial::Elem> ef;
    for (const auto& [k, e] : gen.ef_rules()) {
        UqSpecial::Elem r;
        for (const auto& [m, c] : e) {
            UqSpecial::Mono sm{m.f, m.k, m.e};
            eng->add_term(r, sm, specialize(c, *F));
        }
        ef[k] = std::move(r);
    }
    eng->set_ef_rules(std::move(ef));
    return eng;
}

}  // namespace flk
