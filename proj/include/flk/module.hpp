#pragma once

#include <functional>
#include <optional>

#include "flk/hopf.hpp"
#include "flk/kernel_a1.hpp"
#include "flk/linalg.hpp"
#include "flk/small_quantum.hpp"

namespace flk {

/// Formal character: weight -> multiplicity.
struct Character {
    std::map<Weight, long> mult;

    long total() const {
        long t = 0;
        for (const auto& [w, m] : mult) t += m;
        return t;
    }
    bool operator==(const Character& o) const { return mult == o.mult; }
    Character dual() const {
        Character c;
        for (const auto& [w, m] : mult) c.mult[w * -1] += m;
        return c;
    }
    Character shift(const Weight& s) const {
        Character c;
        for (const auto& [w, m] : mult) c.mult[w + s] += m;
        return c;
    }
};

struct GenAction {
    std::string name;
    std::vector<SparseVec> cols;  // action on each module basis vector
};

/// Finite-dimensional weight-graded module presented by generator actions,
/// with an optional full-basis action oracle for the underlying algebra.
struct FLModule {
    FieldPtr F;
    std::string kind;
    std::shared_ptr<BasedAlgebra> A;  // optional materialized algebra (ext1 needs it)
    std::vector<Weight> weights;
    size_t hw_index = 0;
    bool has_hw = false;
    std::vector<GenAction> gens;
    std::function<SparseVec(size_t, size_t)> act_basis;   // algebra basis i on vector j
    std::function<SparseVec(size_t, size_t)> omega_act;   // omega(monomial a) on vector j

    size_t dim() const { return weights.size(); }

    SparseVec apply(const GenAction& g, const SparseVec& v) const {
        SparseVec out;
        for (const auto& [j, c] : v) sparse_add(out, g.cols[j], c);
        return out;
    }

    /// Weight compatibility of all generator actions, and (when the algebra
    /// action oracle is present) associativity of the action on sampled pairs.
    void check_relations(size_t samples = 200, uint64_t seed = 1) const {
        for (const auto& g : gens)
            for (size_t j = 0; j < dim(); ++j)
                for (const auto& [k, c] : g.cols[j]) {
                    (void)c;
                    Weight d = weights[k] - weights[j];
                    for (size_t j2 = 0; j2 < dim(); ++j2)
                        for (const auto& [k2, c2] : g.cols[j2]) {
                            (void)c2;
                            if (weights[k2] - weights[j2] != d)
                                throw Error(kind + ": generator " + g.name +
                                            " is not weight-homogeneous");
                        }
                }
        if (!act_basis || !A) return;
        uint64_t s = seed;
        auto rnd = [&s](size_t m) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<size_t>((s >> 33) % m);
        };
        for (size_t t = 0; t < samples; ++t) {
            size_t i = rnd(A->dim()), j = rnd(A->dim()), v = rnd(dim());
            SparseVec lhs;
            for (const auto& [k, c] : A->mul(i, j)) sparse_add(lhs, act_basis(k, v), c);
            SparseVec rhs;
            for (const auto& [u, c] : act_basis(j, v)) sparse_add(rhs, act_basis(i, u), c);
            if (lhs != rhs)
                throw Error(kind + ": action violates the algebra product at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
};

inline Character character(const FLModule& M, bool dualize = false) {
    Character c;
    for (const Weight& w : M.weights) c.mult[w] += 1;
    return dualize ? c.dual() : c;
}

// ---------------------------------------------------------------------------
// Baby Verma modules
// ---------------------------------------------------------------------------

/// Z(lambda) over u_zeta(g): underlying space u_zeta(u) (x) lambda, with the
/// PBW monomial basis F^a v_lambda; the action of any algebra basis element is
/// computed by straightening in the engine and evaluating K/E on the highest
/// weight line.
inline FLModule baby_verma(const SmallQuantum& U, const Weight& lambda) {
    if (U.part() != 'g') throw UnsupportedAlgebra("baby verma needs the full algebra");
    FLModule M;
    M.F = U.field();
    M.kind = "Z(" + lambda.str() + ") over " + std::string(1, U.root_datum().series()) +
             std::to_string(U.root_datum().rank());
    auto self = std::make_shared<SmallQuantum>(U);
    const auto& eng = U.engine();
    int N = eng.num_roots(), n = U.root_datum().rank();
    long ell = U.ell();
    size_t dm = 1;
    for (int g = 0; g < N; ++g) dm *= ell;
    std::vector<long> dsym = U.root_datum().symmetrizers();
    // module basis index <-> F-exponent (mixed radix, same layout as SmallQuantum)
    auto fexp_at = [N, ell](size_t i) {
        PbwExp a(N);
        for (int g = 0; g < N; ++g) {
            a[g] = static_cast<long>(i % ell);
            i /= ell;
        }
        return a;
    };
    auto index_of_f = [N, ell](const PbwExp& a) {
        size_t i = 0;
        for (int g = N - 1; g >= 0; --g) i = i * ell + static_cast<size_t>(a[g]);
        return i;
    };
    for (size_t i = 0; i < dm; ++i) {
        auto m = self->engine().mono(fexp_at(i), std::vector<long>(n, 0), PbwExp(N, 0));
        M.weights.push_back(lambda + self->weight_of(m));
    }
    M.hw_index = 0;
    M.has_hw = true;
    if (U.dim() <= 20000) M.A = std::make_shared<BasedAlgebra>(U.algebra());
    auto project = [self, lambda, dsym, n, index_of_f](const UqSpecial::Elem& e) {
        SparseVec out;
        FieldPtr F = self->field();
        for (const auto& [m, c] : e) {
            bool eplus = false;
            for (long x : m.e) eplus = eplus || x != 0;
            if (eplus) continue;  // E part annihilates v_lambda
            long kph = 0;
            for (int i = 0; i < n; ++i) kph += dsym[i] * m.k[i] * lambda[i];
            FieldElement v = c * F->zeta_power(kph);
            if (v.is_zero()) continue;
            size_t idx = index_of_f(m.f);
            auto it = out.find(idx);
            if (it == out.end()) {
                out.emplace(idx, v);
            } else {
                it->second += v;
                if (it->second.is_zero()) out.erase(it);
            }
        }
        return out;
    };
    auto act_mono = [self, project, fexp_at, N, n](const UqSpecial::Mono& x, size_t j) {
        auto vj = self->engine().mono(fexp_at(j), std::vector<long>(n, 0), PbwExp(N, 0));
        return project(self->engine().mul_mono(x, vj));
    };
    M.act_basis = [self, act_mono](size_t i, size_t j) {
        return act_mono(self->mono_at(i), j);
    };
    M.omega_act = [self, act_mono, fexp_at, N, n](size_t a, size_t j) {
        // omega(F^a) = E^a under the symmetric normalization of root vectors
        auto x = self->engine().mono(PbwExp(N, 0), std::vector<long>(n, 0), fexp_at(a));
        return act_mono(x, j);
    };
    for (int i = 0; i < n; ++i) {
        for (char kind : {'F', 'E', 'K'}) {
            GenAction g;
            g.name = std::string(1, kind) + std::to_string(i + 1);
            for (size_t j = 0; j < dm; ++j) g.cols.push_back(act_mono(U.gen_mono(kind, i), j));
            M.gens.push_back(std::move(g));
        }
    }
    return M;
}

/// Z_r(lambda) over the rank-1 kernel U_zeta(G_r): basis F^(a) v_lambda,
/// a < p^r l, highest weight the integer lambda = (lambda, alpha^vee).
inline FLModule baby_verma(const KernelA1& ker, long lambda) {
    if (ker.part() != 'g') throw UnsupportedAlgebra("baby verma needs the full algebra");
    FLModule M;
    M.F = ker.field();
    M.kind = "Z_" + std::to_string(ker.r()) + "(" + std::to_string(lambda) + ") over A1 kernel";
    long Mo = ker.order();
    auto self = std::make_shared<KernelA1>(ker);
    auto core = std::make_shared<BasedAlgebra>(ker.algebra());
    M.A = core;
    for (long a = 0; a < Mo; ++a) M.weights.push_back(Weight{{lambda - 2 * a}});
    M.hw_index = 0;
    M.has_hw = true;
    long lres = ker.res(lambda);
    auto act_elem = [self, core, lres](const SparseVec& x, size_t j) {
        SparseVec vj{{self->index_of(static_cast<long>(j), lres, 0), self->field()->one()}};
        SparseVec prod = core->mul_elem(x, vj);
        SparseVec out;
        for (const auto& [k, c] : prod) {
            long a, cc, b;
            self->decode(k, a, cc, b);
            if (b != 0 || cc != lres) continue;
            out.emplace(static_cast<size_t>(a), c);
        }
        return out;
    };
    M.act_basis = [self, act_elem](size_t i, size_t j) {
        return act_elem(SparseVec{{i, self->field()->one()}}, j);
    };
    M.omega_act = [self, act_elem](size_t a, size_t j) {
        return act_elem(self->elem_E(static_cast<long>(a)), j);
    };
    for (long g : {1L, static_cast<long>(ker.ell())}) {
        if (g >= Mo && g > 1) continue;
        GenAction gf, ge;
        gf.name = "F^(" + std::to_string(g) + ")";
        ge.name = "E^(" + std::to_string(g) + ")";
        for (long j = 0; j < Mo; ++j) {
            gf.cols.push_back(act_elem(self->elem_F(g), static_cast<size_t>(j)));
            ge.cols.push_back(act_elem(self->elem_E(g), static_cast<size_t>(j)));
        }
        M.gens.push_back(std::move(gf));
        M.gens.push_back(std::move(ge));
    }
    // higher divided-power layers and the toral idempotents
    for (long i = 1; i < ker.r(); ++i) {
        long g = ker.ell();
        for (long t = 0; t < i; ++t) g *= ker.p();
        GenAction gf, ge;
        gf.name = "F^(" + std::to_string(g) + ")";
        ge.name = "E^(" + std::to_string(g) + ")";
        for (long j = 0; j < Mo; ++j) {
            gf.cols.push_back(act_elem(self->elem_F(g), static_cast<size_t>(j)));
            ge.cols.push_back(act_elem(self->elem_E(g), static_cast<size_t>(j)));
        }
        M.gens.push_back(std::move(gf));
        M.gens.push_back(std::move(ge));
    }
    // tau_c acts as the projection onto the weight space of residue c (weights
    // lambda - 2a are distinct mod p^r l since the modulus is odd)
    for (long j0 = 0; j0 < Mo; ++j0) {
        GenAction gt;
        long c = ker.res(lres - 2 * j0);
        gt.name = "tau_" + std::to_string(c);
        for (long j = 0; j < Mo; ++j)
            gt.cols.push_back(act_elem(self->elem_tau(c), static_cast<size_t>(j)));
        M.gens.push_back(std::move(gt));
    }
    return M;
}

/// One-dimensional module of an augmented algebra given a character chi on the
/// basis (chi = augmentation gives the trivial module k).
inline FLModule one_dim_module(std::shared_ptr<BasedAlgebra> A,
                               std::function<FieldElement(size_t)> chi, const Weight& w,
                               const std::string& name) {
    FLModule M;
    M.F = A->field;
    M.kind = name;
    M.A = A;
    M.weights = {w};
    M.hw_index = 0;
    M.has_hw = true;
    M.act_basis = [A, chi](size_t i, size_t) -> SparseVec {
        FieldElement v = chi(i);
        if (v.is_zero()) return {};
        return {{0, v}};
    };
    GenAction g;
    g.name = "basis";  // closure under all basis elements is trivial in dim 1
    g.cols.push_back(SparseVec{{0, A->field->one()}});
    M.gens.push_back(std::move(g));
    return M;
}

inline FLModule trivial_module(std::shared_ptr<BasedAlgebra> A) {
    auto chi = [A](size_t i) { return A->augmentation[i]; };
    return one_dim_module(A, chi, Weight{std::vector<long>(A->weights[0].rank(), 0)}, "k");
}

// ---------------------------------------------------------------------------
// Contravariant form, radical, simple head
// ---------------------------------------------------------------------------

struct GramBlock {
    Weight w;
    std::vector<size_t> idx;  // module basis indices of this weight
    Mat<FieldElement> mat;
};

/// <x v, y v> := coefficient of v_lambda in omega(x) (y v); blocks by weight
/// (distinct weights are orthogonal by weight additivity).
inline std::vector<GramBlock> contravariant_gram(const FLModule& Z) {
    if (!Z.has_hw || !Z.omega_act)
        throw UnsupportedAlgebra(Z.kind + ": contravariant form needs a marked Verma");
    std::map<Weight, std::vector<size_t>> blocks;
    for (size_t i = 0; i < Z.dim(); ++i) blocks[Z.weights[i]].push_back(i);
    std::vector<GramBlock> out;
    for (auto& [w, idx] : blocks) {
        GramBlock B{w, idx, {}};
        B.mat.assign(idx.size(), std::vector<FieldElement>(idx.size(), Z.F->zero()));
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c) {
                SparseVec v = Z.omega_act(idx[r], idx[c]);
                auto it = v.find(Z.hw_index);
                if (it != v.end()) B.mat[r][c] = it->second;
            }
        out.push_back(std::move(B));
    }
    return out;
}

/// Radical of the contravariant form as spanning vectors; verified stable
/// under all generator actions.
inline std::vector<SparseVec> form_radical(const FLModule& Z) {
    std::vector<SparseVec> rad;
    for (const GramBlock& B : contravariant_gram(Z)) {
        Mat<FieldElement> ns = nullspace(B.mat, Z.F->zero(), Z.F->one());
        for (const auto& v : ns) {
            SparseVec s;
            for (size_t t = 0; t < v.size(); ++t)
                if (!v[t].is_zero()) s.emplace(B.idx[t], v[t]);
            rad.push_back(std::move(s));
        }
    }
    SpanChecker span;
    for (const auto& v : rad) span.add(v);
    for (const auto& v : rad)
        for (const auto& g : Z.gens)
            if (!span.contains(Z.apply(g, v)))
                throw Error(Z.kind + ": form radical is not a submodule");
    return rad;
}

/// Quotient by the form radical; returns the head and its character.
inline std::pair<FLModule, Character> simple_head(const FLModule& Z) {
    std::vector<SparseVec> rad = form_radical(Z);
    // echelonize the radical: pivot -> normalized row, fully reduced
    std::map<size_t, SparseVec> rows;
    auto reduce = [&rows](SparseVec v) {
        bool hit = true;
        while (hit && !v.empty()) {
            hit = false;
            for (const auto& [k, c] : v) {
                auto jt = rows.find(k);
                if (jt != rows.end()) {
                    sparse_add(v, jt->second, -c);
                    hit = true;
                    break;
                }
            }
        }
        return v;
    };
    for (const SparseVec& r : rad) {
        SparseVec v = reduce(r);
        if (v.empty()) continue;
        FieldElement inv = v.begin()->second.inverse();
        size_t lead = v.begin()->first;
        for (auto& [k, c] : v) c = c * inv;
        rows.emplace(lead, std::move(v));
    }
    // re-reduce older rows so no row touches another pivot
    for (auto& [l, r] : rows) {
        SparseVec rest = r;
        rest.erase(l);
        bool hit = true;
        while (hit && !rest.empty()) {
            hit = false;
            for (const auto& [k, c] : rest) {
                if (k == l) continue;
                auto jt = rows.find(k);
                if (jt != rows.end() && jt->first != l) {
                    sparse_add(rest, jt->second, -c);
                    hit = true;
                    break;
                }
            }
        }
        rest.emplace(l, Z.F->one());
        r = std::move(rest);
    }
    std::vector<size_t> free;  // non-pivot coordinates survive in the quotient
    std::map<size_t, size_t> pos;
    for (size_t i = 0; i < Z.dim(); ++i)
        if (!rows.count(i)) {
            pos[i] = free.size();
            free.push_back(i);
        }
    auto to_head = [rows, pos](const SparseVec& v) {
        SparseVec red = v;
        bool hit = true;
        while (hit && !red.empty()) {
            hit = false;
            for (const auto& [k, c] : red) {
                auto jt = rows.find(k);
                if (jt != rows.end()) {
                    sparse_add(red, jt->second, -c);
                    hit = true;
                    break;
                }
            }
        }
        SparseVec out;
        for (const auto& [k, c] : red) out.emplace(pos.at(k), c);
        return out;
    };
    FLModule H;
    H.F = Z.F;
    H.kind = "head(" + Z.kind + ")";
    H.A = Z.A;
    for (size_t i : free) H.weights.push_back(Z.weights[i]);
    if (!pos.count(Z.hw_index)) throw Error(Z.kind + ": highest weight vector fell in radical");
    H.hw_index = pos.at(Z.hw_index);
    H.has_hw = true;
    for (const auto& g : Z.gens) {
        GenAction h;
        h.name = g.name;
        for (size_t i : free) h.cols.push_back(to_head(g.cols[i]));
        H.gens.push_back(std::move(h));
    }
    if (Z.act_basis) {
        auto parent_act = Z.act_basis;
        auto freev = free;
        H.act_basis = [parent_act, to_head, freev](size_t i, size_t j) {
            return to_head(parent_act(i, freev[j]));
        };
    }
    Character ch = character(H);
    return {std::move(H), std::move(ch)};
}

// ---------------------------------------------------------------------------
// Ext^1 by classification of graded extensions
// ---------------------------------------------------------------------------

/// dim Ext^1_A(M, N): extensions 0 -> N -> E -> M -> 0 are classified by
/// linear maps phi on the algebra basis with phi(xy) = x phi(y) + phi(x) y,
/// modulo inner maps; the system splits along the X-grading.
inline size_t ext1(const FLModule& M, const FLModule& N, size_t budget = 200000000) {
    if (!M.A || !N.A || M.A->kind != N.A->kind)
        throw UnsupportedAlgebra("ext1 needs both modules over the same materialized algebra");
    const BasedAlgebra& A = *M.A;
    FieldPtr F = M.F;
    size_t nA = A.dim(), m = M.dim(), n = N.dim();
    if (nA * nA * m * n > budget) throw BudgetExceeded("ext1: system too large");
    // cache action matrices
    auto cols_of = [](const FLModule& X, size_t i) {
        std::vector<SparseVec> cols(X.dim());
        for (size_t j = 0; j < X.dim(); ++j) cols[j] = X.act_basis(i, j);
        return cols;
    };
    std::vector<std::vector<SparseVec>> actM(nA), actN(nA);
    for (size_t i = 0; i < nA; ++i) {
        actM[i] = cols_of(M, i);
        actN[i] = cols_of(N, i);
    }
    // unknown phi(a)[s][t] indexed densely
    auto uid = [m, n](size_t a, size_t s, size_t t) { return (a * n + s) * m + t; };
    SpanChecker rows;
    for (size_t i = 0; i < nA; ++i)
        for (size_t j = 0; j < nA; ++j) {
            const SparseVec& prod = A.mul(i, j);
            for (size_t s = 0; s < n; ++s)
                for (size_t t = 0; t < m; ++t) {
                    SparseVec row;
                    for (const auto& [k, c] : prod) sparse_add(row, {{uid(k, s, t), F->one()}}, c);
                    // - rho_N(i) phi(j):  sum_u rho_N(i)[s][u] phi(j)[u][t]
                    for (size_t u = 0; u < n; ++u) {
                        auto it = actN[i][u].find(s);
                        if (it != actN[i][u].end())
                            sparse_add(row, {{uid(j, u, t), F->one()}}, -it->second);
                    }
                    // - phi(i) rho_M(j):  sum_u phi(i)[s][u] rho_M(j)[u][t]
                    for (const auto& [u, c] : actM[j][t])
                        sparse_add(row, {{uid(i, s, u), F->one()}}, -c);
                    if (!row.empty()) rows.add(std::move(row));
                }
        }
    size_t unknowns = nA * m * n;
    size_t cocycles = unknowns - rows.rank();
    // coboundaries phi_psi(a) = rho_N(a) psi - psi rho_M(a), psi in Hom_k(M,N);
    // project each onto the cocycle solution space?  Rank in unknown space is
    // enough: coboundaries are automatically cocycles.
    SpanChecker cb;
    for (size_t s = 0; s < n; ++s)
        for (size_t t = 0; t < m; ++t) {
            // psi = E_{s,t}
            SparseVec v;
            for (size_t a = 0; a < nA; ++a) {
                for (size_t s2 = 0; s2 < n; ++s2) {
                    auto it = actN[a][s].find(s2);
                    if (it != actN[a][s].end())
                        sparse_add(v, {{uid(a, s2, t), F->one()}}, it->second);
                }
                for (size_t t2 = 0; t2 < m; ++t2) {
                    auto it = actM[a][t2].find(t);
                    if (it != actM[a][t2].end())
                        sparse_add(v, {{uid(a, s, t2), F->one()}}, -it->second);
                }
            }
            if (!v.empty()) cb.add(std::move(v));
        }
    return cocycles - cb.rank();
}

// ---------------------------------------------------------------------------
// Brute-force submodule lattice
// ---------------------------------------------------------------------------

/// All elements of the coefficient field (requires a finite field with at most
/// `cap` elements).
inline std::vector<FieldElement> enumerate_field(const FieldCtx& F, size_t cap = 10000) {
    if (F.p() == 0) throw FieldTooLarge("characteristic zero field is infinite");
    size_t q = 1;
    for (long i = 0; i < F.degree(); ++i) {
        q *= static_cast<size_t>(F.p());
        if (q > cap) throw FieldTooLarge("field has more than cap elements");
    }
    std::vector<FieldElement> out{F.zero()};
    std::vector<FieldElement> basis;
    for (long i = 0; i < F.degree(); ++i) basis.push_back(F.zeta_power(i));
    std::vector<long> dig(F.degree(), 0);
    while (true) {
        size_t i = 0;
        while (i < dig.size() && dig[i] == F.p() - 1) dig[i++] = 0;
        if (i == dig.size()) break;
        ++dig[i];
        FieldElement e = F.zero();
        for (size_t j = 0; j < dig.size(); ++j)
            if (dig[j]) e += F.from_long(dig[j]) * basis[j];
        out.push_back(e);
    }
    return out;
}

/// Echelonized subspace with canonical rows (pivot -> row, leading coeff 1).
struct Subspace {
    std::map<size_t, SparseVec> rows;
    size_t dim() const { return rows.size(); }
    bool operator==(const Subspace& o) const { return rows == o.rows; }
    void add(SparseVec v) {
        reduce(v);
        if (v.empty()) return;
        FieldElement inv = v.begin()->second.inverse();
        size_t lead = v.begin()->first;
        for (auto& [k, c] : v) c = c * inv;
        SparseVec nv = std::move(v);
        // back-substitute so every row avoids all other pivots
        for (auto& [l, r] : rows) {
            auto it = r.find(lead);
            if (it != r.end()) sparse_add(r, nv, -it->second);
        }
        rows.emplace(lead, std::move(nv));
    }
    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }

    void reduce(SparseVec& v) const {
        bool hit = true;
        while (hit && !v.empty()) {
            hit = false;
            for (const auto& [k, c] : v) {
                auto it = rows.find(k);
                if (it != rows.end()) {
                    sparse_add(v, it->second, -c);
                    hit = true;
                    break;
                }
            }
        }
    }
};

/// Submodule generated by a set of vectors: close the span under all
/// generator actions.
inline Subspace submodule_closure(const FLModule& M, const std::vector<SparseVec>& seed) {
    Subspace S;
    for (const auto& v : seed) S.add(v);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<SparseVec> images;
        for (const auto& [l, r] : S.rows)
            for (const auto& g : M.gens) images.push_back(M.apply(g, r));
        size_t before = S.dim();
        for (auto& v : images) S.add(std::move(v));
        grew = S.dim() > before;
    }
    return S;
}

/// Submodule lattice by closing vectors and saturating under sum and
/// intersection.  Exhaustive over all 1-dimensional starting points when the
/// projective space is small; otherwise (or for infinite fields) falls back
/// to basis-vector and random seeds unless `exhaustive_only` is set.
inline std::vector<Subspace> brute_submodules(const FLModule& M, bool exhaustive_only = false,
                                              uint64_t seed = 3) {
    if (M.dim() > 16) throw BudgetExceeded("brute_submodules: dim > 16");
    std::vector<std::vector<FieldElement>> starts;  // dense candidate generators
    bool exhaustive = true;
    std::vector<FieldElement> elems;
    try {
        elems = enumerate_field(*M.F);
        double count = 1;
        for (size_t i = 0; i < M.dim(); ++i) count *= static_cast<double>(elems.size());
        if (count > 400000) exhaustive = false;
    } catch (const FieldTooLarge&) {
        exhaustive = false;
    }
    if (!exhaustive && exhaustive_only)
        throw FieldTooLarge("brute_submodules: exhaustive enumeration infeasible");
    std::vector<Subspace> found;
    auto record = [&found](Subspace s) {
        for (const auto& f : found)
            if (f == s) return false;
        found.push_back(std::move(s));
        return true;
    };
    record(Subspace{});  // zero module
    if (exhaustive) {
        // all nonzero vectors up to the leading-coefficient-1 normalization
        size_t n = M.dim(), q = elems.size();
        std::vector<size_t> dig(n, 0);
        while (true) {
            size_t i = 0;
            while (i < n && dig[i] == q - 1) dig[i++] = 0;
            if (i == n) break;
            ++dig[i];
            // normalize: trailing nonzero digit must be 1 (elems[1] == one)
            size_t last = 0;
            for (size_t j = 0; j < n; ++j)
                if (dig[j]) last = j;
            if (dig[last] != 1) continue;
            SparseVec v;
            for (size_t j = 0; j < n; ++j)
                if (dig[j]) v.emplace(j, elems[dig[j]]);
            record(submodule_closure(M, {v}));
        }
    } else {
        uint64_t s = seed;
        auto rnd = [&s](size_t m) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            return static_cast<size_t>((s >> 33) % m);
        };
        for (size_t j = 0; j < M.dim(); ++j)
            record(submodule_closure(M, {SparseVec{{j, M.F->one()}}}));
        for (int t = 0; t < 300; ++t) {
            SparseVec v;
            for (size_t j = 0; j < M.dim(); ++j) {
                FieldElement c = M.F->from_long(static_cast<long>(rnd(7)) - 3);
                if (!c.is_zero()) v.emplace(j, c);
            }
            if (!v.empty()) record(submodule_closure(M, {v}));
        }
    }
    // saturate under sum and intersection
    bool grew = true;
    while (grew) {
        grew = false;
        size_t cnt = found.size();
        for (size_t i = 0; i < cnt; ++i)
            for (size_t j = i + 1; j < cnt; ++j) {
                Subspace sum = found[i];  // sum of submodules is a submodule
                for (const auto& [l, r] : found[j].rows) sum.add(r);
                if (record(std::move(sum))) grew = true;
                // intersection: rows of i that lie in j after joint reduction
                Subspace inter;
                // solve: span_i cap span_j via Zassenhaus on dense matrices
                size_t n = M.dim();
                Mat<FieldElement> block;
                for (const auto& [l, r] : found[i].rows) {
                    std::vector<FieldElement> row(2 * n, M.F->zero());
                    for (const auto& [k, c] : r) {
                        row[k] = c;
                        row[n + k] = c;
                    }
                    block.push_back(std::move(row));
                }
                for (const auto& [l, r] : found[j].rows) {
                    std::vector<FieldElement> row(2 * n, M.F->zero());
                    for (const auto& [k, c] : r) row[k] = c;
                    block.push_back(std::move(row));
                }
                rref(block);
                for (const auto& row : block) {
                    bool left_zero = true;
                    for (size_t k = 0; k < n; ++k) left_zero = left_zero && row[k].is_zero();
                    if (!left_zero) continue;
                    SparseVec v;
                    for (size_t k = 0; k < n; ++k)
                        if (!row[n + k].is_zero()) v.emplace(k, row[n + k]);
                    if (!v.empty()) inter.add(std::move(v));
                }
                if (record(std::move(inter))) grew = true;
            }
    }
    std::sort(found.begin(), found.end(),
              [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
    return found;
}

}  // namespace flk
