#pragma once

#include <optional>

#include "flk/module.hpp"
#include "flk/tower.hpp"

namespace flk {

/// Free generator of one homological degree of a minimal resolution.
struct FreeGen {
    Weight w;
    long internal_deg = 0;  // meaningful only for internally graded algebras
};

/// Minimal free resolution of the trivial module k over an augmented local
/// algebra.  F_n = A^{b_n}; elements of F_n are flat field vectors indexed by
/// gen*dim(A) + basis; diff[n][i] is the image of the i-th degree-n generator
/// inside F_{n-1}.
struct Resolution {
    std::shared_ptr<BasedAlgebra> A;
    std::vector<std::vector<FreeGen>> gens;
    std::vector<std::vector<SparseVec>> diff;  // diff[0] unused (F_0 -> k is eps)

    size_t max_degree() const { return gens.empty() ? 0 : gens.size() - 1; }

    /// Betti numbers; with trust > 0 only generators of internal degree
    /// <= trust are counted (truncated graded-infinite mode).
    std::vector<long> betti(long trust = 0) const {
        std::vector<long> b;
        for (const auto& layer : gens) {
            long c = 0;
            for (const FreeGen& g : layer)
                if (trust <= 0 || g.internal_deg <= trust) ++c;
            b.push_back(c);
        }
        return b;
    }

    /// Left action of algebra basis element u on a flat vector of F_n.
    SparseVec left_mult(size_t u, const SparseVec& x) const {
        size_t D = A->dim();
        SparseVec out;
        for (const auto& [flat, c] : x) {
            size_t comp = flat / D, base = flat % D;
            for (const auto& [b2, c2] : A->mul(u, base)) {
                auto key = comp * D + b2;
                auto it = out.find(key);
                FieldElement t = c * c2;
                if (it == out.end()) {
                    if (!t.is_zero()) out.emplace(key, t);
                } else {
                    it->second += t;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        return out;
    }

    /// Apply d_n to a flat vector of F_n.
    SparseVec apply_diff(size_t n, const SparseVec& x) const {
        size_t D = A->dim();
        SparseVec out;
        for (const auto& [flat, c] : x) {
            size_t comp = flat / D, base = flat % D;
            sparse_add(out, left_mult(base, diff[n][comp]), c);
        }
        return out;
    }

    /// d o d = 0 and minimality (no unit coordinates in any differential).
    void verify() const {
        size_t D = A->dim();
        for (size_t n = 1; n < gens.size(); ++n)
            for (const SparseVec& v : diff[n]) {
                for (const auto& [flat, c] : v) {
                    (void)c;
                    if (flat % D == A->unit_index)
                        throw Error(A->kind + ": resolution differential is not minimal");
                }
                if (n >= 2 && !apply_diff(n - 1, v).empty())
                    throw Error(A->kind + ": d o d != 0");
            }
    }
};

namespace detail {

/// Weight (+ internal degree) of a flat coordinate of F_n.
struct HomKey {
    Weight w;
    long d = 0;
    bool operator<(const HomKey& o) const { return d != o.d ? d < o.d : w < o.w; }
    bool operator==(const HomKey& o) const { return d == o.d && w == o.w; }
};

}  // namespace detail

/// Minimal free resolution of k over A up to homological degree n_max.
/// `algebra_gens` must generate A as a unital algebra (verified); the
/// augmentation ideal must be nilpotent (verified directly for small
/// algebras, through the positive internal grading otherwise).
/// With degree_bound > 0, syzygies of internal degree above the bound are
/// discarded; the complex stays exact (and minimal) in internal degrees up to
/// the bound, which is all a truncated graded-infinite algebra can certify.
inline Resolution minimal_resolution(std::shared_ptr<BasedAlgebra> A, size_t n_max,
                                     const std::vector<size_t>& algebra_gens,
                                     long degree_bound = 0) {
    size_t D = A->dim();
    if (!A->unit_vec.empty())
        throw NotLocal(A->kind + ": unit is not a basis element (smash-type toral part)");
    for (size_t i = 0; i < D; ++i)
        if (i != A->unit_index && !A->augmentation[i].is_zero())
            throw NotLocal(A->kind + ": augmentation is not the local one");
    bool graded = !A->internal_degree.empty();
    if (graded)
        for (size_t i = 0; i < D; ++i)
            if (i != A->unit_index && A->internal_degree[i] < 1)
                throw NotLocal(A->kind + ": internal grading not connected");

    // generation: close the unit under left multiplication by the generators
    {
        Subspace span;
        std::vector<SparseVec> frontier{{{A->unit_index, A->field->one()}}};
        span.add(frontier[0]);
        while (!frontier.empty()) {
            std::vector<SparseVec> next;
            for (const auto& v : frontier)
                for (size_t g : algebra_gens) {
                    SparseVec w = A->mul_elem(SparseVec{{g, A->field->one()}}, v);
                    if (!span.contains(w)) {
                        span.add(w);
                        next.push_back(std::move(w));
                    }
                }
            frontier = std::move(next);
        }
        if (span.dim() != D)
            throw NotLocal(A->kind + ": listed generators do not generate the algebra");
    }
    // nilpotency of the augmentation ideal (direct check at small dimension)
    if (!graded) {
        if (D > 256) throw NotLocal(A->kind + ": no internal grading at this size");
        std::vector<SparseVec> layer;
        for (size_t i = 0; i < D; ++i)
            if (i != A->unit_index) layer.push_back({{i, A->field->one()}});
        for (size_t it = 0; it <= D && !layer.empty(); ++it) {
            if (it == D) throw NotLocal(A->kind + ": augmentation ideal is not nilpotent");
            Subspace s;
            for (const auto& v : layer)
                for (size_t g : algebra_gens)
                    s.add(A->mul_elem(SparseVec{{g, A->field->one()}}, v));
            layer.clear();
            for (const auto& [l, r] : s.rows) layer.push_back(r);
        }
    }

    auto key_of_basis = [&](size_t u) {
        return detail::HomKey{A->weights[u], graded ? A->internal_degree[u] : 0};
    };
    auto key_add = [](const detail::HomKey& a, const detail::HomKey& b) {
        return detail::HomKey{a.w + b.w, a.d + b.d};
    };

    Resolution res;
    res.A = A;
    res.gens.push_back({FreeGen{Weight{std::vector<long>(A->weights[0].rank(), 0)}, 0}});
    res.diff.emplace_back();

    // kernel of eps: all non-unit basis coordinates of F_0
    std::vector<std::pair<detail::HomKey, SparseVec>> kernel;
    for (size_t i = 0; i < D; ++i)
        if (i != A->unit_index)
            kernel.push_back({key_of_basis(i), SparseVec{{i, A->field->one()}}});

    for (size_t n = 1; n <= n_max; ++n) {
        // minimal generators of the kernel: complement of J * kernel.  All
        // kernel vectors are homogeneous, so the span tests decompose by
        // (weight, internal degree) block.
        std::map<detail::HomKey, Subspace> jk;
        for (const auto& [k, v] : kernel)
            for (size_t g : algebra_gens) {
                SparseVec gv = res.left_mult(g, v);
                if (gv.empty()) continue;
                jk[key_add(k, key_of_basis(g))].add(std::move(gv));
            }
        std::vector<FreeGen> layer;
        std::vector<SparseVec> d;
        for (const auto& [k, v] : kernel) {
            if (degree_bound > 0 && k.d > degree_bound) continue;
            Subspace& blk = jk[k];
            if (!blk.contains(v)) {
                blk.add(v);
                layer.push_back(FreeGen{k.w, k.d});
                d.push_back(v);
            }
        }
        res.gens.push_back(layer);
        res.diff.push_back(d);
        if (n == n_max) break;

        // next kernel: nullspace of the field-linear map A^{b_n} -> F_{n-1},
        // block by weight (and internal degree)
        std::map<detail::HomKey, std::vector<std::pair<size_t, SparseVec>>> cols;
        for (size_t i = 0; i < layer.size(); ++i) {
            detail::HomKey gk{layer[i].w, layer[i].internal_deg};
            for (size_t u = 0; u < D; ++u) {
                detail::HomKey ck = key_add(gk, key_of_basis(u));
                if (degree_bound > 0 && ck.d > degree_bound) continue;
                SparseVec col = res.left_mult(u, d[i]);
                cols[ck].push_back({i * D + u, std::move(col)});
            }
        }
        kernel.clear();
        for (auto& [k, block] : cols) {
            // dense matrix over the union of row supports
            std::map<size_t, size_t> rowpos;
            for (const auto& [ci, v] : block) {
                (void)ci;
                for (const auto& [r, c] : v) {
                    (void)c;
                    if (!rowpos.count(r)) {
                        size_t s = rowpos.size();
                        rowpos[r] = s;
                    }
                }
            }
            if (rowpos.empty()) {
                // all columns map to zero: each is a kernel vector on its own
                for (const auto& [ci, v] : block) {
                    (void)v;
                    kernel.push_back({k, SparseVec{{ci, A->field->one()}}});
                }
                continue;
            }
            Mat<FieldElement> M(rowpos.size(),
                                std::vector<FieldElement>(block.size(), A->field->zero()));
            for (size_t j = 0; j < block.size(); ++j)
                for (const auto& [r, c] : block[j].second) M[rowpos[r]][j] = c;
            for (const auto& v : nullspace(M, A->field->zero(), A->field->one())) {
                SparseVec kv;
                for (size_t j = 0; j < v.size(); ++j)
                    if (!v[j].is_zero()) kv.emplace(block[j].first, v[j]);
                kernel.push_back({k, std::move(kv)});
            }
        }
    }
    res.verify();
    return res;
}

/// Convenience: single-exponent generators of a tower algebra.
inline std::vector<size_t> tower_generators(const BasedAlgebra& A) {
    std::vector<size_t> g;
    for (size_t i = 0; i < A.dim(); ++i)
        if (A.internal_degree[i] == 1) g.push_back(i);
    return g;
}

/// Betti numbers of the tower algebra u_j (first j generators truncated) to
/// degree n_max; graded-infinite members are computed at two internal-degree
/// cutoffs and must agree on the trusted range.
inline std::vector<long> tower_betti(const RootDatum& R, FieldPtr F, long r, long j,
                                     size_t n_max) {
    long m = (r + 1) * R.num_positive_roots();
    if (j < 0 || j > m) throw BadParameters("tower_betti: j out of range");
    std::set<size_t> kill;
    for (long g = 0; g < j; ++g) kill.insert(static_cast<size_t>(g));
    auto run = [&](long cutoff, long trust) {
        auto A = std::make_shared<BasedAlgebra>(build_tower_algebra(R, F, r, kill, cutoff));
        return minimal_resolution(A, n_max, tower_generators(*A), trust);
    };
    if (j == m) return run(0, 0).betti();
    long C = F->ell() * static_cast<long>((n_max + 1) / 2) + 1;
    for (int tries = 0; tries < 3; ++tries) {
        std::vector<long> b1 = run(C, C).betti(C);
        std::vector<long> b2 = run(C + 4, C).betti(C);
        if (b1 == b2) return b1;
        C += 4;
    }
    throw CutoffUnstable("tower_betti: Betti numbers kept changing with the cutoff");
}

/// Betti numbers of the generators whose weight vanishes on all coroots mod
/// the given modulus: the Borel cohomology H(u_zeta(b)) / H(U_zeta(B_r)) as
/// torus invariants in H(u_zeta(u)).  Modulus 1 returns the full sequence.
inline std::vector<long> torus_invariant_betti(const Resolution& res, long modulus) {
    std::vector<long> b;
    for (const auto& layer : res.gens) {
        long c = 0;
        for (const FreeGen& g : layer) {
            if (g.w.rank() == 0) throw WeightsMissing("resolution generators have no weights");
            bool inv = true;
            for (size_t i = 0; i < g.w.rank(); ++i) inv = inv && g.w[i] % modulus == 0;
            if (inv) ++c;
        }
        b.push_back(c);
    }
    return b;
}

/// Plain tensor product of two augmented algebras (componentwise product, no
/// braiding); optionally negates the weights of the right factor (minus/plus
/// nilpotent parts).
inline BasedAlgebra tensor_algebra(const BasedAlgebra& A, const BasedAlgebra& B,
                                   bool flip_right_weights = false) {
    if (!A.unit_vec.empty() || !B.unit_vec.empty())
        throw UnsupportedAlgebra("tensor_algebra: factors must have basis units");
    auto a = std::make_shared<BasedAlgebra>(A);
    auto b = std::make_shared<BasedAlgebra>(B);
    BasedAlgebra T;
    T.field = A.field;
    T.kind = A.kind + " (x) " + B.kind;
    size_t DB = B.dim();
    for (size_t i = 0; i < A.dim(); ++i)
        for (size_t j = 0; j < DB; ++j) {
            T.labels.push_back(A.labels[i] + "(x)" + B.labels[j]);
            Weight wb = flip_right_weights ? B.weights[j] * -1 : B.weights[j];
            T.weights.push_back(A.weights[i] + wb);
            T.augmentation.push_back(A.augmentation[i] * B.augmentation[j]);
            if (!A.internal_degree.empty() && !B.internal_degree.empty())
                T.internal_degree.push_back(A.internal_degree[i] + B.internal_degree[j]);
            if (!A.filtration.empty() && !B.filtration.empty())
                T.filtration.push_back(A.filtration[i] + B.filtration[j]);
        }
    T.unit_index = A.unit_index * DB + B.unit_index;
    T.mul_fn = [a, b, DB](size_t x, size_t y) {
        SparseVec out;
        const SparseVec& pa = a->mul(x / DB, y / DB);
        const SparseVec& pb = b->mul(x % DB, y % DB);
        for (const auto& [i, ca] : pa)
            for (const auto& [j, cb] : pb) {
                FieldElement t = ca * cb;
                if (!t.is_zero()) out.emplace(i * DB + j, t);
            }
        return out;
    };
    return T;
}

/// Tensor-product generator list built from the factors' generator lists.
inline std::vector<size_t> tensor_generators(const std::vector<size_t>& ga, size_t unit_a,
                                             const std::vector<size_t>& gb, size_t unit_b,
                                             size_t DB) {
    std::vector<size_t> g;
    for (size_t i : ga) g.push_back(i * DB + unit_b);
    for (size_t j : gb) g.push_back(unit_a * DB + j);
    return g;
}

/// Polynomial rate of growth gamma of a Betti sequence: the least c >= 0 such
/// that the running maximum B_n satisfies B_n <= 2 B_4 (n/4)^{c-1} over the
/// window n in [4, N] (margin factor 2, documented).  Integer arithmetic only.
struct GrowthReport {
    long gamma = 0;
    std::vector<long> betti;
    std::vector<long> running_max;
};

inline GrowthReport growth_rate(const std::vector<long>& b) {
    if (b.size() < 8) throw TooShort("growth_rate: need at least 8 Betti numbers");
    GrowthReport rep;
    rep.betti = b;
    long mx = 0;
    for (long x : b) {
        mx = std::max(mx, x);
        rep.running_max.push_back(mx);
    }
    const long n0 = 4, N = static_cast<long>(b.size()) - 1;
    if (rep.running_max[N] == 0) {
        rep.gamma = 0;
        return rep;
    }
    auto ipow = [](long base, long e) {
        long r = 1;
        for (long i = 0; i < e; ++i) r *= base;
        return r;
    };
    for (long c = 0;; ++c) {
        // B_n * n0^(c-1) <= 2 B_{n0} * n^(c-1), cleared of negative exponents
        bool ok = true;
        for (long n = n0; n <= N && ok; ++n)
            ok = rep.running_max[n] * ipow(n0, c) * n <= 2 * rep.running_max[n0] * ipow(n, c) * n0;
        if (ok) {
            rep.gamma = c;
            return rep;
        }
        if (c > 16) throw Error("growth_rate: no polynomial bound found");
    }
}

}  // namespace flk
