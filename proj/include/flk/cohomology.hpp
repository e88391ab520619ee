#pragma once

#include "flk/resolution.hpp"

namespace flk {

/// Cohomology class in degree n: a functional on the free generators of F_n,
/// stored as generator-index -> value.  By minimality of the resolution every
/// such functional is a cocycle and distinct functionals are non-cohomologous.
struct CohomClass {
    size_t degree = 0;
    SparseVec coords;
};

namespace detail {

/// Key of a homogeneous flat vector of F_n (from any support element).
inline HomKey key_of_flat(const Resolution& res, size_t n, size_t flat) {
    size_t D = res.A->dim();
    const FreeGen& g = res.gens[n][flat / D];
    size_t u = flat % D;
    bool graded = !res.A->internal_degree.empty();
    return HomKey{g.w + res.A->weights[u],
                  g.internal_deg + (graded ? res.A->internal_degree[u] : 0)};
}

}  // namespace detail

/// Solve d_n x = w in F_n (w must lie in the image).  The differential is
/// homogeneous, so the solve splits into (weight, internal degree) blocks.
inline SparseVec solve_preimage(const Resolution& res, size_t n, const SparseVec& w) {
    if (n == 0 || n > res.max_degree()) throw DegreeOutOfRange("solve_preimage: bad degree");
    size_t D = res.A->dim();
    // split the target by key
    std::map<detail::HomKey, SparseVec> targets;
    for (const auto& [flat, c] : w) targets[detail::key_of_flat(res, n - 1, flat)].emplace(flat, c);
    SparseVec x;
    for (const auto& [key, tgt] : targets) {
        // columns of d_n in this block
        std::vector<size_t> colidx;
        std::vector<SparseVec> colvec;
        for (size_t i = 0; i < res.gens[n].size(); ++i) {
            const FreeGen& g = res.gens[n][i];
            for (size_t u = 0; u < D; ++u) {
                bool graded = !res.A->internal_degree.empty();
                detail::HomKey ck{g.w + res.A->weights[u],
                                  g.internal_deg + (graded ? res.A->internal_degree[u] : 0)};
                if (!(ck == key)) continue;
                SparseVec col = res.left_mult(u, res.diff[n][i]);
                colidx.push_back(i * D + u);
                colvec.push_back(std::move(col));
            }
        }
        std::map<size_t, size_t> rowpos;
        auto touch = [&](const SparseVec& v) {
            for (const auto& [r, c] : v) {
                (void)c;
                if (!rowpos.count(r)) {
                    size_t s = rowpos.size();
                    rowpos[r] = s;
                }
            }
        };
        for (const auto& v : colvec) touch(v);
        touch(tgt);
        Mat<FieldElement> cols(colvec.size(),
                               std::vector<FieldElement>(rowpos.size(), res.A->field->zero()));
        for (size_t j = 0; j < colvec.size(); ++j)
            for (const auto& [r, c] : colvec[j]) cols[j][rowpos[r]] = c;
        std::vector<FieldElement> b(rowpos.size(), res.A->field->zero());
        for (const auto& [r, c] : tgt) b[rowpos[r]] = c;
        std::vector<FieldElement> sol;
        if (!solve_in_span(cols, b, sol, res.A->field->zero()))
            throw Error("solve_preimage: target is not a boundary");
        for (size_t j = 0; j < sol.size(); ++j)
            if (!sol[j].is_zero()) x.emplace(colidx[j], sol[j]);
    }
    return x;
}

/// Yoneda (cup) product on Ext over the minimal resolution: lifts
/// multiplication by b to a chain map and evaluates a on the lift.
inline CohomClass yoneda_product(const Resolution& res, const CohomClass& a,
                                 const CohomClass& b) {
    if (a.degree + b.degree > res.max_degree())
        throw DegreeOutOfRange("yoneda_product: resolution too short for this product");
    size_t D = res.A->dim();
    const FieldCtx& F = *res.A->field;
    // phi_0 : F_{b.degree} -> F_0 = A, generator g -> b(g) * 1
    std::vector<SparseVec> phi(res.gens[b.degree].size());
    for (size_t g = 0; g < phi.size(); ++g) {
        auto it = b.coords.find(g);
        if (it != b.coords.end()) phi[g] = SparseVec{{res.A->unit_index, it->second}};
    }
    auto apply_phi = [&](const std::vector<SparseVec>& ph, const SparseVec& v) {
        SparseVec out;
        for (const auto& [flat, c] : v) {
            SparseVec t = res.left_mult(flat % D, ph[flat / D]);
            sparse_add(out, t, c);
        }
        return out;
    };
    for (size_t t = 1; t <= a.degree; ++t) {
        size_t src = b.degree + t;
        std::vector<SparseVec> next(res.gens[src].size());
        for (size_t g = 0; g < next.size(); ++g)
            next[g] = solve_preimage(res, t, apply_phi(phi, res.diff[src][g]));
        phi = std::move(next);
    }
    CohomClass out;
    out.degree = a.degree + b.degree;
    for (size_t g = 0; g < phi.size(); ++g) {
        FieldElement s = F.zero();
        for (const auto& [c, ac] : a.coords) {
            auto it = phi[g].find(c * D + res.A->unit_index);
            if (it != phi[g].end()) s += ac * it->second;
        }
        if (!s.is_zero()) out.coords.emplace(g, s);
    }
    return out;
}

/// Restriction maps H^n(big) -> H^n(small) induced by an algebra embedding
/// emb : small -> big (basis index -> element of big).  Returns, for each n,
/// the matrix whose (g', c) entry is the value of the dual of big-generator c
/// on small-generator g'.
inline std::vector<Mat<FieldElement>> restriction_on_cohomology(const Resolution& res_small,
                                                                const Resolution& res_big,
                                                                const std::vector<SparseVec>& emb) {
    const auto& S = *res_small.A;
    const auto& B = *res_big.A;
    if (emb.size() != S.dim())
        throw NotASubalgebraMap("embedding must be defined on every basis element");
    for (size_t i = 0; i < S.dim(); ++i)
        for (size_t j = 0; j < S.dim(); ++j) {
            SparseVec lhs = B.mul_elem(emb[i], emb[j]);
            SparseVec rhs;
            for (const auto& [k, c] : S.mul(i, j)) sparse_add(rhs, emb[k], c);
            for (auto& [k, c] : rhs) {
                auto it = lhs.find(k);
                if (it == lhs.end() || !(it->second == c))
                    throw NotASubalgebraMap(S.kind + " -> " + B.kind +
                                            ": products are not preserved");
                lhs.erase(it);
            }
            if (!lhs.empty())
                throw NotASubalgebraMap(S.kind + " -> " + B.kind + ": products are not preserved");
        }
    if (!(emb[S.unit_index] == B.unit_elem()))
        throw NotASubalgebraMap("embedding does not preserve the unit");
    for (size_t i = 0; i < S.dim(); ++i)
        if (!(B.eps(emb[i]) == S.augmentation[i]))
            throw NotASubalgebraMap("embedding does not preserve the augmentation");

    size_t n_max = std::min(res_small.max_degree(), res_big.max_degree());
    size_t DS = S.dim(), DB = B.dim();
    std::vector<Mat<FieldElement>> out;
    // psi_0 : F_0^small -> F_0^big covering emb
    out.push_back({{B.field->one()}});
    std::vector<std::vector<SparseVec>> psis{{SparseVec{{B.unit_index, B.field->one()}}}};
    for (size_t n = 1; n <= n_max; ++n) {
        std::vector<SparseVec> cur(res_small.gens[n].size());
        Mat<FieldElement> Rn(res_small.gens[n].size(),
                             std::vector<FieldElement>(res_big.gens[n].size(), B.field->zero()));
        for (size_t g = 0; g < cur.size(); ++g) {
            SparseVec target;
            for (const auto& [flat, c] : res_small.diff[n][g]) {
                size_t comp = flat / DS, u = flat % DS;
                SparseVec img = psis[n - 1][comp];
                // act by emb(u) on the big side
                SparseVec acted;
                for (const auto& [bu, bc] : emb[u])
                    sparse_add(acted, res_big.left_mult(bu, img), bc);
                sparse_add(target, acted, c);
            }
            cur[g] = solve_preimage(res_big, n, target);
            for (size_t c2 = 0; c2 < res_big.gens[n].size(); ++c2) {
                auto it = cur[g].find(c2 * DB + B.unit_index);
                if (it != cur[g].end()) Rn[g][c2] = it->second;
            }
        }
        psis.push_back(cur);
        out.push_back(std::move(Rn));
    }
    return out;
}

/// Degree-2 cobar cocycle test: f2 evaluates to 1 on the monomial
/// g^a (x) g^b (suitably normalized) whenever a + b = eps_exp, and to 0 on all
/// other basis tensors; checks the cocycle identity
/// f2(xy (x) z) = f2(x (x) yz) on all triples of augmentation-ideal basis
/// elements.  Returns true when the coboundary vanishes.  A mutation pair
/// (indices of a basis tensor not of the g-power form) perturbs f2 there.
inline bool cobar_f2_check(const BasedAlgebra& A, size_t gen_idx, long eps_exp,
                           std::optional<std::pair<size_t, size_t>> mutate = std::nullopt) {
    const FieldCtx& F = *A.field;
    size_t D = A.dim();
    // pure powers g^k = c_k * basis(k-th power); stop at zero
    std::map<size_t, FieldElement> fcoef;  // basis index of g^a -> 1/c_a
    std::map<size_t, long> power_of;       // basis index -> exponent a
    {
        SparseVec pw{{gen_idx, F.one()}};
        for (long k = 1; k < eps_exp && !pw.empty(); ++k) {
            if (pw.size() != 1)
                throw BasisMismatch(A.kind + ": a power of the generator is not a basis multiple");
            auto [idx, c] = *pw.begin();
            fcoef[idx] = F.one() / c;
            power_of[idx] = k;
            pw = A.mul_elem(pw, SparseVec{{gen_idx, F.one()}});
        }
    }
    auto f2 = [&](size_t x, size_t y) -> FieldElement {
        if (mutate && mutate->first == x && mutate->second == y) {
            auto px = power_of.find(x), py = power_of.find(y);
            bool matches = px != power_of.end() && py != power_of.end() &&
                           px->second + py->second == eps_exp;
            if (!matches) return F.one();
        }
        auto px = power_of.find(x), py = power_of.find(y);
        if (px == power_of.end() || py == power_of.end()) return F.zero();
        if (px->second + py->second != eps_exp) return F.zero();
        return fcoef.at(x) * fcoef.at(y);
    };
    auto f2e = [&](const SparseVec& v, size_t z) {
        FieldElement s = F.zero();
        for (const auto& [x, c] : v) s += c * f2(x, z);
        return s;
    };
    auto f2e2 = [&](size_t x, const SparseVec& v) {
        FieldElement s = F.zero();
        for (const auto& [z, c] : v) s += c * f2(x, z);
        return s;
    };
    for (size_t x = 0; x < D; ++x) {
        if (!A.augmentation[x].is_zero()) continue;
        for (size_t y = 0; y < D; ++y) {
            if (!A.augmentation[y].is_zero()) continue;
            for (size_t z = 0; z < D; ++z) {
                if (!A.augmentation[z].is_zero()) continue;
                if (!(f2e(A.mul(x, y), z) == f2e2(x, A.mul(y, z)))) return false;
            }
        }
    }
    return true;
}

/// Betti-number comparison of a filtered algebra with its associated graded:
/// dim H^n(A) <= dim H^n(gr A) for n <= n_max, as forced by the May spectral
/// sequence of the filtration.
struct SpectralBoundReport {
    std::vector<long> betti_filtered;
    std::vector<long> betti_graded;
};

inline SpectralBoundReport spectral_bound_check(std::shared_ptr<BasedAlgebra> A, size_t n_max,
                                                const std::vector<size_t>& algebra_gens) {
    auto G = std::make_shared<BasedAlgebra>(associated_graded(*A));
    // the filtration is an honest grading on gr A
    G->internal_degree = G->filtration;
    SpectralBoundReport rep;
    rep.betti_filtered = minimal_resolution(A, n_max, algebra_gens).betti();
    rep.betti_graded = minimal_resolution(G, n_max, algebra_gens).betti();
    for (size_t n = 0; n < rep.betti_filtered.size(); ++n)
        if (rep.betti_filtered[n] > rep.betti_graded[n])
            throw Error(A->kind + ": filtered Betti number exceeds the graded bound in degree " +
                        std::to_string(n));
    return rep;
}

}  // namespace flk
