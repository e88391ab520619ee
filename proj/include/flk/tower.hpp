#pragma once

#include <memory>
#include <set>
#include <vector>

#include "flk/based_algebra.hpp"

namespace flk {

/// Twisted polynomial tower built on the convex order of positive roots:
/// generators X_gamma (one per positive root) plus, for 0 <= i < r, the
/// central generators X_{p^i l gamma}.  Relations
///   X_a X_b = zeta^{(a,b)} X_b X_a  (a before b),
/// with X^l = 0 (resp. X^p = 0) for each generator listed in `kill`.
/// When some generator is not killed the algebra is graded-infinite; it is
/// materialized as the quotient by total degree > cutoff (an ideal, since the
/// grading is positive).
inline BasedAlgebra build_tower_algebra(const RootDatum& R, FieldPtr F, long r,
                                        const std::set<size_t>& kill, long cutoff = 0) {
    long ell = F->ell();
    long p = F->p();
    if (r < 0) throw BadParameters("tower: r < 0");
    if (r >= 1 && p == 0) throw BadParameters("tower: r >= 1 requires p > 0");
    long N = R.num_positive_roots();
    size_t m = static_cast<size_t>((r + 1) * N);
    for (size_t g : kill)
        if (g >= m) throw BadParameters("tower: kill index out of range");

    // Generator data.
    std::vector<long> scale(m), bound(m, 0);  // bound 0 = unkilled (unbounded)
    std::vector<size_t> root_of(m);
    for (size_t g = 0; g < m; ++g) {
        size_t layer = g / static_cast<size_t>(N);
        root_of[g] = g % static_cast<size_t>(N);
        long s = 1;
        if (layer >= 1) {
            s = ell;
            for (size_t i = 1; i < layer; ++i) s *= p;
        }
        scale[g] = s;
        if (kill.count(g)) bound[g] = (layer == 0) ? ell : p;
    }
    bool all_killed = kill.size() == m;
    if (!all_killed && cutoff <= 0)
        throw BadParameters("tower: graded-infinite mode requires a positive cutoff");

    // Enumerate basis monomials.
    std::vector<std::vector<long>> basis;
    std::vector<long> cur(m, 0);
    auto degree = [&](const std::vector<long>& a) {
        long d = 0;
        for (size_t g = 0; g < m; ++g) d += a[g];
        return d;
    };
    while (true) {
        basis.push_back(cur);
        size_t g = m;
        while (g-- > 0) {
            ++cur[g];
            bool ok = (bound[g] == 0 || cur[g] < bound[g]) &&
                      (all_killed || degree(cur) <= cutoff);
            if (ok) break;
            cur[g] = 0;
            if (g == 0) goto done;
        }
    }
done:
    std::sort(basis.begin(), basis.end(), [&](const auto& a, const auto& b) {
        long da = degree(a), db = degree(b);
        return da != db ? da < db : a < b;
    });
    std::map<std::vector<long>, size_t> index;
    for (size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

    auto B = std::make_shared<BasedAlgebra>();
    B->field = F;
    B->kind = "tower(" + std::string(1, R.series()) + std::to_string(R.rank()) + ",r=" +
              std::to_string(r) + ",kill=" + std::to_string(kill.size()) + "/" +
              std::to_string(m) + ")";
    // Root pairing matrix between generators (full integer values).
    std::vector<std::vector<long>> pair_gg(m, std::vector<long>(m));
    const auto& conv = convex_positive_roots(R, R.longest_element().word);
    for (size_t g = 0; g < m; ++g)
        for (size_t h = 0; h < m; ++h)
            pair_gg[g][h] = scale[g] * scale[h] * R.root_pairing(conv[root_of[g]], conv[root_of[h]]);

    for (const auto& a : basis) {
        std::string lab = "X^(";
        for (size_t g = 0; g < m; ++g) lab += (g ? "," : "") + std::to_string(a[g]);
        B->labels.push_back(lab + ")");
        Weight w(std::vector<long>(R.rank(), 0));
        for (size_t g = 0; g < m; ++g) {
            if (a[g] == 0) continue;
            RootVec scaled = conv[root_of[g]];
            for (auto& c : scaled) c *= scale[g] * a[g];
            w = w - R.root_to_weight(scaled);
        }
        B->weights.push_back(w);
        B->augmentation.push_back(degree(a) == 0 ? F->one() : F->zero());
        B->internal_degree.push_back(degree(a));
        B->filtration.push_back(degree(a));
    }
    B->unit_index = index.at(std::vector<long>(m, 0));
    B->truncated = !all_killed;
    B->cutoff = all_killed ? 0 : cutoff;

    std::vector<long> bound_c = bound;
    B->mul_fn = [F, basis, index, bound_c, pair_gg, m, all_killed,
                 cutoff](size_t i, size_t j) -> SparseVec {
        const auto& a = basis[i];
        const auto& b = basis[j];
        std::vector<long> sum(m);
        long deg = 0;
        for (size_t g = 0; g < m; ++g) {
            sum[g] = a[g] + b[g];
            deg += sum[g];
            if (bound_c[g] != 0 && sum[g] >= bound_c[g]) return {};
        }
        if (!all_killed && deg > cutoff) return {};
        long e = 0;
        for (size_t g = 0; g < m; ++g)
            for (size_t h = g + 1; h < m; ++h) e -= a[h] * b[g] * pair_gg[g][h];
        return {{index.at(sum), F->zeta_power(e)}};
    };
    return *B;
}

/// Number of basis monomials of a given total degree (tower algebras).
inline long graded_dimension(const BasedAlgebra& A, long d) {
    if (A.internal_degree.empty()) throw NotFiltered(A.kind + ": no internal grading");
    long c = 0;
    for (long g : A.internal_degree)
        if (g == d) ++c;
    return c;
}

/// Associated graded algebra of a finite filtered algebra: products keep only
/// the terms whose filtration degree is the sum of the factors' degrees.
/// Submultiplicativity is verified on every product pair.
inline BasedAlgebra associated_graded(const BasedAlgebra& A) {
    if (A.filtration.empty()) throw NotFiltered(A.kind + ": no filtration degrees");
    auto core = std::make_shared<BasedAlgebra>(A);
    core->clear_cache();
    BasedAlgebra out = A;
    out.kind = "gr(" + A.kind + ")";
    out.clear_cache();
    out.mul_fn = [core](size_t i, size_t j) -> SparseVec {
        SparseVec full = core->mul_fn(i, j);
        long target = core->filtration[i] + core->filtration[j];
        SparseVec top;
        for (const auto& [k, c] : full) {
            if (core->filtration[k] > target)
                throw NotFiltered(core->kind + ": product (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") exceeds filtration degree");
            if (core->filtration[k] == target) top.emplace(k, c);
        }
        return top;
    };
    // Hopf data does not descend through gr in general; drop it.
    out.coproduct = nullptr;
    out.antipode = nullptr;
    // Eager submultiplicativity check at tabulated scale.
    if (A.dim() <= 200) {
        for (size_t i = 0; i < A.dim(); ++i)
            for (size_t j = 0; j < A.dim(); ++j) out.mul_fn(i, j);
    }
    return out;
}

}  // namespace flk
