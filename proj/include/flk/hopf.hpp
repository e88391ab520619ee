#pragma once

#include <set>

#include "flk/based_algebra.hpp"

namespace flk {

struct AdjointReport {
    bool stable = true;
    size_t failing_generator = 0;  // index into the generator list
    size_t failing_basis = 0;      // offending sub-basis position
    size_t escaped_index = 0;      // ambient basis index outside the subspace
};

/// Incremental sparse row echelon form for span-membership queries.
class SpanChecker {
public:
    void add(SparseVec v) {
        reduce(v);
        if (v.empty()) return;
        auto lead = v.begin()->first;
        FieldElement inv = v.begin()->second.inverse();
        for (auto& [k, c] : v) c = c * inv;
        rows_.emplace(lead, std::move(v));
    }
    bool contains(SparseVec v) const {
        reduce(v);
        return v.empty();
    }
    size_t rank() const { return rows_.size(); }

private:
    void reduce(SparseVec& v) const {
        while (!v.empty()) {
            auto lead = v.begin()->first;
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                // try the next-smallest pivot present in v
                bool hit = false;
                for (const auto& [k, c] : v) {
                    auto jt = rows_.find(k);
                    if (jt != rows_.end()) {
                        sparse_add(v, jt->second, -c);
                        hit = true;
                        break;
                    }
                }
                if (!hit) return;
            } else {
                FieldElement c = v.begin()->second;
                sparse_add(v, it->second, -c);
            }
        }
    }
    std::map<size_t, SparseVec> rows_;
};

/// Hopf-adjoint stability: for each listed generator h of the ambient algebra
/// and each spanning vector y of the candidate subalgebra, Ad(h)(y) =
/// sum h1 y S(h2) must again lie in span(sub).  The subalgebra is given by
/// spanning vectors in the ambient basis (basis-sublist inclusion being the
/// special case of coordinate vectors).
inline AdjointReport adjoint_stability_check(const BasedAlgebra& amb,
                                             const std::vector<SparseVec>& sub_span,
                                             const std::vector<SparseVec>& generators) {
    if (!amb.has_hopf()) throw HopfDataMissing(amb.kind + ": adjoint action needs Hopf data");
    SpanChecker span;
    for (const auto& v : sub_span) span.add(v);
    AdjointReport rep;
    for (size_t gi = 0; gi < generators.size(); ++gi) {
        // Delta(h) and (id (x) S)(Delta(h)) once per generator.
        std::vector<std::pair<SparseVec, SparseVec>> legs;  // (h1, S(h2)) with coeff folded in
        for (const auto& [hidx, hc] : generators[gi]) {
            for (const auto& [pr, c] : amb.coproduct(hidx)) {
                SparseVec h1{{pr.first, hc * c}};
                legs.emplace_back(std::move(h1), amb.antipode(pr.second));
            }
        }
        for (size_t yi = 0; yi < sub_span.size(); ++yi) {
            SparseVec acc;
            for (const auto& [h1, sh2] : legs)
                sparse_add(acc, amb.mul_elem(amb.mul_elem(h1, sub_span[yi]), sh2),
                           amb.field->one());
            if (!span.contains(acc)) {
                rep.stable = false;
                rep.failing_generator = gi;
                rep.failing_basis = yi;
                rep.escaped_index = acc.empty() ? 0 : acc.begin()->first;
                return rep;
            }
        }
    }
    return rep;
}

inline AdjointReport adjoint_stability_check(const BasedAlgebra& amb,
                                             const std::vector<size_t>& sub_basis,
                                             const std::vector<SparseVec>& generators) {
    std::vector<SparseVec> span;
    span.reserve(sub_basis.size());
    for (size_t i : sub_basis) span.push_back({{i, amb.field->one()}});
    return adjoint_stability_check(amb, span, generators);
}

/// Counit and antipode axioms on the listed basis elements:
///   (eps (x) id)Delta(x) = x = (id (x) eps)Delta(x),
///   m(S (x) id)Delta(x) = eps(x) 1 = m(id (x) S)Delta(x).
inline void check_hopf_axioms(const BasedAlgebra& A, const std::vector<size_t>& sample) {
    if (!A.has_hopf()) throw HopfDataMissing(A.kind + ": no Hopf data");
    SparseVec unit = A.unit_elem();
    for (size_t i : sample) {
        SparseVec2 d = A.coproduct(i);
        SparseVec left, right, anti_l, anti_r;
        for (const auto& [pr, c] : d) {
            sparse_add(left, SparseVec{{pr.second, A.field->one()}},
                       c * A.augmentation[pr.first]);
            sparse_add(right, SparseVec{{pr.first, A.field->one()}},
                       c * A.augmentation[pr.second]);
            sparse_add(anti_l,
                       A.mul_elem(A.antipode(pr.first), SparseVec{{pr.second, A.field->one()}}),
                       c);
            sparse_add(anti_r,
                       A.mul_elem(SparseVec{{pr.first, A.field->one()}}, A.antipode(pr.second)),
                       c);
        }
        SparseVec self{{i, A.field->one()}};
        if (left != self || right != self)
            throw Error(A.kind + ": counit axiom fails at basis " + std::to_string(i));
        SparseVec expect;
        sparse_add(expect, unit, A.augmentation[i]);
        if (anti_l != expect || anti_r != expect)
            throw Error(A.kind + ": antipode axiom fails at basis " + std::to_string(i));
    }
}

/// Multiplicativity of the coproduct on sampled basis pairs.
inline void check_coproduct_multiplicative(const BasedAlgebra& A,
                                           const std::vector<std::pair<size_t, size_t>>& pairs) {
    for (const auto& [i, j] : pairs) {
        SparseVec2 lhs;
        for (const auto& [k, c] : A.mul(i, j))
            for (const auto& [pr, d] : A.coproduct(k)) {
                auto it = lhs.find(pr);
                FieldElement t = c * d;
                if (it == lhs.end()) {
                    if (!t.is_zero()) lhs.emplace(pr, t);
                } else {
                    it->second += t;
                    if (it->second.is_zero()) lhs.erase(it);
                }
            }
        SparseVec2 rhs = A.mul_elem2(A.coproduct(i), A.coproduct(j));
        if (lhs != rhs)
            throw Error(A.kind + ": coproduct not multiplicative at (" + std::to_string(i) +
                        "," + std::to_string(j) + ")");
    }
}

}  // namespace flk
