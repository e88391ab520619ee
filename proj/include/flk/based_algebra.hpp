#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flk/errors.hpp"
#include "flk/field.hpp"
#include "flk/rootdata.hpp"

namespace flk {

/// Sparse vector in the basis of an algebra or module: index -> coefficient.
using SparseVec = std::map<size_t, FieldElement>;

inline SparseVec& sparse_add(SparseVec& acc, const SparseVec& v, const FieldElement& c) {
    if (c.is_zero()) return acc;
    for (const auto& [k, x] : v) {
        auto it = acc.find(k);
        if (it == acc.end()) {
            FieldElement t = x * c;
            if (!t.is_zero()) acc.emplace(k, t);
        } else {
            it->second += x * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
    return acc;
}

/// Element of A (x) A: (left index, right index) -> coefficient.
using SparseVec2 = std::map<std::pair<size_t, size_t>, FieldElement>;

/// Finite-dimensional augmented algebra with a distinguished basis, X-weights,
/// optional filtration, and optional Hopf data on arbitrary basis elements.
/// Multiplication is a pure oracle with an internal product cache.
class BasedAlgebra {
public:
    FieldPtr field;
    std::string kind;  // human-readable description
    std::vector<std::string> labels;
    std::vector<Weight> weights;
    std::vector<FieldElement> augmentation;
    size_t unit_index = 0;
    SparseVec unit_vec;  // optional: unit as a combination (else basis element unit_index)
    std::vector<long> filtration;       // empty when the algebra is unfiltered
    std::vector<long> internal_degree;  // empty unless graded / truncated
    bool truncated = false;             // finite materialization of a graded-infinite algebra
    long cutoff = 0;                    // internal-degree cutoff when truncated

    std::function<SparseVec(size_t, size_t)> mul_fn;
    std::function<SparseVec2(size_t)> coproduct;  // optional
    std::function<SparseVec(size_t)> antipode;    // optional

    size_t dim() const { return labels.size(); }
    bool has_hopf() const { return static_cast<bool>(coproduct) && static_cast<bool>(antipode); }

    const SparseVec& mul(size_t i, size_t j) const {
        auto key = std::make_pair(i, j);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, mul_fn(i, j)).first->second;
    }

    SparseVec mul_elem(const SparseVec& x, const SparseVec& y) const {
        SparseVec acc;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) sparse_add(acc, mul(i, j), a * b);
        return acc;
    }

    SparseVec unit_elem() const {
        return unit_vec.empty() ? SparseVec{{unit_index, field->one()}} : unit_vec;
    }

    FieldElement eps(const SparseVec& v) const {
        FieldElement s = field->zero();
        for (const auto& [i, c] : v) s += augmentation[i] * c;
        return s;
    }

    /// Product in A (x) A with the componentwise multiplication.
    SparseVec2 mul_elem2(const SparseVec2& x, const SparseVec2& y) const {
        SparseVec2 acc;
        for (const auto& [ij, a] : x)
            for (const auto& [kl, b] : y) {
                FieldElement c = a * b;
                if (c.is_zero()) continue;
                for (const auto& [m, u] : mul(ij.first, kl.first))
                    for (const auto& [n, v] : mul(ij.second, kl.second)) {
                        auto key = std::make_pair(m, n);
                        FieldElement t = c * u * v;
                        auto it = acc.find(key);
                        if (it == acc.end()) {
                            if (!t.is_zero()) acc.emplace(key, t);
                        } else {
                            it->second += t;
                            if (it->second.is_zero()) acc.erase(it);
                        }
                    }
            }
        return acc;
    }

    /// Structural sanity checks: unit laws, augmentation multiplicativity,
    /// weight additivity, and associativity on `samples` deterministic
    /// pseudo-random basis triples (or all triples when dim^3 <= samples).
    void check_invariants(size_t samples = 10000, uint64_t seed = 1) const {
        size_t n = dim();
        SparseVec u = unit_elem();
        for (size_t i = 0; i < n; ++i) {
            SparseVec b{{i, field->one()}};
            if (mul_elem(u, b) != b || mul_elem(b, u) != b)
                throw Error(kind + ": unit law fails at basis " + std::to_string(i));
        }
        auto check_pair = [&](size_t i, size_t j) {
            const SparseVec& p = mul(i, j);
            FieldElement e = field->zero();
            for (const auto& [k, c] : p) {
                Weight expect = weights[i] + weights[j];
                if (weights[k] != expect)
                    throw Error(kind + ": weight additivity fails at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
                e += augmentation[k] * c;
            }
            if (e != augmentation[i] * augmentation[j])
                throw Error(kind + ": augmentation not multiplicative at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        };
        auto check_triple = [&](size_t i, size_t j, size_t k) {
            SparseVec lhs = mul_elem(mul(i, j), SparseVec{{k, field->one()}});
            SparseVec rhs = mul_elem(SparseVec{{i, field->one()}}, mul(j, k));
            if (lhs != rhs)
                throw Error(kind + ": associativity fails at (" + std::to_string(i) + "," +
                            std::to_string(j) + "," + std::to_string(k) + ")");
        };
        if (n * n <= samples) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) check_pair(i, j);
        }
        if (n * n * n <= samples) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j)
                    for (size_t k = 0; k < n; ++k) check_triple(i, j, k);
        } else {
            uint64_t s = seed;
            auto rnd = [&s, n]() {
                s = s * 6364136223846793005ULL + 1442695040888963407ULL;
                return static_cast<size_t>((s >> 33) % n);
            };
            for (size_t t = 0; t < samples; ++t) {
                size_t i = rnd(), j = rnd(), k = rnd();
                check_pair(i, j);
                check_triple(i, j, k);
            }
        }
    }

    void clear_cache() const { cache_.clear(); }

    /// Products computed so far (used when exporting a lazy algebra).
    const std::map<std::pair<size_t, size_t>, SparseVec>& cached_products() const {
        return cache_;
    }

private:
    mutable std::map<std::pair<size_t, size_t>, SparseVec> cache_;
};

}  // namespace flk
