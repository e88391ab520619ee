#pragma once

#include <map>
#include <utility>
#include <vector>

#include "flk/generic_scalar.hpp"
#include "flk/linalg.hpp"
#include "flk/qint.hpp"
#include "flk/rootdata.hpp"

namespace flk {

/// Exponent vector of an ordered PBW monomial in the root vectors
/// (index = position in the convex order).
using PbwExp = std::vector<long>;

/// Element of the one-sided algebra in the PBW basis.
using PbwElem = std::map<PbwExp, GenericScalar>;

/// One-sided half of the quantum group (U_q^- or U_q^+, both have the same
/// presentation): free algebra on one letter per simple root, modulo the
/// quantum Serre relations.  Root vectors for non-simple positive roots are
/// built by iterated q-commutators along the convex order, and the
/// Levendorskii-Soibelman straightening rules are derived by exact linear
/// algebra inside small weight components of the free algebra.
class OneSidedPBW {
public:
    explicit OneSidedPBW(const RootDatum& R)
        : R_(R), conv_(convex_positive_roots(R, R.longest_element().word)) {
        int N = static_cast<int>(conv_.size());
        defs_.resize(N);
        for (int i = 0; i < N; ++i) {
            long h = 0;
            for (long c : conv_[i]) h += c;
            if (h == 1) {
                defs_[i].simple = true;
                for (int s = 0; s < R_.rank(); ++s)
                    if (conv_[i][s] == 1) defs_[i].letter = s;
                continue;
            }
            bool found = false;
            for (int j = 0; j < i && !found; ++j)
                for (int k = i + 1; k < N && !found; ++k) {
                    RootVec sum(R_.rank());
                    for (int c = 0; c < R_.rank(); ++c) sum[c] = conv_[j][c] + conv_[k][c];
                    if (sum == conv_[i]) {
                        defs_[i].simple = false;
                        defs_[i].j = j;
                        defs_[i].k = k;
                        defs_[i].qpow = -R_.root_pairing(conv_[j], conv_[k]);
                        found = true;
                    }
                }
            if (!found) throw Error("OneSidedPBW: no convex decomposition found");
        }
        derive_swap_rules();
    }

    const RootDatum& root_datum() const { return R_; }
    const std::vector<RootVec>& convex_order() const { return conv_; }
    int num_roots() const { return static_cast<int>(conv_.size()); }

    struct RootDef {
        bool simple = false;
        int letter = -1;     // simple case: index of the simple root
        int j = -1, k = -1;  // X_i = X_k X_j - q^qpow X_j X_k
        long qpow = 0;
    };
    const RootDef& definition(int i) const { return defs_[i]; }

    /// Straightening rule for positions i < j:
    ///   X_{gamma_j} X_{gamma_i} = sum_M c_M M
    /// over ordered monomials M supported in positions [i..j].
    const PbwElem& swap_rule(int j, int i) const { return swap_rules_.at({j, i}); }

    /// Kostant-style dimension check: the number of PBW monomials of a given
    /// content equals the dimension of the corresponding weight component of
    /// the free algebra modulo the Serre ideal.  (Runs the component solver.)
    bool independence_holds(const std::vector<long>& content) {
        Component& C = component(content);
        return C.monomials.size() == C.reduced_cols.size() &&
               C.quotient_dim == C.monomials.size();
    }

    /// PBW coordinates of an arbitrary product of root-vector letters given as
    /// a sequence of convex-order positions (used by tests as an oracle).
    PbwElem straighten_letter_sequence(const std::vector<int>& seq) {
        WordPoly w{{Word{}, GenericScalar(1)}};
        for (int pos : seq) w = word_mul(w, expand_root(pos));
        std::vector<long> c(R_.rank(), 0);
        for (int pos : seq)
            for (int s = 0; s < R_.rank(); ++s) c[s] += conv_[pos][s];
        return pbw_coords(w, c);
    }

private:
    using Word = std::vector<int>;  // sequence of simple-root letters
    using WordPoly = std::map<Word, GenericScalar>;

    struct Component {
        std::vector<Word> words;
        std::map<Word, size_t> word_index;
        Mat<GenericScalar> ideal_rows;  // rref'd spanning rows of the Serre ideal
        std::vector<size_t> ideal_pivots;
        size_t quotient_dim = 0;
        std::vector<PbwExp> monomials;        // ordered monomials of this content
        Mat<GenericScalar> reduced_cols;      // their expansions, ideal-reduced
    };

    static WordPoly word_mul(const WordPoly& a, const WordPoly& b) {
        WordPoly r;
        for (const auto& [wa, ca] : a)
            for (const auto& [wb, cb] : b) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                GenericScalar c = ca * cb;
                auto it = r.find(w);
                if (it == r.end()) {
                    if (!c.is_zero()) r.emplace(std::move(w), c);
                } else {
                    it->second += c;
                    if (it->second.is_zero()) r.erase(it);
                }
            }
        return r;
    }

    WordPoly expand_root(int i) {
        auto it = root_expansions_.find(i);
        if (it != root_expansions_.end()) return it->second;
        WordPoly r;
        const RootDef& d = defs_[i];
        if (d.simple) {
            r.emplace(Word{d.letter}, GenericScalar(1));
        } else {
            WordPoly xj = expand_root(d.j), xk = expand_root(d.k);
            r = word_mul(xk, xj);
            WordPoly t = word_mul(xj, xk);
            for (auto& [w, c] : t) {
                GenericScalar v = GenericScalar::q_power(d.qpow) * c;
                auto jt = r.find(w);
                if (jt == r.end())
                    r.emplace(w, -v);
                else {
                    jt->second -= v;
                    if (jt->second.is_zero()) r.erase(jt);
                }
            }
        }
        root_expansions_[i] = r;
        return r;
    }

    WordPoly expand_monomial(const PbwExp& exp) {
        WordPoly r{{Word{}, GenericScalar(1)}};
        for (size_t i = 0; i < exp.size(); ++i)
            for (long t = 0; t < exp[i]; ++t) r = word_mul(r, expand_root(static_cast<int>(i)));
        return r;
    }

    /// Quantum Serre relations as word polynomials, with their letter contents.
    std::vector<std::pair<WordPoly, std::vector<long>>> serre_relations() {
        std::vector<std::pair<WordPoly, std::vector<long>>> rels;
        int n = R_.rank();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                long m = 1 - R_.cartan()[i][j];
                WordPoly rel;
                for (long k = 0; k <= m; ++k) {
                    Word w;
                    for (long t = 0; t < k; ++t) w.push_back(i);
                    w.push_back(j);
                    for (long t = 0; t < m - k; ++t) w.push_back(i);
                    GenericScalar c = quantum_binomial(m, k, R_.symmetrizers()[i]);
                    if (k % 2 == 1) c = -c;
                    rel.emplace(std::move(w), c);
                }
                std::vector<long> content(n, 0);
                content[i] = m;
                content[j] += 1;
                rels.emplace_back(std::move(rel), std::move(content));
            }
        return rels;
    }

    void enumerate_words(std::vector<long>& rem, Word& cur, std::vector<Word>& out) {
        bool done = true;
        for (long c : rem) done = done && c == 0;
        if (done) {
            out.push_back(cur);
            return;
        }
        for (int s = 0; s < R_.rank(); ++s) {
            if (rem[s] == 0) continue;
            --rem[s];
            cur.push_back(s);
            enumerate_words(rem, cur, out);
            cur.pop_back();
            ++rem[s];
        }
    }

    void enumerate_monomials(const std::vector<long>& content, size_t from, PbwExp& cur,
                             std::vector<PbwExp>& out) {
        bool zero = true;
        for (long c : content) zero = zero && c == 0;
        if (zero) {
            out.push_back(cur);
            return;
        }
        if (from >= conv_.size()) return;
        long cap = 1 << 20;
        for (int s = 0; s < R_.rank(); ++s)
            if (conv_[from][s] > 0) cap = std::min(cap, content[s] / conv_[from][s]);
        for (long a = 0; a <= cap; ++a) {
            std::vector<long> rem = content;
            for (int s = 0; s < R_.rank(); ++s) rem[s] -= a * conv_[from][s];
            bool ok = true;
            for (long c : rem) ok = ok && c >= 0;
            if (!ok) break;
            cur[from] = a;
            enumerate_monomials(rem, from + 1, cur, out);
            cur[from] = 0;
        }
    }

    std::vector<GenericScalar> word_vector(const WordPoly& p, const Component& C) {
        std::vector<GenericScalar> v(C.words.size(), GenericScalar(0));
        for (const auto& [w, c] : p) v[C.word_index.at(w)] = c;
        return v;
    }

    void ideal_reduce(std::vector<GenericScalar>& v, const Component& C) {
        for (size_t r = 0; r < C.ideal_pivots.size(); ++r) {
            size_t p = C.ideal_pivots[r];
            if (v[p].is_zero()) continue;
            GenericScalar f = v[p];
            for (size_t k = 0; k < v.size(); ++k) v[k] -= f * C.ideal_rows[r][k];
        }
    }

    Component& component(const std::vector<long>& content) {
        auto it = components_.find(content);
        if (it != components_.end()) return it->second;
        Component C;
        std::vector<long> rem = content;
        Word cur;
        enumerate_words(rem, cur, C.words);
        for (size_t i = 0; i < C.words.size(); ++i) C.word_index[C.words[i]] = i;
        // Serre ideal spanning set at this content.
        Mat<GenericScalar> rows;
        for (const auto& [rel, rc] : serre_relations()) {
            std::vector<long> outer(content.size());
            bool feasible = true;
            for (size_t s = 0; s < content.size(); ++s) {
                outer[s] = content[s] - rc[s];
                feasible = feasible && outer[s] >= 0;
            }
            if (!feasible) continue;
            // all splits outer = left + right
            std::vector<std::vector<long>> lefts;
            std::vector<long> lcur(content.size(), 0);
            enumerate_exponent_splits(outer, 0, lcur, lefts);
            for (const auto& lc : lefts) {
                std::vector<long> rcnt(content.size());
                for (size_t s = 0; s < content.size(); ++s) rcnt[s] = outer[s] - lc[s];
                std::vector<Word> lws, rws;
                std::vector<long> tmp = lc;
                Word w0;
                enumerate_words(tmp, w0, lws);
                tmp = rcnt;
                enumerate_words(tmp, w0, rws);
                for (const auto& lw : lws)
                    for (const auto& rw : rws) {
                        std::vector<GenericScalar> row(C.words.size(), GenericScalar(0));
                        for (const auto& [w, c] : rel) {
                            Word full = lw;
                            full.insert(full.end(), w.begin(), w.end());
                            full.insert(full.end(), rw.begin(), rw.end());
                            row[C.word_index.at(full)] += c;
                        }
                        rows.push_back(std::move(row));
                    }
            }
        }
        if (!rows.empty()) {
            C.ideal_pivots = rref(rows);
            rows.resize(C.ideal_pivots.size());
            C.ideal_rows = std::move(rows);
        }
        C.quotient_dim = C.words.size() - C.ideal_pivots.size();
        // PBW monomials of this content and their reduced expansions.
        PbwExp mcur(conv_.size(), 0);
        enumerate_monomials(content, 0, mcur, C.monomials);
        for (const auto& m : C.monomials) {
            auto v = word_vector(expand_monomial(m), C);
            ideal_reduce(v, C);
            C.reduced_cols.push_back(std::move(v));
        }
        // PBW independence within this component.
        if (rank(C.reduced_cols) != C.monomials.size())
            throw Error("OneSidedPBW: PBW monomials dependent in a weight component");
        return components_.emplace(content, std::move(C)).first->second;
    }

    void enumerate_exponent_splits(const std::vector<long>& total, size_t from,
                                   std::vector<long>& cur,
                                   std::vector<std::vector<long>>& out) {
        if (from == total.size()) {
            out.push_back(cur);
            return;
        }
        for (long a = 0; a <= total[from]; ++a) {
            cur[from] = a;
            enumerate_exponent_splits(total, from + 1, cur, out);
        }
        cur[from] = 0;
    }

    PbwElem pbw_coords(const WordPoly& p, const std::vector<long>& content) {
        Component& C = component(content);
        auto v = word_vector(p, C);
        ideal_reduce(v, C);
        std::vector<GenericScalar> x;
        if (!solve_in_span(C.reduced_cols, v, x, GenericScalar(0), true))
            throw Error("OneSidedPBW: element not in PBW span");
        PbwElem r;
        for (size_t i = 0; i < x.size(); ++i)
            if (!x[i].is_zero()) r.emplace(C.monomials[i], x[i]);
        return r;
    }

    void derive_swap_rules() {
        int N = num_roots();
        for (int j = 1; j < N; ++j)
            for (int i = 0; i < j; ++i) {
                WordPoly p = word_mul(expand_root(j), expand_root(i));
                std::vector<long> content(R_.rank());
                for (int s = 0; s < R_.rank(); ++s) content[s] = conv_[i][s] + conv_[j][s];
                PbwElem rule = pbw_coords(p, content);
                // Levendorskii-Soibelman support property.
                for (const auto& [m, c] : rule)
                    for (int t = 0; t < N; ++t)
                        if (m[t] != 0 && (t < i || t > j))
                            throw Error("OneSidedPBW: straightening leaves the convex window");
                swap_rules_[{j, i}] = std::move(rule);
            }
    }

    RootDatum R_;
    std::vector<RootVec> conv_;
    std::vector<RootDef> defs_;
    std::map<int, WordPoly> root_expansions_;
    std::map<std::vector<long>, Component> components_;
    std::map<std::pair<int, int>, PbwElem> swap_rules_;
};

}  // namespace flk
