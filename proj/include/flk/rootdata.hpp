#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "flk/errors.hpp"

namespace flk {

/// Vector in simple-root coordinates.
using RootVec = std::vector<long>;

/// Weight in fundamental-weight coordinates.
struct Weight {
    std::vector<long> fund;

    Weight() = default;
    explicit Weight(std::vector<long> f) : fund(std::move(f)) {}

    size_t rank() const { return fund.size(); }
    long operator[](size_t i) const { return fund[i]; }

    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (size_t i = 0; i < fund.size(); ++i) r.fund[i] += o.fund[i];
        return r;
    }
    Weight operator-(const Weight& o) const {
        Weight r = *this;
        for (size_t i = 0; i < fund.size(); ++i) r.fund[i] -= o.fund[i];
        return r;
    }
    Weight operator*(long c) const {
        Weight r = *this;
        for (auto& x : r.fund) x *= c;
        return r;
    }
    bool operator==(const Weight& o) const { return fund == o.fund; }
    bool operator!=(const Weight& o) const { return fund != o.fund; }
    bool operator<(const Weight& o) const { return fund < o.fund; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < fund.size(); ++i)
            s += (i ? "," : "") + std::to_string(fund[i]);
        return s + ")";
    }
};

struct WeylElement {
    std::vector<std::vector<long>> matrix;  // action on simple-root coordinates
    std::vector<int> word;                  // a reduced word in simple reflections
    long length = 0;
};

class RootDatum {
public:
    static RootDatum build(char series, int rank) {
        RootDatum R;
        R.series_ = series;
        R.rank_ = rank;
        if (series == 'A' && (rank == 1 || rank == 2 || rank == 3)) {
            R.cartan_.assign(rank, std::vector<long>(rank, 0));
            for (int i = 0; i < rank; ++i) {
                R.cartan_[i][i] = 2;
                if (i + 1 < rank) R.cartan_[i][i + 1] = R.cartan_[i + 1][i] = -1;
            }
            R.d_.assign(rank, 1);
        } else if (series == 'B' && rank == 2) {
            // alpha_1 long, alpha_2 short; cartan[i][j] = <alpha_j, alpha_i^vee>
            R.cartan_ = {{2, -1}, {-2, 2}};
            R.d_ = {2, 1};
        } else if (series == 'B' && rank == 3) {
            // alpha_1, alpha_2 long, alpha_3 short
            R.cartan_ = {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}};
            R.d_ = {2, 2, 1};
        } else {
            throw UnsupportedType(std::string(1, series) + std::to_string(rank));
        }
        R.finish();
        return R;
    }

    char series() const { return series_; }
    int rank() const { return rank_; }
    const std::vector<std::vector<long>>& cartan() const { return cartan_; }
    const std::vector<long>& symmetrizers() const { return d_; }
    const std::vector<RootVec>& positive_roots() const { return pos_roots_; }
    long num_positive_roots() const { return static_cast<long>(pos_roots_.size()); }
    const std::vector<WeylElement>& weyl_group() const { return weyl_; }
    const WeylElement& longest_element() const { return weyl_[w0_index_]; }
    long coxeter_number() const { return coxeter_; }
    const RootVec& highest_root() const { return highest_root_; }
    const RootVec& highest_short_root() const { return highest_short_root_; }
    Weight rho() const { return Weight(std::vector<long>(rank_, 1)); }

    /// (alpha_i, alpha_j) for the W-invariant pairing with (short, short) = 2.
    long root_pairing(const RootVec& a, const RootVec& b) const {
        long s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) s += a[i] * b[j] * d_[i] * cartan_[i][j];
        return s;
    }

    /// (beta, beta) of a root.
    long root_norm(const RootVec& b) const { return root_pairing(b, b); }

    /// <v, alpha_i^vee> for v in simple-root coordinates.
    long coroot_pairing_root(const RootVec& v, int i) const {
        long s = 0;
        for (int j = 0; j < rank_; ++j) s += cartan_[i][j] * v[j];
        return s;
    }

    /// (lambda, beta^vee) = 2(lambda,beta)/(beta,beta) for a weight and a root.
    long weight_coroot_pairing(const Weight& lam, const RootVec& beta) const {
        // (lambda, beta) = sum_i lam_i (varpi_i, beta); and
        // (varpi_i, alpha_j) = delta_ij * d_j since (varpi_i, alpha_j^vee) = delta_ij.
        mpq_class s = 0;
        for (int j = 0; j < rank_; ++j) s += mpq_class(lam.fund[j] * d_[j]) * beta[j];
        mpq_class r = 2 * s / root_norm(beta);
        if (r.get_den() != 1) throw Error("weight_coroot_pairing: non-integral");
        return r.get_num().get_si();
    }

    /// Simple reflection s_i on simple-root coordinates.
    RootVec reflect_root(int i, const RootVec& v) const {
        RootVec r = v;
        r[i] -= coroot_pairing_root(v, i);
        return r;
    }

    /// Convert a weight (fundamental coords) to simple-root coords (rational).
    std::vector<mpq_class> weight_to_root_coords(const Weight& lam) const {
        // Solve C^T x = lam: sum_k x_k <alpha_k, alpha_j^vee> = lam_j.
        int n = rank_;
        std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n + 1));
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) M[j][k] = cartan_[j][k];
            M[j][n] = lam.fund[j];
        }
        for (int c = 0; c < n; ++c) {
            int piv = c;
            while (M[piv][c] == 0) ++piv;
            std::swap(M[piv], M[c]);
            for (int r2 = 0; r2 < n; ++r2) {
                if (r2 == c || M[r2][c] == 0) continue;
                mpq_class f = M[r2][c] / M[c][c];
                for (int k = c; k <= n; ++k) M[r2][k] -= f * M[c][k];
            }
        }
        std::vector<mpq_class> x(n);
        for (int c = 0; c < n; ++c) x[c] = M[c][n] / M[c][c];
        return x;
    }

    /// Convert simple-root coords back to fundamental coords.
    Weight root_coords_to_weight(const std::vector<mpq_class>& v) const {
        Weight lam(std::vector<long>(rank_, 0));
        for (int j = 0; j < rank_; ++j) {
            mpq_class s = 0;
            for (int k = 0; k < rank_; ++k) s += mpq_class(cartan_[j][k]) * v[k];
            if (s.get_den() != 1) throw Error("root_coords_to_weight: non-integral");
            lam.fund[j] = s.get_num().get_si();
        }
        return lam;
    }

    Weight root_to_weight(const RootVec& b) const {
        std::vector<mpq_class> v(b.begin(), b.end());
        return root_coords_to_weight(v);
    }

    /// Linear Weyl action on weights.
    Weight act(const WeylElement& w, const Weight& lam) const {
        auto v = weight_to_root_coords(lam);
        std::vector<mpq_class> r(rank_, mpq_class(0));
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) r[i] += mpq_class(w.matrix[i][j]) * v[j];
        return root_coords_to_weight(r);
    }

    /// Dot action w . lambda = w(lambda + rho) - rho.
    Weight dot(const WeylElement& w, const Weight& lam) const {
        return act(w, lam + rho()) - rho();
    }

    /// W-invariant pairing of two weights (always rational; integral iff both
    /// lie suitably — returned exactly).
    mpq_class weight_pairing(const Weight& a, const Weight& b) const {
        auto vb = weight_to_root_coords(b);
        mpq_class s = 0;
        for (int j = 0; j < rank_; ++j) s += mpq_class(a.fund[j] * d_[j]) * vb[j];
        return s;
    }

    const WeylElement& product(const WeylElement& a, const WeylElement& b) const {
        auto m = mat_mul(a.matrix, b.matrix);
        return weyl_[weyl_index_.at(m)];
    }

    const WeylElement& from_word(const std::vector<int>& word) const {
        auto m = identity_matrix();
        for (int i : word) m = mat_mul(m, simple_matrix(i));
        return weyl_[weyl_index_.at(m)];
    }

    /// Matrix of s_i on simple-root coordinates.
    std::vector<std::vector<long>> simple_matrix(int i) const {
        auto m = identity_matrix();
        for (int j = 0; j < rank_; ++j) m[i][j] -= cartan_[i][j];
        return m;
    }

private:
    RootDatum() = default;

    std::vector<std::vector<long>> identity_matrix() const {
        std::vector<std::vector<long>> m(rank_, std::vector<long>(rank_, 0));
        for (int i = 0; i < rank_; ++i) m[i][i] = 1;
        return m;
    }

    static std::vector<std::vector<long>> mat_mul(const std::vector<std::vector<long>>& a,
                                                  const std::vector<std::vector<long>>& b) {
        size_t n = a.size();
        std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k)
                for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    }

    void finish() {
        // All roots: closure of the simples under simple reflections.
        std::vector<RootVec> roots;
        for (int i = 0; i < rank_; ++i) {
            RootVec e(rank_, 0);
            e[i] = 1;
            roots.push_back(e);
        }
        for (size_t head = 0; head < roots.size(); ++head) {
            for (int i = 0; i < rank_; ++i) {
                RootVec r = reflect_root(i, roots[head]);
                if (std::find(roots.begin(), roots.end(), r) == roots.end())
                    roots.push_back(r);
            }
        }
        for (const auto& r : roots) {
            bool pos = true;
            for (long c : r) pos = pos && c >= 0;
            if (pos) pos_roots_.push_back(r);
        }
        // Sort positive roots by height, then lexicographically (deterministic).
        std::sort(pos_roots_.begin(), pos_roots_.end(), [](const RootVec& a, const RootVec& b) {
            long ha = 0, hb = 0;
            for (long c : a) ha += c;
            for (long c : b) hb += c;
            return ha != hb ? ha < hb : a < b;
        });

        // Highest root and highest short root.
        long min_norm = root_norm(pos_roots_.front());
        for (const auto& r : pos_roots_) min_norm = std::min(min_norm, root_norm(r));
        highest_root_ = pos_roots_.back();
        for (const auto& r : pos_roots_)
            if (root_norm(r) == min_norm) highest_short_root_ = r;  // sorted: last wins

        // Weyl group by breadth-first search from the identity.
        WeylElement id;
        id.matrix = identity_matrix();
        weyl_.push_back(id);
        weyl_index_[id.matrix] = 0;
        for (size_t head = 0; head < weyl_.size(); ++head) {
            WeylElement w = weyl_[head];
            for (int i = 0; i < rank_; ++i) {
                auto m = mat_mul(w.matrix, simple_matrix(i));
                if (weyl_index_.count(m)) continue;
                WeylElement nw;
                nw.matrix = m;
                nw.word = w.word;
                nw.word.push_back(i);
                nw.length = w.length + 1;
                weyl_index_[m] = weyl_.size();
                weyl_.push_back(nw);
            }
        }
        for (size_t i = 0; i < weyl_.size(); ++i)
            if (weyl_[i].length > weyl_[w0_index_].length) w0_index_ = i;

        coxeter_ = weight_coroot_pairing(rho(), highest_short_root_) + 1;
    }

    char series_ = '?';
    int rank_ = 0;
    std::vector<std::vector<long>> cartan_;
    std::vector<long> d_;  // (alpha_i, alpha_i)/2
    std::vector<RootVec> pos_roots_;
    RootVec highest_root_;
    RootVec highest_short_root_;
    std::vector<WeylElement> weyl_;
    std::map<std::vector<std::vector<long>>, size_t> weyl_index_;
    size_t w0_index_ = 0;
    long coxeter_ = 0;
};

inline RootDatum build_root_datum(char series, int rank) {
    return RootDatum::build(series, rank);
}

/// gamma_i = s_{j_1} ... s_{j_{i-1}} (alpha_{j_i}) for a reduced word for w0.
inline std::vector<RootVec> convex_positive_roots(const RootDatum& R,
                                                  const std::vector<int>& word) {
    const WeylElement& w = R.from_word(word);
    if (w.length != static_cast<long>(word.size()))
        throw NotReduced("word of length " + std::to_string(word.size()) +
                         " represents an element of length " + std::to_string(w.length));
    if (w.matrix != R.longest_element().matrix)
        throw NotLongestWord("word does not represent the longest element");
    std::vector<RootVec> gammas;
    for (size_t i = 0; i < word.size(); ++i) {
        RootVec v(R.rank(), 0);
        v[word[i]] = 1;
        for (size_t j = i; j-- > 0;) v = R.reflect_root(word[j], v);
        gammas.push_back(v);
    }
    // sanity: the set is exactly Phi^+
    auto sorted = gammas;
    std::sort(sorted.begin(), sorted.end());
    auto pos = R.positive_roots();
    std::sort(pos.begin(), pos.end());
    if (sorted != pos) throw Error("convex_positive_roots: output is not Phi^+");
    return gammas;
}

/// All weights with 0 <= (mu, alpha^vee) < p^r * ell for every simple alpha.
inline std::vector<Weight> restricted_weights(const RootDatum& R, long p, long r, long ell) {
    long bound = ell;
    if (p == 0) {
        if (r != 0) throw BadParameters("restricted_weights: r > 0 needs p > 0");
    } else {
        for (long i = 0; i < r; ++i) bound *= p;
    }
    std::vector<Weight> out;
    std::vector<long> cur(R.rank(), 0);
    while (true) {
        out.push_back(Weight(cur));
        int i = R.rank() - 1;
        while (i >= 0 && cur[i] == bound - 1) cur[i--] = 0;
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

struct LengthBoundReport {
    bool holds = true;
    long s = 0;
    /// (index into weyl_group(), length) of every w with rho - w(rho) >= s*nu.
    std::vector<std::pair<size_t, long>> witnesses;
};

/// Brute-force check: rho - w(rho) >= s*nu (componentwise in simple-root
/// coordinates) implies l(w) >= n + s - 1.
inline LengthBoundReport verify_length_bound(const RootDatum& R, long s) {
    if (R.rank() > 3) throw BadParameters("verify_length_bound: rank > 3");
    LengthBoundReport rep;
    rep.s = s;
    Weight rho = R.rho();
    for (size_t i = 0; i < R.weyl_group().size(); ++i) {
        const WeylElement& w = R.weyl_group()[i];
        Weight diff = rho - R.act(w, rho);
        auto coords = R.weight_to_root_coords(diff);
        bool dominates = true;
        for (int j = 0; j < R.rank(); ++j)
            dominates = dominates && coords[j] >= s * R.highest_root()[j];
        if (!dominates) continue;
        rep.witnesses.emplace_back(i, w.length);
        if (w.length < R.rank() + s - 1) rep.holds = false;
    }
    return rep;
}

}  // namespace flk
