#include <catch2/catch_amalgamated.hpp>

#include "flk/hopf.hpp"
#include "flk/kernel_a1.hpp"
#include "flk/small_quantum.hpp"
#include "flk/tower.hpp"

using namespace flk;

namespace {

std::vector<std::pair<size_t, size_t>> random_pairs(size_t n, size_t count, uint64_t seed) {
    std::vector<std::pair<size_t, size_t>> out;
    uint64_t s = seed;
    auto rnd = [&s, n]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<size_t>((s >> 33) % n);
    };
    for (size_t t = 0; t < count; ++t) out.push_back({rnd(), rnd()});
    return out;
}

}  // namespace

TEST_CASE("small quantum dimension laws") {
    auto F = make_field(11, 5);
    auto F3 = make_field(3, 5);
    // A1: N=1, n=1
    RootDatum A1 = build_root_datum('A', 1);
    CHECK(build_small_quantum(A1, F, 'u').dim() == 5);
    CHECK(build_small_quantum(A1, F, 'b').dim() == 25);
    CHECK(build_small_quantum(A1, F, 'g').dim() == 125);
    // A2: N=3, n=2
    RootDatum A2 = build_root_datum('A', 2);
    CHECK(build_small_quantum(A2, F, 'u').dim() == 125);
    CHECK(build_small_quantum(A2, F, 'b').dim() == 3125);
    CHECK(build_small_quantum(A2, F, 'g').dim() == 390625);
    // B2: N=4, n=2
    RootDatum B2 = build_root_datum('B', 2);
    CHECK(build_small_quantum(B2, F3, 'u').dim() == 625);
    CHECK(build_small_quantum(B2, F3, 'b').dim() == 15625);
    CHECK(build_small_quantum(B2, F3, 'g').dim() == 9765625);
    CHECK_THROWS_AS(build_small_quantum(A1, F, 'x'), BadParameters);
    CHECK_THROWS_AS(build_small_quantum(build_root_datum('A', 3), F, 'u'), UnsupportedType);
    // materialization limit applies to the B2 full algebra
    CHECK_THROWS_AS(build_small_quantum(B2, F3, 'g').algebra(), BudgetExceeded);
    // hypothesis flag: l > h holds for B2 (h = 4, l = 5) but fails at l = 3
    CHECK_FALSE(build_small_quantum(B2, F3, 'u').hypothesis_warning());
    CHECK(build_small_quantum(A2, make_field(11, 3), 'u').hypothesis_warning());
    CHECK_FALSE(build_small_quantum(A2, F, 'u').hypothesis_warning());
}

TEST_CASE("rank-1 plain-power truncation and invariants") {
    RootDatum R = build_root_datum('A', 1);
    auto F = make_field(11, 5);
    SmallQuantum U = build_small_quantum(R, F, 'u');
    BasedAlgebra A = U.algebra();
    A.check_invariants();
    // F^a F^b = F^{a+b}, vanishing beyond F^4
    for (long a = 0; a < 5; ++a)
        for (long b = 0; b < 5; ++b) {
            SparseVec v = A.mul(a, b);
            if (a + b >= 5) {
                CHECK(v.empty());
            } else {
                REQUIRE(v.size() == 1);
                CHECK(v.begin()->first == static_cast<size_t>(a + b));
                CHECK(v.begin()->second == F->one());
            }
        }
}

TEST_CASE("small quantum invariants at materialized scale") {
    auto F = make_field(11, 5);
    RootDatum A1 = build_root_datum('A', 1);
    BasedAlgebra g1 = build_small_quantum(A1, F, 'g').algebra();
    g1.check_invariants(20000, 3);
    RootDatum A2 = build_root_datum('A', 2);
    BasedAlgebra b2 = build_small_quantum(A2, F, 'b').algebra();
    b2.check_invariants(2000, 5);
    RootDatum B2 = build_root_datum('B', 2);
    BasedAlgebra u4 = build_small_quantum(B2, make_field(3, 5), 'u').algebra();
    u4.check_invariants(3000, 7);
}

TEST_CASE("A-form integrality of generic structure constants") {
    auto F = make_field(11, 5);
    verify_aform(build_small_quantum(build_root_datum('A', 1), F, 'u'), 25, 1);
    verify_aform(build_small_quantum(build_root_datum('A', 2), F, 'u'), 60, 2);
    verify_aform(build_small_quantum(build_root_datum('B', 2), make_field(3, 5), 'u'), 40, 3);
}

TEST_CASE("K conjugation phases on the negative part") {
    // K_a F_b K_a^{-1} = zeta^{-(a,b)} F_b
    auto F = make_field(11, 5);
    RootDatum R = build_root_datum('A', 2);
    SmallQuantum U = build_small_quantum(R, F, 'b');
    BasedAlgebra A = U.algebra();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            SparseVec lhs = A.mul_elem(
                A.mul_elem(SparseVec{{U.generator_K(i, 1), F->one()}},
                           SparseVec{{U.generator_F(j), F->one()}}),
                SparseVec{{U.generator_K(i, -1), F->one()}});
            RootVec ai{0, 0}, aj{0, 0};
            ai[i] = 1;
            aj[j] = 1;
            SparseVec rhs{{U.generator_F(j), F->zeta_power(-R.root_pairing(ai, aj))}};
            CHECK(lhs == rhs);
        }
}

TEST_CASE("triangular decomposition hits each basis element once") {
    auto F = make_field(11, 5);
    RootDatum R = build_root_datum('A', 2);
    SmallQuantum U = build_small_quantum(R, F, 'g');
    const auto& eng = U.engine();
    uint64_t s = 17;
    auto rnd = [&s](long m) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<long>((s >> 33) % static_cast<uint64_t>(m));
    };
    for (int t = 0; t < 300; ++t) {
        PbwExp f(3), e(3);
        std::vector<long> k(2);
        for (int g = 0; g < 3; ++g) {
            f[g] = rnd(5);
            e[g] = rnd(5);
        }
        for (int i = 0; i < 2; ++i) k[i] = rnd(5);
        auto minus = eng.mono(f, {0, 0}, {0, 0, 0});
        auto toral = eng.mono({0, 0, 0}, k, {0, 0, 0});
        auto plus = eng.mono({0, 0, 0}, {0, 0}, e);
        auto prod = eng.mul(eng.mul_mono(minus, toral), UqSpecial::Elem{{plus, F->one()}});
        REQUIRE(prod.size() == 1);
        CHECK(prod.begin()->first == eng.mono(f, k, e));
        CHECK(prod.begin()->second == F->one());
    }
}

TEST_CASE("omega symmetry: negative and positive halves match") {
    // The F- and E-side straightening tables are derived by two independent
    // runs of the letter calculus; omega(F_gamma) = E_gamma identifies them.
    for (auto [series, rank] : {std::pair<char, int>{'A', 2}, {'B', 2}}) {
        RootDatum R = build_root_datum(series, rank);
        auto gen = generic_engine(R);
        CHECK(gen->fswap_tables() == gen->eswap_tables());
    }
}

TEST_CASE("associated graded of u_zeta(u) is the fully killed tower") {
    auto F = make_field(11, 5);
    RootDatum R = build_root_datum('A', 2);
    BasedAlgebra U = build_small_quantum(R, F, 'u').algebra();
    BasedAlgebra G = associated_graded(U);
    BasedAlgebra T = build_tower_algebra(R, F, 0, {0, 1, 2});
    REQUIRE(G.dim() == T.dim());
    // match bases through exponent labels: F^(a) <-> X^(a)
    std::map<std::string, size_t> tindex;
    for (size_t i = 0; i < T.dim(); ++i) tindex[T.labels[i]] = i;
    std::vector<size_t> to_tower(G.dim());
    for (size_t i = 0; i < G.dim(); ++i)
        to_tower[i] = tindex.at("X" + U.labels[i].substr(1));
    for (size_t i = 0; i < G.dim(); ++i)
        for (size_t j = 0; j < G.dim(); ++j) {
            SparseVec g = G.mul(i, j), expect;
            for (const auto& [k, c] : T.mul(to_tower[i], to_tower[j]))
                expect.emplace(k, c);
            SparseVec mapped;
            for (const auto& [k, c] : g) mapped.emplace(to_tower[k], c);
            REQUIRE(mapped == expect);
        }
}

TEST_CASE("divided power kernel dimensions and Lucas closure") {
    auto F = make_field(3, 5);
    KernelA1 U1 = build_dividedpower_kernel_A1(F, 1, 'u');
    CHECK(U1.dim() == 15);
    CHECK(build_dividedpower_kernel_A1(F, 1, 'b').dim() == 225);
    CHECK(build_dividedpower_kernel_A1(F, 1, 'g').dim() == 3375);
    CHECK(build_dividedpower_kernel_A1(F, 0, 'g').dim() == 125);
    CHECK(build_dividedpower_kernel_A1(F, 2, 'u').dim() == 45);
    BasedAlgebra A = U1.algebra();
    // all 15^2 products stay in span; overflow binomials vanish (Lucas)
    A.check_invariants();
    for (long a = 0; a < 15; ++a)
        for (long b = 0; b < 15; ++b) CHECK_NOTHROW(A.mul(a, b));
    // [16 choose 8] = 0 in F_3(zeta_5)
    CHECK(A.mul(8, 8).empty());
    // [5 choose 1] = [5] = 0: F.F^(4) dies although F^(5) is a basis vector
    CHECK(A.mul(1, 4).empty());
    CHECK_FALSE(A.labels[5].empty());
    // a no-carry product survives: F^(2)F^(5) = [7 choose 2] F^(7), digitwise
    SparseVec v = A.mul(2, 5);
    REQUIRE(v.size() == 1);
    CHECK(v.begin()->first == 7);
    CHECK(v.begin()->second == specialize(quantum_binomial(7, 2), *F));
}

TEST_CASE("toral character values only depend on the weight mod p^r l") {
    auto F = make_field(3, 5);
    for (long n : {-23L, -7L, 0L, 4L, 11L})
        for (long k : {1L, 2L, 5L, 7L, 14L}) {
            FieldElement a = specialize(quantum_binomial_z(n, k), *F);
            FieldElement b = specialize(quantum_binomial_z(n + 15, k), *F);
            CHECK(a == b);
        }
    // frozen negative-top values: [-1 choose 1] = [-1] = -1,
    // [-2 choose 2] = [-2][-3]/([1][2]) = [3]
    CHECK(quantum_binomial_z(-1, 1) == GenericScalar(0) - GenericScalar(1));
    CHECK(quantum_binomial_z(-2, 2) == quantum_integer(3));
}

TEST_CASE("kernel invariants, Hopf axioms, coproduct multiplicativity") {
    auto F = make_field(3, 5);
    KernelA1 ker = build_dividedpower_kernel_A1(F, 1, 'g');
    BasedAlgebra A = ker.algebra();
    A.check_invariants(2500, 11);
    std::vector<size_t> sample;
    for (size_t i = 0; i < A.dim(); i += 97) sample.push_back(i);
    check_hopf_axioms(A, sample);
    check_coproduct_multiplicative(A, random_pairs(A.dim(), 20, 42));
    // B_r part: unit is the sum of idempotents, augmentation picks tau_0
    BasedAlgebra B = build_dividedpower_kernel_A1(F, 1, 'b').algebra();
    B.check_invariants();
    CHECK(B.eps(B.unit_elem()) == F->one());
}

TEST_CASE("divided-power commutation agrees with the generic-q engine") {
    // plain powers F^a K^m E^b with a, m, b < l embed into the kernel by
    // F^a K^m E^b |-> [a]![b]! sum_c zeta^{mc} F^(a) tau_c E^(b); the map must
    // be an algebra homomorphism (this re-verifies the externally sourced
    // closed-form identity against the independently derived crossing rules).
    RootDatum R = build_root_datum('A', 1);
    auto F = make_field(3, 5);
    SmallQuantum u = build_small_quantum(R, F, 'g');
    const auto& eng = u.engine();
    for (long r : {0L, 1L}) {
        KernelA1 ker = build_dividedpower_kernel_A1(F, r, 'g');
        BasedAlgebra A = ker.algebra();
        auto phi = [&](long a, long m, long b) {
            SparseVec v;
            FieldElement fac = specialize(quantum_factorial(a) * quantum_factorial(b), *F);
            for (long c = 0; c < ker.order(); ++c) {
                FieldElement z = fac * F->zeta_power(m * c);
                if (!z.is_zero()) v.emplace(ker.index_of(a, c, b), z);
            }
            return v;
        };
        for (long a = 0; a < 5; a += 2)
            for (long m = 0; m < 5; m += 3)
                for (long b = 0; b < 5; b += 2)
                    for (long a2 = 0; a2 < 5; a2 += 3)
                        for (long m2 = 0; m2 < 5; m2 += 2)
                            for (long b2 = 0; b2 < 5; b2 += 2) {
                                auto prod = eng.mul_mono(eng.mono({a}, {m}, {b}),
                                                         eng.mono({a2}, {m2}, {b2}));
                                SparseVec lhs;
                                for (const auto& [mn, c] : prod)
                                    sparse_add(lhs, phi(mn.f[0], mn.k[0], mn.e[0]), c);
                                SparseVec rhs =
                                    A.mul_elem(phi(a, m, b), phi(a2, m2, b2));
                                REQUIRE(lhs == rhs);
                            }
    }
}

TEST_CASE("associated graded of the rank-1 kernel is the r=1 tower") {
    auto F = make_field(3, 5);
    KernelA1 ker = build_dividedpower_kernel_A1(F, 1, 'u');
    BasedAlgebra A = ker.algebra();
    BasedAlgebra G = associated_graded(A);
    BasedAlgebra T = build_tower_algebra(build_root_datum('A', 1), F, 1, {0, 1});
    REQUIRE(G.dim() == T.dim());
    // X^(d0,d1) <-> c_d F^(d0 + 5 d1) with c_d = [d0]! (d1! mod p); products on
    // both sides are single monomials, so compare coefficients directly.
    std::map<std::string, size_t> tindex;
    for (size_t i = 0; i < T.dim(); ++i) tindex[T.labels[i]] = i;
    for (long a = 0; a < 15; ++a)
        for (long b = 0; b < 15; ++b) {
            size_t ti = tindex.at("X^(" + std::to_string(a % 5) + "," + std::to_string(a / 5) + ")");
            size_t tj = tindex.at("X^(" + std::to_string(b % 5) + "," + std::to_string(b / 5) + ")");
            SparseVec tv = T.mul(ti, tj);
            SparseVec gv = G.mul(a, b);
            if (a % 5 + b % 5 < 5 && a / 5 + b / 5 < 3) {
                // no digit carry: both sides a single monomial; under the basis
                // rescaling X^(d) <-> [d0]! d1! F^(d0+5 d1) the gr coefficient
                // must be the Lucas factorization of [a+b choose a] at zeta
                REQUIRE_FALSE(tv.empty());
                REQUIRE(gv.size() == 1);
                CHECK(gv.begin()->first == static_cast<size_t>(a + b));
                long cb = 1;  // C(a1+b1, a1)
                for (long i = 1; i <= a / 5; ++i) cb = cb * (b / 5 + i) / i;
                FieldElement expect =
                    specialize(quantum_binomial(a % 5 + b % 5, a % 5), *F) * F->from_long(cb);
                CHECK(gv.begin()->second == expect);
            } else {
                // carry: the tower product is killed by truncation and the
                // kernel coefficient vanishes by Lucas
                CHECK(tv.empty());
                CHECK(gv.empty());
            }
        }
}

TEST_CASE("normality of the small quantum group in the first kernel") {
    auto F = make_field(3, 5);
    KernelA1 ker = build_dividedpower_kernel_A1(F, 1, 'g');
    BasedAlgebra A = ker.algebra();
    std::vector<SparseVec> sub;
    for (long a = 0; a < 5; ++a)
        for (long m = 0; m < 5; ++m)
            for (long b = 0; b < 5; ++b) {
                SparseVec v;
                for (long c = 0; c < 15; ++c)
                    v.emplace(ker.index_of(a, c, b), F->zeta_power(m * c));
                sub.push_back(v);
            }
    auto rep = adjoint_stability_check(
        A, sub,
        {ker.elem_E(5), ker.elem_F(5), ker.elem_E(1), ker.elem_F(1), ker.elem_K(1)});
    CHECK(rep.stable);
    // the plain span of F^(a) tau_0 is not Ad(E)-stable
    std::vector<size_t> tiny;
    for (long a = 0; a < 5; ++a) tiny.push_back(ker.index_of(a, 0, 0));
    CHECK_FALSE(adjoint_stability_check(A, tiny, {ker.elem_E(1)}).stable);
}

TEST_CASE("adjoint stability of the Borel inside u_zeta(g)") {
    auto F = make_field(11, 5);
    RootDatum R = build_root_datum('A', 2);
    SmallQuantum U = build_small_quantum(R, F, 'g');
    BasedAlgebra A = U.algebra();
    std::vector<size_t> sub;
    for (size_t i = 0; i < U.dim(); ++i) {
        auto m = U.mono_at(i);
        bool borel = true;
        for (long e : m.e) borel = borel && e == 0;
        if (borel) sub.push_back(i);
    }
    REQUIRE(sub.size() == 3125);
    std::vector<SparseVec> gens;
    for (int i = 0; i < 2; ++i) {
        gens.push_back({{U.generator_F(i), F->one()}});
        gens.push_back({{U.generator_K(i), F->one()}});
    }
    auto rep = adjoint_stability_check(A, sub, gens);
    CHECK(rep.stable);
    // sub = amb is trivially stable
    std::vector<size_t> all;
    BasedAlgebra Ab = build_small_quantum(build_root_datum('A', 1), F, 'g').algebra();
    SmallQuantum Ub = build_small_quantum(build_root_datum('A', 1), F, 'g');
    for (size_t i = 0; i < Ab.dim(); ++i) all.push_back(i);
    CHECK(adjoint_stability_check(Ab, all,
                                  {{{Ub.generator_E(0), F->one()}},
                                   {{Ub.generator_F(0), F->one()}}})
              .stable);
    // Hopf data is generator-only on small quantum groups
    CHECK_THROWS_AS(Ab.coproduct(Ub.index_of(Ub.engine().mono({2}, {0}, {0}))),
                    HopfDataMissing);
    CHECK_THROWS_AS(adjoint_stability_check(associated_graded(Ab), all, {}),
                    HopfDataMissing);
}
