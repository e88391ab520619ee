#include <catch2/catch_amalgamated.hpp>

#include "flk/tower.hpp"

using namespace flk;

namespace {

size_t find_label(const BasedAlgebra& A, const std::string& lab) {
    for (size_t i = 0; i < A.dim(); ++i)
        if (A.labels[i] == lab) return i;
    throw std::runtime_error("label not found: " + lab);
}

}  // namespace

TEST_CASE("rank-1 truncated polynomial tower") {
    RootDatum R = build_root_datum('A', 1);
    auto F = make_field(11, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 0, {0});
    REQUIRE(A.dim() == 5);
    size_t x1 = find_label(A, "X^(1)"), x2 = find_label(A, "X^(2)"), x3 = find_label(A, "X^(3)");
    CHECK(A.mul(x1, x2) == SparseVec{{x3, F->one()}});
    CHECK(A.mul(x2, x3).empty());  // X^5 = 0
    A.check_invariants();
}

TEST_CASE("graded dimensions of the free twisted polynomial algebra") {
    RootDatum R = build_root_datum('A', 2);
    auto F = make_field(11, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 0, {}, 6);
    CHECK(A.truncated);
    CHECK(graded_dimension(A, 0) == 1);
    CHECK(graded_dimension(A, 1) == 3);
    CHECK(graded_dimension(A, 2) == 6);
    CHECK(graded_dimension(A, 3) == 10);
    A.check_invariants(2000, 7);
}

TEST_CASE("fully killed tower is gr u_zeta(u)-sized and zeta-commutative") {
    RootDatum R = build_root_datum('A', 2);
    auto F = make_field(11, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 0, {0, 1, 2});
    REQUIRE(A.dim() == 125);
    // convex order (a1, a1+a2, a2); (gamma_1, gamma_3) = (a1, a2) = -1
    size_t e1 = find_label(A, "X^(1,0,0)"), e3 = find_label(A, "X^(0,0,1)");
    size_t e13 = find_label(A, "X^(1,0,1)");
    CHECK(A.mul(e1, e3) == SparseVec{{e13, F->one()}});
    CHECK(A.mul(e3, e1) == SparseVec{{e13, F->zeta_power(1)}});
    A.check_invariants(10000, 3);
    // weights: X_alpha has weight -alpha
    RootVec a1{1, 0};
    CHECK(A.weights[e1] == R.root_to_weight(a1) * (-1));
}

TEST_CASE("higher layers are central and p-truncated") {
    RootDatum R = build_root_datum('A', 1);
    auto F = make_field(3, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 1, {0, 1});
    REQUIRE(A.dim() == 15);
    size_t x = find_label(A, "X^(1,0)"), y = find_label(A, "X^(0,1)");
    CHECK(A.mul(x, y) == A.mul(y, x));
    size_t y2 = find_label(A, "X^(0,2)");
    CHECK(A.mul(y, y2).empty());  // Y^3 = 0
    A.check_invariants();
}

TEST_CASE("tower parameter validation") {
    RootDatum R = build_root_datum('A', 1);
    auto F11 = make_field(11, 5);
    CHECK_THROWS_AS(build_tower_algebra(R, F11, 0, {5}), BadParameters);
    CHECK_THROWS_AS(build_tower_algebra(R, make_field(0, 5), 1, {0, 1}), BadParameters);
    CHECK_THROWS_AS(build_tower_algebra(R, F11, 0, {}), BadParameters);  // no cutoff
}

TEST_CASE("associated graded of an already-graded algebra is itself") {
    RootDatum R = build_root_datum('A', 2);
    auto F = make_field(11, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 0, {0, 1, 2});
    BasedAlgebra G = associated_graded(A);
    for (size_t i = 0; i < A.dim(); i += 7)
        for (size_t j = 0; j < A.dim(); j += 11) REQUIRE(G.mul(i, j) == A.mul(i, j));
}

TEST_CASE("associated graded rejects a non-submultiplicative degree function") {
    RootDatum R = build_root_datum('A', 1);
    auto F = make_field(11, 5);
    BasedAlgebra A = build_tower_algebra(R, F, 0, {0});
    // degree that jumps on X^2 while X has degree 0
    A.filtration = {0, 0, 1, 1, 1};
    CHECK_THROWS_AS(associated_graded(A), NotFiltered);
    BasedAlgebra B = build_tower_algebra(R, F, 0, {0});
    B.filtration.clear();
    CHECK_THROWS_AS(associated_graded(B), NotFiltered);
}
