#include <doctest.h>

#include "artifact/exactalg.hpp"
#include "oracles.hpp"

#include <random>

using namespace artifact;

TEST_CASE("smith normal form small cases") {
    auto check = [](const IntMatrix& M) {
        SmithForm s = smith_normal_form(M);
        CHECK(s.U * M * s.V == s.S);
        CHECK(s.U * s.Uinv == IntMatrix::identity(M.rows()));
        CHECK(s.V * s.Vinv == IntMatrix::identity(M.cols()));
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        for (std::size_t i = 0; i < s.S.rows(); ++i)
            for (std::size_t j = 0; j < s.S.cols(); ++j)
                if (i != j) CHECK(s.S(i, j) == 0);
        for (std::size_t k = 1; k < s.rank; ++k) CHECK(mpz_divisible_p(s.diag[k].get_mpz_t(), s.diag[k - 1].get_mpz_t()));
        return s;
    };
    CHECK(check(IntMatrix(1, 1, {{2}})).S == IntMatrix(1, 1, {{2}}));
    CHECK(check(IntMatrix(1, 1, {{0}})).S == IntMatrix(1, 1, {{0}}));
    auto s = check(IntMatrix(2, 2, {{2, 0}, {0, 3}}));
    CHECK(s.diag == std::vector<Int>{1, 6});
    CHECK(check(IntMatrix(0, 0)).rank == 0);
    CHECK(check(IntMatrix(0, 3)).rank == 0);
}

TEST_CASE("smith normal form matches the determinantal-divisor oracle") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> ent(-6, 6), dim(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = dim(rng), n = dim(rng);
        IntMatrix M(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = (trial % 3 == 0) ? ent(rng) * 5 : ent(rng);
        SmithForm s = smith_normal_form(M);
        CHECK(s.U * M * s.V == s.S);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(s.diag == oracle::invariant_factors(M));
    }
}

TEST_CASE("homology of basic complexes") {
    // 0 -> Z --2--> Z -> 0 in degrees 0, 1
    FreeComplex C({{0, {"x"}}, {1, {"y"}}}, {{0, IntMatrix(1, 1, {{2}})}});
    AbGroupData h1 = homology(C, 1);
    CHECK(h1.free_rank == 0);
    CHECK(h1.torsion == std::vector<Int>{2});
    CHECK(homology(C, 0).is_zero());

    FreeComplex I({{0, {"x"}}, {1, {"y"}}}, {{0, IntMatrix(1, 1, {{1}})}});
    CHECK(homology(I, 0).is_zero());
    CHECK(homology(I, 1).is_zero());

    CHECK_THROWS_AS(FreeComplex({{0, {"x"}}, {1, {"y"}}, {2, {"z"}}},
                                {{0, IntMatrix(1, 1, {{1}})}, {1, IntMatrix(1, 1, {{1}})}}),
                    StructuralError);
    CHECK_THROWS_AS(FreeComplex({{0, {"x", "x"}}}, {}), StructuralError);
}

TEST_CASE("random complexes: free rank matches rational rank oracle, reps are cycles") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        FreeComplex C = oracle::random_complex(rng, 3);
        for (int i : C.degrees()) {
            AbGroupData h = homology(C, i);
            CHECK(h.free_rank == oracle::rational_betti(C, i));
            for (const auto& z : h.reps) CHECK(is_cycle(C, i, z));
            // class map kills boundaries
            IntMatrix b = C.diff(i - 1);
            for (std::size_t j = 0; j < b.cols(); ++j) CHECK(is_zero_vec(h.classify(b.column(j))));
            // each representative has unit class coordinate
            for (std::size_t g = 0; g < h.generators(); ++g) {
                IntVec c = h.classify(h.reps[g]);
                for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == (k == g ? 1 : 0));
            }
            CHECK(oracle::homology_order_matches(C, i, h));
        }
    }
}

TEST_CASE("mod-p complex") {
    const Int p = 5;
    FreeComplex C({{0, {"x"}}, {1, {"y"}}}, {{0, IntMatrix(1, 1, {{5}})}});
    CHECK(mod_p_dimension(C, 0, p) == 1);
    CHECK(mod_p_dimension(C, 1, p) == 1);
    CHECK(mod_p_dimension(C, -1, p) == 0);

    // zero differentials: H^i = C^i / p
    FreeComplex Z({{0, {"x", "y"}}, {1, {"z"}}}, {});
    CHECK(mod_p_dimension(Z, 0, p) == 2);
    CHECK(mod_p_dimension(Z, 1, p) == 1);
    CHECK(mod_p_dimension(Z, -1, p) == 0);

    // free resolution of Z/p^2 placed so that H^0 = Z/p^2
    FreeComplex R({{-1, {"x"}}, {0, {"y"}}}, {{-1, IntMatrix(1, 1, {{25}})}});
    CHECK(mod_p_dimension(R, 0, p) == 1);
    CHECK(mod_p_dimension(R, -1, p) == 1);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        FreeComplex X = oracle::random_complex(rng, 4, {1, 5, 25, 2});
        for (int i = X.min_degree() - 1; i <= X.max_degree(); ++i) {
            const std::size_t lhs = mod_p_dimension(X, i, p);
            const std::size_t rhs = homology(X, i).p_rank(p) + homology(X, i + 1).p_torsion_rank(p);
            CHECK(lhs == rhs);
            CHECK(lhs == oracle::mod_p_betti(X, i, 5));
        }
    }
}

TEST_CASE("cones, fibers, shifts and totalization") {
    FreeComplex C({{0, {"x"}}, {1, {"y"}}}, {{0, IntMatrix(1, 1, {{3}})}});
    ChainMap id(C, C, {{0, IntMatrix::identity(1)}, {1, IntMatrix::identity(1)}});
    FreeComplex K = cone(id);
    for (int i = -2; i <= 2; ++i) CHECK(homology(K, i).is_zero());
    FreeComplex F = fiber(id);
    for (int i = -1; i <= 3; ++i) CHECK(homology(F, i).is_zero());

    ChainMap zero(C, C, {});
    FreeComplex K0 = cone(zero);
    CHECK(homology(K0, 1).torsion == std::vector<Int>{3});
    CHECK(homology(K0, 0).torsion == std::vector<Int>{3});

    FreeComplex Zc({{0, {"x"}}}, {});
    ChainMap mul(Zc, Zc, {{0, IntMatrix(1, 1, {{25}})}});
    CHECK(homology(cone(mul), 0).torsion == std::vector<Int>{25});
    CHECK(homology(fiber(mul), 1).torsion == std::vector<Int>{25});

    FreeComplex S = shift(C, 2);
    CHECK(S.rank(-2) == 1);
    CHECK(homology(S, -1).torsion == std::vector<Int>{3});
    CHECK(shift(C, 1).diff(-1) == IntMatrix(1, 1, {{-3}}));

    FreeComplex T1 = total_complex({C}, {}, {1});
    CHECK(T1.diff(0) == C.diff(0));
    FreeComplex T2 = total_complex({C, C}, {id}, {1, -1});
    for (int i = -1; i <= 3; ++i) CHECK(homology(T2, i).is_zero());
    CHECK(T2.diff(0) == fiber(id).diff(0));
    CHECK_THROWS_AS(total_complex({C, C}, {id}, {1, 1}), StructuralError);

    CHECK_THROWS_AS(ChainMap(C, C, {{0, IntMatrix::identity(1)}}), StructuralError);
}

TEST_CASE("lattice tools") {
    IntMatrix M(2, 3, {{2, 4, 6}, {0, 3, 3}});
    IntMatrix Kb = kernel_basis(M);
    CHECK(Kb.cols() == 1);
    CHECK((M * Kb).is_zero());
    auto x = solve_integer(M, {2, 3});
    REQUIRE(x);
    CHECK(M * *x == IntVec{2, 3});
    CHECK(!solve_integer(M, {1, 0}));
    auto q = quotient_invariants(IntMatrix::identity(2), IntMatrix(2, 2, {{2, 0}, {0, 3}}));
    CHECK(q.free_rank == 0);
    CHECK(q.torsion == std::vector<Int>{6});
    CHECK(rank_mod_p(IntMatrix(2, 2, {{5, 10}, {1, 2}}), 5) == 1);
    auto y = solve_mod_p(IntMatrix(2, 2, {{1, 2}, {0, 1}}), {3, 4}, 5);
    REQUIRE(y);
    CHECK(mod_floor((*y)[0] + 2 * (*y)[1], 5) == 3);
}
