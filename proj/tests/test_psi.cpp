#include <doctest.h>

#include "artifact/conventions.hpp"
#include "artifact/psi.hpp"
#include "oracles.hpp"

using namespace artifact;

TEST_CASE("Psi is a chain map and a quasi-isomorphism") {
    for (long p : {5L, 7L})
        for (bool laurent : {false, true}) {
            RingSpec ring = RingSpec::one_var(p, laurent, 4);
            PsiMap psi = build_psi(ring, std::nullopt, 2, 1, 3);
            CHECK(psi.twists == std::vector<int>{0, 1, 2, 3});
            QuasiIsoReport m = verify_quasi_iso(psi, QuasiIsoMode::mod_p);
            QuasiIsoReport z = verify_quasi_iso(psi, QuasiIsoMode::integral);
            CHECK(m.passed());
            CHECK(z.passed());
            for (int n = 0; n <= 3; ++n) CHECK(z.degrees[n].target == hc_bold(psi.rel, n));
        }
}

TEST_CASE("Psi on a single twist") {
    RingSpec ring = RingSpec::one_var(5, false, 3);
    const int r = 1, L = 3, M = 1;
    PsiMap psi = build_psi(ring, r, L, M, 3);
    const Graded g{1};
    const PsiPiece& pp = psi.pieces.at(g);
    const RelPiece& rp = psi.rel.pieces.at(g);
    // degree -(r+1): kappa = T in Omega^0, lambda = p^{2M} kappa
    const int n = r + 1;
    const IntMatrix f = pp.map.component(-n);
    FormMonomial T{{1}, {}};
    const std::size_t col = pp.source.rank(-n) - 1;  // kappa column comes after the eta columns
    CHECK(pp.source.labels(-n)[col] == "t|p^2L T");
    IntVec want(f.rows());
    want[rp.top.offset(n, 1) + rp.top.index(0, {T, 0, 0})] = 25;
    const std::size_t a = rp.top.CC.rank(-n);
    want[a + rp.bottom.offset(n + 1, 1) + rp.bottom.index(1, {T, 1, 0})] = 5;
    want[a + rp.bottom.offset(n + 1, 0) + rp.bottom.index(3, {T, 1, 1})] = -1;
    IntVec got(f.rows());
    for (std::size_t k = 0; k < f.rows(); ++k) got[k] = f(k, col);
    CHECK(got == want);
    // nothing below degree -r
    CHECK(pp.source.rank(-r + 1) == 0);
    CHECK_THROWS_AS(build_psi(ring, 4, L, M, 3), RangeError);
    CHECK_THROWS_AS(build_psi(ring, std::nullopt, L, M, 4), RangeError);
}

TEST_CASE("degree zero through the twist-zero term") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    PsiMap psi = build_psi(ring, 0, 3, 1, 0);
    QuasiIsoReport z = verify_quasi_iso(psi, QuasiIsoMode::integral);
    CHECK(z.passed());
    CHECK(z.degrees[0].source == rhs_quotient_group(ring, 0, 3, 1));
    nlohmann::json j = to_json(z);
    CHECK(j["passed"] == true);
    CHECK(j["degrees"][0]["source"]["torsion"].size() == 7);
}

TEST_CASE("Psi universal coefficients against the oracle") {
    RingSpec ring = RingSpec::one_var(5, false, 3);
    PsiMap psi = build_psi(ring, std::nullopt, 2, 1, 2);
    for (const auto& [g, pp] : psi.pieces)
        for (int n = 0; n <= 2; ++n) {
            FreeComplex Co = cone(pp.map);
            CHECK(oracle::mod_p_betti(Co, -n, 5) == 0);
            CHECK(oracle::rational_betti(Co, -n) == 0);
            CHECK(oracle::mod_p_betti(pp.source, -n, 5) == mod_p_dimension(pp.source, -n, 5));
        }
}
