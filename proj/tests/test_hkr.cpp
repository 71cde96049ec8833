#include <doctest.h>

#include "artifact/conventions.hpp"
#include "artifact/hkr.hpp"
#include "oracles.hpp"

using namespace artifact;

namespace {

long sole(const ClassMap& c, const char* fam) {
    auto s = c.family_scalar(fam);
    REQUIRE(s.has_value());
    return *s;
}

}  // namespace

TEST_CASE("C and CC complexes") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    CComplexes cc = build_C_CC(ring, 2, 4);
    const CPiece& c = cc.pieces.at({0});
    // piece 0: C_n has eps deps^{(n-1)/2} or deps^{n/2}, and T^{-1} dT times the other one
    for (int n = 0; n <= 4; ++n) CHECK(c.b(n).size() == (n == 0 ? 1u : 2u));
    CHECK(c.CC.rank(-4) == 2 + 2 + 1);
    // delta(eps deps^{m-1}) = p^L deps^{m-1}
    FormMonomial one{{0}, {}};
    CHECK(c.C.diff(-3)(c.index(2, {one, 0, 1}), c.index(3, {one, 1, 1})) == 25);
    for (const auto& [g, p] : cc.pieces) {
        for (int n = 1; n <= 4; ++n)
            CHECK(oracle::rational_betti(p.CC, -n) == oracle::rational_betti(p.CCp, -n));
    }
    CHECK_THROWS_AS(build_C_CC(ring, 0, 2), RangeError);
}

TEST_CASE("relative bold homology") {
    RingSpec ring = RingSpec::one_var(5, false, 4);
    CHECK_THROWS_AS(build_rel_CC(ring, 1, 1, 2), RangeError);
    RelCC rel = build_rel_CC(ring, 3, 1, 3);
    // HC_0 is A_{L-M}: one Z/p^{L-M} per monomial
    CHECK(hc_bold(rel, 0).torsion == std::vector<Int>(5, 25));
    for (int n = 0; n <= 3; ++n) {
        BoldDecomposition hc = decomposition_representatives(rel, n, true);
        BoldDecomposition hh = decomposition_representatives(rel, n, false);
        CHECK(hc.dim == hc.predicted);
        CHECK(hh.dim == hh.predicted);
        CHECK(hc.reps_form_basis);
        CHECK(hh.reps_form_basis);
        GroupSummary g = hc_bold(rel, n), h = hh_bold(rel, n);
        CHECK(g.free_rank == 0);
        CHECK(h.free_rank == 0);
        // universal coefficients on each piece
        for (const auto& [k, rp] : rel.pieces) {
            CHECK(oracle::rational_betti(rp.rel_CC, -n) == 0);
            CHECK(oracle::mod_p_betti(rp.rel_CC, -n, 5) == homology(rp.mod_CC, -n).generators());
            const std::size_t dm = homology(rp.mod_C, -n).generators();
            CHECK(oracle::mod_p_betti(rp.rel_C, -n, 5) == dm);
            CHECK(dm == homology(rp.rel_C, -n).p_rank(5) + homology(rp.rel_C, -n + 1).p_torsion_rank(5));
        }
    }
    CHECK_THROWS_AS(hc_bold(rel, 4), RangeError);
}

TEST_CASE("Connes maps on the decomposition") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    RelCC rel = build_rel_CC(ring, 2, 1, 3);
    for (int n = 0; n <= 3; ++n) {
        ConnesExactness e = connes_exactness(rel, n);
        CHECK(e.exact());
        ClassMap I = connes_I(rel, n);
        CHECK(I.mismatches() == 0);
        if (n >= 1) {
            ClassMap dl = connes_delta(rel, n);
            CHECK(dl.cycles_ok);
            // 1 - d on the (1)-family; the negated bottom row turns it into d - 1 on the (2)-family
            if (n >= 2) CHECK(sole(dl, "HC1") == 1);
            CHECK(sole(dl, "HC2") == -1);
        }
    }
}

TEST_CASE("multiplication by dlog") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    RelCC rel = build_rel_CC(ring, 2, 1, 3);
    ClassMap m0 = mult_dlog(rel, std::vector<int>{1}, 0);
    CHECK(m0.chain_map_ok);
    CHECK(sole(m0, "HC2") == 1);
    for (int n = 1; n <= 2; ++n) {
        ClassMap m = mult_dlog(rel, std::vector<int>{1}, n);
        CHECK(m.mismatches() == 0);
        CHECK(sole(m, "HC1") == -1);
        CHECK(sole(m, "HC2") == 1);
    }
    // x = 3 T^2 (1 + 5 T): dlog of the monomial part is 2 dT/T
    ResidueElement x = ResidueElement::monomial(5, 2, {2}, 3) + ResidueElement::monomial(5, 2, {3}, 15);
    ClassMap mx = mult_dlog(rel, x, 1);
    CHECK(sole(mx, "HC1") == -1);
    // constant unit: the zero map
    ClassMap mc = mult_dlog(rel, std::vector<int>{0}, 1);
    CHECK(mc.mismatches() == 0);
    RingSpec poly = RingSpec::one_var(5, false, 3);
    RelCC rp = build_rel_CC(poly, 2, 1, 2);
    CHECK_THROWS_AS(mult_dlog(rp, std::vector<int>{1}, 0), DomainError);
    CHECK_THROWS_AS(mult_dlog(rel, std::vector<int>{1}, 3), RangeError);
}

TEST_CASE("multiplication by d eps") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    RelCC rel = build_rel_CC(ring, 2, 1, 4);
    for (int n = 0; n <= 2; ++n) {
        ClassMap m = mult_deps(rel, n);
        CHECK(m.chain_map_ok);
        CHECK(m.cycles_ok);
        CHECK(sole(m, "HC2") == 0);
        // observed scalar on the summand Omega^{n-1-2i} is (-1)^{n-i+1}
        for (std::size_t k = 0; k < m.scalar.size(); ++k)
            if (m.src_family[k] == "HC1") CHECK(*m.scalar[k] == -m.expected[k]);
    }
    // (d eps)^2 agrees with applying d eps twice
    RelCC big = build_rel_CC(ring, 2, 1, 5);
    ClassMap sq = mult_deps(big, 1, 2);
    CHECK(sole(sq, "HC2") == 0);
    CHECK(sole(sq, "HC1") == sole(mult_deps(big, 1), "HC1") * sole(mult_deps(big, 3), "HC1"));
}

TEST_CASE("negative controls on the cyclic side") {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    {
        conv::ScopedConventions alt(1, true);
        RelCC rel = build_rel_CC(ring, 2, 1, 3);
        ClassMap m = mult_dlog(rel, std::vector<int>{1}, 1);
        CHECK(m.mismatches() > 0);
    }
    nlohmann::json j = hkr_report(ring, 2, 1, 3);
    CHECK(j["1"]["modp_dims"]["HC"] == j["1"]["modp_dims"]["HC_predicted"]);
    CHECK(j["0"]["p_primary"] == true);
}
