#include <doctest.h>

#include "artifact/conventions.hpp"
#include "artifact/hochschild.hpp"

#include <random>

using namespace artifact;

namespace {

struct Sampler {
    const HochschildCdga& A;
    std::vector<std::string> monos;
    std::mt19937 rng{7};

    HChain operator()(int max_len) {
        HTuple t;
        const int len = 1 + static_cast<int>(rng() % max_len);
        for (int i = 0; i < len; ++i) t.push_back(A.mono(monos[rng() % monos.size()]));
        return HChain::tuple(t, 1 + static_cast<long>(rng() % 3));
    }
};

int length(const HChain& x) { return static_cast<int>(x.terms.begin()->first.size()) - 1; }
int weight(const HChain& x) {
    int w = 0;
    for (const auto& m : x.terms.begin()->first) w += m.weight();
    return w;
}

Int binom(int n, int k) {
    Int r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

HochschildCdga laurent_model() {
    RingSpec ring = RingSpec::one_var(5, true, 3);
    return HochschildCdga::over(ring, DRElement::var(1, 0, 2).scaled(3) + DRElement::constant(1, 25));
}

}  // namespace

TEST_CASE("Hochschild operators") {
    HochschildCdga A = laurent_model();
    Sampler s{A, {"1", "T", "T^-1", "T^2", "eps", "T*eps", "T^-1*eps"}};
    for (int it = 0; it < 300; ++it) {
        HChain x = s(5);
        CHECK(hh_b(A, hh_b(A, x)).is_zero());
        CHECK(hh_b(A, hh_delta(A, x)) == hh_delta(A, hh_b(A, x)));
        CHECK(hh_total(A, hh_total(A, x)).is_zero());
        HChain n = normalize(x);
        CHECK(normalize(hh_total(A, normalize(hh_total(A, n)))).is_zero());
        CHECK(hh_B(A, hh_B(A, n)).is_zero());
        // t^{l+1} = 1
        HChain y = x;
        for (int k = 0; k <= length(x); ++k) y = hh_t(y);
        CHECK(y == x);
    }
    // b(a0, a1) vanishes on commuting weight-0 entries
    CHECK(hh_b(A, HChain::tuple(A.tuple({"T", "T^2"}))).is_zero());
    HochschildCdga Z = HochschildCdga::truncated_integers(5, 2);
    HChain one_eps = HChain::tuple({Z.one(), Z.epsilon()});
    CHECK(hh_b(Z, one_eps).is_zero());
    CHECK(hh_delta(Z, one_eps) == HChain::tuple({Z.one(), Z.one()}, 25));
    CHECK(HChain::tuple(A.tuple({"T", "eps", "T^-1*eps"})).to_string(A.vars) == "(T,eps,T^-1*eps)");
    CHECK_THROWS_AS(A.mono("S"), ParseError);
    CHECK_THROWS_AS(HochschildCdga::cyclic_group_model(5).mono("X^-1"), DomainError);
}

TEST_CASE("shuffle product") {
    HochschildCdga A = laurent_model();
    Sampler s{A, {"1", "T", "T^-1", "T^2", "eps", "T*eps"}};
    CHECK(shuffle(HChain::tuple(A.tuple({"T"})), HChain::tuple(A.tuple({"T^-1*eps"}))) ==
          HChain::tuple(A.tuple({"eps"})));
    // odd bar degree and odd weight: the two shuffles add up
    HChain e = HChain::tuple(A.tuple({"1", "eps"}));
    CHECK(shuffle(e, e) == HChain::tuple(A.tuple({"1", "eps", "eps"}), 2));
    HChain t = HChain::tuple(A.tuple({"1", "T"}));
    CHECK(shuffle(t, t).is_zero());
    for (int it = 0; it < 500; ++it) {
        HChain x = s(4), y = s(3);
        HChain xy = shuffle(x, y);
        CHECK(hh_b(A, xy) == shuffle(hh_b(A, x), y) + shuffle(x, hh_b(A, y)).scaled(conv::sign(length(x))));
        CHECK(hh_delta(A, xy) == shuffle(hh_delta(A, x), y) + shuffle(x, hh_delta(A, y)).scaled(conv::sign(weight(x))));
    }
}

TEST_CASE("HKR map pi") {
    HochschildCdga A = laurent_model();
    Sampler s{A, {"1", "T", "T^-1", "T^2", "eps", "T*eps", "T^-2*eps"}};
    CHECK(hh_pi(A, HChain::tuple(A.tuple({"1", "T", "T"}))).is_zero());
    FormMonomial T{{1}, {}};
    CHECK(hh_pi(A, HChain::tuple(A.tuple({"T", "eps"}))) == CdgaElement::monomial({T, 0, 1}));
    const DRElement ell = DRElement::var(1, 0, 2).scaled(3) + DRElement::constant(1, 25);
    HChain inv = HChain::tuple(A.tuple({"T^-1", "T"}));
    CdgaElement dlog = CdgaElement::monomial({{{-1}, {0}}, 0, 0});
    for (int it = 0; it < 300; ++it) {
        HChain x = s(4), y = s(3);
        const int n = length(x);
        CHECK(hh_pi(A, hh_b(A, x)).is_zero());
        CHECK(hh_pi(A, hh_delta(A, x)) == cdga_delta(hh_pi(A, x), ell));
        HChain nx = normalize(x);
        CHECK(hh_pi(A, hh_B(A, nx)) == cdga_d(hh_pi(A, nx)).scaled(n + 1));
        CHECK(hh_pi(A, shuffle(x, y)) == cdga_mul(hh_pi(A, x), hh_pi(A, y)).scaled(binom(n + length(y), n)));
        // phi(sh((x^-1, x), a)) = dlog x * phi(a), with phi = pi / n!
        CHECK(hh_pi(A, shuffle(inv, x)) == cdga_mul(dlog, hh_pi(A, x)).scaled(n + 1));
    }
}

TEST_CASE("normalized complex and formality") {
    RingSpec ring = RingSpec::one_var(5, false, 3);
    HochschildCdga A = HochschildCdga::over(ring, DRElement());
    HochschildPiece h = hochschild_normalized(A, {2}, 3);
    for (int n = 1; n <= 3; ++n)
        for (const auto& t : h.basis.at(n)) {
            CHECK(total_degree(t) == n);
            for (std::size_t i = 1; i < t.size(); ++i) CHECK_FALSE(t[i].is_unit());
        }
    CHECK(h.complex.rank(0) == 1);
    std::vector<FormalityDegree> rows = formality_check(ring, 3);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
        CHECK(r.hh_free == r.c_rank);
        CHECK(r.iso_after_inverting);
        CHECK(r.q_parts_match);
        CHECK(r.pi_det != 0);
    }
    CHECK_THROWS_AS(formality_check(RingSpec::one_var(5, true, 3), 2), DomainError);
    CHECK_THROWS_AS(hochschild_normalized(laurent_model(), {0}, 2), DomainError);
}

TEST_CASE("Dennis trace of the Bott element") {
    for (long p : {5L, 7L})
        for (int n : {2, 3}) {
            DennisTrace d = dennis_trace_bott(p, n);
            CHECK(d.chain_identity);
            CHECK(d.u_integral);
            CHECK(d.u_is_one_mod_p);
            CHECK(d.g_is_cdga_map);
            CHECK(d.is_mod_p_cycle);
            CHECK(d.equals_one_eps);
        }
    DennisTrace d = dennis_trace_bott(5, 2);
    CHECK(d.x == 6);
    CHECK(d.u == 311);
    CHECK_THROWS_AS(dennis_trace_bott(5, 1), RangeError);
    CHECK_THROWS_AS(dennis_trace_bott(2, 2), RangeError);
    CHECK_THROWS_AS(dennis_trace_bott(6, 2), RangeError);
}
