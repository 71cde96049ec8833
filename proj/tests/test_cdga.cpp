#include <doctest.h>

#include "artifact/cdga.hpp"
#include "artifact/conventions.hpp"

#include <random>

using namespace artifact;

namespace {

RingSpec ring2() {
    RingSpec r;
    r.p = 5;
    r.vars = {"T1", "T2"};
    r.laurent = {false, true};
    r.window = 2;
    return r;
}

CdgaElement random_el(std::mt19937& rng, const RingSpec& ring, int k, int j, int m) {
    auto basis = omega_basis(ring, k);
    std::uniform_int_distribution<int> c(-3, 3);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    CdgaElement x;
    for (int t = 0; t < 3; ++t) x.add({basis[pick(rng)], j, m}, c(rng));
    return x;
}

// sign of a homogeneous element, read from any term
int norm_of(const CdgaElement& x) { return x.is_zero() ? 0 : x.terms.begin()->first.norm(); }
int weight_of(const CdgaElement& x) { return x.is_zero() ? 0 : x.terms.begin()->first.weight(); }

}  // namespace

TEST_CASE("cdga formulas") {
    RingSpec one = RingSpec::one_var(5, true, 4);
    const std::size_t nv = 1;
    auto eps = CdgaElement::monomial({{{0}, {}}, 1, 0});
    auto deps = CdgaElement::monomial({{{0}, {}}, 0, 1});
    CHECK(cdga_mul(eps, eps).is_zero());
    CHECK(cdga_d(eps) == deps);
    // delta(eps deps^{m-1}) = ell deps^{m-1}
    for (int m = 1; m <= 3; ++m) {
        auto x = CdgaElement::monomial({{{0}, {}}, 1, m - 1});
        CHECK(cdga_delta(x, Int(25)) == CdgaElement::monomial({{{0}, {}}, 0, m - 1}, 25));
    }
    // B(alpha deps^m) = d(alpha) deps^m
    DRElement a = parse_form("T^2", one);
    CHECK(cdga_B(CdgaElement::from_form(a, 0, 2)) == CdgaElement::from_form(d(a), 0, 2));
    // dT * deps = deps * dT with sign (-1)^{1*1}
    auto dT = CdgaElement::from_form(DRElement::dvar(nv, 0));
    CHECK(cdga_mul(dT, deps) == -cdga_mul(deps, dT));
    CHECK(cdga_mul(eps, dT) == cdga_mul(dT, eps));
    CHECK(cdga_mul(eps, deps) == -cdga_mul(deps, eps));
}

TEST_CASE("cdga operator identities on random elements") {
    RingSpec ring = ring2();
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> kk(0, 2), jj(0, 1), mm(0, 3);
    const DRElement ell = parse_form("T1^2 - 5*T2", ring);
    for (int t = 0; t < 300; ++t) {
        auto x = random_el(rng, ring, kk(rng), jj(rng), mm(rng));
        auto y = random_el(rng, ring, kk(rng), jj(rng), mm(rng));
        CHECK(cdga_d(cdga_d(x)).is_zero());
        CHECK(cdga_delta(cdga_delta(x, ell), ell).is_zero());
        CHECK(cdga_d(cdga_delta(x, ell)) == cdga_delta(cdga_d(x), ell));
        CHECK(cdga_B(cdga_B(x)).is_zero());
        CHECK((cdga_delta(cdga_B(x), Int(25)) + cdga_B(cdga_delta(x, Int(25)))).is_zero());
        CHECK(cdga_B(cdga_rho(x)) == cdga_rho(cdga_d(x)));
        CHECK(cdga_delta(cdga_rho(x), Int(25)) == cdga_rho(cdga_norm_sign(cdga_delta(x, Int(25)))));
        CHECK(cdga_rho(cdga_rho(x)) == x);
        auto Dp = [&](const CdgaElement& z) { return cdga_norm_sign(cdga_delta(z, Int(25))) + cdga_d(z); };
        CHECK(Dp(Dp(x)).is_zero());
        CHECK(cdga_delta(x, DRElement::constant(2, 25)) == cdga_delta(x, Int(25)));

        const int sx = conv::sign(norm_of(x)), wx = conv::sign(weight_of(x));
        CHECK(cdga_d(cdga_mul(x, y)) == cdga_mul(cdga_d(x), y) + cdga_mul(x, cdga_d(y)).scaled(sx));
        CHECK(cdga_delta(cdga_mul(x, y), ell) ==
              cdga_mul(cdga_delta(x, ell), y) + cdga_mul(x, cdga_delta(y, ell)).scaled(wx));
        auto z = random_el(rng, ring, kk(rng), jj(rng), 1);
        CHECK(cdga_mul(cdga_mul(x, y), z) == cdga_mul(x, cdga_mul(y, z)));
    }
}
