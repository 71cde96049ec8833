#include <doctest.h>

#include "artifact/conventions.hpp"
#include "artifact/syntomic.hpp"

#include <random>

using namespace artifact;

namespace {

DRElement form(const std::string& s, const RingSpec& ring) { return parse_form(s, ring); }

// Random elements of S(r,n)^q in the truncated polynomial model.
struct Sampler {
    SyntomicModel A;
    std::mt19937 rng{11};

    DRElement random_form(int k) {
        DRElement w;
        const auto basis = omega_basis(A.ctx.ring, k);
        if (basis.empty()) return w;
        for (int t = 0; t < 3; ++t) w.add(basis[rng() % basis.size()], static_cast<long>(rng() % 7) - 3);
        return w;
    }
    KatoElement operator()(int q) {
        const Int P = A.ctx.ring.P();
        KatoElement u{q, random_form(q).scaled(ipow(P, std::max(A.r - q, 0) * A.n)), {}};
        if (q >= 1) u.y = random_form(q - 1);
        return u;
    }
};

}  // namespace

TEST_CASE("Frobenius lift and divided Frobenius") {
    RingSpec ring = RingSpec::one_var(5, false, 8);
    FrobLift f{ring};
    const DRElement x = form("3 + T + 2*T^2", ring);
    CHECK(f.apply(x) == form("3 + T^5 + 2*T^10", ring));
    // f(x) - x^5 = 5 y, and f(x) = x^5 mod 5
    DRElement x5 = DRElement::constant(1, 1);
    for (int k = 0; k < 5; ++k) x5 = wedge(x5, x);
    CHECK(f.apply(x) - x5 == f.y(x).scaled(5));
    CHECK(f.y(form("T", ring)).is_zero());
    CHECK(f.apply(form("T", ring).scaled(25)) == form("T^5", ring).scaled(25));
    CHECK(f.apply(wedge(x, form("T^2", ring))) == wedge(f.apply(x), f.apply(form("T^2", ring))));

    KatoContext ctx{ring, false};
    CHECK(divided_frobenius(ctx, 1, DRElement::constant(1, 5)) == DRElement::constant(1, 1));
    CHECK(divided_frobenius(ctx, 1, form("dT", ring)) == form("T^4*dT", ring));
    CHECK(divided_frobenius(ctx, 2, form("5*dT", ring)) == form("T^4*dT", ring));
    CHECK_THROWS_AS(divided_frobenius(ctx, 1, DRElement::constant(1, 1)), DomainError);
    CHECK_THROWS_AS(divided_frobenius(ctx, 1, form("5*T^2", ring)), WindowError);
    KatoContext trunc{ring, true};
    CHECK(divided_frobenius(trunc, 1, form("5*T^2", ring)).is_zero());

    // f_r d = d f_r
    for (const auto& m : omega_basis(ring, 0)) {
        const DRElement w = DRElement::monomial(m, 25);
        CHECK(divided_frobenius(trunc, 2, d(w)) == d(divided_frobenius(trunc, 2, w)));
    }
}

TEST_CASE("Kato cone differential and product") {
    RingSpec ring = RingSpec::one_var(5, false, 8);
    KatoContext ctx{ring, true};
    for (int r : {1, 2})
        for (int s : {1, 2}) {
            SyntomicModel A{ctx, r, 2}, B{ctx, s, 2};
            const SyntomicModel C = product_model(A, B);
            Sampler sa{A}, sb{B};
            for (int it = 0; it < 60; ++it) {
                const int q = static_cast<int>(sa.rng() % 3), q2 = static_cast<int>(sb.rng() % 2);
                KatoElement u = sa(q), v = sb(q2);
                CHECK(A.d(A.d(u)).is_zero());
                const KatoElement uv = kato_mul(A, u, B, v);
                CHECK(C.d(uv) == kato_mul(A, A.d(u), B, v) + kato_mul(A, u, B, B.d(v)).scaled(conv::sign(q)));
                CHECK(kato_mul(SyntomicModel{ctx, 0, 2}, SyntomicModel{ctx, 0, 2}.one(), A, u) == u);
                CHECK(kato_mul(A, u, SyntomicModel{ctx, 0, 2}, SyntomicModel{ctx, 0, 2}.one()) == u);
                if (r + s < 4) {
                    SyntomicModel Z{ctx, 1, 2};
                    Sampler sz{Z};
                    sz.rng.seed(static_cast<unsigned>(it));
                    KatoElement w = sz(static_cast<int>(sz.rng() % 2));
                    CHECK(kato_mul(C, uv, Z, w) == kato_mul(A, u, product_model(B, Z), kato_mul(B, v, Z, w)));
                }
            }
        }
    // Laurent degree-0 forms stay inside the window
    RingSpec lr = RingSpec::one_var(5, true, 8);
    SyntomicModel A{{lr, false}, 1, 2};
    KatoElement u{1, form("T^-1*dT", lr), form("7", lr)};
    CHECK(A.d(A.d(u)).is_zero());
    CHECK_THROWS_AS(A.d(KatoElement{0, form("25*T^2", lr), {}}), WindowError);
    CHECK_THROWS_AS(A.check(KatoElement{0, form("5", lr), {}}), DomainError);
}

TEST_CASE("Kato symbol") {
    RingSpec lr = RingSpec::one_var(5, true, 8);
    SyntomicModel S1{{lr, false}, 1, 2};
    KatoSymbol t = kato_symbol(S1, ResidueElement::monomial(5, 6, {1}, 1));
    CHECK(t.precision == 0);
    CHECK(t.u.x == form("T^-1*dT", lr));
    CHECK(t.u.y.is_zero());
    CHECK(S1.d(t.u).is_zero());

    // constant unit c: (0, p^{-1} log(c^{1-p}))
    KatoSymbol c = kato_symbol(S1, ResidueElement::constant(5, 6, 1, 2));
    CHECK(c.dlog.is_zero());
    ResidueElement c4 = ResidueElement::constant(5, 6, 1, 2).pow(4);
    ResidueElement inv = unit_inverse(c4, lr.laurent);
    CHECK(ResidueElement::from_form(c.b.scaled(5), 5, 5) == plog(inv).reduced(5));
    CHECK(S1.d(c.u).is_zero());

    // a = 1 + pT: (f_1 - 1) dlog a = db, modulo the working precision
    RingSpec pr = RingSpec::one_var(5, false, 8);
    SyntomicModel P1{{pr, true}, 1, 2};
    ResidueElement a = ResidueElement::constant(5, 8, 1, 1);
    a.add_term({1}, 5);
    KatoSymbol s = kato_symbol(P1, a);
    CHECK(s.precision == 7);
    const DRElement lhs = divided_frobenius(P1.ctx, 1, s.dlog) - s.dlog;
    CHECK((lhs - d(s.b)).valuation(pr.P()) >= 7);
    const KatoElement ds = P1.d(s.u);
    CHECK(std::min(ds.x.valuation(5), ds.y.valuation(5)) >= 7);
    CHECK_THROWS_AS(kato_symbol(P1, ResidueElement::monomial(5, 6, {1}, 1)), DomainError);
}

TEST_CASE("Bott class") {
    RingSpec lr = RingSpec::one_var(5, true, 8);
    SyntomicModel S1{{lr, false}, 1, 2};
    KatoPair b = bott_class(S1);
    CHECK(b.a.x == DRElement::constant(1, 25));
    CHECK(b.a.y.is_zero());
    CHECK(b.b.x.is_zero());
    CHECK(b.b.y == DRElement::constant(1, 4));
    CHECK(modp_d(S1, b).is_zero());
    SyntomicModel S3{{lr, false}, 1, 3};
    CHECK(bott_class(S3).b.y == DRElement::constant(1, 20));
    CHECK_THROWS_AS(bott_class(SyntomicModel{{lr, false}, 1, 1}), RangeError);
}

TEST_CASE("generators and the product lemma") {
    RingSpec ring = RingSpec::one_var(5, false, 10);
    KatoContext ctx{ring, true};
    const Int P = 5;
    const int n = 2;
    for (int r = 1; r <= 3; ++r) {
        SyntomicModel A{ctx, r, n};
        for (int i = 1; i <= std::min(r, 2); ++i)
            for (const auto& m : omega_basis(ring, i - 1))
                CHECK(modp_d(A, class_embedding(A, Family::forms, i, DRElement::monomial(m))).is_zero());
        for (int i = 0; i <= std::min(r - 1, 1); ++i)
            for (const auto& m : omega_basis(ring, i))
                CHECK(modp_d(A, class_embedding(A, Family::functions, i, DRElement::monomial(m))).is_zero());
    }
    SyntomicModel A{ctx, 1, n};
    CHECK_THROWS_AS(class_embedding(A, Family::forms, 2, DRElement::constant(1, 1)), RangeError);
    CHECK_THROWS_AS(class_embedding(A, Family::functions, 0, form("dT", ring)), DomainError);

    for (int r = 1; r <= 2; ++r)
        for (int s = 1; s <= 2; ++s) {
            SyntomicModel R{ctx, r, n}, S{ctx, s, n};
            for (int i = 0; i <= std::min(r - 1, 1); ++i)
                for (const auto& g : omega_basis(ring, i)) {
                    const DRElement gamma = DRElement::monomial(g, ipow(P, (r - i) * n - 1));
                    for (int j = 1; j <= std::min(s, 2); ++j)
                        for (const auto& a0 : omega_basis(ring, j - 1)) {
                            const DRElement alpha = DRElement::monomial(a0, ipow(P, s - j));
                            CHECK(lemma_forms(R, i, gamma, S, alpha).zero());
                        }
                    for (int j = 0; j <= std::min(s - 1, 1); ++j)
                        for (const auto& b0 : omega_basis(ring, j)) {
                            const DRElement beta = DRElement::monomial(b0, ipow(P, (s - j) * n - 1));
                            CHECK(lemma_functions(R, i, gamma, S, j, beta).zero());
                        }
                }
        }
}

TEST_CASE("class embedding is injective on the truncated model") {
    RingSpec ring = RingSpec::one_var(5, false, 12);
    for (int r = 1; r <= 3; ++r)
        for (const auto& e : class_embedding_check(ring, r, 2)) {
            CHECK(e.generators > 0);
            CHECK(e.injective());
        }
    CHECK_THROWS_AS(class_embedding_check(RingSpec::one_var(5, true, 4), 1, 2), DomainError);
}

TEST_CASE("multiplication table") {
    for (bool laurent : {true, false}) {
        RingSpec ring = RingSpec::one_var(5, laurent, 8);
        MultTable t = verify_multiplication_table(ring, 2, 1, 2);
        CHECK(t.passed());
        CHECK(t.symbol_precision == (laurent ? 0 : 7));
        std::size_t dlog_forms = 0, dlog_fun = 0;
        for (const auto& e : t.entries) {
            if (laurent) CHECK(e.exact);
            if (e.op == "dlog") (e.family == Family::forms ? dlog_forms : dlog_fun)++;
        }
        CHECK(dlog_forms > 0);
        CHECK(dlog_fun > 0);
        const std::string txt = render_text(t);
        CHECK(txt.find("FAIL") == std::string::npos);
        CHECK(render_csv(t).rfind("op,r,i,family", 0) == 0);
        CHECK(to_json(t)["passed"] == true);
    }
    RingSpec ring = RingSpec::one_var(5, true, 8);
    CHECK_THROWS_AS(verify_multiplication_table(ring, 2, 1, 4), RangeError);
    CHECK_THROWS_AS(verify_multiplication_table(ring, 3, 2, 2), DomainError);
}

TEST_CASE("sign controls break the table") {
    RingSpec ring = RingSpec::one_var(5, true, 8);
    {
        conv::ScopedConventions flip(-1, false);
        CHECK_FALSE(verify_multiplication_table(ring, 2, 1, 2).passed());
    }
    {
        conv::ScopedConventions flip(1, true);
        MultTable t = verify_multiplication_table(ring, 2, 1, 2);
        CHECK_FALSE(t.passed());
        CHECK(t.bott_cycle);
    }
    CHECK(verify_multiplication_table(ring, 2, 1, 2).passed());
}
