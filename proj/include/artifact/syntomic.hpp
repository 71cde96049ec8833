#pragma once

#include "artifact/derham.hpp"
#include "artifact/polyring.hpp"

#include <json.hpp>

namespace artifact {

// Frobenius lift T_i -> T_i^p on a (Laurent) polynomial ring.
struct FrobLift {
    RingSpec ring;

    DRElement apply(const DRElement& w) const;
    ResidueElement apply(const ResidueElement& x) const { return x.frobenius(); }
    // (f(x) - x^p) / p for a function x
    DRElement y(const DRElement& x) const;
};

// How forms leaving the window are handled. Laurent rings always raise WindowError.
// For polynomial rings `truncate` drops monomials with a graded degree above the window:
// they span a dg ideal stable under f_r, so identities hold exactly in the quotient.
struct KatoContext {
    RingSpec ring;
    bool truncate = false;

    DRElement fit(const DRElement& w) const;
};

// f_r = phi / p^r on I(r) Omega^k = p^{max(r-k,0)} Omega^k.
DRElement divided_frobenius(const KatoContext& ctx, int r, const DRElement& w);

// (x, y) in J(r,n) Omega^q + Omega^{q-1}
struct KatoElement {
    int q = 0;
    DRElement x, y;

    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    KatoElement operator+(const KatoElement& o) const;
    KatoElement operator-(const KatoElement& o) const;
    KatoElement scaled(const Int& c) const;
    bool operator==(const KatoElement& o) const { return q == o.q && x == o.x && y == o.y; }
    std::string to_string(const std::vector<std::string>& vars) const;
};

// Cone(J(r,n) Omega -> Omega, 1 - f_r)[-1], i.e. g = f_r and h = inclusion:
//   d(x,y) = (dx, s (f_r x - x) - dy),  s = conv::cone_sign
//   (x,y)(x',y') = (xx', (-1)^q f_r(x) y' + y x')
struct SyntomicModel {
    KatoContext ctx;
    int r = 1, n = 2;

    bool in_J(int q, const DRElement& x) const;
    void check(const KatoElement& u) const;
    KatoElement d(const KatoElement& u) const;
    KatoElement one() const;
};

KatoElement kato_mul(const SyntomicModel& A, const KatoElement& u, const SyntomicModel& B, const KatoElement& v);
SyntomicModel product_model(const SyntomicModel& A, const SyntomicModel& B);

// a + a' in S^i + S^{i+1} of the mod-p complex
struct KatoPair {
    KatoElement a, b;

    int degree() const { return a.q; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    KatoPair operator+(const KatoPair& o) const { return {a + o.a, b + o.b}; }
    KatoPair operator-(const KatoPair& o) const { return {a - o.a, b - o.b}; }
    KatoPair scaled(const Int& c) const { return {a.scaled(c), b.scaled(c)}; }
    bool operator==(const KatoPair& o) const { return a == o.a && b == o.b; }
    std::string to_string(const std::vector<std::string>& vars) const;
};

// d(a, a') = (da + p a', -da')
KatoPair modp_d(const SyntomicModel& A, const KatoPair& u);
KatoPair modp_mul(const SyntomicModel& A, const KatoPair& u, const SyntomicModel& B, const KatoPair& v);
// lift of a degree-i element to a pair with zero second slot
KatoPair as_pair(const KatoElement& u);

struct KatoSymbol {
    KatoElement u;        // (dlog a, b) in S(1,n)^1
    DRElement dlog, b;    // p b = log(f(a) a^{-p})
    int precision = 0;    // 0: exact; otherwise b and dlog are correct modulo p^precision
};
// a must be a unit; a = +-T^k is handled exactly, anything else through residue arithmetic.
KatoSymbol kato_symbol(const SyntomicModel& S1, const ResidueElement& a);

KatoPair bott_class(const SyntomicModel& S1);

// Images of the mod-p generators of the relative de Rham complex (M = 1).
//   forms, 1 <= i <= r, alpha in Omega^{i-1}:
//     (0, (1-f_r) p^{r-i+1} alpha) + (0, (1-f_r) p^{r-i} d alpha)
//   functions, 0 <= i <= r-1, beta in Omega^i:
//     (p^{(r-i)n} beta, 0) + (-p^{(r-i)n-1} d beta, (1-f_r) p^{(r-i)n-1} beta)
enum class Family { forms, functions };
std::string family_name(Family f);
KatoPair class_embedding(const SyntomicModel& A, Family f, int i, const DRElement& form);

// Residual of a claimed identity lhs = rhs + d(primitive). zero() means exact.
struct Residual {
    KatoPair value;
    bool zero() const { return value.is_zero(); }
    // v_p of the residual; ULONG_MAX when zero
    unsigned long valuation(const Int& p) const;
};

// Product identities for the generator images, gamma in p^{(r-i)n-1} Omega^i.
//   (i)  ((p gamma,0) + (-d gamma,(1-f_r) gamma)) ((0,(1-f_s) p alpha) + (0,(1-f_s) d alpha))
//        = (-1)^i d((0,0) + (0, f_r gamma (1-f_s) p alpha))
//   (ii) ((p gamma,0) + ...) ((p beta,0) + ...) = (p^2 gamma beta, 0) + (-p d(gamma beta), p (1-f_{r+s}) gamma beta)
Residual lemma_forms(const SyntomicModel& R, int i, const DRElement& gamma, const SyntomicModel& S,
                     const DRElement& alpha);
Residual lemma_functions(const SyntomicModel& R, int i, const DRElement& gamma, const SyntomicModel& S, int j,
                         const DRElement& beta);

struct MultEntry {
    std::string op;  // "dlog" or "bott"
    int r = 1, i = 0;
    Family family = Family::forms;
    std::string basis;
    std::string expected;  // "-dlog", "+dlog", "id", "0"
    bool source_cycle = false, target_cycle = false;
    bool exact = false;    // residual zero
    unsigned long residual_valuation = 0;
    std::string residual;
    bool ok = false;
};

struct MultTableOptions {
    // unit for the dlog rows; default T on Laurent rings, 1 + pT otherwise
    std::optional<ResidueElement> unit;
    // precision of the residue arithmetic behind b when the symbol is not exact
    int precision = 8;
    // a non-exact residual passes when its valuation reaches this bound
    int required_valuation = 4;
};

struct MultTable {
    long p = 5;
    int L = 2, M = 1, r_max = 1;
    std::string unit;
    int symbol_precision = 0;
    bool symbol_cycle = false, bott_cycle = false;
    std::vector<MultEntry> entries;
    bool passed() const;
    std::size_t failures() const;
};

MultTable verify_multiplication_table(const RingSpec& ring, int L, int M, int r_max,
                                      const MultTableOptions& opts = {});

nlohmann::json to_json(const MultTable& t);
// one line per arrow family
std::string render_text(const MultTable& t);
std::string render_csv(const MultTable& t);

// Finite quotient of S(r,n) by forms of graded degree > window (polynomial rings only).
// The independence of generator classes here implies independence in S(r,n).
struct TruncatedKato {
    SyntomicModel model;
    std::map<int, std::vector<std::pair<bool, FormMonomial>>> basis;  // (is y-slot, monomial)
    FreeComplex complex;
    IntVec coords(const KatoElement& u) const;
};
TruncatedKato truncated_kato(const SyntomicModel& A);
// rank of the classes of the generators in degree i inside H^i(S_trunc (x)^L Z/p)
struct EmbeddingCheck {
    int r = 1, i = 0;
    std::size_t generators = 0, rank = 0;
    bool all_cycles = true;
    bool injective() const { return all_cycles && rank == generators; }
};
std::vector<EmbeddingCheck> class_embedding_check(const RingSpec& ring, int r, int n);

}  // namespace artifact
