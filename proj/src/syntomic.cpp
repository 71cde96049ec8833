#include "artifact/syntomic.hpp"

#include "artifact/conventions.hpp"

#include <climits>
#include <sstream>

namespace artifact {

namespace {

DRElement power(const DRElement& x, long e, std::size_t nvars) {
    DRElement r = DRElement::constant(nvars, 1);
    for (long k = 0; k < e; ++k) r = wedge(r, x);
    return r;
}

DRElement exact_div(const DRElement& w, const Int& q, const char* what) {
    DRElement out;
    for (const auto& [m, c] : w.terms) {
        if (!mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) throw StructuralError(std::string(what) + ": inexact division");
        Int v;
        mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
        out.add(m, v);
    }
    return out;
}

int twist(int r, int q) { return std::max(r - q, 0); }

DRElement reduce_mod(const DRElement& w, const Int& N) {
    DRElement out;
    for (const auto& [m, c] : w.terms) out.add(m, mod_floor(c, N));
    return out;
}

}  // namespace

DRElement FrobLift::apply(const DRElement& w) const {
    const long p = ring.p;
    DRElement out;
    for (const auto& [m, c] : w.terms) {
        // phi(T^e dT_S) = p^{|S|} T^{pe + (p-1) 1_S} dT_S
        FormMonomial f = m;
        for (auto& e : f.exps) e *= static_cast<int>(p);
        for (int v : m.dset) f.exps[v] += static_cast<int>(p - 1);
        out.add(f, c * ipow(ring.P(), m.degree()));
    }
    return out;
}

DRElement FrobLift::y(const DRElement& x) const {
    for (const auto& kv : x.terms)
        if (!kv.first.dset.empty()) throw DomainError("FrobLift::y: expected a function");
    return exact_div(apply(x) - power(x, ring.p, ring.nvars()), ring.P(), "FrobLift::y");
}

DRElement KatoContext::fit(const DRElement& w) const {
    if (!truncate) {
        check_window(ring, w);
        return w;
    }
    for (std::size_t v = 0; v < ring.nvars(); ++v)
        if (ring.laurent[v]) throw DomainError("truncation needs a polynomial ring");
    DRElement out;
    for (const auto& [m, c] : w.terms)
        if (ring.in_window(m.graded())) out.add(m, c);
    return out;
}

DRElement divided_frobenius(const KatoContext& ctx, int r, const DRElement& w) {
    const Int P = ctx.ring.P();
    for (const auto& [m, c] : w.terms)
        if (artifact::valuation(c, P) < static_cast<unsigned long>(twist(r, m.degree())))
            throw DomainError("divided_frobenius: " + m.to_string(ctx.ring.vars) + " is not in I(" + std::to_string(r) +
                              ")");
    FrobLift f{ctx.ring};
    DRElement phi = f.apply(w);
    DRElement out;
    const Int pr = ipow(P, r);
    for (const auto& [m, c] : phi.terms) {
        if (!mpz_divisible_p(c.get_mpz_t(), pr.get_mpz_t())) throw StructuralError("divided_frobenius: inexact division");
        Int v;
        mpz_divexact(v.get_mpz_t(), c.get_mpz_t(), pr.get_mpz_t());
        out.add(m, v);
    }
    return ctx.fit(out);
}

KatoElement KatoElement::operator+(const KatoElement& o) const {
    if (is_zero()) return {o.q, o.x, o.y};
    if (o.is_zero()) return *this;
    if (q != o.q) throw StructuralError("KatoElement: adding elements of different degrees");
    return {q, x + o.x, y + o.y};
}

KatoElement KatoElement::operator-(const KatoElement& o) const { return *this + o.scaled(-1); }

KatoElement KatoElement::scaled(const Int& c) const { return {q, x.scaled(c), y.scaled(c)}; }

std::string KatoElement::to_string(const std::vector<std::string>& vars) const {
    return "(" + x.to_string(vars) + ", " + y.to_string(vars) + ")";
}

std::string KatoPair::to_string(const std::vector<std::string>& vars) const {
    return a.to_string(vars) + " + " + b.to_string(vars);
}

bool SyntomicModel::in_J(int q, const DRElement& x) const {
    const unsigned long need = static_cast<unsigned long>(twist(r, q) * n);
    return x.is_zero() || x.valuation(ctx.ring.P()) >= need;
}

void SyntomicModel::check(const KatoElement& u) const {
    if (!u.x.is_zero() && u.x.form_degree() != u.q) throw StructuralError("KatoElement: x has the wrong form degree");
    if (!u.y.is_zero() && u.y.form_degree() != u.q - 1) throw StructuralError("KatoElement: y has the wrong form degree");
    if (!in_J(u.q, u.x))
        throw DomainError("KatoElement: x is not in J(" + std::to_string(r) + "," + std::to_string(n) + ")");
}

KatoElement SyntomicModel::d(const KatoElement& u) const {
    check(u);
    const DRElement gx = divided_frobenius(ctx, r, u.x) - u.x;
    return {u.q + 1, ctx.fit(artifact::d(u.x)), ctx.fit(gx.scaled(conv::cone_sign.load()) - artifact::d(u.y))};
}

KatoElement SyntomicModel::one() const { return {0, DRElement::constant(ctx.ring.nvars(), 1), DRElement()}; }

SyntomicModel product_model(const SyntomicModel& A, const SyntomicModel& B) {
    if (A.n != B.n) throw DomainError("kato product: levels differ");
    return {A.ctx, A.r + B.r, A.n};
}

KatoElement kato_mul(const SyntomicModel& A, const KatoElement& u, const SyntomicModel& B, const KatoElement& v) {
    A.check(u);
    B.check(v);
    const SyntomicModel C = product_model(A, B);
    if (C.r >= A.ctx.ring.p) throw RangeError("kato product: twist r + s must stay below p");
    const DRElement x = wedge(u.x, v.x);
    const DRElement y = wedge(divided_frobenius(A.ctx, A.r, u.x), v.y).scaled(conv::sign(u.q)) + wedge(u.y, v.x);
    return {u.q + v.q, A.ctx.fit(x), A.ctx.fit(y)};
}

KatoPair modp_d(const SyntomicModel& A, const KatoPair& u) {
    const Int P = A.ctx.ring.P();
    KatoElement da = A.d(u.a);
    KatoElement db = A.d(u.b);
    KatoElement first{u.a.q + 1, da.x + u.b.x.scaled(P), da.y + u.b.y.scaled(P)};
    return {first, db.scaled(-1)};
}

KatoPair modp_mul(const SyntomicModel& A, const KatoPair& u, const SyntomicModel& B, const KatoPair& v) {
    const int i = u.a.q, j = v.a.q;
    KatoElement first = kato_mul(A, u.a, B, v.a);
    KatoElement ab = kato_mul(A, u.b, B, v.a), ba = kato_mul(A, u.a, B, v.b);
    KatoElement second = conv::modp_product_alt ? ab.scaled(conv::sign(j)) + ba : ab + ba.scaled(conv::sign(i));
    second.q = i + j + 1;
    return {first, second};
}

KatoPair as_pair(const KatoElement& u) { return {u, {u.q + 1, {}, {}}}; }

KatoSymbol kato_symbol(const SyntomicModel& S1, const ResidueElement& a) {
    if (S1.r != 1) throw DomainError("kato_symbol: the symbol lives in twist 1");
    const RingSpec& ring = S1.ctx.ring;
    const std::size_t nv = ring.nvars();
    KatoSymbol s;
    const Int N = a.modulus();
    if (a.terms().size() == 1) {
        const auto& [e, c] = *a.terms().begin();
        if (c == 1 || c == N - 1) {
            for (std::size_t v = 0; v < nv; ++v) {
                if (e[v] == 0) continue;
                if (!ring.laurent[v]) throw DomainError("kato_symbol: not a unit");
                FormMonomial m{std::vector<int>(nv, 0), {static_cast<int>(v)}};
                m.exps[v] = -1;
                s.dlog.add(m, e[v]);
            }
            s.u = {1, S1.ctx.fit(s.dlog), {}};
            return s;
        }
    }
    ResidueElement inv = unit_inverse(a, ring.laurent);
    s.dlog = S1.ctx.fit(reduce_mod(wedge(inv.to_form(), artifact::d(a.to_form())), N));
    ResidueElement u = a.frobenius() * inv.pow(static_cast<unsigned long>(ring.p));
    ResidueElement lg = plog(u);
    s.b = S1.ctx.fit(exact_div(lg.to_form(), ring.P(), "kato_symbol"));
    s.precision = a.prec() - 1;
    s.u = {1, s.dlog, s.b};
    return s;
}

KatoPair bott_class(const SyntomicModel& S1) {
    const int n = S1.n;
    if (S1.r != 1) throw DomainError("bott_class: the class lives in twist 1");
    if (n < 2) throw RangeError("bott_class: needs n >= 2");
    if (S1.ctx.ring.p == 2) throw RangeError("bott_class: p must be odd");
    const Int P = S1.ctx.ring.P();
    const std::size_t nv = S1.ctx.ring.nvars();
    const DRElement g = DRElement::constant(nv, ipow(P, n - 1));
    KatoElement a{0, DRElement::constant(nv, ipow(P, n)), {}};
    KatoElement b{1, {}, g - divided_frobenius(S1.ctx, 1, g)};
    return {a, b};
}

std::string family_name(Family f) { return f == Family::forms ? "forms" : "functions"; }

KatoPair class_embedding(const SyntomicModel& A, Family f, int i, const DRElement& form) {
    const Int P = A.ctx.ring.P();
    const int r = A.r, n = A.n;
    auto one_minus_f = [&](const DRElement& w) { return A.ctx.fit(w - divided_frobenius(A.ctx, r, w)); };
    if (f == Family::forms) {
        if (i < 1 || i > r) throw RangeError("class_embedding: forms family needs 1 <= i <= r");
        if (!form.is_zero() && form.form_degree() != i - 1) throw DomainError("class_embedding: alpha must be an (i-1)-form");
        KatoElement a{i, {}, one_minus_f(form.scaled(ipow(P, r - i + 1)))};
        KatoElement b{i + 1, {}, one_minus_f(artifact::d(form).scaled(ipow(P, r - i)))};
        return {a, b};
    }
    if (i < 0 || i > r - 1) throw RangeError("class_embedding: functions family needs 0 <= i <= r-1");
    if (!form.is_zero() && form.form_degree() != i) throw DomainError("class_embedding: beta must be an i-form");
    const int k = (r - i) * n;
    KatoElement a{i, A.ctx.fit(form.scaled(ipow(P, k))), {}};
    KatoElement b{i + 1, A.ctx.fit(artifact::d(form).scaled(-ipow(P, k - 1))), one_minus_f(form.scaled(ipow(P, k - 1)))};
    return {a, b};
}

unsigned long Residual::valuation(const Int& p) const {
    return std::min({value.a.x.valuation(p), value.a.y.valuation(p), value.b.x.valuation(p), value.b.y.valuation(p)});
}

namespace {

KatoPair gamma_pair(const SyntomicModel& R, int i, const DRElement& gamma) {
    const Int P = R.ctx.ring.P();
    return {{i, gamma.scaled(P), {}},
            {i + 1, R.ctx.fit(-artifact::d(gamma)), R.ctx.fit(gamma - divided_frobenius(R.ctx, R.r, gamma))}};
}

KatoPair prim(int q, const DRElement& w) { return {{q, {}, {}}, {q + 1, {}, w}}; }

}  // namespace

Residual lemma_forms(const SyntomicModel& R, int i, const DRElement& gamma, const SyntomicModel& S,
                     const DRElement& alpha) {
    const Int P = R.ctx.ring.P();
    const int j = alpha.is_zero() ? 1 : alpha.form_degree() + 1;
    const SyntomicModel T = product_model(R, S);
    auto one_minus = [&](const DRElement& w) { return S.ctx.fit(w - divided_frobenius(S.ctx, S.r, w)); };
    KatoPair lhs_b{{j, {}, one_minus(alpha.scaled(P))}, {j + 1, {}, one_minus(artifact::d(alpha))}};
    KatoPair lhs = modp_mul(R, gamma_pair(R, i, gamma), S, lhs_b);
    DRElement w = wedge(divided_frobenius(R.ctx, R.r, gamma), one_minus(alpha.scaled(P)));
    KatoPair rhs = modp_d(T, prim(i + j - 1, R.ctx.fit(w))).scaled(conv::sign(i));
    return {lhs - rhs};
}

Residual lemma_functions(const SyntomicModel& R, int i, const DRElement& gamma, const SyntomicModel& S, int j,
                         const DRElement& beta) {
    const Int P = R.ctx.ring.P();
    const SyntomicModel T = product_model(R, S);
    KatoPair lhs = modp_mul(R, gamma_pair(R, i, gamma), S, gamma_pair(S, j, beta));
    const DRElement gb = R.ctx.fit(wedge(gamma, beta));
    KatoPair rhs{{i + j, gb.scaled(P * P), {}},
                 {i + j + 1, R.ctx.fit(artifact::d(gb).scaled(-P)),
                  R.ctx.fit((gb - divided_frobenius(T.ctx, T.r, gb)).scaled(P))}};
    return {lhs - rhs};
}

bool MultTable::passed() const { return symbol_cycle && bott_cycle && !entries.empty() && failures() == 0; }

std::size_t MultTable::failures() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const MultEntry& e) { return !e.ok; }));
}

namespace {

std::vector<FormMonomial> safe_basis(const KatoContext& ctx, int k) {
    std::vector<FormMonomial> out;
    if (k < 0) return out;
    for (const auto& m : omega_basis(ctx.ring, k)) {
        bool fits = true;
        for (int g : m.graded())
            if (std::abs(g) * ctx.ring.p > ctx.ring.window) fits = false;
        if (fits || ctx.truncate) out.push_back(m);
    }
    return out;
}

bool is_modp_cycle(const SyntomicModel& A, const KatoPair& u) { return modp_d(A, u).is_zero(); }

}  // namespace

MultTable verify_multiplication_table(const RingSpec& ring, int L, int M, int r_max, const MultTableOptions& opts) {
    ring.validate();
    if (M != 1) throw DomainError("verify_multiplication_table: the Kato-cone side is modeled for M = 1");
    if (L <= M) throw DomainError("verify_multiplication_table: need L > M");
    if (r_max < 1 || r_max + 1 >= ring.p) throw RangeError("verify_multiplication_table: need 1 <= r_max and r_max + 1 < p");
    bool all_laurent = std::all_of(ring.laurent.begin(), ring.laurent.end(), [](bool b) { return b; });
    bool any_laurent = std::any_of(ring.laurent.begin(), ring.laurent.end(), [](bool b) { return b; });
    KatoContext ctx{ring, !any_laurent};
    const std::size_t nv = ring.nvars();

    ResidueElement unit;
    if (opts.unit) unit = *opts.unit;
    else if (all_laurent) unit = ResidueElement::monomial(ring.p, opts.precision, std::vector<int>(nv, 1), 1);
    else {
        unit = ResidueElement::constant(ring.p, opts.precision, nv, 1);
        unit.add_term(std::vector<int>(nv, 1), ring.P());
    }

    MultTable t;
    t.p = ring.p;
    t.L = L;
    t.M = M;
    t.r_max = r_max;
    t.unit = unit.to_form().to_string(ring.vars);
    const SyntomicModel S1{ctx, 1, L};
    const KatoSymbol sym = kato_symbol(S1, unit);
    t.symbol_precision = sym.precision;
    const KatoElement dsym = S1.d(sym.u);
    const unsigned long need = static_cast<unsigned long>(opts.required_valuation);
    t.symbol_cycle = dsym.is_zero() || (sym.precision > 0 && std::min(dsym.x.valuation(ring.P()), dsym.y.valuation(ring.P())) >= need);
    const KatoPair bott = bott_class(S1);
    t.bott_cycle = is_modp_cycle(S1, bott);
    const KatoPair symp = as_pair(sym.u);
    const Int P = ring.P();

    auto finish = [&](MultEntry& e, const SyntomicModel& B, const KatoPair& value, bool inexact_ok) {
        Residual res{value};
        e.exact = res.zero();
        e.residual_valuation = res.valuation(P);
        if (!e.exact) e.residual = value.to_string(ring.vars);
        e.ok = e.source_cycle && e.target_cycle && (e.exact || (inexact_ok && e.residual_valuation >= need));
        (void)B;
        t.entries.push_back(std::move(e));
    };

    for (int r = 1; r <= r_max; ++r) {
        const SyntomicModel A{ctx, r, L}, B{ctx, r + 1, L};
        for (int i = 1; i <= r; ++i)
            for (const auto& m : safe_basis(ctx, i - 1)) {
                const DRElement a0 = DRElement::monomial(m);
                const KatoPair gen = class_embedding(A, Family::forms, i, a0);
                const DRElement alpha = a0.scaled(ipow(P, r - i));
                {
                    MultEntry e{"dlog", r, i, Family::forms, m.to_string(ring.vars), "-dlog", false, false, false, 0, {}, false};
                    const KatoPair tgt = class_embedding(B, Family::forms, i + 1, ctx.fit(wedge(sym.dlog, a0)).scaled(-1));
                    e.source_cycle = is_modp_cycle(A, gen);
                    e.target_cycle = is_modp_cycle(B, tgt);
                    const KatoPair p = prim(i, ctx.fit(wedge(d(sym.b), alpha)).scaled(-1));
                    finish(e, B, modp_mul(S1, symp, A, gen) - tgt - modp_d(B, p), sym.precision > 0);
                }
                {
                    MultEntry e{"bott", r, i, Family::forms, m.to_string(ring.vars), "0", false, false, false, 0, {}, false};
                    e.source_cycle = is_modp_cycle(A, gen);
                    e.target_cycle = true;
                    const DRElement g = DRElement::constant(nv, ipow(P, L - 1));
                    const DRElement w =
                        wedge(divided_frobenius(ctx, 1, g), ctx.fit(alpha.scaled(P) - divided_frobenius(ctx, r, alpha.scaled(P))));
                    finish(e, B, modp_mul(S1, bott, A, gen) - modp_d(B, prim(i - 1, ctx.fit(w))), false);
                }
            }
        for (int i = 0; i <= r - 1; ++i)
            for (const auto& m : safe_basis(ctx, i)) {
                const DRElement b0 = DRElement::monomial(m);
                const KatoPair gen = class_embedding(A, Family::functions, i, b0);
                const DRElement beta = b0.scaled(ipow(P, (r - i) * L - 1));
                {
                    MultEntry e{"dlog", r, i, Family::functions, m.to_string(ring.vars), "+dlog", false, false, false, 0, {}, false};
                    const KatoPair tgt = class_embedding(B, Family::functions, i + 1, ctx.fit(wedge(sym.dlog, b0)));
                    e.source_cycle = is_modp_cycle(A, gen);
                    e.target_cycle = is_modp_cycle(B, tgt);
                    const KatoPair p = prim(i, ctx.fit(wedge(sym.b, beta)));
                    finish(e, B, modp_mul(S1, symp, A, gen) - tgt - modp_d(B, p), sym.precision > 0);
                }
                {
                    MultEntry e{"bott", r, i, Family::functions, m.to_string(ring.vars), "id", false, false, false, 0, {}, false};
                    const KatoPair tgt = class_embedding(B, Family::functions, i, b0);
                    e.source_cycle = is_modp_cycle(A, gen);
                    e.target_cycle = is_modp_cycle(B, tgt);
                    finish(e, B, modp_mul(S1, bott, A, gen) - tgt, false);
                }
            }
    }
    return t;
}

nlohmann::json to_json(const MultTable& t) {
    nlohmann::json j{{"p", t.p}, {"L", t.L}, {"M", t.M}, {"r_max", t.r_max}, {"unit", t.unit},
                     {"symbol_precision", t.symbol_precision}, {"symbol_cycle", t.symbol_cycle},
                     {"bott_cycle", t.bott_cycle}, {"passed", t.passed()}, {"failures", t.failures()}};
    j["entries"] = nlohmann::json::array();
    for (const auto& e : t.entries) {
        nlohmann::json x{{"op", e.op}, {"r", e.r}, {"i", e.i}, {"family", family_name(e.family)},
                         {"basis", e.basis}, {"expected", e.expected}, {"source_cycle", e.source_cycle},
                         {"target_cycle", e.target_cycle}, {"exact", e.exact}, {"ok", e.ok}};
        if (!e.exact) {
            x["residual"] = e.residual;
            x["residual_valuation"] = e.residual_valuation;
        }
        j["entries"].push_back(x);
    }
    return j;
}

namespace {

struct Arrow {
    std::string op, family, expected;
    int r, i;
    std::size_t count = 0, ok = 0;
};

std::vector<Arrow> arrows(const MultTable& t) {
    std::vector<Arrow> out;
    for (const auto& e : t.entries) {
        auto it = std::find_if(out.begin(), out.end(), [&](const Arrow& a) {
            return a.op == e.op && a.family == family_name(e.family) && a.r == e.r && a.i == e.i;
        });
        if (it == out.end()) {
            out.push_back({e.op, family_name(e.family), e.expected, e.r, e.i});
            it = out.end() - 1;
        }
        ++it->count;
        if (e.ok) ++it->ok;
    }
    return out;
}

std::string summand(const Arrow& a) {
    const int k = a.family == "forms" ? a.i - 1 : a.i;
    return "Omega^" + std::to_string(k);
}

std::string target(const Arrow& a) {
    if (a.op == "bott") return a.expected == "0" ? "0" : "H^" + std::to_string(a.i) + "(S(" + std::to_string(a.r + 1) + "))";
    return "H^" + std::to_string(a.i + 1) + "(S(" + std::to_string(a.r + 1) + "))";
}

}  // namespace

std::string render_text(const MultTable& t) {
    std::ostringstream os;
    os << "multiplication table p=" << t.p << " L=" << t.L << " M=" << t.M << " unit=" << t.unit
       << (t.symbol_precision ? " (mod p^" + std::to_string(t.symbol_precision) + ")" : std::string(" (exact)")) << "\n";
    os << "symbol cycle: " << (t.symbol_cycle ? "yes" : "no") << ", bott cycle: " << (t.bott_cycle ? "yes" : "no") << "\n";
    for (const auto& a : arrows(t)) {
        os << (a.op == "dlog" ? "dlog  " : "bott  ") << "H^" << a.i << "(S(" << a.r << ")) " << a.family << " "
           << summand(a) << " -> " << target(a) << "  [" << a.expected << "]  " << a.ok << "/" << a.count << " "
           << (a.ok == a.count ? "pass" : "FAIL") << "\n";
    }
    return os.str();
}

std::string render_csv(const MultTable& t) {
    std::ostringstream os;
    os << "op,r,i,family,summand,target,expected,checks,passed\n";
    for (const auto& a : arrows(t))
        os << a.op << "," << a.r << "," << a.i << "," << a.family << "," << summand(a) << "," << target(a) << ","
           << a.expected << "," << a.count << "," << (a.ok == a.count ? "true" : "false") << "\n";
    return os.str();
}

IntVec TruncatedKato::coords(const KatoElement& u) const {
    auto found_q = basis.find(u.q);
    if (found_q == basis.end()) {
        if (!u.is_zero()) throw StructuralError("truncated_kato: element outside the truncated basis");
        return {};
    }
    const auto& b = found_q->second;
    IntVec out(b.size());
    const Int scale = ipow(model.ctx.ring.P(), twist(model.r, u.q) * model.n);
    for (std::size_t k = 0; k < b.size(); ++k) {
        const auto& w = b[k].first ? u.y : u.x;
        auto it = w.terms.find(b[k].second);
        if (it == w.terms.end()) continue;
        if (b[k].first) out[k] = it->second;
        else {
            if (!mpz_divisible_p(it->second.get_mpz_t(), scale.get_mpz_t()))
                throw StructuralError("truncated_kato: x outside J");
            mpz_divexact(out[k].get_mpz_t(), it->second.get_mpz_t(), scale.get_mpz_t());
        }
    }
    std::size_t found = 0;
    for (const auto* w : {&u.x, &u.y}) found += w->terms.size();
    std::size_t placed = 0;
    for (const auto& c : out)
        if (c != 0) ++placed;
    if (placed != found) throw StructuralError("truncated_kato: element outside the truncated basis");
    return out;
}

TruncatedKato truncated_kato(const SyntomicModel& A0) {
    SyntomicModel A = A0;
    A.ctx.truncate = true;
    TruncatedKato t{A, {}, {}};
    const RingSpec& ring = A.ctx.ring;
    const int top = static_cast<int>(ring.nvars()) + 1;
    const Int P = ring.P();
    std::map<int, std::vector<std::string>> labels;
    for (int q = 0; q <= top; ++q) {
        auto& b = t.basis[q];
        for (const auto& m : omega_basis(ring, q)) {
            b.push_back({false, m});
            labels[q].push_back("x|" + m.to_string(ring.vars));
        }
        if (q >= 1)
            for (const auto& m : omega_basis(ring, q - 1)) {
                b.push_back({true, m});
                labels[q].push_back("y|" + m.to_string(ring.vars));
            }
    }
    std::map<int, IntMatrix> diffs;
    for (int q = 0; q < top; ++q) {
        const auto& b = t.basis[q];
        std::vector<IntVec> cols;
        for (const auto& [is_y, m] : b) {
            KatoElement u{q, {}, {}};
            if (is_y) u.y = DRElement::monomial(m);
            else u.x = DRElement::monomial(m, ipow(P, twist(A.r, q) * A.n));
            cols.push_back(t.coords(A.d(u)));
        }
        diffs[q] = IntMatrix::from_columns(t.basis[q + 1].size(), cols);
    }
    t.complex = FreeComplex(labels, diffs);
    return t;
}

std::vector<EmbeddingCheck> class_embedding_check(const RingSpec& ring, int r, int n) {
    for (bool l : ring.laurent)
        if (l) throw DomainError("class_embedding_check: needs a polynomial ring");
    if (r < 1 || r >= ring.p) throw RangeError("class_embedding_check: need 1 <= r < p");
    const KatoContext ctx{ring, true};
    const SyntomicModel A{ctx, r, n};
    const TruncatedKato tk = truncated_kato(A);
    const FreeComplex Mp = mod_p_complex(tk.complex, ring.P());
    std::vector<EmbeddingCheck> out;
    KatoContext strict{ring, false};
    for (int i = 0; i <= r && i <= static_cast<int>(ring.nvars()) + 1; ++i) {
        EmbeddingCheck e{r, i};
        std::vector<IntVec> vecs;
        auto add = [&](const KatoPair& g) {
            IntVec v = tk.coords(g.a);
            IntVec w = tk.coords(g.b);
            v.insert(v.end(), w.begin(), w.end());
            if (!is_cycle(Mp, i, v)) e.all_cycles = false;
            vecs.push_back(std::move(v));
        };
        if (i >= 1)
            for (const auto& m : safe_basis(strict, i - 1)) add(class_embedding(A, Family::forms, i, DRElement::monomial(m)));
        if (i <= r - 1)
            for (const auto& m : safe_basis(strict, i)) add(class_embedding(A, Family::functions, i, DRElement::monomial(m)));
        e.generators = vecs.size();
        if (e.all_cycles && !vecs.empty()) {
            AbGroupData h = homology(Mp, i);
            std::vector<IntVec> cls;
            for (const auto& v : vecs) cls.push_back(h.classify(v));
            e.rank = rank_mod_p(IntMatrix::from_columns(h.generators(), cls), ring.P());
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace artifact
