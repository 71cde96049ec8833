#include "artifact/hkr.hpp"

#include "artifact/conventions.hpp"

#include <algorithm>

namespace artifact {

std::vector<CdgaMonomial> c_basis(const RingSpec& ring, const Graded& piece, int n) {
    std::vector<CdgaMonomial> out;
    for (int m = 0; 2 * m <= n; ++m)
        for (int j = 1; j >= 0; --j) {
            const int i = n - j - 2 * m;
            for (const auto& a : omega_piece(ring, i, piece)) out.push_back({a, j, m});
        }
    return out;
}

IntMatrix op_matrix(const std::vector<CdgaMonomial>& from, const std::vector<CdgaMonomial>& to, const CdgaOp& op) {
    std::map<CdgaMonomial, std::size_t> idx;
    for (std::size_t k = 0; k < to.size(); ++k) idx[to[k]] = k;
    IntMatrix A(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j)
        for (const auto& [x, c] : op(CdgaElement::monomial(from[j])).terms) {
            auto it = idx.find(x);
            if (it == idx.end()) throw StructuralError("op_matrix: image term outside the target basis");
            A(it->second, j) = c;
        }
    return A;
}

const std::vector<CdgaMonomial>& CPiece::b(int n) const {
    static const std::vector<CdgaMonomial> none;
    auto it = basis.find(n);
    return it == basis.end() ? none : it->second;
}

std::size_t CPiece::offset(int n, int i) const {
    std::size_t o = 0;
    for (int k = 0; k < i; ++k) o += b(n - 2 * k).size();
    return o;
}

std::size_t CPiece::index(int n, const CdgaMonomial& x) const {
    const auto& v = b(n);
    auto it = std::find(v.begin(), v.end(), x);
    if (it == v.end()) throw StructuralError("CPiece::index: monomial not in C_" + std::to_string(n));
    return static_cast<std::size_t>(it - v.begin());
}

namespace {

void require_zero(const IntMatrix& A, const std::vector<CdgaMonomial>& from, const RingSpec& ring,
                  const std::string& what) {
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (A(i, j) != 0)
                throw StructuralError("operator identity " + what + " fails on " + from[j].to_string(ring.vars));
}

std::vector<std::string> mono_labels(const std::vector<CdgaMonomial>& b, const RingSpec& ring, const std::string& pre) {
    std::vector<std::string> out;
    for (const auto& x : b) out.push_back(pre + x.to_string(ring.vars));
    return out;
}

std::size_t cc_rank(const CPiece& c, int n) { return n < 0 || n > c.N ? 0 : c.CC.rank(-n); }
std::size_t c_rank(const CPiece& c, int n) { return n < 0 || n > c.N ? 0 : c.b(n).size(); }

// blockwise assembly of bold D or D' from per-summand operators
IntMatrix assemble_cc(const CPiece& c, int n, const std::map<int, IntMatrix>& down, const std::map<int, IntMatrix>& up) {
    IntMatrix A(cc_rank(c, n - 1), cc_rank(c, n));
    for (int i = 0; 2 * i <= n; ++i) {
        const int s = n - 2 * i;
        if (s - 1 >= 0 && 2 * i <= n - 1) A.set_block(c.offset(n - 1, i), c.offset(n, i), down.at(s));
        if (i >= 1) A.set_block(c.offset(n - 1, i - 1), c.offset(n, i), up.at(s));
    }
    return A;
}

// summand i of CC_n to summand i + shift of CC_{n + 2 shift}
IntMatrix cc_move(const CPiece& c, int n, int shift) {
    const int t = n + 2 * shift;
    IntMatrix A(cc_rank(c, t), cc_rank(c, n));
    if (A.rows() == 0 || A.cols() == 0) return A;
    for (int i = 0; 2 * i <= n; ++i) {
        const int k = i + shift;
        if (k < 0 || 2 * k > t) continue;
        const std::size_t sz = c.b(n - 2 * i).size();
        A.set_block(c.offset(t, k), c.offset(n, i), IntMatrix::identity(sz));
    }
    return A;
}

}  // namespace

CPiece build_c_piece(const RingSpec& ring, const Graded& piece, int L, int N) {
    CPiece c;
    c.ring = ring;
    c.piece = piece;
    c.L = L;
    c.N = N;
    for (int n = 0; n <= N + 1; ++n) c.basis[n] = c_basis(ring, piece, n);
    const Int ell = c.ell();
    auto delta = [&](const CdgaElement& x) { return cdga_delta(x, ell); };
    auto sdelta = [&](const CdgaElement& x) { return cdga_norm_sign(cdga_delta(x, ell)); };
    std::map<int, IntMatrix> D, SD, B, dd, R;
    for (int n = 0; n <= N + 1; ++n) {
        R[n] = op_matrix(c.b(n), c.b(n), cdga_rho);
        if (n >= 1) {
            D[n] = op_matrix(c.b(n), c.b(n - 1), delta);
            SD[n] = op_matrix(c.b(n), c.b(n - 1), sdelta);
        }
        if (n <= N) {
            B[n] = op_matrix(c.b(n), c.b(n + 1), cdga_B);
            dd[n] = op_matrix(c.b(n), c.b(n + 1), cdga_d);
        }
    }
    for (int n = 0; n <= N; ++n) {
        const auto& bn = c.b(n);
        if (n >= 2) require_zero(D[n - 1] * D[n], bn, ring, "delta^2 = 0");
        if (n + 2 <= N + 1) {
            require_zero(B[n + 1] * B[n], bn, ring, "B^2 = 0");
            require_zero(dd[n + 1] * dd[n], bn, ring, "d^2 = 0");
        }
        IntMatrix dB = D[n + 1] * B[n];
        if (n >= 1) dB = dB + B[n - 1] * D[n];
        require_zero(dB, bn, ring, "delta B + B delta = 0");
        require_zero(B[n] * R[n] - R[n + 1] * dd[n], bn, ring, "B rho = rho d");
        if (n >= 1) {
            require_zero(dd[n - 1] * D[n] - D[n + 1] * dd[n], bn, ring, "d delta = delta d");
            require_zero(D[n] * R[n] - R[n - 1] * SD[n], bn, ring, "delta rho = rho (-1)^||.|| delta");
        }
    }

    std::map<int, std::vector<std::string>> lc, lcc;
    std::map<int, IntMatrix> dc, dcc, dccp;
    for (int n = 0; n <= N; ++n) {
        lc[-n] = mono_labels(c.b(n), ring, "");
        std::vector<std::string> l;
        for (int i = 0; 2 * i <= n; ++i) {
            auto part = mono_labels(c.b(n - 2 * i), ring, "c" + std::to_string(i) + "|");
            l.insert(l.end(), part.begin(), part.end());
        }
        lcc[-n] = std::move(l);
        if (n >= 1) dc[-n] = D[n];
    }
    c.C = FreeComplex(lc, dc);
    c.CC = FreeComplex(lcc, {});
    for (int n = 1; n <= N; ++n) {
        dcc[-n] = assemble_cc(c, n, D, B);
        dccp[-n] = assemble_cc(c, n, SD, dd);
    }
    c.CC = FreeComplex(lcc, dcc);
    c.CCp = FreeComplex(lcc, dccp);

    // rho conjugates D' into D summand by summand
    for (int n = 1; n <= N; ++n) {
        IntMatrix Rn(cc_rank(c, n), cc_rank(c, n)), Rm(cc_rank(c, n - 1), cc_rank(c, n - 1));
        for (int i = 0; 2 * i <= n; ++i) Rn.set_block(c.offset(n, i), c.offset(n, i), R[n - 2 * i]);
        for (int i = 0; 2 * i <= n - 1; ++i) Rm.set_block(c.offset(n - 1, i), c.offset(n - 1, i), R[n - 1 - 2 * i]);
        if (dcc[-n] * Rn != Rm * dccp[-n]) throw StructuralError("operator identity rho D' = D rho fails in CC_" + std::to_string(n));
    }
    return c;
}

CComplexes build_C_CC(const RingSpec& ring, int L, int n_max) {
    ring.validate();
    if (L < 1 || n_max < 0) throw RangeError("build_C_CC: need L >= 1 and n_max >= 0");
    CComplexes out{ring, L, n_max, {}};
    for (const auto& g : ring.graded_pieces()) out.pieces.emplace(g, build_c_piece(ring, g, L, n_max));
    return out;
}

namespace {

IntMatrix weight_diag(const std::vector<CdgaMonomial>& b, const Int& q) {
    IntMatrix A(b.size(), b.size());
    for (std::size_t k = 0; k < b.size(); ++k) A(k, k) = ipow(q, b[k].weight());
    return A;
}

// rel term -n = X_n(L) + X_{n+1}(M); block matrix from per-level blocks
IntMatrix rel_block(std::size_t rows_top, std::size_t rows_bot, std::size_t cols_top, std::size_t cols_bot,
                    const IntMatrix& top, const IntMatrix& bot) {
    IntMatrix A(rows_top + rows_bot, cols_top + cols_bot);
    if (top.rows() && top.cols()) A.set_block(0, 0, top);
    if (bot.rows() && bot.cols()) A.set_block(rows_top, cols_top, bot);
    return A;
}

RelPiece build_rel_piece(const RingSpec& ring, const Graded& g, int L, int M, int N) {
    RelPiece rp;
    rp.piece = g;
    rp.top = build_c_piece(ring, g, L, N);
    rp.bottom = build_c_piece(ring, g, M, N);
    const Int q = ipow(ring.P(), L - M);
    std::map<int, IntMatrix> tc, tcc;
    for (int n = 0; n <= N; ++n) {
        tc[-n] = weight_diag(rp.top.b(n), q);
        IntMatrix W(cc_rank(rp.top, n), cc_rank(rp.top, n));
        for (int i = 0; 2 * i <= n; ++i) W.set_block(rp.top.offset(n, i), rp.top.offset(n, i), weight_diag(rp.top.b(n - 2 * i), q));
        tcc[-n] = W;
    }
    rp.rel_C = fiber(ChainMap(rp.top.C, rp.bottom.C, tc));
    rp.rel_CC = fiber(ChainMap(rp.top.CC, rp.bottom.CC, tcc));

    std::map<int, IntMatrix> inc, pr;
    for (int i : rp.rel_C.degrees()) {
        const int n = -i;
        inc[i] = rel_block(cc_rank(rp.top, n), cc_rank(rp.bottom, n + 1), c_rank(rp.top, n), c_rank(rp.bottom, n + 1),
                           cc_move(rp.top, n, 0).block(0, 0, cc_rank(rp.top, n), c_rank(rp.top, n)),
                           cc_move(rp.bottom, n + 1, 0).block(0, 0, cc_rank(rp.bottom, n + 1), c_rank(rp.bottom, n + 1)));
    }
    for (int i : rp.rel_CC.degrees()) {
        const int n = -i;
        pr[i] = rel_block(cc_rank(rp.top, n - 2), cc_rank(rp.bottom, n - 1), cc_rank(rp.top, n), cc_rank(rp.bottom, n + 1),
                          cc_move(rp.top, n, -1), cc_move(rp.bottom, n + 1, -1));
    }
    rp.incl = ChainMap(rp.rel_C, rp.rel_CC, inc);
    rp.proj = ChainMap(rp.rel_CC, rp.rel_CC, pr, 2);
    // exactness of 0 -> rel_C -> rel_CC -> rel_CC[2] -> 0 in each degree
    for (int i : rp.rel_CC.degrees()) {
        if (!(rp.proj.component(i) * rp.incl.component(i)).is_zero())
            throw StructuralError("Connes sequence: proj o incl != 0 in degree " + std::to_string(i));
        const std::size_t ri = rank_mod_p(rp.incl.component(i), ring.P());
        const std::size_t rp2 = rank_mod_p(rp.proj.component(i), ring.P());
        if (ri != rp.rel_C.rank(i) || ri + rp2 != rp.rel_CC.rank(i))
            throw StructuralError("Connes sequence: not short exact in degree " + std::to_string(i));
    }
    rp.mod_C = mod_p_complex(rp.rel_C, ring.P());
    rp.mod_CC = mod_p_complex(rp.rel_CC, ring.P());
    return rp;
}

}  // namespace

RelCC build_rel_CC(const RingSpec& ring, int L, int M, int n_max) {
    ring.validate();
    if (M < 1 || L <= M) throw RangeError("build_rel_CC: levels must satisfy L > M >= 1");
    if (n_max < 0) throw RangeError("build_rel_CC: n_max must be >= 0");
    RelCC rel{ring, L, M, n_max, n_max + 2, {}};
    for (const auto& g : ring.graded_pieces()) rel.pieces.emplace(g, build_rel_piece(ring, g, L, M, rel.N));
    return rel;
}

namespace {

void check_degree(const RelCC& rel, int n) {
    if (n < 0 || n > rel.n_max) throw RangeError("degree " + std::to_string(n) + " outside 0..n_max");
}

GroupSummary bold_homology(const RelCC& rel, int n, bool cyclic) {
    check_degree(rel, n);
    GroupSummary out;
    for (const auto& [g, rp] : rel.pieces) {
        AbGroupData h = homology(cyclic ? rp.rel_CC : rp.rel_C, -n);
        out.absorb(h.free_rank, h.torsion);
    }
    return out;
}

struct PieceDecomp {
    AbGroupData H;
    std::vector<BoldRep> reps;
    IntMatrix classes;  // columns: class coordinates of the reps
    std::size_t predicted = 0;
    bool cycles = true;
    bool vector_space = true;
};

struct FamilySpec {
    const char* name;
    bool bottom;
    int j;
    int m_min;
    int exp_shift;  // exponent of deps = m + exp_shift
    int deg_shift;  // form degree = n + deg_shift - 2m
};

const std::vector<FamilySpec>& families(bool cyclic) {
    static const std::vector<FamilySpec> hc = {{"HC1", false, 1, 0, 0, -1}, {"HC2", true, 1, 0, 0, 0}};
    static const std::vector<FamilySpec> hh = {{"HH1X", false, 1, 1, -1, 1},
                                               {"HH1Y", false, 0, 1, 0, 0},
                                               {"HH2X", true, 1, 1, -1, 2},
                                               {"HH2Y", true, 0, 1, 0, 1}};
    return cyclic ? hc : hh;
}

// integral element of rel term -n for a monomial in the top (C_n) or bottom (C_{n+1}) part
IntVec rel_unit(const RelPiece& rp, bool cyclic, int n, bool bottom, const CdgaMonomial& x) {
    const FreeComplex& F = cyclic ? rp.rel_CC : rp.rel_C;
    IntVec a(F.rank(-n));
    const std::size_t top = cyclic ? cc_rank(rp.top, n) : c_rank(rp.top, n);
    a[bottom ? top + rp.bottom.index(n + 1, x) : rp.top.index(n, x)] = 1;
    return a;
}

PieceDecomp piece_decomp(const RelCC& rel, const RelPiece& rp, int n, bool cyclic) {
    const Int p = rel.ring.P();
    const FreeComplex& F = cyclic ? rp.rel_CC : rp.rel_C;
    const FreeComplex& Fm = cyclic ? rp.mod_CC : rp.mod_C;
    PieceDecomp d;
    d.H = homology(Fm, -n);
    if (d.H.free_rank || std::any_of(d.H.torsion.begin(), d.H.torsion.end(), [&](const Int& t) { return t != p; }))
        d.vector_space = false;
    auto rk = [&](int s) { return omega_piece(rel.ring, s, rp.piece).size(); };
    for (int s = 0; s <= n; ++s) d.predicted += rk(s);
    if (!cyclic)
        for (int s = 0; s <= n - 1; ++s) d.predicted += rk(s);
    std::vector<IntVec> cls;
    for (const auto& f : families(cyclic))
        for (int m = f.m_min; 2 * m <= n + f.deg_shift; ++m) {
            const int s = n + f.deg_shift - 2 * m;
            for (const auto& a : omega_piece(rel.ring, s, rp.piece)) {
                CdgaMonomial x{a, f.j, m + f.exp_shift};
                BoldRep r{f.name, m, a, rp.piece, mod_p_lift(F, -n, rel_unit(rp, cyclic, n, f.bottom, x), p)};
                if (!is_cycle(Fm, -n, r.pair)) d.cycles = false;
                cls.push_back(d.H.classify(r.pair));
                d.reps.push_back(std::move(r));
            }
        }
    d.classes = IntMatrix::from_columns(d.H.generators(), cls);
    return d;
}

bool full_rank(const PieceDecomp& d, const Int& p) {
    const std::size_t dim = d.H.generators();
    return d.vector_space && d.reps.size() == dim && rank_mod_p(d.classes, p) == dim;
}

long symmetric(const Int& a, const Int& p) {
    Int r = mod_floor(a, p);
    if (2 * r > p) r -= p;
    return r.get_si();
}

struct Key {
    std::string family;
    int m;
    FormMonomial alpha;
    auto operator<=>(const Key&) const = default;
};

using Pattern = std::vector<std::pair<Key, DRElement>>;
// sends a source rep to a cycle of the target mod-p complex (or nullopt on failure)
using Apply = std::function<std::optional<IntVec>(const RelPiece&, const BoldRep&)>;

ClassMap class_map(const RelCC& rel, const std::string& op, int n_src, bool src_cyc, int n_tgt, bool tgt_cyc,
                   const Apply& apply, const std::function<Pattern(const BoldRep&)>& pattern,
                   const std::function<long(const BoldRep&)>& expected) {
    const Int p = rel.ring.P();
    ClassMap cm;
    cm.op = op;
    cm.n_src = n_src;
    cm.n_tgt = n_tgt;
    for (const auto& [g, rp] : rel.pieces) {
        PieceDecomp src = piece_decomp(rel, rp, n_src, src_cyc);
        PieceDecomp tgt = piece_decomp(rel, rp, n_tgt, tgt_cyc);
        if (!full_rank(src, p) || !full_rank(tgt, p) || !src.cycles || !tgt.cycles)
            throw StructuralError(op + ": decomposition representatives do not form a basis");
        std::map<Key, std::size_t> idx;
        for (std::size_t k = 0; k < tgt.reps.size(); ++k) idx[{tgt.reps[k].family, tgt.reps[k].m, tgt.reps[k].alpha}] = k;
        const FreeComplex& Fm = tgt_cyc ? rp.mod_CC : rp.mod_C;
        for (const auto& r : src.reps) {
            cm.src_family.push_back(r.family);
            cm.expected.push_back(expected(r));
            IntVec want(tgt.reps.size());
            for (const auto& [key, w] : pattern(r))
                for (const auto& [mono, c] : w.terms) {
                    auto it = idx.find({key.family, key.m, mono});
                    if (it == idx.end()) throw StructuralError(op + ": pattern term outside the target decomposition");
                    want[it->second] += c;
                }
            std::optional<IntVec> img = apply(rp, r);
            if (!img || !is_cycle(Fm, -n_tgt, *img)) {
                cm.cycles_ok = false;
                cm.scalar.push_back(std::nullopt);
                continue;
            }
            auto coord = solve_mod_p(tgt.classes, tgt.H.classify(*img), p);
            if (!coord) throw StructuralError(op + ": class outside the span of the representatives");
            std::optional<long> s;
            std::size_t lead = want.size();
            for (std::size_t k = 0; k < want.size(); ++k)
                if (mod_floor(want[k], p) != 0) {
                    lead = k;
                    break;
                }
            if (lead == want.size()) {
                if (std::all_of(coord->begin(), coord->end(), [&](const Int& c) { return mod_floor(c, p) == 0; }))
                    s = cm.expected.back();
            } else {
                Int inv;
                Int w = mod_floor(want[lead], p);
                mpz_invert(inv.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t());
                const Int sc = mod_floor((*coord)[lead] * inv, p);
                bool prop = true;
                for (std::size_t k = 0; k < want.size(); ++k)
                    if (mod_floor((*coord)[k] - sc * want[k], p) != 0) prop = false;
                if (prop) s = symmetric(sc, p);
            }
            cm.scalar.push_back(s);
        }
    }
    return cm;
}

DRElement mono(const FormMonomial& a) { return DRElement::monomial(a); }

// rho o (u .) o rho on C_n -> C_{n+k}
IntMatrix conj_mult(const CPiece& c, int n, int k, const CdgaElement& u) {
    return op_matrix(c.b(n), c.b(n + k), [&](const CdgaElement& x) { return cdga_rho(cdga_mul(u, cdga_rho(x))); });
}

// multiplication by the class (u, 0) on the relative C complex at degree -n
IntMatrix rel_mult(const RelPiece& rp, int n, int k, const CdgaElement& u, const CdgaElement& tu) {
    IntMatrix top = n >= 0 ? conj_mult(rp.top, n, k, u) : IntMatrix(c_rank(rp.top, n + k), 0);
    IntMatrix bot = conj_mult(rp.bottom, n + 1, k, tu).scaled(conv::sign(k));
    return rel_block(c_rank(rp.top, n + k), c_rank(rp.bottom, n + 1 + k), c_rank(rp.top, n), c_rank(rp.bottom, n + 1), top,
                     bot);
}

ClassMap multiplication(const RelCC& rel, const std::string& op, int n, int k, const CdgaElement& u,
                        const std::function<Pattern(const BoldRep&)>& pattern,
                        const std::function<long(const BoldRep&)>& expected) {
    check_degree(rel, n);
    if (n + k > rel.n_max) throw RangeError(op + ": target degree exceeds n_max");
    CdgaElement tu;
    for (const auto& [x, c] : u.terms) tu.add(x, c * ipow(rel.ring.P(), (rel.L - rel.M) * x.weight()));
    const Int p = rel.ring.P();
    bool chain = true;
    for (const auto& [g, rp] : rel.pieces)
        for (int s = n - 1; s <= n; ++s) {
            if (s < 0 && s + k < 0) continue;
            // U d = (-1)^k d U on the integral relative complex
            IntMatrix lhs = rp.rel_C.diff(-s - k) * rel_mult(rp, s, k, u, tu);
            IntMatrix rhs = rel_mult(rp, s - 1, k, u, tu) * rp.rel_C.diff(-s);
            if (lhs != rhs.scaled(conv::sign(k))) chain = false;
        }
    // mod-p product (u, 0) . (a, a') with u in degree -k
    const int sgn = conv::modp_product_alt ? 1 : conv::sign(k);
    Apply apply = [&](const RelPiece& rp, const BoldRep& r) -> std::optional<IntVec> {
        CdgaMonomial x{r.alpha, 1, r.m};
        const bool bottom = r.family == "HC2";
        IntVec pair = mod_p_lift(rp.rel_C, -n, rel_unit(rp, false, n, bottom, x), p);
        const std::size_t ra = rp.rel_C.rank(-n);
        IntVec a(pair.begin(), pair.begin() + static_cast<long>(ra)), a2(pair.begin() + static_cast<long>(ra), pair.end());
        IntVec ua = rel_mult(rp, n, k, u, tu) * a, ua2 = rel_mult(rp, n - 1, k, u, tu) * a2;
        IntVec prod = ua;
        for (auto& c : ua2) prod.push_back(c * sgn);
        if (!is_cycle(rp.mod_C, -n - k, prod)) return std::nullopt;
        const std::size_t rb = rp.rel_C.rank(-n - k);
        IntVec b(prod.begin(), prod.begin() + static_cast<long>(rb)), b2(prod.begin() + static_cast<long>(rb), prod.end());
        IntVec out = rp.incl.component(-n - k) * b;
        IntVec o2 = rp.incl.component(-n - k + 1) * b2;
        out.insert(out.end(), o2.begin(), o2.end());
        return out;
    };
    ClassMap cm = class_map(rel, op, n, true, n + k, true, apply, pattern, expected);
    cm.chain_map_ok = chain;
    return cm;
}

}  // namespace

namespace {

IntVec join(IntVec a, const IntVec& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::pair<IntVec, IntVec> split(const IntVec& v, std::size_t k) {
    return {IntVec(v.begin(), v.begin() + static_cast<long>(k)), IntVec(v.begin() + static_cast<long>(k), v.end())};
}

// image of a mod-p pair of rel_C at degree -n under the Connes inclusion
IntVec incl_pair(const RelPiece& rp, int n, const IntVec& pair) {
    auto [a, a2] = split(pair, rp.rel_C.rank(-n));
    return join(rp.incl.component(-n) * a, rp.incl.component(-n + 1) * a2);
}

// connecting map HC_{n-1} -> HH_n: lift along proj by moving every summand up by one,
// take the mod-p boundary and read it off the summand i = 0
std::optional<IntVec> delta_pair(const RelPiece& rp, int n, const IntVec& pair) {
    auto up = [&](int m) {
        return rel_block(cc_rank(rp.top, m + 2), cc_rank(rp.bottom, m + 3), cc_rank(rp.top, m), cc_rank(rp.bottom, m + 1),
                         cc_move(rp.top, m, 1), cc_move(rp.bottom, m + 1, 1));
    };
    auto [a, a2] = split(pair, rp.rel_CC.rank(-(n - 1)));
    IntVec bd = rp.mod_CC.diff(-(n + 1)) * join(up(n - 1) * a, up(n - 2) * a2);
    auto [b, b2] = split(bd, rp.rel_CC.rank(-n));
    IntMatrix I0 = rp.incl.component(-n), I1 = rp.incl.component(-n + 1);
    IntVec c = I0.transpose() * b, c2 = I1.transpose() * b2;
    if (I0 * c != b || I1 * c2 != b2) return std::nullopt;
    return join(c, c2);
}

}  // namespace

GroupSummary hc_bold(const RelCC& rel, int n) { return bold_homology(rel, n, true); }
GroupSummary hh_bold(const RelCC& rel, int n) { return bold_homology(rel, n, false); }

BoldDecomposition decomposition_representatives(const RelCC& rel, int n, bool cyclic) {
    check_degree(rel, n);
    BoldDecomposition out;
    out.n = n;
    out.cyclic = cyclic;
    for (const auto& [g, rp] : rel.pieces) {
        PieceDecomp d = piece_decomp(rel, rp, n, cyclic);
        out.dim += d.H.generators();
        out.predicted += d.predicted;
        if (!d.cycles) out.reps_are_cycles = false;
        if (!full_rank(d, rel.ring.P())) out.reps_form_basis = false;
        for (auto& r : d.reps) out.reps.push_back(std::move(r));
    }
    if (!out.reps_are_cycles)
        throw StructuralError("decomposition_representatives: a representative is not a mod-p cycle");
    return out;
}

std::size_t ClassMap::mismatches() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < scalar.size(); ++i)
        if (!scalar[i] || *scalar[i] != expected[i]) ++k;
    return k;
}

std::optional<long> ClassMap::family_scalar(const std::string& family) const {
    std::optional<long> s;
    for (std::size_t i = 0; i < scalar.size(); ++i) {
        if (src_family[i] != family) continue;
        if (!scalar[i] || (s && *s != *scalar[i])) return std::nullopt;
        s = scalar[i];
    }
    return s;
}

ClassMap mult_dlog(const RelCC& rel, const std::vector<int>& k, int n) {
    const RingSpec& ring = rel.ring;
    if (k.size() != ring.nvars()) throw DomainError("mult_dlog: exponent vector has wrong length");
    DRElement u;
    for (std::size_t v = 0; v < k.size(); ++v) {
        if (k[v] == 0) continue;
        if (!ring.laurent[v]) throw DomainError("mult_dlog: x is not a unit (non-Laurent variable)");
        FormMonomial f;
        f.exps.assign(ring.nvars(), 0);
        f.exps[v] = -1;
        f.dset = {static_cast<int>(v)};
        u.add(f, k[v]);
    }
    auto pattern = [&](const BoldRep& r) -> Pattern { return {{{r.family, r.m, {}}, wedge(u, mono(r.alpha))}}; };
    auto expected = [](const BoldRep& r) -> long { return r.family == "HC1" ? -1 : 1; };
    return multiplication(rel, "dlog", n, 1, CdgaElement::from_form(u), pattern, expected);
}

ClassMap mult_dlog(const RelCC& rel, const ResidueElement& x, int n) {
    const Int p = rel.ring.P();
    std::optional<std::vector<int>> k;
    for (const auto& [e, c] : x.terms()) {
        if (mod_floor(c, p) == 0) continue;
        if (k) throw DomainError("mult_dlog: x does not reduce to a monomial mod p");
        k = e;
    }
    if (!k) throw DomainError("mult_dlog: x is not a unit");
    return mult_dlog(rel, *k, n);
}

ClassMap mult_deps(const RelCC& rel, int n, int power) {
    if (power < 1) throw RangeError("mult_deps: power must be >= 1");
    FormMonomial one;
    one.exps.assign(rel.ring.nvars(), 0);
    auto pattern = [power](const BoldRep& r) -> Pattern { return {{{r.family, r.m + power, {}}, mono(r.alpha)}}; };
    // stated scalar (-1)^{n-i} on the summand Omega^{n-1-2i}, composed `power` times
    auto expected = [n, power](const BoldRep& r) -> long {
        if (r.family != "HC1") return 0;
        long e = 0;
        for (int t = 0; t < power; ++t) e += (n + 2 * t) - (r.m + t);
        return conv::sign(e);
    };
    return multiplication(rel, "deps", n, 2 * power, CdgaElement::monomial({one, 0, power}), pattern, expected);
}

ClassMap connes_I(const RelCC& rel, int n) {
    check_degree(rel, n);
    Apply apply = [&](const RelPiece& rp, const BoldRep& r) { return std::optional<IntVec>(incl_pair(rp, n, r.pair)); };
    auto pattern = [](const BoldRep& r) -> Pattern {
        const std::string tgt = r.family[2] == '1' ? "HC1" : "HC2";
        const bool x = r.family[3] == 'X';
        return {{{tgt, r.m - 1, {}}, x ? mono(r.alpha) : d(mono(r.alpha))}};
    };
    return class_map(rel, "I", n, false, n, true, apply, pattern, [](const BoldRep&) { return 1L; });
}

ClassMap connes_delta(const RelCC& rel, int n) {
    check_degree(rel, n);
    if (n < 1) throw RangeError("connes_delta: need n >= 1");
    Apply apply = [&](const RelPiece& rp, const BoldRep& r) { return delta_pair(rp, n, r.pair); };
    auto pattern = [](const BoldRep& r) -> Pattern {
        const std::string f = r.family == "HC1" ? "HH1" : "HH2";
        return {{{f + "Y", r.m + 1, {}}, mono(r.alpha)}, {{f + "X", r.m + 1, {}}, -d(mono(r.alpha))}};
    };
    return class_map(rel, "delta", n - 1, true, n, false, apply, pattern, [](const BoldRep&) { return 1L; });
}

bool ConnesExactness::exact() const {
    return composite_zero && rank_delta == dim_hc_prev && rank_I == dim_hc && dim_hh == dim_hc_prev + dim_hc;
}

ConnesExactness connes_exactness(const RelCC& rel, int n) {
    check_degree(rel, n);
    const Int p = rel.ring.P();
    ConnesExactness e;
    e.n = n;
    for (const auto& [g, rp] : rel.pieces) {
        AbGroupData hh = homology(rp.mod_C, -n), hc = homology(rp.mod_CC, -n);
        e.dim_hh += hh.generators();
        e.dim_hc += hc.generators();
        std::vector<IntVec> icols;
        for (const auto& z : hh.reps) icols.push_back(hc.classify(incl_pair(rp, n, z)));
        IntMatrix Im = IntMatrix::from_columns(hc.generators(), icols);
        e.rank_I += rank_mod_p(Im, p);
        if (n < 1) continue;
        AbGroupData prev = homology(rp.mod_CC, -(n - 1));
        e.dim_hc_prev += prev.generators();
        std::vector<IntVec> dcols;
        for (const auto& z : prev.reps) {
            auto img = delta_pair(rp, n, z);
            if (!img || !is_cycle(rp.mod_C, -n, *img)) {
                e.composite_zero = false;
                continue;
            }
            dcols.push_back(hh.classify(*img));
        }
        IntMatrix Dm = IntMatrix::from_columns(hh.generators(), dcols);
        e.rank_delta += rank_mod_p(Dm, p);
        IntMatrix comp = Im * Dm;
        for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j)
                if (mod_floor(comp(i, j), p) != 0) e.composite_zero = false;
    }
    return e;
}

nlohmann::json hkr_report(const RingSpec& ring, int L, int M, int n_max) {
    RelCC rel = build_rel_CC(ring, L, M, n_max);
    const Int p = ring.P();
    std::optional<std::size_t> laurent_var;
    for (std::size_t v = 0; v < ring.nvars(); ++v)
        if (ring.laurent[v]) {
            laurent_var = v;
            break;
        }
    nlohmann::json out = nlohmann::json::object();
    for (int n = 0; n <= n_max; ++n) {
        GroupSummary hh = hh_bold(rel, n), hc = hc_bold(rel, n);
        auto primary = [&](const GroupSummary& g) {
            return g.free_rank == 0 && std::all_of(g.torsion.begin(), g.torsion.end(),
                                                   [&](const Int& t) { return ipow(p, valuation(t, p)) == t; });
        };
        BoldDecomposition dh = decomposition_representatives(rel, n, false);
        BoldDecomposition dc = decomposition_representatives(rel, n, true);
        nlohmann::json row = nlohmann::json::object();
        auto fam = [](const ClassMap& cm, const char* f) -> nlohmann::json {
            auto s = cm.family_scalar(f);
            return s ? nlohmann::json(*s) : nlohmann::json(nullptr);
        };
        if (laurent_var && n + 1 <= n_max) {
            std::vector<int> k(ring.nvars(), 0);
            k[*laurent_var] = 1;
            ClassMap cm = mult_dlog(rel, k, n);
            row["dlog"] = {{"unit", ring.vars[*laurent_var]}, {"family1", fam(cm, "HC1")}, {"family2", fam(cm, "HC2")},
                           {"mismatches", cm.mismatches()}};
        }
        if (n + 2 <= n_max) {
            ClassMap cm = mult_deps(rel, n);
            row["deps"] = {{"family1", fam(cm, "HC1")}, {"family2", fam(cm, "HC2")}, {"mismatches", cm.mismatches()}};
        }
        out[std::to_string(n)] = {
            {"HH_bold", to_json(hh)},
            {"HC_bold", to_json(hc)},
            {"p_primary", primary(hh) && primary(hc)},
            {"modp_dims", {{"HH", dh.dim}, {"HC", dc.dim}, {"HH_predicted", dh.predicted}, {"HC_predicted", dc.predicted}}},
            {"decomposition", {{"HH", dh.reps_form_basis}, {"HC", dc.reps_form_basis}}},
            {"mult_table_row", row}};
    }
    return out;
}

}  // namespace artifact
