#include "artifact/psi.hpp"

#include "artifact/conventions.hpp"

namespace artifact {

namespace {

struct Component {
    FreeComplex source;
    std::map<int, IntMatrix> comps;
};

// Psi for twist r on one piece, in label coordinates: eta and kappa are the free-model
// coordinates of theta = p^{(n-r)L} eta and lambda = p^{(n-r+1)M} kappa.
Component psi_component(const RelCC& rel, const RelPiece& rp, int r) {
    const RingSpec& ring = rel.ring;
    const Graded& g = rp.piece;
    RelativeDR dr = build_relative(ring, r + 1, rel.L, rel.M);
    Component out;
    out.source = truncate(shift(dr.model.at(g), 2 * r), -rel.n_max - 1, 0);
    const Int P = ring.P();
    for (int deg : out.source.degrees()) {
        const int n = -deg;
        const std::size_t a = rp.top.CC.rank(-n), b = rp.bottom.CC.rank(-(n + 1));
        auto forms = [&](int i) { return i >= 0 && i <= r ? omega_piece(ring, i, g) : std::vector<FormMonomial>{}; };
        const auto etas = forms(2 * r - n + 1), kappas = forms(2 * r - n);
        if (etas.size() + kappas.size() != out.source.rank(deg))
            throw StructuralError("build_psi: source labels out of step in degree " + std::to_string(deg));
        IntMatrix Mx(a + b, out.source.rank(deg));
        auto put_top = [&](const CdgaMonomial& x, int i, std::size_t col, const Int& c) {
            const int t = x.total_degree();
            Mx(rp.top.offset(n, i) + rp.top.index(t, x), col) += c;
        };
        auto put_bottom = [&](const CdgaMonomial& x, int i, std::size_t col, const Int& c) {
            const int t = x.total_degree();
            Mx(a + rp.bottom.offset(n + 1, i) + rp.bottom.index(t, x), col) += c;
        };
        for (std::size_t k = 0; k < etas.size(); ++k)
            for (int m = 1; m <= n - r; ++m)
                put_top({etas[k], 1, m - 1}, n - r - m, k, conv::sign(m - 1) * ipow(P, (n - r - m) * rel.L));
        for (std::size_t k = 0; k < kappas.size(); ++k) {
            const std::size_t col = etas.size() + k;
            put_top({kappas[k], 0, 0}, n - r, col, ipow(P, (n - r + 1) * rel.M));
            for (int m = 1; m <= n - r + 1; ++m)
                put_bottom({kappas[k], 1, m - 1}, n - r - m + 1, col, conv::sign(m - 1) * ipow(P, (n - r - m + 1) * rel.M));
        }
        out.comps[deg] = std::move(Mx);
    }
    return out;
}

void check_chain_map(const FreeComplex& S, const FreeComplex& T, const std::map<int, IntMatrix>& f) {
    for (int i : S.degrees()) {
        if (!T.degrees().empty() && i + 1 > T.max_degree()) continue;
        const IntMatrix lhs = T.diff(i) * f.at(i);
        const IntMatrix next = f.count(i + 1) ? f.at(i + 1) : IntMatrix(T.rank(i + 1), S.rank(i + 1));
        const IntMatrix rhs = next * S.diff(i);
        for (std::size_t c = 0; c < S.rank(i); ++c)
            for (std::size_t row = 0; row < lhs.rows(); ++row)
                if (lhs(row, c) != rhs(row, c))
                    throw StructuralError("build_psi: Psi d != D Psi in degree " + std::to_string(i) + " on " +
                                          S.labels(i)[c]);
    }
}

}  // namespace

PsiMap build_psi(const RingSpec& ring, std::optional<int> r, int L, int M, int n_max) {
    if (n_max < 0) throw RangeError("build_psi: n_max must be >= 0");
    if (r && (*r < 0 || *r + 1 >= ring.p)) throw RangeError("build_psi: twist must satisfy 0 <= r and r + 1 < p");
    if (!r && n_max + 1 >= ring.p) throw RangeError("build_psi: the sum over twists needs n_max + 1 < p");
    PsiMap psi;
    psi.ring = ring;
    psi.L = L;
    psi.M = M;
    psi.n_max = n_max;
    if (r) psi.twists = {*r};
    else
        for (int k = 0; k <= n_max; ++k) psi.twists.push_back(k);
    psi.rel = build_rel_CC(ring, L, M, n_max);
    for (const auto& [g, rp] : psi.rel.pieces) {
        FreeComplex S;
        std::map<int, IntMatrix> comps;
        bool first = true;
        for (int k : psi.twists) {
            Component c = psi_component(psi.rel, rp, k);
            if (first) {
                S = c.source;
                comps = c.comps;
                first = false;
                continue;
            }
            FreeComplex sum = direct_sum(S, c.source);
            for (int i : sum.degrees()) {
                const std::size_t rows = rp.rel_CC.rank(i);
                IntMatrix a = comps.count(i) ? comps.at(i) : IntMatrix(rows, S.rank(i));
                IntMatrix b = c.comps.count(i) ? c.comps.at(i) : IntMatrix(rows, c.source.rank(i));
                comps[i] = IntMatrix::hstack(a, b);
            }
            S = std::move(sum);
        }
        check_chain_map(S, rp.rel_CC, comps);
        psi.pieces.emplace(g, PsiPiece{g, S, ChainMap(S, rp.rel_CC, comps)});
    }
    return psi;
}

bool PsiDegree::ok() const {
    return cone_acyclic && uc_identity && source == target && src_dim == tgt_dim && map_rank == tgt_dim;
}

bool QuasiIsoReport::passed() const {
    return !degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [](const PsiDegree& d) { return d.ok(); });
}

namespace {

bool uc_holds(const FreeComplex& C, int i, const Int& p) {
    return mod_p_dimension(C, i, p) == homology(C, i).p_rank(p) + homology(C, i + 1).p_torsion_rank(p);
}

}  // namespace

QuasiIsoReport verify_quasi_iso(const PsiMap& psi, QuasiIsoMode mode) {
    QuasiIsoReport rep;
    rep.mode = mode;
    const Int p = psi.ring.P();
    for (int n = 0; n <= psi.n_max; ++n) {
        PsiDegree d;
        d.n = n;
        d.cone_acyclic = true;
        for (const auto& [g, pp] : psi.pieces) {
            FreeComplex Co = cone(pp.map);
            d.uc_identity = d.uc_identity && uc_holds(Co, -n, p) && uc_holds(pp.source, -n, p);
            if (mode == QuasiIsoMode::integral) {
                if (!homology(Co, -n).is_zero()) d.cone_acyclic = false;
                AbGroupData hs = homology(pp.source, -n), ht = homology(pp.map.target(), -n);
                d.source.absorb(hs.free_rank, hs.torsion);
                d.target.absorb(ht.free_rank, ht.torsion);
                continue;
            }
            if (mod_p_dimension(Co, -n, p) != 0) d.cone_acyclic = false;
            // induced map on mod-p homology through class coordinates
            FreeComplex Ms = mod_p_complex(pp.source, p), Mt = mod_p_complex(pp.map.target(), p);
            AbGroupData hs = homology(Ms, -n), ht = homology(Mt, -n);
            d.src_dim += hs.generators();
            d.tgt_dim += ht.generators();
            const IntMatrix f0 = pp.map.component(-n), f1 = pp.map.component(-n + 1);
            std::vector<IntVec> cols;
            for (const auto& z : hs.reps) {
                const std::size_t s0 = pp.source.rank(-n);
                IntVec a(z.begin(), z.begin() + static_cast<long>(s0)), b(z.begin() + static_cast<long>(s0), z.end());
                IntVec fa = f0 * a, fb = f1 * b;
                fa.insert(fa.end(), fb.begin(), fb.end());
                cols.push_back(ht.classify(fa));
            }
            if (!cols.empty()) d.map_rank += rank_mod_p(IntMatrix::from_columns(ht.generators(), cols), p);
        }
        rep.degrees.push_back(std::move(d));
    }
    return rep;
}

nlohmann::json to_json(const QuasiIsoReport& r) {
    nlohmann::json j;
    j["mode"] = r.mode == QuasiIsoMode::integral ? "integral" : "mod_p";
    j["passed"] = r.passed();
    for (const auto& d : r.degrees) {
        nlohmann::json e{{"n", d.n}, {"cone_acyclic", d.cone_acyclic}, {"uc_identity", d.uc_identity}, {"ok", d.ok()}};
        if (r.mode == QuasiIsoMode::integral) {
            e["source"] = to_json(d.source);
            e["target"] = to_json(d.target);
        } else {
            e["source_dim"] = d.src_dim;
            e["target_dim"] = d.tgt_dim;
            e["map_rank"] = d.map_rank;
        }
        j["degrees"].push_back(e);
    }
    return j;
}

}  // namespace artifact
