#include "artifact/derham.hpp"

#include "artifact/conventions.hpp"

#include <algorithm>

namespace artifact {

namespace {

void check_params(const RingSpec& ring, int r, int L) {
    ring.validate();
    if (r < 0 || r >= ring.p) throw RangeError("twist r must satisfy 0 <= r < p");
    if (L < 1) throw RangeError("level L must be >= 1");
}

std::vector<std::string> piece_labels(const RingSpec& ring, const Graded& piece, int i, const std::string& pre) {
    std::vector<std::string> out;
    for (const auto& m : omega_piece(ring, i, piece)) out.push_back(pre + m.to_string(ring.vars));
    return out;
}

// multiplication by T_v between the omega bases of two pieces
IntMatrix t_mult(const std::vector<FormMonomial>& from, const std::vector<FormMonomial>& to, std::size_t v) {
    IntMatrix A(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j) {
        FormMonomial m = from[j];
        m.exps[v] += 1;
        auto it = std::find(to.begin(), to.end(), m);
        if (it != to.end()) A(it - to.begin(), j) = 1;
    }
    return A;
}

}  // namespace

FreeComplex twisted_piece(const RingSpec& ring, const Graded& piece, int r, int L, int lo, int hi) {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    lo = std::max(lo, 0);
    hi = std::min(hi, static_cast<int>(ring.nvars()));
    const Int pL = ipow(ring.P(), L);
    for (int i = lo; i <= hi; ++i) {
        const std::string pre = i < r ? "p^" + std::to_string(r - i) + "L " : "";
        labels[i] = piece_labels(ring, piece, i, pre);
    }
    for (int i = lo; i < hi; ++i) {
        IntMatrix D = d_matrix(ring, piece, i);
        diffs[i] = i < r ? D.scaled(pL) : D;
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

TwistedDR build_twisted(const RingSpec& ring, int r, int L) {
    check_params(ring, r, L);
    TwistedDR t{ring, r, L, {}};
    for (const auto& g : ring.graded_pieces())
        t.pieces[g] = twisted_piece(ring, g, r, L, 0, static_cast<int>(ring.nvars()));
    return t;
}

FreeComplex RelativeDR::shifted(const Graded& piece) const { return shift(model.at(piece), -1); }

RelativeDR build_relative(const RingSpec& ring, int r, int L, int M) {
    check_params(ring, r, L);
    if (M < 1 || L <= M) throw RangeError("levels must satisfy L > M >= 1");
    RelativeDR rel{ring, r, L, M, {}, {}};
    for (const auto& g : ring.graded_pieces()) {
        FreeComplex src = twisted_piece(ring, g, r, L, 0, r - 1);
        FreeComplex tgt = twisted_piece(ring, g, r, M, 0, r - 1);
        std::map<int, IntMatrix> comps;
        for (int i : src.degrees()) comps[i] = IntMatrix::scalar(src.rank(i), ipow(ring.P(), (r - i) * (L - M)));
        ChainMap v(src, tgt, comps);
        // the quotient row p^{(r-i)M} Omega^i_{A_{(r-i)L}} has one cyclic summand of order
        // p^{(r-i)(L-M)} per basis element: compare with the cokernel of the vertical map
        for (int i : src.degrees()) {
            SmithForm s = smith_normal_form(v.component(i));
            const Int want = ipow(ring.P(), (r - i) * (L - M));
            if (s.rank != src.rank(i) || std::any_of(s.diag.begin(), s.diag.end(), [&](const Int& x) { return x != want; }))
                throw StructuralError("build_relative: quotient row rank mismatch in degree " + std::to_string(i));
        }
        rel.model[g] = cone(v);
        rel.vertical[g] = std::move(v);
    }
    return rel;
}

std::size_t predicted_modp_dim(const RingSpec& ring, const Graded& piece, int r, int i) {
    auto rk = [&](int k) { return omega_piece(ring, k, piece).size(); };
    if (r <= 0) return 0;
    if (i == -1) return rk(0);
    if (i >= 0 && i <= r - 2) return rk(i) + rk(i + 1);
    if (i == r - 1) return rk(r - 1);
    return 0;
}

ModPCohomology modp_cohomology_with_basis(const RingSpec& ring, int r, int L, int M, int i) {
    RelativeDR rel = build_relative(ring, r, L, M);
    const Int p = ring.P();
    ModPCohomology out;
    out.i = i;
    if (r == 0 || i < -1 || i > r - 1) return out;

    std::map<Graded, AbGroupData> H;
    for (const auto& [g, C] : rel.model) {
        FreeComplex Mc = mod_p_complex(C, p);
        AbGroupData h = homology(Mc, i);
        const std::size_t dim = h.torsion.size();
        if (h.free_rank || std::any_of(h.torsion.begin(), h.torsion.end(), [&](const Int& t) { return t != p; }))
            throw StructuralError("modp_cohomology_with_basis: mod-p homology is not an F_p-vector space");
        out.dim += dim;
        out.predicted += predicted_modp_dim(ring, g, r, i);

        // basis of C^i = src^{i+1} + tgt^i
        auto fn = i + 1 <= r - 1 ? omega_piece(ring, i + 1, g) : std::vector<FormMonomial>{};
        auto fo = i >= 0 ? omega_piece(ring, i, g) : std::vector<FormMonomial>{};
        std::vector<IntVec> classes;
        auto emit = [&](const std::string& fam, int deg, const FormMonomial& m, std::size_t pos) {
            IntVec a(C.rank(i));
            a[pos] = 1;
            DecompositionGenerator gen{fam, deg, m, g, mod_p_lift(C, i, a, p)};
            if (!is_cycle(Mc, i, gen.pair)) out.reps_are_cycles = false;
            classes.push_back(h.classify(gen.pair));
            out.generators.push_back(std::move(gen));
        };
        for (std::size_t k = 0; k < fn.size(); ++k) emit("functions", i + 1, fn[k], k);
        for (std::size_t k = 0; k < fo.size(); ++k) emit("forms", i, fo[k], fn.size() + k);
        if (classes.size() != dim || rank_mod_p(IntMatrix::from_columns(dim, classes), p) != dim)
            out.reps_form_basis = false;
        H[g] = std::move(h);
    }

    for (const auto& [g, C] : rel.model) {
        for (std::size_t v = 0; v < ring.nvars(); ++v) {
            Graded g2 = g;
            g2[v] += 1;
            if (!H.count(g2)) continue;
            const std::size_t dim = H[g].torsion.size();
            if (dim != H[g2].torsion.size() || dim == 0) continue;
            const FreeComplex& C2 = rel.model.at(g2);
            auto part = [&](int k, const Graded& h) {
                return k >= 0 && k <= r - 1 ? omega_piece(ring, k, h) : std::vector<FormMonomial>{};
            };
            IntMatrix Tm(C2.rank(i), C.rank(i));
            Tm.set_block(0, 0, t_mult(part(i + 1, g), part(i + 1, g2), v));
            Tm.set_block(part(i + 1, g2).size(), part(i + 1, g).size(), t_mult(part(i, g), part(i, g2), v));
            std::vector<IntVec> img;
            for (const auto& rep : H[g].reps) {
                IntVec a(rep.begin(), rep.begin() + static_cast<long>(C.rank(i)));
                img.push_back(H[g2].classify(mod_p_lift(C2, i, Tm * a, p)));
            }
            if (rank_mod_p(IntMatrix::from_columns(dim, img), p) != dim) out.module_structure_ok = false;
        }
    }
    return out;
}

void GroupSummary::absorb(std::size_t free, const std::vector<Int>& t) {
    free_rank += free;
    torsion.insert(torsion.end(), t.begin(), t.end());
    std::sort(torsion.begin(), torsion.end());
}

std::string GroupSummary::to_string() const {
    if (free_rank == 0 && torsion.empty()) return "0";
    std::string s;
    if (free_rank) s = "Z^" + std::to_string(free_rank);
    std::size_t k = 0;
    while (k < torsion.size()) {
        std::size_t e = k;
        while (e < torsion.size() && torsion[e] == torsion[k]) ++e;
        if (!s.empty()) s += " + ";
        s += "(Z/" + torsion[k].get_str() + ")";
        if (e - k > 1) s += "^" + std::to_string(e - k);
        k = e;
    }
    return s;
}

nlohmann::json to_json(const GroupSummary& g) {
    nlohmann::json t = nlohmann::json::array();
    for (const auto& x : g.torsion) t.push_back(x.get_str());
    return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.to_string()}};
}

GroupSummary rhs_quotient_piece(const RingSpec& ring, const Graded& piece, int n, int L, int M) {
    if (n < 0 || M < 1 || L <= M) throw RangeError("rhs_quotient_group: need n >= 0 and L > M >= 1");
    const Int p = ring.P();
    GroupSummary out;
    for (int s = n; s >= 0; s -= 2) {
        const int t = (n - s) / 2;
        const std::size_t rs = omega_piece(ring, s, piece).size();
        if (rs == 0) continue;
        const unsigned long a = (t + 1) * M, b = t * L, c = (t + 1) * L, e = (t + 2) * M;
        IntMatrix Ds = d_matrix(ring, piece, s);
        IntMatrix X;
        if (b <= a || Ds.rows() == 0) {
            X = IntMatrix::identity(rs);
        } else {
            IntMatrix K = kernel_basis(IntMatrix::hstack(Ds.scaled(ipow(p, a)), IntMatrix::scalar(Ds.rows(), ipow(p, b))));
            X = image_basis(K.block(0, 0, rs, K.cols()));
        }
        IntMatrix N = X.scaled(ipow(p, a));
        IntMatrix Dsub = IntMatrix::scalar(rs, ipow(p, c));
        if (s >= 1) Dsub = IntMatrix::hstack(Dsub, d_matrix(ring, piece, s - 1).scaled(ipow(p, e)));
        QuotientInvariants q = quotient_invariants(N, Dsub);
        out.absorb(q.free_rank, q.torsion);
    }
    return out;
}

GroupSummary rhs_quotient_group(const RingSpec& ring, int n, int L, int M) {
    GroupSummary out;
    for (const auto& g : ring.graded_pieces()) {
        GroupSummary q = rhs_quotient_piece(ring, g, n, L, M);
        out.absorb(q.free_rank, q.torsion);
    }
    return out;
}

GroupSummary relative_cohomology(const RelativeDR& rel, int i) {
    GroupSummary out;
    for (const auto& [g, C] : rel.model) {
        AbGroupData h = homology(C, i);
        out.absorb(h.free_rank, h.torsion);
    }
    return out;
}

nlohmann::json derham_report(const RingSpec& ring, int r, int L, int M) {
    RelativeDR rel = build_relative(ring, r, L, M);
    const Int bound = ipow(ring.P(), r * L);
    nlohmann::json deg = nlohmann::json::object();
    for (int i = -1; i <= std::max(r - 1, -1); ++i) {
        GroupSummary h = relative_cohomology(rel, i);
        ModPCohomology m = modp_cohomology_with_basis(ring, r, L, M, i);
        std::size_t nf = 0, no = 0;
        for (const auto& gen : m.generators) (gen.family == "forms" ? no : nf) += 1;
        bool bounded = h.free_rank == 0;
        for (const auto& t : h.torsion)
            if (t > bound || ipow(ring.P(), valuation(t, ring.P())) != t) bounded = false;
        deg[std::to_string(i)] = {{"integral", to_json(h)},
                                  {"dims_mod_p", m.dim},
                                  {"predicted_mod_p", m.predicted},
                                  {"decomposition", {{"forms", no}, {"functions", nf}}},
                                  {"representatives_ok", m.reps_are_cycles && m.reps_form_basis},
                                  {"module_structure_ok", m.module_structure_ok},
                                  {"p_primary_bounded", bounded}};
    }
    return {{"r", r}, {"L", L}, {"M", M}, {"degrees", deg}};
}

}  // namespace artifact
