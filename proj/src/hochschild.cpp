#include "artifact/hochschild.hpp"

#include "artifact/conventions.hpp"
#include "artifact/hkr.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace artifact {

bool HMono::is_unit() const {
    return eps == 0 && std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

HChain HChain::tuple(const HTuple& t, const Int& c) {
    HChain x;
    x.add(t, c);
    return x;
}

void HChain::add(const HTuple& t, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(t);
    if (it == terms.end()) {
        terms.emplace(t, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

HChain HChain::operator+(const HChain& o) const {
    HChain r = *this;
    for (const auto& [t, c] : o.terms) r.add(t, c);
    return r;
}

HChain HChain::operator-(const HChain& o) const { return *this + o.scaled(-1); }

HChain HChain::scaled(const Int& c) const {
    HChain r;
    if (c == 0) return r;
    for (const auto& [t, v] : terms) r.terms.emplace(t, v * c);
    return r;
}

namespace {

std::string mono_str(const HMono& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
        if (m.exps[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[v];
        if (m.exps[v] != 1) s += "^" + std::to_string(m.exps[v]);
    }
    if (m.eps) s += s.empty() ? "eps" : "*eps";
    return s.empty() ? "1" : s;
}

}  // namespace

std::string HChain::to_string(const std::vector<std::string>& vars) const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [t, c] : terms) {
        Int a = abs(c);
        if (!first) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        first = false;
        if (a != 1) s += a.get_str() + "*";
        s += "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + mono_str(t[i], vars);
        s += ")";
    }
    return s;
}

int total_degree(const HTuple& t) {
    int w = 0;
    for (const auto& m : t) w += m.weight();
    return static_cast<int>(t.size()) - 1 + w;
}

HochschildCdga HochschildCdga::over(const RingSpec& ring, const DRElement& ell) {
    HochschildCdga A;
    A.vars = ring.vars;
    A.laurent = ring.laurent;
    for (const auto& [m, c] : ell.terms) {
        if (m.degree() != 0) throw DomainError("HochschildCdga: delta(eps) must be a 0-form");
        A.ell[m.exps] = c;
    }
    A.zero_delta = ell.is_zero();
    return A;
}

HochschildCdga HochschildCdga::truncated_integers(long p, int n) {
    HochschildCdga A;
    A.ell[{}] = ipow(Int(p), n);
    return A;
}

HochschildCdga HochschildCdga::cyclic_group_model(long p) {
    HochschildCdga A;
    A.vars = {"X"};
    A.laurent = {false};
    A.ell[{static_cast<int>(p)}] = 1;
    A.ell[{0}] = -1;
    return A;
}

HMono HochschildCdga::one() const { return {std::vector<int>(nvars(), 0), 0}; }

HMono HochschildCdga::var(std::size_t v, int e) const {
    HMono m = one();
    m.exps.at(v) = e;
    return m;
}

HMono HochschildCdga::epsilon(const std::vector<int>& e) const {
    HMono m = one();
    if (!e.empty()) m.exps = e;
    m.eps = 1;
    return m;
}

HMono HochschildCdga::mono(const std::string& text) const {
    HMono m = one();
    std::size_t k = 0;
    auto fail = [&] { throw ParseError("cannot parse cdga monomial '" + text + "'"); };
    while (k < text.size()) {
        if (text[k] == '*') {
            ++k;
            continue;
        }
        if (text.compare(k, 3, "eps") == 0) {
            m.eps = 1;
            k += 3;
            continue;
        }
        if (text[k] == '1' && (k + 1 == text.size() || text[k + 1] == '*')) {
            ++k;
            continue;
        }
        std::size_t v = 0;
        for (; v < nvars(); ++v)
            if (text.compare(k, vars[v].size(), vars[v]) == 0) break;
        if (v == nvars()) fail();
        k += vars[v].size();
        int e = 1;
        if (k < text.size() && text[k] == '^') {
            std::size_t used = 0;
            e = std::stoi(text.substr(k + 1), &used);
            k += 1 + used;
        }
        m.exps[v] += e;
    }
    for (std::size_t v = 0; v < nvars(); ++v)
        if (m.exps[v] < 0 && !laurent[v]) throw DomainError("negative exponent on a polynomial variable");
    return m;
}

HTuple HochschildCdga::tuple(const std::vector<std::string>& slots) const {
    HTuple t;
    for (const auto& s : slots) t.push_back(mono(s));
    return t;
}

std::optional<HMono> hmul(const HMono& a, const HMono& b) {
    if (a.eps && b.eps) return std::nullopt;
    HMono r = a;
    for (std::size_t v = 0; v < r.exps.size(); ++v) r.exps[v] += b.exps[v];
    r.eps = a.eps + b.eps;
    return r;
}

HChain hh_b(const HochschildCdga&, const HChain& x) {
    HChain out;
    for (const auto& [t, c] : x.terms) {
        const int l = static_cast<int>(t.size()) - 1;
        if (l <= 0) continue;
        for (int i = 0; i < l; ++i) {
            auto pr = hmul(t[i], t[i + 1]);
            if (!pr) continue;
            HTuple s(t.begin(), t.begin() + i);
            s.push_back(*pr);
            s.insert(s.end(), t.begin() + i + 2, t.end());
            out.add(s, c * conv::sign(i));
        }
        auto pr = hmul(t[l], t[0]);
        if (!pr) continue;
        int w = 0;
        for (int j = 0; j < l; ++j) w += t[j].weight();
        HTuple s{*pr};
        s.insert(s.end(), t.begin() + 1, t.begin() + l);
        out.add(s, c * conv::sign(l + t[l].weight() * w));
    }
    return out;
}

HChain hh_delta(const HochschildCdga& A, const HChain& x) {
    HChain out;
    if (A.zero_delta) return out;
    for (const auto& [t, c] : x.terms) {
        int w = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i].eps) {
                for (const auto& [e, lc] : A.ell) {
                    HTuple s = t;
                    s[i].eps = 0;
                    for (std::size_t v = 0; v < e.size(); ++v) s[i].exps[v] += e[v];
                    out.add(s, c * lc * conv::sign(w));
                }
            }
            w += t[i].weight();
        }
    }
    return out;
}

HChain hh_total(const HochschildCdga& A, const HChain& x) {
    HChain out = hh_b(A, x);
    for (const auto& [t, c] : hh_delta(A, x).terms) out.add(t, c * conv::sign(static_cast<long>(t.size())));
    return out;
}

HChain hh_t(const HChain& x) {
    HChain out;
    for (const auto& [t, c] : x.terms) {
        const int l = static_cast<int>(t.size()) - 1;
        int w = 0;
        for (int j = 0; j < l; ++j) w += t[j].weight();
        HTuple s{t[l]};
        s.insert(s.end(), t.begin(), t.begin() + l);
        out.add(s, c * conv::sign(l + t[l].weight() * w));
    }
    return out;
}

HChain hh_N(const HChain& x) {
    HChain out;
    for (const auto& [t, c] : x.terms) {
        HChain y = HChain::tuple(t, c);
        for (std::size_t i = 0; i < t.size(); ++i) {
            out = out + y;
            y = hh_t(y);
        }
    }
    return out;
}

HChain hh_s(const HochschildCdga& A, const HChain& x) {
    HChain out;
    for (const auto& [t, c] : x.terms) {
        HTuple s{A.one()};
        s.insert(s.end(), t.begin(), t.end());
        out.add(s, c);
    }
    return out;
}

HChain hh_B(const HochschildCdga& A, const HChain& x) { return normalize(hh_s(A, hh_N(x))); }

HChain normalize(const HChain& x) {
    HChain out;
    for (const auto& [t, c] : x.terms)
        if (std::none_of(t.begin() + 1, t.end(), [](const HMono& m) { return m.is_unit(); })) out.add(t, c);
    return out;
}

HChain shuffle(const HChain& x, const HChain& y) {
    HChain out;
    for (const auto& [a, ca] : x.terms)
        for (const auto& [b, cb] : y.terms) {
            auto head = hmul(a[0], b[0]);
            if (!head) continue;
            const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
            int wa = 0;
            for (int i = 1; i <= m; ++i) wa += a[i].weight();
            const int s0 = conv::sign(b[0].weight() * wa);
            // positions of a_1..a_m among the m + n tail slots
            std::vector<int> pick(m + n, 0);
            std::fill(pick.begin(), pick.begin() + m, 1);
            std::sort(pick.begin(), pick.end());
            do {
                HTuple s{*head};
                int ia = 1, ib = 1;
                long sg = 0;
                for (int k = 0; k < m + n; ++k) {
                    if (pick[k]) {
                        // a_ia moves past the b's already placed
                        for (int j = 1; j < ib; ++j) sg += 1 + a[ia].weight() * b[j].weight();
                        s.push_back(a[ia++]);
                    } else {
                        s.push_back(b[ib++]);
                    }
                }
                out.add(s, ca * cb * s0 * conv::sign(sg));
            } while (std::next_permutation(pick.begin(), pick.end()));
        }
    return out;
}

namespace {

using Poly = std::map<std::vector<int>, Int>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [e, c] : a)
        for (const auto& [f, d] : b) {
            std::vector<int> g = e;
            for (std::size_t v = 0; v < g.size(); ++v) g[v] += f[v];
            r[g] += c * d;
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

}  // namespace

HChain push_forward(const HochschildCdga& src, const HochschildCdga& tgt, const HChain& x,
                    const std::vector<std::map<std::vector<int>, Int>>& var_images, const Int& eps_scale) {
    if (var_images.size() != src.nvars()) throw DomainError("push_forward: one image per variable required");
    auto image = [&](const HMono& m) {
        Poly r{{std::vector<int>(tgt.nvars(), 0), Int(1)}};
        for (std::size_t v = 0; v < m.exps.size(); ++v) {
            if (m.exps[v] < 0) throw DomainError("push_forward: negative exponents are not supported");
            for (int k = 0; k < m.exps[v]; ++k) r = poly_mul(r, var_images[v]);
        }
        if (m.eps)
            for (auto& [e, c] : r) c *= eps_scale;
        return r;
    };
    HChain out;
    for (const auto& [t, c] : x.terms) {
        std::vector<std::pair<HTuple, Int>> acc{{{}, c}};
        for (const auto& m : t) {
            std::vector<std::pair<HTuple, Int>> next;
            for (const auto& [e, k] : image(m))
                for (const auto& [pre, pc] : acc) {
                    HTuple s = pre;
                    s.push_back({e, m.eps});
                    next.emplace_back(std::move(s), pc * k);
                }
            acc = std::move(next);
        }
        for (const auto& [s, k] : acc) out.add(s, k);
    }
    return out;
}

CdgaElement hh_pi(const HochschildCdga& A, const HChain& x) {
    auto el = [&](const HMono& m) { return CdgaElement::monomial({{m.exps, {}}, m.eps, 0}); };
    (void)A;
    CdgaElement out;
    for (const auto& [t, c] : x.terms) {
        CdgaElement y = el(t[0]).scaled(c);
        for (std::size_t i = 1; i < t.size(); ++i) y = cdga_mul(y, cdga_d(el(t[i])));
        out = out + y;
    }
    return out;
}

HChain mod_p(const HChain& x, const Int& p) {
    HChain out;
    for (const auto& [t, c] : x.terms) out.add(t, mod_floor(c, p));
    return out;
}

namespace {

// normalized tuples of total degree n on a Laurent degree of a polynomial cdga
std::vector<HTuple> normalized_tuples(const HochschildCdga& A, const Graded& g, int n) {
    std::vector<HTuple> out;
    const std::size_t k = A.nvars();
    for (int l = 0; l <= n; ++l) {
        const int w = n - l;
        if (w > l + 1) continue;
        HTuple cur;
        std::function<void(int, std::vector<int>, int)> rec = [&](int slot, std::vector<int> rest, int epsleft) {
            if (slot == l + 1) {
                if (epsleft == 0 && std::all_of(rest.begin(), rest.end(), [](int r) { return r == 0; })) out.push_back(cur);
                return;
            }
            // enumerate exponent vectors bounded by rest
            std::vector<int> e(k, 0);
            std::function<void(std::size_t)> ex = [&](std::size_t v) {
                if (v == k) {
                    for (int j = 0; j <= std::min(1, epsleft); ++j) {
                        HMono m{e, j};
                        if (slot >= 1 && m.is_unit()) continue;
                        std::vector<int> r2 = rest;
                        for (std::size_t u = 0; u < k; ++u) r2[u] -= e[u];
                        cur.push_back(m);
                        rec(slot + 1, r2, epsleft - j);
                        cur.pop_back();
                    }
                    return;
                }
                for (int x = 0; x <= rest[v]; ++x) {
                    e[v] = x;
                    ex(v + 1);
                }
                e[v] = 0;
            };
            ex(0);
        };
        rec(0, g, w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IntMatrix chain_matrix(const std::vector<HTuple>& from, const std::vector<HTuple>& to,
                       const std::function<HChain(const HChain&)>& op) {
    std::map<HTuple, std::size_t> idx;
    for (std::size_t k = 0; k < to.size(); ++k) idx[to[k]] = k;
    IntMatrix M(to.size(), from.size());
    for (std::size_t j = 0; j < from.size(); ++j)
        for (const auto& [t, c] : op(HChain::tuple(from[j])).terms) {
            auto it = idx.find(t);
            if (it == idx.end()) throw StructuralError("Hochschild: image outside the truncated basis");
            M(it->second, j) = c;
        }
    return M;
}

}  // namespace

HochschildPiece hochschild_normalized(const HochschildCdga& A, const Graded& piece, int n_max) {
    for (bool l : A.laurent)
        if (l) throw DomainError("hochschild_normalized: Laurent variables give infinite-rank pieces; chain level only");
    if (!A.zero_delta)
        for (const auto& [e, c] : A.ell)
            if (std::any_of(e.begin(), e.end(), [](int x) { return x != 0; }))
                throw DomainError("hochschild_normalized: delta(eps) must be a constant to preserve the grading");
    if (piece.size() != A.nvars()) throw DomainError("hochschild_normalized: piece has the wrong number of variables");
    HochschildPiece h;
    h.piece = piece;
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (int n = 0; n <= n_max; ++n) {
        h.basis[n] = normalized_tuples(A, piece, n);
        for (const auto& t : h.basis[n]) labels[-n].push_back(HChain::tuple(t).to_string(A.vars));
    }
    for (int n = 1; n <= n_max; ++n)
        diffs[-n] = chain_matrix(h.basis[n], h.basis[n - 1], [&](const HChain& x) { return normalize(hh_total(A, x)); });
    h.complex = FreeComplex(std::move(labels), std::move(diffs));
    return h;
}

namespace {

// strips every prime factor <= n
Int strip_small(Int x, int n) {
    x = abs(x);
    for (int q = 2; q <= n; ++q)
        while (x != 0 && x % q == 0) x /= q;
    return x;
}

}  // namespace

std::vector<FormalityDegree> formality_check(const RingSpec& ring, int n_max) {
    ring.validate();
    HochschildCdga A = HochschildCdga::over(ring, DRElement());
    std::vector<FormalityDegree> rows(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        rows[n].n = n;
        rows[n].pi_det = 1;
        rows[n].iso_after_inverting = true;
    }
    for (const auto& g : ring.graded_pieces()) {
        HochschildPiece H = hochschild_normalized(A, g, n_max + 1);
        std::map<int, IntMatrix> P;
        for (int n = 0; n <= n_max + 1; ++n) {
            auto cb = c_basis(ring, g, n);
            std::map<CdgaMonomial, std::size_t> idx;
            for (std::size_t k = 0; k < cb.size(); ++k) idx[cb[k]] = k;
            IntMatrix M(cb.size(), H.basis[n].size());
            for (std::size_t j = 0; j < H.basis[n].size(); ++j)
                for (const auto& [x, c] : hh_pi(A, HChain::tuple(H.basis[n][j])).terms) M(idx.at(x), j) = c;
            P[n] = M;
            if (n >= 1 && !(P[n - 1] * H.complex.diff(-n)).is_zero())
                throw StructuralError("formality_check: pi does not kill Hochschild boundaries");
        }
        for (int n = 0; n <= n_max; ++n) {
            FormalityDegree& row = rows[n];
            AbGroupData h = homology(H.complex, -n);
            row.hh_free += h.free_rank;
            row.c_rank += P[n].rows();
            row.hh_torsion.insert(row.hh_torsion.end(), h.torsion.begin(), h.torsion.end());
            for (const auto& t : h.torsion)
                if (strip_small(t, n) != 1) row.iso_after_inverting = false;
            if (h.free_rank != P[n].rows()) {
                row.iso_after_inverting = false;
                continue;
            }
            std::vector<IntVec> cols;
            for (std::size_t k = h.torsion.size(); k < h.generators(); ++k) cols.push_back(P[n] * h.reps[k]);
            Int det = h.free_rank ? determinant(IntMatrix::from_columns(P[n].rows(), cols)) : Int(1);
            row.pi_det *= det;
            if (det == 0 || strip_small(det, n) != 1) row.iso_after_inverting = false;
        }
    }
    for (auto& row : rows) {
        std::sort(row.hh_torsion.begin(), row.hh_torsion.end());
        row.q_parts_match = row.hh_free == row.c_rank &&
                            std::all_of(row.hh_torsion.begin(), row.hh_torsion.end(),
                                        [&](const Int& t) { return strip_small(t, n_max) == 1; });
    }
    return rows;
}

DennisTrace dennis_trace_bott(long p, int n) {
    if (n < 2 || (p == 2 && n == 2) || !is_prime(p)) throw RangeError("dennis_trace_bott: need n >= 2, p prime, (p,n) != (2,2)");
    DennisTrace r;
    r.p = p;
    r.n = n;
    const Int P(p), pn = ipow(P, n);
    r.x = 1 + ipow(P, n - 1);
    const Int top = ipow(r.x, p) - 1;
    r.u_integral = top % pn == 0;
    r.u = top / pn;
    r.u_is_one_mod_p = mod_floor(r.u, P) == 1;

    HochschildCdga Rt = HochschildCdga::cyclic_group_model(p);
    HochschildCdga Zt = HochschildCdga::truncated_integers(p, n);
    HChain sum;
    for (long i = 1; i <= p - 1; ++i)
        sum.add({Rt.var(0, static_cast<int>(p - i - 1)), Rt.var(0, static_cast<int>(i)), Rt.var(0)}, 1);
    HChain one_deps;
    for (const auto& [e, c] : Rt.ell) one_deps.add({Rt.one(), {e, 0}}, c);
    HChain rhs = HChain::tuple({Rt.var(0, static_cast<int>(p - 1)), Rt.var(0)}, P) - HChain::tuple({Rt.one(), Rt.one()}) - one_deps;
    r.chain_identity = hh_b(Rt, sum) == rhs;

    HChain z = sum + HChain::tuple({Rt.one(), Rt.epsilon()});
    r.is_mod_p_cycle = mod_p(normalize(hh_total(Rt, z)), P).is_zero();

    std::vector<std::map<std::vector<int>, Int>> img{{{std::vector<int>{}, r.x}}};
    auto g = [&](const HChain& c) { return push_forward(Rt, Zt, c, img, r.u); };
    // g(delta eps) = delta(g eps) and compatibility with b and delta on the chain
    HChain e = HChain::tuple({Rt.epsilon()});
    r.g_is_cdga_map = g(hh_delta(Rt, e)) == hh_delta(Zt, g(e)) && g(hh_delta(Rt, z)) == hh_delta(Zt, g(z)) &&
                      g(hh_b(Rt, z)) == hh_b(Zt, g(z)) && r.u_integral;
    r.image = mod_p(normalize(g(z)), P);
    r.equals_one_eps = r.image == HChain::tuple({Zt.one(), Zt.epsilon()});
    return r;
}

}  // namespace artifact
