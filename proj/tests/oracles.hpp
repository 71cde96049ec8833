#pragma once

// Independent reference computations used by the unit tests. Nothing here calls the
// Smith normal form code under test.

#include "artifact/exactalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

namespace oracle {

using artifact::FreeComplex;
using artifact::Int;
using artifact::IntMatrix;

inline Int minor_det(const IntMatrix& M, const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
    const std::size_t k = rs.size();
    if (k == 0) return 1;
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    Int total = 0;
    do {
        int inv = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                if (perm[a] > perm[b]) ++inv;
        Int term = (inv % 2) ? -1 : 1;
        for (std::size_t a = 0; a < k; ++a) term *= M(rs[a], cs[perm[a]]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

// Invariant factors through determinantal divisors d_k = gcd of k x k minors.
inline std::vector<Int> invariant_factors(const IntMatrix& M) {
    std::vector<Int> out;
    Int prev = 1;
    for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        subsets(M.rows(), k, rs);
        subsets(M.cols(), k, cs);
        Int g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) g = gcd(g, minor_det(M, r, c));
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

inline std::size_t rational_rank(const IntMatrix& M) {
    std::vector<std::vector<mpq_class>> A(M.rows(), std::vector<mpq_class>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) A[i][j] = mpq_class(M(i, j));
    std::size_t row = 0;
    for (std::size_t j = 0; j < M.cols() && row < M.rows(); ++j) {
        std::size_t s = row;
        while (s < M.rows() && A[s][j] == 0) ++s;
        if (s == M.rows()) continue;
        std::swap(A[row], A[s]);
        for (std::size_t i = row + 1; i < M.rows(); ++i) {
            if (A[i][j] == 0) continue;
            mpq_class f = A[i][j] / A[row][j];
            for (std::size_t c = j; c < M.cols(); ++c) A[i][c] -= f * A[row][c];
        }
        ++row;
    }
    return row;
}

inline std::size_t fp_rank(const IntMatrix& M, long p) {
    std::vector<std::vector<long>> A(M.rows(), std::vector<long>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) {
            Int r = M(i, j) % p;
            if (r < 0) r += p;
            A[i][j] = r.get_si();
        }
    auto inv = [p](long a) {
        long r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::size_t row = 0;
    for (std::size_t j = 0; j < M.cols() && row < M.rows(); ++j) {
        std::size_t s = row;
        while (s < M.rows() && A[s][j] == 0) ++s;
        if (s == M.rows()) continue;
        std::swap(A[row], A[s]);
        long iv = inv(A[row][j]);
        for (std::size_t i = row + 1; i < M.rows(); ++i) {
            if (A[i][j] == 0) continue;
            long f = A[i][j] * iv % p;
            for (std::size_t c = j; c < M.cols(); ++c) A[i][c] = ((A[i][c] - f * A[row][c]) % p + p) % p;
        }
        ++row;
    }
    return row;
}

inline std::size_t rational_betti(const FreeComplex& C, int i) {
    return C.rank(i) - rational_rank(C.diff(i)) - rational_rank(C.diff(i - 1));
}

// dim H^i(C/p) for a complex of free modules.
inline std::size_t mod_p_betti(const FreeComplex& C, int i, long p) {
    return C.rank(i) - fp_rank(C.diff(i), p) - fp_rank(C.diff(i - 1), p);
}

// Torsion of H^i equals the torsion of coker(d_{i-1}).
inline bool homology_order_matches(const FreeComplex& C, int i, const artifact::AbGroupData& h) {
    std::vector<Int> t;
    for (const auto& f : invariant_factors(C.diff(i - 1)))
        if (f != 1) t.push_back(f);
    return t == h.torsion;
}

// Direct sum of elementary complexes conjugated by random unimodular changes of basis.
inline FreeComplex random_complex(std::mt19937& rng, int nterms, std::vector<long> scales = {1, 2, 3, 5, 6}) {
    std::uniform_int_distribution<int> pieces(0, 2), pick(0, static_cast<int>(scales.size()) - 1);
    std::vector<std::vector<long>> elem(nterms);  // per degree: scale of arrow out (0 = none)
    std::vector<int> rank(nterms, 0);
    std::vector<std::vector<std::pair<int, int>>> arrows(nterms);  // (src index, tgt index)
    std::vector<std::vector<long>> arrow_scale(nterms);
    for (int d = 0; d < nterms; ++d) {
        int free_here = pieces(rng) % 2;
        rank[d] += free_here;
        if (d + 1 < nterms) {
            int na = pieces(rng);
            for (int a = 0; a < na; ++a) {
                arrows[d].push_back({rank[d], rank[d + 1]});
                arrow_scale[d].push_back(scales[pick(rng)]);
                rank[d]++;
                rank[d + 1]++;
            }
        }
    }
    std::uniform_int_distribution<int> coef(-2, 2);
    std::vector<IntMatrix> G, Ginv;
    for (int d = 0; d < nterms; ++d) {
        const int n = rank[d];
        IntMatrix g = IntMatrix::identity(n), gi = IntMatrix::identity(n);
        for (int step = 0; step < 3 * n && n > 1; ++step) {
            std::uniform_int_distribution<int> idx(0, n - 1);
            int i = idx(rng), j = idx(rng);
            if (i == j) continue;
            Int q = coef(rng);
            g.add_row(i, j, q);
            gi.add_col(j, i, -q);
        }
        G.push_back(g);
        Ginv.push_back(gi);
    }
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (int d = 0; d < nterms; ++d) {
        std::vector<std::string> ls;
        for (int k = 0; k < rank[d]; ++k) ls.push_back("e" + std::to_string(k));
        labels[d] = ls;
    }
    for (int d = 0; d + 1 < nterms; ++d) {
        IntMatrix m(rank[d + 1], rank[d]);
        for (std::size_t a = 0; a < arrows[d].size(); ++a) m(arrows[d][a].second, arrows[d][a].first) = arrow_scale[d][a];
        diffs[d] = G[d + 1] * m * Ginv[d];
    }
    return FreeComplex(labels, diffs);
}

}  // namespace oracle
