#include "artifact/exactalg.hpp"

#include "artifact/conventions.hpp"

#include <algorithm>
#include <climits>
#include <set>
#include <sstream>

namespace artifact {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::vector<long>>& init)
    : IntMatrix(rows, cols) {
    if (init.size() != rows) throw StructuralError("IntMatrix: row count mismatch");
    for (std::size_t i = 0; i < rows; ++i) {
        if (init[i].size() != cols) throw StructuralError("IntMatrix: column count mismatch");
        for (std::size_t j = 0; j < cols; ++j) (*this)(i, j) = init[i][j];
    }
}

IntMatrix IntMatrix::identity(std::size_t n) { return scalar(n, 1); }

IntMatrix IntMatrix::scalar(std::size_t n, const Int& s) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw StructuralError("hstack: row mismatch");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols()) throw StructuralError("vstack: column mismatch");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw StructuralError("from_columns: length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (c_ != o.r_) throw StructuralError("matrix product: shape mismatch");
    IntMatrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                const Int& y = o(k, j);
                if (y != 0) m(i, j) += x * y;
            }
        }
    return m;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
    if (c_ != v.size()) throw StructuralError("matrix-vector product: shape mismatch");
    IntVec out(r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k)
            if ((*this)(i, k) != 0 && v[k] != 0) out[i] += (*this)(i, k) * v[k];
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw StructuralError("matrix sum: shape mismatch");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
    return m;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw StructuralError("matrix difference: shape mismatch");
    IntMatrix m = *this;
    for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
    return m;
}

IntMatrix IntMatrix::operator-() const { return scaled(-1); }

IntMatrix IntMatrix::scaled(const Int& s) const {
    IntMatrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

bool IntMatrix::operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > r_ || c0 + nc > c_) throw StructuralError("block: out of range");
    IntMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& b) {
    if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw StructuralError("set_block: out of range");
    for (std::size_t i = 0; i < b.r_; ++i)
        for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntVec IntMatrix::column(std::size_t j) const {
    IntVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec v(c_);
    for (std::size_t j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < c_; ++k)
        if ((*this)(j, k) != 0) (*this)(i, k) += q * (*this)(j, k);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < r_; ++k)
        if ((*this)(k, j) != 0) (*this)(k, i) += q * (*this)(k, j);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// Smith normal form with all four transforms tracked.
struct SnfState {
    IntMatrix S, U, Uinv, V, Vinv;

    // row_i -= q row_t
    void row_sub(std::size_t i, std::size_t t, const Int& q) {
        S.add_row(i, t, -q);
        U.add_row(i, t, -q);
        Uinv.add_col(t, i, q);
    }
    void col_sub(std::size_t j, std::size_t t, const Int& q) {
        S.add_col(j, t, -q);
        V.add_col(j, t, -q);
        Vinv.add_row(t, j, q);
    }
    void row_swap(std::size_t i, std::size_t j) {
        S.swap_rows(i, j);
        U.swap_rows(i, j);
        Uinv.swap_cols(i, j);
    }
    void col_swap(std::size_t i, std::size_t j) {
        S.swap_cols(i, j);
        V.swap_cols(i, j);
        Vinv.swap_rows(i, j);
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < S.cols(); ++k) S(i, k) = -S(i, k);
        for (std::size_t k = 0; k < U.cols(); ++k) U(i, k) = -U(i, k);
        for (std::size_t k = 0; k < Uinv.rows(); ++k) Uinv(k, i) = -Uinv(k, i);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    const std::size_t m = M.rows(), n = M.cols();
    SnfState st{M, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
    IntMatrix& S = st.S;
    std::size_t t = 0;
    const std::size_t lim = std::min(m, n);
    while (t < lim) {
        std::size_t pi = m, pj = n;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (S(i, j) == 0) continue;
                Int a = abs(S(i, j));
                if (pi == m || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        st.row_swap(t, pi);
        st.col_swap(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S(i, t).get_mpz_t(), S(t, t).get_mpz_t());
                st.row_sub(i, t, q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S(t, j).get_mpz_t(), S(t, t).get_mpz_t());
                st.col_sub(j, t, q);
                if (S(t, j) != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t, bj = t;
                Int b = abs(S(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (S(i, t) != 0 && abs(S(i, t)) < b) {
                        b = abs(S(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(t, j) != 0 && abs(S(t, j)) < b) {
                        b = abs(S(t, j));
                        bi = t;
                        bj = j;
                    }
                st.row_swap(t, bi);
                st.col_swap(t, bj);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (S(i, j) != 0 && !mpz_divisible_p(S(i, j).get_mpz_t(), S(t, t).get_mpz_t())) {
                        st.row_sub(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(t, t) < 0) st.row_negate(t);
        ++t;
    }
    SmithForm out{st.U, st.Uinv, st.S, st.V, st.Vinv, t, {}};
    for (std::size_t k = 0; k < t; ++k) out.diag.push_back(out.S(k, k));
    return out;
}

Int determinant(const IntMatrix& M) {
    if (M.rows() != M.cols()) throw StructuralError("determinant: non-square matrix");
    const std::size_t n = M.rows();
    if (n == 0) return 1;
    IntMatrix A = M;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (A(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && A(s, k) == 0) ++s;
            if (s == n) return 0;
            A.swap_rows(k, s);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                A(i, j) = v;
            }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

FreeComplex::FreeComplex(std::map<int, std::vector<std::string>> labels, std::map<int, IntMatrix> diffs)
    : labels_(std::move(labels)), diffs_(std::move(diffs)) {
    for (const auto& [deg, ls] : labels_) {
        std::set<std::string> seen(ls.begin(), ls.end());
        if (seen.size() != ls.size())
            throw StructuralError("FreeComplex: duplicate basis label in degree " + std::to_string(deg));
    }
    for (auto it = diffs_.begin(); it != diffs_.end();) {
        const int i = it->first;
        const IntMatrix& d = it->second;
        if (d.rows() != rank(i + 1) || d.cols() != rank(i))
            throw StructuralError("FreeComplex: differential shape mismatch in degree " + std::to_string(i));
        if (d.is_zero())
            it = diffs_.erase(it);
        else
            ++it;
    }
    for (const auto& [i, d] : diffs_) {
        auto nx = diffs_.find(i + 1);
        if (nx == diffs_.end()) continue;
        if (!(nx->second * d).is_zero())
            throw StructuralError("FreeComplex: d^2 != 0 at degree " + std::to_string(i));
    }
}

std::size_t FreeComplex::rank(int i) const {
    auto it = labels_.find(i);
    return it == labels_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& FreeComplex::labels(int i) const {
    static const std::vector<std::string> none;
    auto it = labels_.find(i);
    return it == labels_.end() ? none : it->second;
}

IntMatrix FreeComplex::diff(int i) const {
    auto it = diffs_.find(i);
    if (it != diffs_.end()) return it->second;
    return IntMatrix(rank(i + 1), rank(i));
}

std::vector<int> FreeComplex::degrees() const {
    std::vector<int> out;
    for (const auto& kv : labels_) out.push_back(kv.first);
    return out;
}

int FreeComplex::min_degree() const { return labels_.empty() ? 0 : labels_.begin()->first; }
int FreeComplex::max_degree() const { return labels_.empty() ? -1 : labels_.rbegin()->first; }

std::size_t FreeComplex::total_rank() const {
    std::size_t s = 0;
    for (const auto& kv : labels_) s += kv.second.size();
    return s;
}

ChainMap::ChainMap(FreeComplex source, FreeComplex target, std::map<int, IntMatrix> components, int shift)
    : src_(std::move(source)), tgt_(std::move(target)), comps_(std::move(components)), shift_(shift) {
    for (const auto& [i, f] : comps_)
        if (f.rows() != tgt_.rank(i + shift_) || f.cols() != src_.rank(i))
            throw StructuralError("ChainMap: component shape mismatch in degree " + std::to_string(i));
    std::set<int> degs;
    for (int i : src_.degrees()) degs.insert(i);
    for (int i : tgt_.degrees()) degs.insert(i - shift_);
    for (int i : degs) {
        IntMatrix lhs = tgt_.diff(i + shift_) * component(i);
        IntMatrix rhs = component(i + 1) * src_.diff(i);
        if (lhs != rhs)
            throw StructuralError("ChainMap: commutation with differentials fails in degree " + std::to_string(i));
    }
}

IntMatrix ChainMap::component(int i) const {
    auto it = comps_.find(i);
    if (it != comps_.end()) return it->second;
    return IntMatrix(tgt_.rank(i + shift_), src_.rank(i));
}

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

unsigned long valuation(const Int& a, const Int& p) {
    if (a == 0) return ULONG_MAX;
    Int x = a;
    unsigned long v = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

bool is_zero_vec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVec AbGroupData::classify(const IntVec& cycle) const {
    IntVec c = class_map * cycle;
    for (std::size_t k = 0; k < torsion.size(); ++k) c[k] = mod_floor(c[k], torsion[k]);
    return c;
}

std::size_t AbGroupData::p_rank(const Int& p) const {
    std::size_t n = free_rank;
    for (const auto& t : torsion)
        if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++n;
    return n;
}

std::size_t AbGroupData::p_torsion_rank(const Int& p) const {
    std::size_t n = 0;
    for (const auto& t : torsion)
        if (mpz_divisible_p(t.get_mpz_t(), p.get_mpz_t())) ++n;
    return n;
}

bool AbGroupData::is_p_primary(const Int& p) const {
    if (free_rank) return false;
    for (const auto& t : torsion) {
        Int x = t;
        while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        if (x != 1) return false;
    }
    return true;
}

AbGroupData homology(const FreeComplex& C, int i) {
    const std::size_t k = C.rank(i);
    AbGroupData out;
    out.term_rank = k;
    out.class_map = IntMatrix(0, k);
    if (k == 0) return out;
    SmithForm sd = smith_normal_form(C.diff(i));
    const std::size_t r = sd.rank;
    const std::size_t z = k - r;
    IntMatrix P = sd.Vinv.block(r, 0, z, k);
    IntMatrix X = P * C.diff(i - 1);
    SmithForm sx = smith_normal_form(X);
    IntMatrix Q = sx.U * P;
    IntMatrix Kb = sd.V.block(0, r, k, z);
    std::vector<std::size_t> keep_t, keep_f;
    for (std::size_t idx = 0; idx < z; ++idx) {
        if (idx < sx.rank) {
            if (sx.diag[idx] != 1) keep_t.push_back(idx);
        } else {
            keep_f.push_back(idx);
        }
    }
    std::vector<std::size_t> keep = keep_t;
    keep.insert(keep.end(), keep_f.begin(), keep_f.end());
    out.free_rank = keep_f.size();
    out.class_map = IntMatrix(keep.size(), k);
    for (std::size_t a = 0; a < keep.size(); ++a) {
        const std::size_t idx = keep[a];
        for (std::size_t j = 0; j < k; ++j) out.class_map(a, j) = Q(idx, j);
        if (a < keep_t.size()) out.torsion.push_back(sx.diag[idx]);
        out.reps.push_back(Kb * sx.Uinv.column(idx));
    }
    return out;
}

bool is_cycle(const FreeComplex& C, int i, const IntVec& z) { return is_zero_vec(C.diff(i) * z); }

FreeComplex mod_p_complex(const FreeComplex& C, const Int& p) {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    if (C.empty()) return {};
    const int lo = C.min_degree() - 1, hi = C.max_degree();
    for (int i = lo; i <= hi; ++i) {
        std::vector<std::string> ls;
        for (const auto& l : C.labels(i)) ls.push_back("a|" + l);
        for (const auto& l : C.labels(i + 1)) ls.push_back("b|" + l);
        labels[i] = std::move(ls);
    }
    for (int i = lo; i < hi; ++i) {
        const std::size_t a = C.rank(i), b = C.rank(i + 1), c = C.rank(i + 2);
        IntMatrix d(b + c, a + b);
        d.set_block(0, 0, C.diff(i));
        d.set_block(0, a, IntMatrix::scalar(b, p));
        d.set_block(b, a, -C.diff(i + 1));
        diffs[i] = std::move(d);
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

IntVec mod_p_lift(const FreeComplex& C, int i, const IntVec& a, const Int& p) {
    IntVec da = C.diff(i) * a;
    IntVec out = a;
    for (auto& x : da) {
        if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()))
            throw StructuralError("mod_p_lift: element is not a mod-p cycle");
        Int q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        out.push_back(-q);
    }
    return out;
}

std::size_t mod_p_dimension(const FreeComplex& C, int i, const Int& p) {
    FreeComplex M = mod_p_complex(C, p);
    AbGroupData H = homology(M, i);
    if (H.free_rank) throw StructuralError("mod_p_dimension: free summand in mod-p homology");
    for (const auto& t : H.torsion)
        if (t != p) throw StructuralError("mod_p_dimension: invariant factor different from p");
    return H.torsion.size();
}

static std::vector<std::string> prefixed(const std::string& pre, const std::vector<std::string>& ls) {
    std::vector<std::string> out;
    out.reserve(ls.size());
    for (const auto& l : ls) out.push_back(pre + l);
    return out;
}

FreeComplex cone(const ChainMap& f) {
    if (f.shift() != 0) throw StructuralError("cone: map must have degree 0");
    const FreeComplex& X = f.source();
    const FreeComplex& Y = f.target();
    const int s = conv::cone_sign;
    std::set<int> degs;
    for (int i : X.degrees()) degs.insert(i - 1);
    for (int i : Y.degrees()) degs.insert(i);
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (int i : degs) {
        auto ls = prefixed("s|", X.labels(i + 1));
        auto lt = prefixed("t|", Y.labels(i));
        ls.insert(ls.end(), lt.begin(), lt.end());
        labels[i] = std::move(ls);
    }
    for (int i : degs) {
        if (!degs.count(i + 1)) continue;
        const std::size_t a = X.rank(i + 1), b = Y.rank(i), c = X.rank(i + 2), e = Y.rank(i + 1);
        IntMatrix d(c + e, a + b);
        d.set_block(0, 0, -X.diff(i + 1));
        d.set_block(c, 0, f.component(i + 1).scaled(s));
        d.set_block(c, a, Y.diff(i));
        diffs[i] = std::move(d);
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

FreeComplex fiber(const ChainMap& f) {
    if (f.shift() != 0) throw StructuralError("fiber: map must have degree 0");
    const FreeComplex& X = f.source();
    const FreeComplex& Y = f.target();
    const int s = conv::cone_sign;
    std::set<int> degs;
    for (int i : X.degrees()) degs.insert(i);
    for (int i : Y.degrees()) degs.insert(i + 1);
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (int i : degs) {
        auto ls = prefixed("s|", X.labels(i));
        auto lt = prefixed("t|", Y.labels(i - 1));
        ls.insert(ls.end(), lt.begin(), lt.end());
        labels[i] = std::move(ls);
    }
    for (int i : degs) {
        if (!degs.count(i + 1)) continue;
        const std::size_t a = X.rank(i), b = Y.rank(i - 1), c = X.rank(i + 1), e = Y.rank(i);
        IntMatrix d(c + e, a + b);
        d.set_block(0, 0, X.diff(i));
        d.set_block(c, 0, f.component(i).scaled(s));
        d.set_block(c, a, -Y.diff(i - 1));
        diffs[i] = std::move(d);
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

FreeComplex shift(const FreeComplex& C, int n) {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    const int s = conv::sign(n);
    for (const auto& [i, ls] : C.all_labels()) labels[i - n] = ls;
    for (const auto& [i, d] : C.all_diffs()) diffs[i - n] = d.scaled(s);
    return FreeComplex(std::move(labels), std::move(diffs));
}

FreeComplex direct_sum(const FreeComplex& A, const FreeComplex& B) {
    std::set<int> degs;
    for (int i : A.degrees()) degs.insert(i);
    for (int i : B.degrees()) degs.insert(i);
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (int i : degs) {
        auto la = prefixed("0|", A.labels(i));
        auto lb = prefixed("1|", B.labels(i));
        la.insert(la.end(), lb.begin(), lb.end());
        labels[i] = std::move(la);
    }
    for (int i : degs) {
        if (!degs.count(i + 1)) continue;
        IntMatrix d(A.rank(i + 1) + B.rank(i + 1), A.rank(i) + B.rank(i));
        d.set_block(0, 0, A.diff(i));
        d.set_block(A.rank(i + 1), A.rank(i), B.diff(i));
        diffs[i] = std::move(d);
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

FreeComplex truncate(const FreeComplex& C, int lo, int hi) {
    std::map<int, std::vector<std::string>> labels;
    std::map<int, IntMatrix> diffs;
    for (const auto& [i, ls] : C.all_labels())
        if (i >= lo && i <= hi) labels[i] = ls;
    for (const auto& [i, d] : C.all_diffs())
        if (i >= lo && i + 1 <= hi) diffs[i] = d;
    return FreeComplex(std::move(labels), std::move(diffs));
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
    if (f.shift() != g.shift()) throw StructuralError("direct_sum: shift mismatch");
    FreeComplex S = direct_sum(f.source(), g.source());
    FreeComplex T = direct_sum(f.target(), g.target());
    std::map<int, IntMatrix> comps;
    for (int i : S.degrees()) {
        const int j = i + f.shift();
        IntMatrix c(T.rank(j), S.rank(i));
        c.set_block(0, 0, f.component(i));
        c.set_block(f.target().rank(j), f.source().rank(i), g.component(i));
        comps[i] = std::move(c);
    }
    return ChainMap(std::move(S), std::move(T), std::move(comps), f.shift());
}

FreeComplex total_complex(const std::vector<FreeComplex>& rows, const std::vector<ChainMap>& verticals,
                          const std::vector<int>& signs) {
    const std::size_t k = rows.size();
    if (signs.size() != k || (k > 0 && verticals.size() != k - 1))
        throw StructuralError("total_complex: need one sign per row and one vertical per adjacent pair");
    std::set<int> degs;
    for (std::size_t j = 0; j < k; ++j)
        for (int i : rows[j].degrees()) degs.insert(i + static_cast<int>(j));
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<std::size_t>> offsets;
    for (int i : degs) {
        std::vector<std::string> ls;
        std::vector<std::size_t> off;
        for (std::size_t j = 0; j < k; ++j) {
            off.push_back(ls.size());
            auto lj = prefixed("r" + std::to_string(j) + "|", rows[j].labels(i - static_cast<int>(j)));
            ls.insert(ls.end(), lj.begin(), lj.end());
        }
        labels[i] = std::move(ls);
        offsets[i] = std::move(off);
    }
    std::map<int, IntMatrix> diffs;
    for (int i : degs) {
        if (!degs.count(i + 1)) continue;
        IntMatrix d(labels[i + 1].size(), labels[i].size());
        for (std::size_t j = 0; j < k; ++j) {
            const int q = i - static_cast<int>(j);
            d.set_block(offsets[i + 1][j], offsets[i][j], rows[j].diff(q).scaled(signs[j]));
            if (j + 1 < k) d.set_block(offsets[i + 1][j + 1], offsets[i][j], verticals[j].component(q));
        }
        diffs[i] = std::move(d);
    }
    for (int i : degs) {
        if (!diffs.count(i) || !diffs.count(i + 1)) continue;
        IntMatrix dd = diffs[i + 1] * diffs[i];
        if (dd.is_zero()) continue;
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t jj = 0; jj < k; ++jj) {
                const std::size_t r0 = offsets[i + 2][jj], c0 = offsets[i][j];
                const std::size_t nr = rows[jj].rank(i + 2 - static_cast<int>(jj));
                const std::size_t nc = rows[j].rank(i - static_cast<int>(j));
                if (!dd.block(r0, c0, nr, nc).is_zero())
                    throw StructuralError("total_complex: d^2 != 0 from bidegree (" + std::to_string(j) + ", " +
                                          std::to_string(i - static_cast<int>(j)) + ") into row " +
                                          std::to_string(jj));
            }
    }
    return FreeComplex(std::move(labels), std::move(diffs));
}

IntMatrix kernel_basis(const IntMatrix& M) {
    SmithForm s = smith_normal_form(M);
    return s.V.block(0, s.rank, M.cols(), M.cols() - s.rank);
}

IntMatrix image_basis(const IntMatrix& M) {
    SmithForm s = smith_normal_form(M);
    IntMatrix out(M.rows(), s.rank);
    for (std::size_t t = 0; t < s.rank; ++t)
        for (std::size_t i = 0; i < M.rows(); ++i) out(i, t) = s.Uinv(i, t) * s.diag[t];
    return out;
}

std::optional<IntVec> solve_integer(const IntMatrix& M, const IntVec& b) {
    SmithForm s = smith_normal_form(M);
    IntVec c = s.U * b;
    IntVec y(M.cols());
    for (std::size_t t = 0; t < c.size(); ++t) {
        if (t < s.rank) {
            if (!mpz_divisible_p(c[t].get_mpz_t(), s.diag[t].get_mpz_t())) return std::nullopt;
            mpz_divexact(y[t].get_mpz_t(), c[t].get_mpz_t(), s.diag[t].get_mpz_t());
        } else if (c[t] != 0) {
            return std::nullopt;
        }
    }
    return s.V * y;
}

QuotientInvariants quotient_invariants(const IntMatrix& N, const IntMatrix& D) {
    IntMatrix Nb = image_basis(N);
    QuotientInvariants q;
    if (Nb.cols() == 0) return q;
    IntMatrix coords(Nb.cols(), D.cols());
    for (std::size_t j = 0; j < D.cols(); ++j) {
        auto c = solve_integer(Nb, D.column(j));
        if (!c) throw StructuralError("quotient_invariants: subgroup not contained in lattice");
        for (std::size_t i = 0; i < Nb.cols(); ++i) coords(i, j) = (*c)[i];
    }
    SmithForm s = smith_normal_form(coords);
    q.free_rank = Nb.cols() - s.rank;
    for (const auto& d : s.diag)
        if (d != 1) q.torsion.push_back(d);
    return q;
}

namespace {

// Row echelon form over F_p; returns pivot columns.
std::vector<std::size_t> echelon_mod_p(IntMatrix& A, const Int& p, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t j = 0; j < ncols && row < A.rows(); ++j) {
        std::size_t s = row;
        while (s < A.rows() && mod_floor(A(s, j), p) == 0) ++s;
        if (s == A.rows()) continue;
        A.swap_rows(row, s);
        Int inv;
        Int piv = mod_floor(A(row, j), p);
        mpz_invert(inv.get_mpz_t(), piv.get_mpz_t(), p.get_mpz_t());
        for (std::size_t c = 0; c < A.cols(); ++c) A(row, c) = mod_floor(A(row, c) * inv, p);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == row) continue;
            Int f = mod_floor(A(i, j), p);
            if (f == 0) continue;
            for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = mod_floor(A(i, c) - f * A(row, c), p);
        }
        pivots.push_back(j);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& M, const Int& p) {
    IntMatrix A = M;
    return echelon_mod_p(A, p, A.cols()).size();
}

std::optional<IntVec> solve_mod_p(const IntMatrix& M, const IntVec& b, const Int& p) {
    IntMatrix A(M.rows(), M.cols() + 1);
    A.set_block(0, 0, M);
    for (std::size_t i = 0; i < M.rows(); ++i) A(i, M.cols()) = b[i];
    auto pivots = echelon_mod_p(A, p, M.cols() + 1);
    IntVec x(M.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == M.cols()) return std::nullopt;
        x[pivots[r]] = A(r, M.cols());
    }
    return x;
}

}  // namespace artifact
