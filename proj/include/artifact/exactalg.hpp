#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace artifact {

using Int = mpz_class;
using IntVec = std::vector<Int>;

struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, const std::vector<std::vector<long>>& init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix scalar(std::size_t n, const Int& s);
    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntMatrix operator*(const IntMatrix& o) const;
    IntVec operator*(const IntVec& v) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Int& s) const;
    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const;
    IntMatrix transpose() const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const IntMatrix& b);
    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const Int& q);
    // col_i += q * col_j
    void add_col(std::size_t i, std::size_t j, const Int& q);

    std::string to_string() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

// U * M * V = S, with Uinv = U^{-1} and Vinv = V^{-1}.
struct SmithForm {
    IntMatrix U, Uinv, S, V, Vinv;
    std::size_t rank = 0;
    std::vector<Int> diag;  // first `rank` diagonal entries, positive, successively dividing
};

SmithForm smith_normal_form(const IntMatrix& M);
Int determinant(const IntMatrix& M);

class FreeComplex {
public:
    FreeComplex() = default;
    // diffs[i] : term(i) -> term(i+1). Validated eagerly.
    FreeComplex(std::map<int, std::vector<std::string>> labels, std::map<int, IntMatrix> diffs);

    std::size_t rank(int i) const;
    const std::vector<std::string>& labels(int i) const;
    IntMatrix diff(int i) const;
    std::vector<int> degrees() const;
    int min_degree() const;
    int max_degree() const;
    bool empty() const { return labels_.empty(); }
    std::size_t total_rank() const;

    const std::map<int, std::vector<std::string>>& all_labels() const { return labels_; }
    const std::map<int, IntMatrix>& all_diffs() const { return diffs_; }

private:
    std::map<int, std::vector<std::string>> labels_;
    std::map<int, IntMatrix> diffs_;
};

// component(i) : source^i -> target^{i+shift}; requires d f = f d.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(FreeComplex source, FreeComplex target, std::map<int, IntMatrix> components, int shift = 0);

    const FreeComplex& source() const { return src_; }
    const FreeComplex& target() const { return tgt_; }
    int shift() const { return shift_; }
    IntMatrix component(int i) const;
    const std::map<int, IntMatrix>& components() const { return comps_; }

private:
    FreeComplex src_, tgt_;
    std::map<int, IntMatrix> comps_;
    int shift_ = 0;
};

struct AbGroupData {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;   // invariant factors > 1, successively dividing
    IntMatrix class_map;        // (#torsion + free_rank) x rank(term)
    std::vector<IntVec> reps;   // one cycle per generator, same order as class_map rows
    std::size_t term_rank = 0;

    std::size_t generators() const { return torsion.size() + free_rank; }
    bool is_zero() const { return generators() == 0; }
    // Class coordinates of a cycle; torsion coordinates reduced into [0, factor).
    IntVec classify(const IntVec& cycle) const;
    // Number of invariant factors and free summands; log_p of |H/p|.
    std::size_t p_rank(const Int& p) const;
    // log_p of |H[p]|.
    std::size_t p_torsion_rank(const Int& p) const;
    bool is_p_primary(const Int& p) const;
};

AbGroupData homology(const FreeComplex& C, int i);
bool is_cycle(const FreeComplex& C, int i, const IntVec& z);

// term^i = C^i + C^{i+1}, d(a,a') = (da + p a', -da').
FreeComplex mod_p_complex(const FreeComplex& C, const Int& p);
// Pair (a, -da/p) for an integral lift a of a mod-p cycle.
IntVec mod_p_lift(const FreeComplex& C, int i, const IntVec& a, const Int& p);
// Dimension over F_p of H^i(C (x)^L Z/p), computed through mod_p_complex.
std::size_t mod_p_dimension(const FreeComplex& C, int i, const Int& p);

FreeComplex cone(const ChainMap& f);
FreeComplex fiber(const ChainMap& f);
// C[n]^j = C^{j+n}, differential multiplied by (-1)^n.
FreeComplex shift(const FreeComplex& C, int n);
FreeComplex direct_sum(const FreeComplex& A, const FreeComplex& B);
FreeComplex truncate(const FreeComplex& C, int lo, int hi);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);

// total^i = sum_j rows[j]^{i-j}; d = signs[j] * d_row + vertical[j].
FreeComplex total_complex(const std::vector<FreeComplex>& rows, const std::vector<ChainMap>& verticals,
                          const std::vector<int>& signs);

// Lattice tools. Matrices act on column vectors.
IntMatrix kernel_basis(const IntMatrix& M);
IntMatrix image_basis(const IntMatrix& M);
std::optional<IntVec> solve_integer(const IntMatrix& M, const IntVec& b);

struct QuotientInvariants {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
};
// N: columns span a lattice; D: columns lie in span(N). Returns span(N)/span(D).
QuotientInvariants quotient_invariants(const IntMatrix& N, const IntMatrix& D);

std::size_t rank_mod_p(const IntMatrix& M, const Int& p);
std::optional<IntVec> solve_mod_p(const IntMatrix& M, const IntVec& b, const Int& p);

Int mod_floor(const Int& a, const Int& m);
Int ipow(const Int& b, unsigned long e);
unsigned long valuation(const Int& a, const Int& p);  // v_p(0) = ULONG_MAX
bool is_zero_vec(const IntVec& v);

}  // namespace artifact
