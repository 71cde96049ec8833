#pragma once

#include "artifact/cdga.hpp"
#include "artifact/derham.hpp"

#include <json.hpp>

#include <functional>

namespace artifact {

// Monomials alpha eps^j deps^m of total degree n on one graded piece.
std::vector<CdgaMonomial> c_basis(const RingSpec& ring, const Graded& piece, int n);

using CdgaOp = std::function<CdgaElement(const CdgaElement&)>;

// Matrix of op from span(from) to span(to); throws StructuralError if an image leaves `to`.
IntMatrix op_matrix(const std::vector<CdgaMonomial>& from, const std::vector<CdgaMonomial>& to, const CdgaOp& op);

// C_n(A/ell) and CC_n(A/ell) with ell = p^L on one graded piece, for 0 <= n <= N.
// Chain degree n sits in cohomological degree -n.
struct CPiece {
    RingSpec ring;
    Graded piece;
    int L = 1;
    int N = 0;
    std::map<int, std::vector<CdgaMonomial>> basis;
    FreeComplex C;    // delta
    FreeComplex CC;   // bold D = proj (delta + B)
    FreeComplex CCp;  // bold D' = proj ((-1)^{||.||} delta + d)

    Int ell() const { return ipow(ring.P(), L); }
    const std::vector<CdgaMonomial>& b(int n) const;
    // offset of the summand C_{n-2i} inside CC_n
    std::size_t offset(int n, int i) const;
    std::size_t index(int n, const CdgaMonomial& x) const;
};

// Builds the piece and checks every operator identity on every basis element.
CPiece build_c_piece(const RingSpec& ring, const Graded& piece, int L, int N);

struct CComplexes {
    RingSpec ring;
    int L = 1, N = 0;
    std::map<Graded, CPiece> pieces;
};
CComplexes build_C_CC(const RingSpec& ring, int L, int n_max);

// Fibers of the transition maps p^{(L-M) weight} between levels L and M.
// Term -n of rel_C is C_n(L) + C_{n+1}(M); likewise for rel_CC.
struct RelPiece {
    Graded piece;
    CPiece top, bottom;
    FreeComplex rel_C, rel_CC;
    ChainMap incl;  // rel_C -> rel_CC, onto the summand i = 0
    ChainMap proj;  // rel_CC -> rel_CC of degree 2, dropping the summand i = 0
    FreeComplex mod_C, mod_CC;
};

struct RelCC {
    RingSpec ring;
    int L = 2, M = 1, n_max = 0, N = 0;
    std::map<Graded, RelPiece> pieces;
};

RelCC build_rel_CC(const RingSpec& ring, int L, int M, int n_max);

GroupSummary hc_bold(const RelCC& rel, int n);
GroupSummary hh_bold(const RelCC& rel, int n);

// One representative of the mod-p decomposition.
//   HC1: (alpha eps deps^m, 0),         alpha in Omega^{n-1-2m}, m >= 0
//   HC2: (0, alpha eps deps^m),         alpha in Omega^{n-2m},   m >= 0
//   HH1X: (alpha eps deps^{m-1}, 0),    alpha in Omega^{n+1-2m}, m >= 1
//   HH1Y: (alpha deps^m, 0),            alpha in Omega^{n-2m},   m >= 1
//   HH2X: (0, alpha eps deps^{m-1}),    alpha in Omega^{n+2-2m}, m >= 1
//   HH2Y: (0, alpha deps^m),            alpha in Omega^{n+1-2m}, m >= 1
struct BoldRep {
    std::string family;
    int m = 0;
    FormMonomial alpha;
    Graded piece;
    IntVec pair;  // in the mod-p complex of rel_C or rel_CC at degree -n
};

struct BoldDecomposition {
    int n = 0;
    bool cyclic = true;
    std::size_t dim = 0, predicted = 0;
    std::vector<BoldRep> reps;
    bool reps_are_cycles = true;
    bool reps_form_basis = true;
};

BoldDecomposition decomposition_representatives(const RelCC& rel, int n, bool cyclic);

// Class-level matrix of an operation between decompositions, read against a pattern:
// column k of `observed` should be scalar_k * pattern_k.
struct ClassMap {
    std::string op;
    int n_src = 0, n_tgt = 0;
    std::vector<std::string> src_family;
    std::vector<std::optional<long>> scalar;  // observed; nullopt if not proportional to the pattern
    std::vector<long> expected;               // stated scalar
    bool cycles_ok = true;
    bool chain_map_ok = true;
    std::size_t mismatches() const;
    // observed scalar shared by all sources in a family, if any
    std::optional<long> family_scalar(const std::string& family) const;
};

// x reduces mod p to a Laurent monomial c T^k; uses dlog x = sum k_v dT_v / T_v.
ClassMap mult_dlog(const RelCC& rel, const std::vector<int>& k, int n);
ClassMap mult_dlog(const RelCC& rel, const ResidueElement& x, int n);
// multiplication by (d eps)^power
ClassMap mult_deps(const RelCC& rel, int n, int power = 1);
// Connes maps on mod-p homology: I : HH_n -> HC_n and the connecting map HC_{n-1} -> HH_n.
ClassMap connes_I(const RelCC& rel, int n);
ClassMap connes_delta(const RelCC& rel, int n);

struct ConnesExactness {
    int n = 0;
    std::size_t dim_hc_prev = 0, dim_hh = 0, dim_hc = 0;
    std::size_t rank_delta = 0, rank_I = 0;
    bool composite_zero = true;
    bool exact() const;
};
ConnesExactness connes_exactness(const RelCC& rel, int n);

nlohmann::json hkr_report(const RingSpec& ring, int L, int M, int n_max);

}  // namespace artifact
