#pragma once

#include "artifact/hkr.hpp"

namespace artifact {

// Psi on one graded piece: source is the sum over twists of
// Cone(p^{r+1,L} Omega^{<=r} -> p^{r+1,M} Omega^{<=r})[2r], cut to degrees -(n_max + 1)..0.
struct PsiPiece {
    Graded piece;
    FreeComplex source;
    ChainMap map;  // into the relative CC bicomplex of the piece
};

struct PsiMap {
    RingSpec ring;
    int L = 2, M = 1, n_max = 0;
    std::vector<int> twists;
    RelCC rel;
    std::map<Graded, PsiPiece> pieces;
};

// Single twist r, or all twists 0..n_max when r is empty. Throws StructuralError naming
// (degree, basis element) if the chain-map identity fails.
PsiMap build_psi(const RingSpec& ring, std::optional<int> r, int L, int M, int n_max);

enum class QuasiIsoMode { integral, mod_p };

struct PsiDegree {
    int n = 0;
    bool cone_acyclic = false;
    GroupSummary source, target;  // integral mode
    std::size_t src_dim = 0, tgt_dim = 0, map_rank = 0;  // mod-p mode
    bool uc_identity = true;
    bool ok() const;
};

struct QuasiIsoReport {
    QuasiIsoMode mode = QuasiIsoMode::mod_p;
    std::vector<PsiDegree> degrees;
    bool passed() const;
};

QuasiIsoReport verify_quasi_iso(const PsiMap& psi, QuasiIsoMode mode);

nlohmann::json to_json(const QuasiIsoReport& r);

}  // namespace artifact
