#pragma once

#include "artifact/polyring.hpp"

#include <json.hpp>

namespace artifact {

struct RangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Free model of p^{r,L} Omega^{[lo,hi]} on one graded piece. Term i is Omega^i carried
// by the label coordinate eta with element p^{(r-i)L} eta for i < r; the differential in
// label coordinates is p^L d below degree r and d from degree r on.
FreeComplex twisted_piece(const RingSpec& ring, const Graded& piece, int r, int L, int lo, int hi);

struct TwistedDR {
    RingSpec ring;
    int r = 0, L = 1;
    std::map<Graded, FreeComplex> pieces;
};

TwistedDR build_twisted(const RingSpec& ring, int r, int L);

// Cone(p^{r,L} Omega^{<r} -> p^{r,M} Omega^{<r}), vertical p^{(r-i)(L-M)}, in degrees
// -1..r-1. `shifted` is the same complex moved to degrees 0..r.
struct RelativeDR {
    RingSpec ring;
    int r = 0, L = 2, M = 1;
    std::map<Graded, ChainMap> vertical;
    std::map<Graded, FreeComplex> model;
    FreeComplex shifted(const Graded& piece) const;
};

RelativeDR build_relative(const RingSpec& ring, int r, int L, int M);

// Rank prediction of H^i(p^{r,M}_{r,L} Omega (x)^L Z/p) on one piece.
std::size_t predicted_modp_dim(const RingSpec& ring, const Graded& piece, int r, int i);

struct DecompositionGenerator {
    std::string family;  // "forms": summand Omega^i, "functions": summand Omega^{i+1}
    int form_degree = 0;
    FormMonomial basis;
    Graded piece;
    IntVec pair;  // (a_i, a_{i+1}) in the mod-p complex of the model
};

struct ModPCohomology {
    int i = 0;
    std::size_t dim = 0;
    std::size_t predicted = 0;
    std::vector<DecompositionGenerator> generators;
    bool reps_are_cycles = true;
    bool reps_form_basis = true;
    // multiplication by T_v maps piece k onto piece k + e_v between interior pieces
    bool module_structure_ok = true;
};

ModPCohomology modp_cohomology_with_basis(const RingSpec& ring, int r, int L, int M, int i);

// Finite abelian group as free rank + elementary divisors (sorted); suited to p-primary groups.
struct GroupSummary {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    void absorb(std::size_t free, const std::vector<Int>& t);
    bool operator==(const GroupSummary& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
    std::string to_string() const;
};
nlohmann::json to_json(const GroupSummary& g);

GroupSummary rhs_quotient_group(const RingSpec& ring, int n, int L, int M);
GroupSummary rhs_quotient_piece(const RingSpec& ring, const Graded& piece, int n, int L, int M);

// Integral cohomology of the relative model in degree i, summed over pieces.
GroupSummary relative_cohomology(const RelativeDR& rel, int i);

nlohmann::json derham_report(const RingSpec& ring, int r, int L, int M);

}  // namespace artifact
