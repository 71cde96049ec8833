#pragma once

#include "artifact/cdga.hpp"
#include "artifact/derham.hpp"

#include <json.hpp>

namespace artifact {

// Monomial T^e eps^j of a cdga A + A eps, A = Z[T_1..T_k] with some variables inverted.
struct HMono {
    std::vector<int> exps;
    int eps = 0;
    int weight() const { return eps; }
    bool is_unit() const;
    auto operator<=>(const HMono&) const = default;
};

using HTuple = std::vector<HMono>;

class HChain {
public:
    std::map<HTuple, Int> terms;

    static HChain tuple(const HTuple& t, const Int& c = 1);
    bool is_zero() const { return terms.empty(); }
    void add(const HTuple& t, const Int& c);
    HChain operator+(const HChain& o) const;
    HChain operator-(const HChain& o) const;
    HChain operator-() const { return scaled(-1); }
    HChain scaled(const Int& c) const;
    bool operator==(const HChain& o) const { return terms == o.terms; }
    bool operator!=(const HChain& o) const { return terms != o.terms; }
    std::string to_string(const std::vector<std::string>& vars) const;
};

// Length + weight of a tuple.
int total_degree(const HTuple& t);

// The cdga A + A eps with delta(eps) = ell.
struct HochschildCdga {
    std::vector<std::string> vars;
    std::vector<bool> laurent;
    std::map<std::vector<int>, Int> ell;
    bool zero_delta = false;

    std::size_t nvars() const { return vars.size(); }
    static HochschildCdga over(const RingSpec& ring, const DRElement& ell);
    // Z + Z eps with delta eps = p^n
    static HochschildCdga truncated_integers(long p, int n);
    // Z[X] + Z[X] eps with delta eps = X^p - 1
    static HochschildCdga cyclic_group_model(long p);

    HMono one() const;
    HMono var(std::size_t v, int e = 1) const;
    HMono epsilon(const std::vector<int>& e = {}) const;
    // parse "X^2", "eps", "T*eps", "1"
    HMono mono(const std::string& text) const;
    HTuple tuple(const std::vector<std::string>& slots) const;
};

// product of two monomials; nullopt when both carry eps
std::optional<HMono> hmul(const HMono& a, const HMono& b);

HChain hh_b(const HochschildCdga& A, const HChain& x);
HChain hh_delta(const HochschildCdga& A, const HChain& x);
// b + (-1)^{l+1} delta on tuples of length l
HChain hh_total(const HochschildCdga& A, const HChain& x);
HChain hh_t(const HChain& x);
HChain hh_N(const HChain& x);
HChain hh_s(const HochschildCdga& A, const HChain& x);
// Connes operator on normalized chains, s N
HChain hh_B(const HochschildCdga& A, const HChain& x);
// drop tuples with a unit multiple of 1 in a slot >= 1
HChain normalize(const HChain& x);
HChain shuffle(const HChain& x, const HChain& y);
// cdga map determined by images of the variables (0-forms) and of eps (a multiple of eps)
HChain push_forward(const HochschildCdga& src, const HochschildCdga& tgt, const HChain& x,
                    const std::vector<std::map<std::vector<int>, Int>>& var_images, const Int& eps_scale);
// a_0 da_1 ... da_n in the de Rham complex of the cdga
CdgaElement hh_pi(const HochschildCdga& A, const HChain& x);
HChain mod_p(const HChain& x, const Int& p);

// Normalized complex on one Laurent degree, terms of total degree 0..n_max at -n.
struct HochschildPiece {
    Graded piece;
    std::map<int, std::vector<HTuple>> basis;
    FreeComplex complex;  // differential hh_total
};
HochschildPiece hochschild_normalized(const HochschildCdga& A, const Graded& piece, int n_max);

struct FormalityDegree {
    int n = 0;
    std::size_t hh_free = 0, c_rank = 0;
    std::vector<Int> hh_torsion;
    Int pi_det = 0;  // determinant of pi on the free quotient
    bool iso_after_inverting = false;  // n! inverted
    // no q-primary part for primes q > n_max on either side
    bool q_parts_match = false;
};
// Hochschild of A + A eps with delta = 0 against C_n, one row per n <= n_max.
std::vector<FormalityDegree> formality_check(const RingSpec& ring, int n_max);

struct DennisTrace {
    long p = 5;
    int n = 2;
    Int x, u;
    bool u_integral = false, u_is_one_mod_p = false;
    bool g_is_cdga_map = false;
    bool chain_identity = false;  // b sum = p(X^{p-1},X) - (1,1) - (1,delta eps)
    bool is_mod_p_cycle = false;
    HChain image;                 // normalized mod-p image under g
    bool equals_one_eps = false;
};
DennisTrace dennis_trace_bott(long p, int n);

}  // namespace artifact
