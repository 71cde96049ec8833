#pragma once

#include "artifact/polyring.hpp"

namespace artifact {

// alpha * eps^j * (d eps)^m in the de Rham complex of A + A eps.
struct CdgaMonomial {
    FormMonomial alpha;
    int j = 0;  // 0 or 1
    int m = 0;

    // ||x|| = |alpha| + m
    int norm() const { return alpha.degree() + m; }
    int weight() const { return j + m; }
    int total_degree() const { return alpha.degree() + j + 2 * m; }
    std::string to_string(const std::vector<std::string>& vars) const;
    auto operator<=>(const CdgaMonomial&) const = default;
};

class CdgaElement {
public:
    std::map<CdgaMonomial, Int> terms;

    static CdgaElement monomial(const CdgaMonomial& x, const Int& c = 1);
    // alpha * eps^j * deps^m
    static CdgaElement from_form(const DRElement& alpha, int j = 0, int m = 0);

    bool is_zero() const { return terms.empty(); }
    void add(const CdgaMonomial& x, const Int& c);
    CdgaElement operator+(const CdgaElement& o) const;
    CdgaElement operator-(const CdgaElement& o) const;
    CdgaElement operator-() const { return scaled(-1); }
    CdgaElement scaled(const Int& c) const;
    bool operator==(const CdgaElement& o) const { return terms == o.terms; }
    bool operator!=(const CdgaElement& o) const { return terms != o.terms; }
    std::string to_string(const std::vector<std::string>& vars) const;
};

CdgaElement cdga_mul(const CdgaElement& a, const CdgaElement& b);
// de Rham differential of the cdga
CdgaElement cdga_d(const CdgaElement& a);
// derivation with delta(eps) = ell, commuting with d; ell is a 0-form
CdgaElement cdga_delta(const CdgaElement& a, const DRElement& ell);
CdgaElement cdga_delta(const CdgaElement& a, const Int& ell);
CdgaElement cdga_B(const CdgaElement& a);
// involution with B rho = rho d
CdgaElement cdga_rho(const CdgaElement& a);
// (-1)^{||x||} on each monomial
CdgaElement cdga_norm_sign(const CdgaElement& a);

}  // namespace artifact
