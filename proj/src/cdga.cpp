#include "artifact/cdga.hpp"

#include "artifact/conventions.hpp"

namespace artifact {

std::string CdgaMonomial::to_string(const std::vector<std::string>& vars) const {
    std::string s = alpha.to_string(vars);
    if (j) s += "*eps";
    if (m == 1) s += "*deps";
    if (m > 1) s += "*deps^" + std::to_string(m);
    return s;
}

CdgaElement CdgaElement::monomial(const CdgaMonomial& x, const Int& c) {
    CdgaElement e;
    e.add(x, c);
    return e;
}

CdgaElement CdgaElement::from_form(const DRElement& alpha, int j, int m) {
    CdgaElement e;
    for (const auto& [f, c] : alpha.terms) e.add({f, j, m}, c);
    return e;
}

void CdgaElement::add(const CdgaMonomial& x, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(x);
    if (it == terms.end()) {
        terms.emplace(x, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

CdgaElement CdgaElement::operator+(const CdgaElement& o) const {
    CdgaElement r = *this;
    for (const auto& [x, c] : o.terms) r.add(x, c);
    return r;
}

CdgaElement CdgaElement::operator-(const CdgaElement& o) const { return *this + o.scaled(-1); }

CdgaElement CdgaElement::scaled(const Int& c) const {
    CdgaElement r;
    if (c == 0) return r;
    for (const auto& [x, v] : terms) r.terms.emplace(x, v * c);
    return r;
}

std::string CdgaElement::to_string(const std::vector<std::string>& vars) const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [x, c] : terms) {
        Int a = abs(c);
        if (!first) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        first = false;
        if (a != 1) s += a.get_str() + "*";
        s += x.to_string(vars);
    }
    return s;
}

CdgaElement cdga_mul(const CdgaElement& a, const CdgaElement& b) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms)
        for (const auto& [y, e] : b.terms) {
            if (x.j == 1 && y.j == 1) continue;
            auto [s, f] = mono_wedge(x.alpha, y.alpha);
            if (s == 0) continue;
            const long sg = static_cast<long>(x.m) * y.alpha.degree() + static_cast<long>(x.m) * y.j;
            out.add({f, x.j + y.j, x.m + y.m}, c * e * s * conv::sign(sg));
        }
    return out;
}

CdgaElement cdga_d(const CdgaElement& a) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms) {
        DRElement da = d(DRElement::monomial(x.alpha));
        for (const auto& [f, e] : da.terms) out.add({f, x.j, x.m}, c * e);
        if (x.j == 1) out.add({x.alpha, 0, x.m + 1}, c * conv::sign(x.alpha.degree()));
    }
    return out;
}

CdgaElement cdga_delta(const CdgaElement& a, const DRElement& ell) {
    const DRElement dl = d(ell);
    CdgaElement out;
    for (const auto& [x, c] : a.terms) {
        const DRElement al = DRElement::monomial(x.alpha);
        if (x.j == 1) {
            for (const auto& [f, e] : wedge(al, ell).terms) out.add({f, 0, x.m}, c * e);
            if (x.m > 0)
                for (const auto& [f, e] : wedge(al, dl).terms) out.add({f, 1, x.m - 1}, -c * e * x.m);
        } else if (x.m > 0) {
            for (const auto& [f, e] : wedge(al, dl).terms) out.add({f, 0, x.m - 1}, c * e * x.m);
        }
    }
    return out;
}

CdgaElement cdga_delta(const CdgaElement& a, const Int& ell) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms)
        if (x.j == 1) out.add({x.alpha, 0, x.m}, c * ell);
    return out;
}

CdgaElement cdga_B(const CdgaElement& a) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms) {
        DRElement da = d(DRElement::monomial(x.alpha));
        const Int s = x.j ? Int(-c) : c;
        for (const auto& [f, e] : da.terms) out.add({f, x.j, x.m}, s * e);
        if (x.j == 1) out.add({x.alpha, 0, x.m + 1}, c);
    }
    return out;
}

CdgaElement cdga_rho(const CdgaElement& a) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms) {
        const long e = x.j ? x.alpha.degree() + conv::g(x.m + 1) : conv::g(x.m);
        out.add(x, c * conv::sign(e));
    }
    return out;
}

CdgaElement cdga_norm_sign(const CdgaElement& a) {
    CdgaElement out;
    for (const auto& [x, c] : a.terms) out.add(x, c * conv::sign(x.norm()));
    return out;
}

}  // namespace artifact
