#pragma once

#include "artifact/exactalg.hpp"

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace artifact {

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Graded = std::vector<int>;

// Z[T_1, ..., T_k] with some variables inverted. The window bounds the per-variable
// graded degree exponent + [dT present]: [0, W] or [-W, W] for Laurent variables.
struct RingSpec {
    long p = 5;
    std::vector<std::string> vars{"T"};
    std::vector<bool> laurent{false};
    int window = 4;
    int precision = 0;  // 0: use default_precision

    static RingSpec one_var(long p, bool laurent, int window);

    std::size_t nvars() const { return vars.size(); }
    void validate() const;
    bool in_window(const Graded& k) const;
    std::vector<Graded> graded_pieces() const;
    Int P() const { return Int(p); }
};

int default_precision(int r, int L);
bool is_prime(long n);

struct FormMonomial {
    std::vector<int> exps;
    std::vector<int> dset;  // strictly increasing

    int degree() const { return static_cast<int>(dset.size()); }
    Graded graded() const;
    int total_degree() const;
    std::string to_string(const std::vector<std::string>& vars) const;
    auto operator<=>(const FormMonomial&) const = default;
};

// Sign and product of two monomials; sign 0 when a dT repeats.
std::pair<int, FormMonomial> mono_wedge(const FormMonomial& a, const FormMonomial& b);

class DRElement {
public:
    std::map<FormMonomial, Int> terms;

    static DRElement monomial(const FormMonomial& m, const Int& c = 1);
    static DRElement constant(std::size_t nvars, const Int& c);
    static DRElement var(std::size_t nvars, std::size_t v, int e = 1);
    static DRElement dvar(std::size_t nvars, std::size_t v);

    bool is_zero() const { return terms.empty(); }
    // -1 for zero; throws if degrees are mixed
    int form_degree() const;
    void add(const FormMonomial& m, const Int& c);
    DRElement operator+(const DRElement& o) const;
    DRElement operator-(const DRElement& o) const;
    DRElement operator-() const { return scaled(-1); }
    DRElement scaled(const Int& c) const;
    bool operator==(const DRElement& o) const { return terms == o.terms; }
    bool operator!=(const DRElement& o) const { return terms != o.terms; }
    std::string to_string(const std::vector<std::string>& vars) const;
    // min over coefficients of v_p; ULONG_MAX for zero
    unsigned long valuation(const Int& p) const;
};

DRElement d(const DRElement& w);
DRElement wedge(const DRElement& a, const DRElement& b);
// Checked product: throws WindowError naming the first monomial outside the window.
DRElement wedge(const RingSpec& ring, const DRElement& a, const DRElement& b);
void check_window(const RingSpec& ring, const DRElement& w);

// Ordered by (total degree, exponents, dset).
std::vector<FormMonomial> omega_basis(const RingSpec& ring, int i, const std::optional<Graded>& piece = std::nullopt);
std::vector<FormMonomial> omega_piece(const RingSpec& ring, int i, const Graded& piece);

IntVec coords(const DRElement& w, const std::vector<FormMonomial>& basis);
// d : Omega^i -> Omega^{i+1} on one graded piece, in omega_piece coordinates
IntMatrix d_matrix(const RingSpec& ring, const Graded& piece, int i);
DRElement from_coords(const IntVec& c, const std::vector<FormMonomial>& basis);

// Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
// factor := integer | VAR ['^' ['-'] integer] | 'd' VAR
DRElement parse_form(const std::string& text, const RingSpec& ring);

// Elements of Z/p^e [T^{+-1}]; coefficients kept in [0, p^e).
class ResidueElement {
public:
    ResidueElement() = default;
    ResidueElement(long p, int prec, std::size_t nvars, int bound = -1);

    static ResidueElement constant(long p, int prec, std::size_t nvars, const Int& c, int bound = -1);
    static ResidueElement monomial(long p, int prec, const std::vector<int>& exps, const Int& c, int bound = -1);
    static ResidueElement from_form(const DRElement& f, long p, int prec, int bound = -1);

    long p() const { return p_; }
    int prec() const { return prec_; }
    std::size_t nvars() const { return nvars_; }
    int bound() const { return bound_; }
    Int modulus() const;
    const std::map<std::vector<int>, Int>& terms() const { return terms_; }

    void add_term(const std::vector<int>& e, const Int& c);
    ResidueElement operator+(const ResidueElement& o) const;
    ResidueElement operator-(const ResidueElement& o) const;
    ResidueElement operator*(const ResidueElement& o) const;
    ResidueElement scaled(const Int& c) const;
    ResidueElement pow(unsigned long e) const;
    bool operator==(const ResidueElement& o) const;
    bool is_zero() const { return terms_.empty(); }
    bool is_one_mod_p() const;
    ResidueElement frobenius() const;
    // same representatives, lower precision
    ResidueElement reduced(int prec) const;
    DRElement to_form() const;
    std::string to_string(const std::vector<std::string>& vars) const;

private:
    void check_bound(const std::vector<int>& e) const;
    long p_ = 5;
    int prec_ = 1;
    std::size_t nvars_ = 1;
    int bound_ = -1;
    std::map<std::vector<int>, Int> terms_;
};

// log(u) for u = 1 mod p, exact modulo p^{out_prec} (default: u.prec()).
ResidueElement plog(const ResidueElement& u, std::optional<int> out_prec = std::nullopt);
// exp(x) for x = 0 mod p.
ResidueElement pexp(const ResidueElement& x);
// Requires u mod p = c * T^k with c a unit and k supported on Laurent variables.
ResidueElement unit_inverse(const ResidueElement& a, const std::vector<bool>& laurent);

}  // namespace artifact
