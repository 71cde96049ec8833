#include "artifact/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <sstream>

namespace artifact {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

int default_precision(int r, int L) { return r * L + 4; }

RingSpec RingSpec::one_var(long p, bool laurent, int window) {
    RingSpec r;
    r.p = p;
    r.vars = {"T"};
    r.laurent = {laurent};
    r.window = window;
    return r;
}

void RingSpec::validate() const {
    if (!is_prime(p) || p == 2) throw DomainError("ring: p must be an odd prime");
    if (vars.empty() || laurent.size() != vars.size()) throw DomainError("ring: one Laurent flag per variable");
    if (window < 0) throw DomainError("ring: window must be non-negative");
}

bool RingSpec::in_window(const Graded& k) const {
    for (std::size_t v = 0; v < k.size(); ++v) {
        if (k[v] > window) return false;
        if (k[v] < (laurent[v] ? -window : 0)) return false;
    }
    return true;
}

std::vector<Graded> RingSpec::graded_pieces() const {
    std::vector<Graded> out{{}};
    for (std::size_t v = 0; v < nvars(); ++v) {
        std::vector<Graded> next;
        for (const auto& g : out)
            for (int k = laurent[v] ? -window : 0; k <= window; ++k) {
                Graded h = g;
                h.push_back(k);
                next.push_back(std::move(h));
            }
        out = std::move(next);
    }
    return out;
}

Graded FormMonomial::graded() const {
    Graded k = exps;
    for (int v : dset) k[v] += 1;
    return k;
}

int FormMonomial::total_degree() const {
    int s = degree();
    for (int e : exps) s += e;
    return s;
}

std::string FormMonomial::to_string(const std::vector<std::string>& vars) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        if (exps[v] == 0) continue;
        os << (first ? "" : "*") << vars[v];
        if (exps[v] != 1) os << "^" << exps[v];
        first = false;
    }
    for (int v : dset) {
        os << (first ? "" : "*") << "d" << vars[v];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::pair<int, FormMonomial> mono_wedge(const FormMonomial& a, const FormMonomial& b) {
    FormMonomial m;
    m.exps = a.exps;
    for (std::size_t v = 0; v < m.exps.size(); ++v) m.exps[v] += b.exps[v];
    int inv = 0;
    for (int x : a.dset)
        for (int y : b.dset) {
            if (x == y) return {0, m};
            if (x > y) ++inv;
        }
    m.dset = a.dset;
    m.dset.insert(m.dset.end(), b.dset.begin(), b.dset.end());
    std::sort(m.dset.begin(), m.dset.end());
    return {inv % 2 ? -1 : 1, m};
}

DRElement DRElement::monomial(const FormMonomial& m, const Int& c) {
    DRElement w;
    w.add(m, c);
    return w;
}

DRElement DRElement::constant(std::size_t nvars, const Int& c) {
    return monomial(FormMonomial{std::vector<int>(nvars, 0), {}}, c);
}

DRElement DRElement::var(std::size_t nvars, std::size_t v, int e) {
    FormMonomial m{std::vector<int>(nvars, 0), {}};
    m.exps[v] = e;
    return monomial(m);
}

DRElement DRElement::dvar(std::size_t nvars, std::size_t v) {
    return monomial(FormMonomial{std::vector<int>(nvars, 0), {static_cast<int>(v)}});
}

int DRElement::form_degree() const {
    if (terms.empty()) return -1;
    const int k = terms.begin()->first.degree();
    for (const auto& kv : terms)
        if (kv.first.degree() != k) throw DomainError("DRElement: mixed form degrees");
    return k;
}

void DRElement::add(const FormMonomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms.erase(it);
}

DRElement DRElement::operator+(const DRElement& o) const {
    DRElement r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, c);
    return r;
}

DRElement DRElement::operator-(const DRElement& o) const {
    DRElement r = *this;
    for (const auto& [m, c] : o.terms) r.add(m, -c);
    return r;
}

DRElement DRElement::scaled(const Int& c) const {
    DRElement r;
    if (c == 0) return r;
    for (const auto& [m, x] : terms) r.terms.emplace(m, x * c);
    return r;
}

std::string DRElement::to_string(const std::vector<std::string>& vars) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        Int a = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        std::string ms = m.to_string(vars);
        if (ms == "1")
            os << a.get_str();
        else if (a == 1)
            os << ms;
        else
            os << a.get_str() << "*" << ms;
        first = false;
    }
    return os.str();
}

unsigned long DRElement::valuation(const Int& p) const {
    unsigned long v = ULONG_MAX;
    for (const auto& kv : terms) v = std::min(v, artifact::valuation(kv.second, p));
    return v;
}

DRElement d(const DRElement& w) {
    DRElement out;
    for (const auto& [m, c] : w.terms)
        for (std::size_t v = 0; v < m.exps.size(); ++v) {
            if (m.exps[v] == 0) continue;
            if (std::find(m.dset.begin(), m.dset.end(), static_cast<int>(v)) != m.dset.end()) continue;
            FormMonomial n = m;
            n.exps[v] -= 1;
            int before = 0;
            for (int x : m.dset)
                if (x < static_cast<int>(v)) ++before;
            n.dset.push_back(static_cast<int>(v));
            std::sort(n.dset.begin(), n.dset.end());
            out.add(n, c * m.exps[v] * (before % 2 ? -1 : 1));
        }
    return out;
}

DRElement wedge(const DRElement& a, const DRElement& b) {
    DRElement out;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            auto [s, m] = mono_wedge(ma, mb);
            if (s != 0) out.add(m, ca * cb * s);
        }
    return out;
}

void check_window(const RingSpec& ring, const DRElement& w) {
    for (const auto& kv : w.terms) {
        if (!ring.in_window(kv.first.graded()))
            throw WindowError("window overflow: monomial " + kv.first.to_string(ring.vars) + " outside window " +
                              std::to_string(ring.window));
        for (std::size_t v = 0; v < ring.nvars(); ++v)
            if (!ring.laurent[v] && kv.first.exps[v] < 0)
                throw DomainError("negative exponent on polynomial variable " + ring.vars[v]);
    }
}

DRElement wedge(const RingSpec& ring, const DRElement& a, const DRElement& b) {
    DRElement out = wedge(a, b);
    check_window(ring, out);
    return out;
}

static bool mono_less(const FormMonomial& a, const FormMonomial& b) {
    const int ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta < tb;
    if (a.exps != b.exps) return a.exps < b.exps;
    return a.dset < b.dset;
}

std::vector<FormMonomial> omega_piece(const RingSpec& ring, int i, const Graded& piece) {
    std::vector<FormMonomial> out;
    const int n = static_cast<int>(ring.nvars());
    if (i < 0 || i > n || !ring.in_window(piece)) return out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != i) continue;
        FormMonomial m;
        m.exps = piece;
        bool ok = true;
        for (int v = 0; v < n; ++v)
            if (mask & (1u << v)) {
                m.dset.push_back(v);
                m.exps[v] -= 1;
            }
        for (int v = 0; v < n; ++v)
            if (!ring.laurent[v] && m.exps[v] < 0) ok = false;
        if (ok) out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), mono_less);
    return out;
}

std::vector<FormMonomial> omega_basis(const RingSpec& ring, int i, const std::optional<Graded>& piece) {
    if (piece) return omega_piece(ring, i, *piece);
    std::vector<FormMonomial> out;
    for (const auto& g : ring.graded_pieces()) {
        auto b = omega_piece(ring, i, g);
        out.insert(out.end(), b.begin(), b.end());
    }
    std::sort(out.begin(), out.end(), mono_less);
    return out;
}

IntVec coords(const DRElement& w, const std::vector<FormMonomial>& basis) {
    IntVec c(basis.size());
    for (const auto& [m, x] : w.terms) {
        auto it = std::find(basis.begin(), basis.end(), m);
        if (it == basis.end()) throw DomainError("coords: monomial outside the given basis");
        c[it - basis.begin()] = x;
    }
    return c;
}

DRElement from_coords(const IntVec& c, const std::vector<FormMonomial>& basis) {
    DRElement w;
    for (std::size_t k = 0; k < basis.size(); ++k) w.add(basis[k], c[k]);
    return w;
}

IntMatrix d_matrix(const RingSpec& ring, const Graded& piece, int i) {
    auto src = omega_piece(ring, i, piece);
    auto tgt = omega_piece(ring, i + 1, piece);
    IntMatrix D(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
        IntVec c = coords(d(DRElement::monomial(src[j])), tgt);
        for (std::size_t k = 0; k < c.size(); ++k) D(k, j) = c[k];
    }
    return D;
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const RingSpec& r) : s_(s), r_(r) {}

    DRElement parse() {
        DRElement out = term();
        for (;;) {
            skip();
            if (pos_ >= s_.size()) break;
            char c = s_[pos_];
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++pos_;
            DRElement t = term();
            out = (c == '+') ? out + t : out - t;
        }
        return out;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("parse error at position " + std::to_string(pos_) + ": " + msg);
    }
    long integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }
    DRElement term() {
        skip();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        DRElement out = factor();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                out = wedge(out, factor());
            } else {
                break;
            }
        }
        return neg ? -out : out;
    }
    int var_index(const std::string& name) const {
        for (std::size_t v = 0; v < r_.nvars(); ++v)
            if (r_.vars[v] == name) return static_cast<int>(v);
        return -1;
    }
    DRElement factor() {
        skip();
        const std::size_t n = r_.nvars();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return DRElement::constant(n, Int(s_.substr(start, pos_ - start)));
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string id = s_.substr(start, pos_ - start);
        if (id.empty()) fail("expected factor");
        int v = var_index(id);
        if (v >= 0) {
            int e = 1;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                skip();
                bool paren = pos_ < s_.size() && s_[pos_] == '(';
                if (paren) ++pos_;
                skip();
                bool neg = pos_ < s_.size() && s_[pos_] == '-';
                if (neg) ++pos_;
                e = static_cast<int>(integer());
                if (neg) e = -e;
                skip();
                if (paren) {
                    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
                    ++pos_;
                }
            }
            if (e < 0 && !r_.laurent[v]) fail("negative exponent on polynomial variable " + id);
            return DRElement::var(n, v, e);
        }
        if (id.size() > 1 && id[0] == 'd') {
            int w = var_index(id.substr(1));
            if (w >= 0) return DRElement::dvar(n, w);
        }
        fail("unknown identifier '" + id + "'");
    }

    const std::string& s_;
    const RingSpec& r_;
    std::size_t pos_ = 0;
};

}  // namespace

DRElement parse_form(const std::string& text, const RingSpec& ring) { return Parser(text, ring).parse(); }

ResidueElement::ResidueElement(long p, int prec, std::size_t nvars, int bound)
    : p_(p), prec_(prec), nvars_(nvars), bound_(bound) {
    if (prec < 1) throw PrecisionError("residue precision must be at least 1");
}

ResidueElement ResidueElement::constant(long p, int prec, std::size_t nvars, const Int& c, int bound) {
    ResidueElement r(p, prec, nvars, bound);
    r.add_term(std::vector<int>(nvars, 0), c);
    return r;
}

ResidueElement ResidueElement::monomial(long p, int prec, const std::vector<int>& exps, const Int& c, int bound) {
    ResidueElement r(p, prec, exps.size(), bound);
    r.add_term(exps, c);
    return r;
}

ResidueElement ResidueElement::from_form(const DRElement& f, long p, int prec, int bound) {
    std::size_t n = f.terms.empty() ? 1 : f.terms.begin()->first.exps.size();
    ResidueElement r(p, prec, n, bound);
    for (const auto& [m, c] : f.terms) {
        if (!m.dset.empty()) throw DomainError("ResidueElement::from_form: expected a function");
        r.add_term(m.exps, c);
    }
    return r;
}

Int ResidueElement::modulus() const { return ipow(Int(p_), prec_); }

void ResidueElement::check_bound(const std::vector<int>& e) const {
    if (bound_ < 0) return;
    for (int x : e)
        if (x > bound_ || x < -bound_)
            throw WindowError("window overflow: residue exponent " + std::to_string(x) + " outside bound " +
                              std::to_string(bound_));
}

void ResidueElement::add_term(const std::vector<int>& e, const Int& c) {
    const Int N = modulus();
    Int v = mod_floor(c, N);
    if (v == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        check_bound(e);
        terms_.emplace(e, v);
        return;
    }
    it->second = mod_floor(it->second + v, N);
    if (it->second == 0) terms_.erase(it);
}

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
    ResidueElement r = *this;
    r.prec_ = std::min(prec_, o.prec_);
    ResidueElement out(p_, r.prec_, nvars_, bound_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
}

ResidueElement ResidueElement::operator-(const ResidueElement& o) const { return *this + o.scaled(-1); }

ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
    ResidueElement out(p_, std::min(prec_, o.prec_), nvars_, bound_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            std::vector<int> e = e1;
            for (std::size_t v = 0; v < e.size(); ++v) e[v] += e2[v];
            out.add_term(e, c1 * c2);
        }
    return out;
}

ResidueElement ResidueElement::scaled(const Int& c) const {
    ResidueElement out(p_, prec_, nvars_, bound_);
    for (const auto& [e, x] : terms_) out.add_term(e, x * c);
    return out;
}

ResidueElement ResidueElement::pow(unsigned long e) const {
    ResidueElement r = constant(p_, prec_, nvars_, 1, bound_);
    ResidueElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool ResidueElement::operator==(const ResidueElement& o) const {
    return p_ == o.p_ && prec_ == o.prec_ && terms_ == o.terms_;
}

bool ResidueElement::is_one_mod_p() const {
    const std::vector<int> zero(nvars_, 0);
    for (const auto& [e, c] : terms_) {
        Int r = mod_floor(c, Int(p_));
        if (e == zero) {
            if (r != 1) return false;
        } else if (r != 0) {
            return false;
        }
    }
    return terms_.count(zero) > 0;
}

ResidueElement ResidueElement::frobenius() const {
    ResidueElement out(p_, prec_, nvars_, bound_);
    for (const auto& [e, c] : terms_) {
        std::vector<int> f = e;
        for (auto& x : f) x *= static_cast<int>(p_);
        out.add_term(f, c);
    }
    return out;
}

ResidueElement ResidueElement::reduced(int prec) const {
    if (prec > prec_) throw PrecisionError("cannot raise precision of a residue element");
    ResidueElement out(p_, prec, nvars_, bound_);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

DRElement ResidueElement::to_form() const {
    DRElement f;
    for (const auto& [e, c] : terms_) f.add(FormMonomial{e, {}}, c);
    return f;
}

std::string ResidueElement::to_string(const std::vector<std::string>& vars) const {
    return to_form().to_string(vars) + " mod " + std::to_string(p_) + "^" + std::to_string(prec_);
}

namespace {

// Integer representatives of x^m / den, reduced modulo p^out, computed with guard digits.
ResidueElement series_sum(const ResidueElement& x, const std::vector<std::pair<unsigned long, Int>>& terms,
                          int out, int guard) {
    const long p = x.p();
    const Int P(p);
    const Int Nbig = ipow(P, out + guard);
    std::map<std::vector<int>, Int> xs;
    for (const auto& [e, c] : x.terms()) xs[e] = c;
    ResidueElement res(p, out, x.nvars(), x.bound());
    std::map<std::vector<int>, Int> power = {{std::vector<int>(x.nvars(), 0), Int(1)}};
    unsigned long have = 0;
    for (const auto& [m, den] : terms) {
        while (have < m) {
            std::map<std::vector<int>, Int> next;
            for (const auto& [e1, c1] : power)
                for (const auto& [e2, c2] : xs) {
                    std::vector<int> e = e1;
                    for (std::size_t v = 0; v < e.size(); ++v) e[v] += e2[v];
                    Int& slot = next[e];
                    slot = mod_floor(slot + c1 * c2, Nbig);
                }
            for (auto it = next.begin(); it != next.end();)
                it = (it->second == 0) ? next.erase(it) : std::next(it);
            power = std::move(next);
            ++have;
        }
        const unsigned long v = valuation(den, P);
        Int unit = den;
        for (unsigned long k = 0; k < v; ++k) mpz_divexact(unit.get_mpz_t(), unit.get_mpz_t(), P.get_mpz_t());
        Int inv;
        const Int Nout = ipow(P, out);
        mpz_invert(inv.get_mpz_t(), mod_floor(unit, Nout).get_mpz_t(), Nout.get_mpz_t());
        const Int pv = ipow(P, v);
        for (const auto& [e, c] : power) {
            if (!mpz_divisible_p(c.get_mpz_t(), pv.get_mpz_t()))
                throw PrecisionError("series term not divisible by its denominator; guard digits exhausted");
            Int q;
            mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), pv.get_mpz_t());
            res.add_term(e, q * inv);
        }
    }
    return res;
}

}  // namespace

ResidueElement plog(const ResidueElement& u, std::optional<int> out_prec) {
    if (!u.is_one_mod_p()) throw DomainError("plog: argument is not congruent to 1 mod p");
    const int e = out_prec.value_or(u.prec());
    if (e < 1 || e > u.prec()) throw PrecisionError("plog: requested precision exceeds input precision");
    const Int P(u.p());
    ResidueElement x = u - ResidueElement::constant(u.p(), u.prec(), u.nvars(), 1, u.bound());
    std::vector<std::pair<unsigned long, Int>> terms;
    int guard = 0;
    for (unsigned long m = 1; m < static_cast<unsigned long>(4 * e + 8); ++m) {
        const unsigned long v = valuation(Int(m), P);
        if (static_cast<long>(m) - static_cast<long>(v) >= e) continue;
        terms.push_back({m, (m % 2 ? Int(m) : Int(-static_cast<long>(m)))});
        guard = std::max<int>(guard, static_cast<int>(v));
    }
    return series_sum(x, terms, e, guard);
}

ResidueElement pexp(const ResidueElement& x) {
    const Int P(x.p());
    for (const auto& kv : x.terms())
        if (!mpz_divisible_p(kv.second.get_mpz_t(), P.get_mpz_t()))
            throw DomainError("pexp: argument is not divisible by p");
    const int e = x.prec();
    const long p = x.p();
    std::vector<std::pair<unsigned long, Int>> terms;
    Int fact = 1;
    int guard = 0;
    ResidueElement one = ResidueElement::constant(p, e, x.nvars(), 1, x.bound());
    for (unsigned long m = 1;; ++m) {
        fact *= m;
        if (static_cast<long>(m * (p - 2) + 1) >= static_cast<long>(e) * (p - 1) + (p - 1)) break;
        const unsigned long v = valuation(fact, P);
        if (static_cast<long>(m) - static_cast<long>(v) >= e) continue;
        terms.push_back({m, fact});
        guard = std::max<int>(guard, static_cast<int>(v));
    }
    return one + series_sum(x, terms, e, guard);
}

ResidueElement unit_inverse(const ResidueElement& a, const std::vector<bool>& laurent) {
    const Int P(a.p());
    std::vector<int> lead;
    Int c;
    int count = 0;
    for (const auto& [e, x] : a.terms()) {
        if (mod_floor(x, P) != 0) {
            lead = e;
            c = x;
            ++count;
        }
    }
    if (count != 1) throw DomainError("unit_inverse: reduction mod p is not a monomial unit");
    for (std::size_t v = 0; v < lead.size(); ++v)
        if (lead[v] != 0 && (v >= laurent.size() || !laurent[v]))
            throw DomainError("unit_inverse: leading monomial involves a non-invertible variable");
    const Int N = a.modulus();
    Int cinv;
    mpz_invert(cinv.get_mpz_t(), mod_floor(c, N).get_mpz_t(), N.get_mpz_t());
    std::vector<int> neg = lead;
    for (auto& x : neg) x = -x;
    ResidueElement shift = ResidueElement::monomial(a.p(), a.prec(), neg, cinv, a.bound());
    ResidueElement z = a * shift;  // 1 + y
    ResidueElement one = ResidueElement::constant(a.p(), a.prec(), a.nvars(), 1, a.bound());
    ResidueElement y = z - one;
    ResidueElement sum = one, term = one;
    for (int j = 1; j < a.prec(); ++j) {
        term = term * y.scaled(-1);
        sum = sum + term;
    }
    return sum * shift;
}

}  // namespace artifact
