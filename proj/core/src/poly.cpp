#include "pscl/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pscl {

std::string Generator::str() const {
    switch (kind) {
        case GenKind::Eta: return "eta";
        case GenKind::Sin: return "sin(" + name + ")";
        case GenKind::Cos: return "cos(" + name + ")";
        case GenKind::Jet:
            if (order == 0) return name;
            if (order <= 3) {
                std::string s = name + "_";
                for (int i = 0; i < order; ++i) s += 'x';
                return s;
            }
            return "D[" + name + "," + std::to_string(order) + "]";
    }
    return "?";
}

int mono_degree(const Monomial& m) {
    int d = 0;
    for (auto& [g, e] : m) d += e;
    return d;
}

bool MonomialCmp::operator()(const Monomial& a, const Monomial& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    // lex from the greatest generator down; anything else fails to be
    // multiplicative, and leading-term division relies on that
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return false;  // at equal degree neither side can run out first
}

Poly::Poly(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

Poly::Poly(const Generator& g) {
    terms_.emplace(Monomial{{g, 1}}, Rational(1));
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::leading_coeff() const {
    if (terms_.empty()) return Rational(0);
    return terms_.rbegin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return 0;
    return mono_degree(terms_.rbegin()->first);
}

void Poly::add_term(Monomial m, Rational c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Rational& c) {
    Poly r;
    if (c == 0) return r;
    for (auto& [m, k] : a.terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly operator-(const Poly& a) { return a * Rational(-1); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_) {
        for (auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (auto& [g, e] : mb) m[g] += e;
            r.add_term(std::move(m), ca * cb);
        }
    }
    r.reduce_trig();
    return r;
}

// cos(p)^e with e >= 2 rewrites through cos^2 -> 1 - sin^2.
void Poly::reduce_trig() {
    bool again = true;
    while (again) {
        again = false;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            const Monomial& m = it->first;
            auto g = std::find_if(m.begin(), m.end(), [](auto& p) {
                return p.first.kind == GenKind::Cos && p.second >= 2;
            });
            if (g == m.end()) continue;
            Generator cg = g->first;
            int e = g->second;
            Rational c = it->second;
            Monomial rest = m;
            terms_.erase(it);
            int half = e / 2;
            if (e % 2 == 0) rest.erase(cg); else rest[cg] = 1;
            // (1 - sin^2)^half expanded binomially
            Poly expansion = (Poly(Rational(1)) - Poly(Generator::sin(cg.name)).pow(2)).pow(half);
            for (auto& [me, ce] : expansion.terms_) {
                Monomial mm = rest;
                for (auto& [gg, ee] : me) mm[gg] += ee;
                add_term(std::move(mm), c * ce);
            }
            again = true;
            break;
        }
    }
}

Poly Poly::pow(int k) const {
    if (k < 0) throw DomainError("Poly::pow: negative exponent");
    Poly r(Rational(1));
    Poly base = *this;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::set<Generator> Poly::generators() const {
    std::set<Generator> s;
    for (auto& [m, c] : terms_)
        for (auto& [g, e] : m) s.insert(g);
    return s;
}

bool Poly::contains(const Generator& g) const {
    for (auto& [m, c] : terms_)
        if (m.count(g)) return true;
    return false;
}

std::pair<int, int> Poly::degree_range(const Generator& g) const {
    if (terms_.empty()) return {0, 0};
    int lo = 1 << 30, hi = -(1 << 30);
    for (auto& [m, c] : terms_) {
        auto it = m.find(g);
        int e = it == m.end() ? 0 : it->second;
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    return {lo, hi};
}

Poly Poly::coeff_of(const Generator& g, int k) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        auto it = m.find(g);
        int e = it == m.end() ? 0 : it->second;
        if (e != k) continue;
        Monomial mm = m;
        mm.erase(g);
        r.add_term(std::move(mm), c);
    }
    return r;
}

Poly Poly::partial(const Generator& g) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        auto it = m.find(g);
        if (it == m.end()) continue;
        int e = it->second;
        Monomial mm = m;
        if (e == 1) mm.erase(g); else mm[g] = e - 1;
        r.add_term(std::move(mm), c * e);
    }
    return r;
}

namespace {

std::string mono_str(const Monomial& m) {
    std::string s;
    for (auto& [g, e] : m) {
        if (!s.empty()) s += "*";
        s += g.str();
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string rat_str(const Rational& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

}  // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    // highest terms first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->second;
        bool neg = c < 0;
        if (neg) c = -c;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        std::string ms = mono_str(it->first);
        if (ms.empty()) {
            s += rat_str(c);
        } else if (c == 1) {
            s += ms;
        } else {
            s += rat_str(c) + "*" + ms;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// gcd machinery (primitive PRS over Q, recursing on the main variable)

namespace {

// Rational content: positive rational c such that p / c has coprime integer
// coefficients with positive leading coefficient sign preserved.
Rational rational_content(const Poly& p) {
    BigInt num_gcd = 0, den_lcm = 1;
    for (auto& [m, c] : p.terms()) {
        num_gcd = boost::multiprecision::gcd(num_gcd, BigInt(boost::multiprecision::numerator(c)));
        den_lcm = boost::multiprecision::lcm(den_lcm, BigInt(boost::multiprecision::denominator(c)));
    }
    if (num_gcd == 0) return Rational(1);
    return Rational(num_gcd, den_lcm);
}

// Univariate view of p in v: coefficients by v-degree (free of v).
std::vector<Poly> univariate(const Poly& p, const Generator& v) {
    auto [lo, hi] = p.degree_range(v);
    std::vector<Poly> cs(static_cast<size_t>(hi) + 1);
    for (int k = 0; k <= hi; ++k) cs[static_cast<size_t>(k)] = p.coeff_of(v, k);
    while (cs.size() > 1 && cs.back().is_zero()) cs.pop_back();
    return cs;
}

Poly assemble(const std::vector<Poly>& cs, const Generator& v) {
    Poly r;
    for (size_t k = 0; k < cs.size(); ++k) r += cs[k] * Poly(v).pow(static_cast<int>(k));
    return r;
}

Poly content_in(const std::vector<Poly>& cs) {
    Poly c;
    for (auto& p : cs) {
        if (p.is_zero()) continue;
        c = c.is_zero() ? p : poly_gcd(c, p);
        if (c.is_constant()) return Poly(Rational(1));
    }
    return c.is_zero() ? Poly(Rational(1)) : c;
}

// Pseudo-remainder of a by b in variable v (deg a >= deg b, b != 0).
Poly pseudo_rem(Poly a, const Poly& b, const Generator& v) {
    auto bu = univariate(b, v);
    int db = static_cast<int>(bu.size()) - 1;
    Poly lb = bu.back();
    for (;;) {
        auto au = univariate(a, v);
        int da = a.is_zero() ? -1 : static_cast<int>(au.size()) - 1;
        if (da < db) return a;
        Poly la = au.back();
        a = a * lb - b * la * Poly(v).pow(da - db);
    }
}

}  // namespace

namespace {

// Trig generators are never main variables: the cos^2 rewrite makes degrees
// in them unstable under multiplication. They stay in the coefficient ring,
// so common trig factors are not cancelled (harmless for zero testing).
std::set<Generator> main_vars(const Poly& p) {
    std::set<Generator> s;
    for (auto& g : p.generators())
        if (g.kind == GenKind::Jet || g.kind == GenKind::Eta) s.insert(g);
    return s;
}

}  // namespace

namespace {

// gcd with a single-term polynomial: min shared exponents, unit coefficient.
Poly monomial_gcd(const Poly& mono, const Poly& other) {
    Monomial g = mono.terms().begin()->first;
    for (auto& [m, c] : other.terms()) {
        for (auto it = g.begin(); it != g.end();) {
            auto jt = m.find(it->first);
            int e = jt == m.end() ? 0 : jt->second;
            if (e == 0) {
                it = g.erase(it);
                continue;
            }
            it->second = std::min(it->second, e);
            ++it;
        }
        if (g.empty()) break;
    }
    Poly r;
    r.add_term(std::move(g), Rational(1));
    return r;
}

bool has_trig(const Poly& p) {
    for (auto& g : p.generators())
        if (g.kind == GenKind::Sin || g.kind == GenKind::Cos) return true;
    return false;
}

// Common monomial factor of every term of both polynomials.
Poly common_monomial(const Poly& a, const Poly& b) {
    Poly head;
    head.add_term(a.terms().begin()->first, Rational(1));
    return monomial_gcd(monomial_gcd(head, a), b);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
    if (a.terms().size() == 1) return monomial_gcd(a, b);
    if (b.terms().size() == 1) return monomial_gcd(b, a);
    // With sin/cos present, multiplication rewrites cos powers, so the
    // remainder sequence below no longer computes in a polynomial ring;
    // settle for the common monomial factor there.
    if (has_trig(a) || has_trig(b)) return common_monomial(a, b);
    auto va = main_vars(a), vb = main_vars(b);
    if (va.empty() || vb.empty()) return Poly(Rational(1));
    Generator v = std::max(*va.rbegin(), *vb.rbegin());
    if (!a.contains(v) || !b.contains(v)) {
        // v occurs in only one of them: gcd divides the coefficients of the other
        const Poly& with = a.contains(v) ? a : b;
        const Poly& without = a.contains(v) ? b : a;
        Poly c = content_in(univariate(with, v));
        return poly_gcd(c, without);
    }
    Poly ca = content_in(univariate(a, v));
    Poly cb = content_in(univariate(b, v));
    Poly pa = poly_divexact(a, ca);
    Poly pb = poly_divexact(b, cb);
    if (univariate(pa, v).size() < univariate(pb, v).size()) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Poly r = pseudo_rem(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = Poly();
        } else {
            Poly cr = content_in(univariate(r, v));
            pb = poly_divexact(r, cr);
        }
    }
    if (!pa.contains(v)) pa = Poly(Rational(1));
    Poly result = poly_gcd(ca, cb) * pa;
    // strip the rational content so results are reproducible
    Rational rc = rational_content(result);
    if (result.leading_coeff() < 0) rc = -rc;
    return result * (Rational(1) / rc);
}

Poly poly_divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("poly_divexact: division by zero polynomial");
    if (b.is_constant()) return a * (Rational(1) / b.leading_coeff());
    Poly rem = a, q;
    const Monomial& lmb = b.terms().rbegin()->first;
    const Rational& lcb = b.terms().rbegin()->second;
    while (!rem.is_zero()) {
        const Monomial& lma = rem.terms().rbegin()->first;
        const Rational& lca = rem.terms().rbegin()->second;
        Monomial qm;
        bool ok = true;
        // lma / lmb
        Monomial scratch = lma;
        for (auto& [g, e] : lmb) {
            auto it = scratch.find(g);
            if (it == scratch.end() || it->second < e) { ok = false; break; }
            if (it->second == e) scratch.erase(it); else it->second -= e;
        }
        if (!ok) throw DomainError("poly_divexact: inexact division");
        qm = std::move(scratch);
        Poly t;
        t.add_term(qm, lca / lcb);
        q += t;
        rem -= t * b;
    }
    return q;
}

}  // namespace pscl
