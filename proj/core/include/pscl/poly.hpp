#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pscl/generator.hpp"

namespace pscl {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Thrown for domain errors of the symbolic engine (division by a zero
/// expression, missing derivative rules, non-Laurent input, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Power product of generators, exponents > 0.
using Monomial = std::map<Generator, int>;

int mono_degree(const Monomial& m);

/// Graded lexicographic order: total degree first, then lex on the
/// (generator, exponent) sequence.
struct MonomialCmp {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over exact rationals.
///
/// Invariants after normalize(): no zero coefficients, and every cos
/// generator appears with exponent <= 1 (cos^2 -> 1 - sin^2 per potential).
class Poly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialCmp>;

    Poly() = default;
    explicit Poly(Rational c);
    explicit Poly(const Generator& g);

    static Poly constant(Rational c) { return Poly(std::move(c)); }
    static Poly gen(const Generator& g) { return Poly(g); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Leading (greatest) term coefficient; 0 for the zero polynomial.
    Rational leading_coeff() const;
    int total_degree() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Rational& c);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly pow(int k) const;  // k >= 0

    std::set<Generator> generators() const;
    bool contains(const Generator& g) const;

    /// Degree range in a single generator: {min, max} exponent over terms.
    /// Returns {0, 0} for the zero polynomial.
    std::pair<int, int> degree_range(const Generator& g) const;

    /// Coefficient of g^k, as a polynomial free of g.
    Poly coeff_of(const Generator& g, int k) const;

    /// Formal partial derivative with respect to one generator.
    Poly partial(const Generator& g) const;

    void add_term(Monomial m, Rational c);

    std::string str() const;

private:
    void reduce_trig();
    TermMap terms_;
};

/// gcd up to a unit (primitive PRS); returns 1 when either input is a
/// nonzero constant.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Exact division; throws DomainError if b does not divide a.
Poly poly_divexact(const Poly& a, const Poly& b);

}  // namespace pscl
