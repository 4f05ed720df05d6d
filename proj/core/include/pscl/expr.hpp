#pragma once

#include <map>

#include "pscl/poly.hpp"

namespace pscl {

/// Symbolic expression in canonical normal form: a reduced fraction of two
/// multivariate polynomials over Q in the generators. The denominator's
/// leading coefficient is 1 and numerator/denominator share no common
/// polynomial factor. Immutable value type; all operations are pure.
class Expression {
public:
    Expression() : num_(), den_(Rational(1)) {}
    Expression(Poly num, Poly den);
    explicit Expression(Rational c) : num_(std::move(c)), den_(Rational(1)) {}

    static Expression zero() { return Expression(); }
    static Expression one() { return Expression(Rational(1)); }
    static Expression constant(Rational c) { return Expression(std::move(c)); }
    static Expression constant(long n, long d = 1) { return Expression(Rational(n, d)); }
    static Expression gen(const Generator& g) { return Expression(Poly(g), Poly(Rational(1))); }
    static Expression jet(const std::string& f, int k) { return gen(Generator::jet(f, k)); }
    static Expression eta() { return gen(Generator::eta()); }
    static Expression sin(const std::string& p) { return gen(Generator::sin(p)); }
    static Expression cos(const std::string& p) { return gen(Generator::cos(p)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend Expression operator+(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a, const Expression& b);
    friend Expression operator*(const Expression& a, const Expression& b);
    friend Expression operator/(const Expression& a, const Expression& b);
    friend Expression operator-(const Expression& a);
    Expression pow(int k) const;  // negative k inverts

    /// Structural equality of normal forms.
    friend bool operator==(const Expression& a, const Expression& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::set<Generator> generators() const;

    std::string str() const;

private:
    void reduce();
    Poly num_, den_;
};

/// Floating evaluation at a point. Throws DomainError for an unassigned
/// generator or a numerically zero denominator.
double evaluate(const Expression& e, const std::map<Generator, double>& point);

/// Substitute generators by expressions (one pass, no recursion).
Expression substitute(const Expression& e, const std::map<Generator, Expression>& rules);

/// Laurent coefficients of e in eta for n in [n_min, n_max]. Requires the
/// reduced denominator to be c * eta^k (finite Laurent); throws otherwise.
std::vector<Expression> laurent_eta(const Expression& e, int n_min, int n_max);

/// {lowest, highest} eta power with nonzero coefficient; {0, 0} for e == 0.
std::pair<int, int> eta_range(const Expression& e);

}  // namespace pscl
