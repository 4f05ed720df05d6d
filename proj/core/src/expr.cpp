#include "pscl/expr.hpp"

#include <cmath>

namespace pscl {

Expression::Expression(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
}

void Expression::reduce() {
    if (den_.is_zero()) throw DomainError("division by an expression that is zero");
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = poly_divexact(num_, g);
        den_ = poly_divexact(den_, g);
    }
    Rational lc = den_.leading_coeff();
    if (lc != 1) {
        Rational inv = Rational(1) / lc;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Expression operator+(const Expression& a, const Expression& b) {
    return Expression(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Expression operator-(const Expression& a, const Expression& b) {
    return Expression(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Expression operator*(const Expression& a, const Expression& b) {
    return Expression(a.num_ * b.num_, a.den_ * b.den_);
}

Expression operator/(const Expression& a, const Expression& b) {
    return Expression(a.num_ * b.den_, a.den_ * b.num_);
}

Expression operator-(const Expression& a) {
    Expression r = a;
    r.num_ = -r.num_;
    return r;
}

Expression Expression::pow(int k) const {
    if (k < 0) {
        if (is_zero()) throw DomainError("division by an expression that is zero");
        return Expression(den_.pow(-k), num_.pow(-k));
    }
    return Expression(num_.pow(k), den_.pow(k));
}

std::set<Generator> Expression::generators() const {
    std::set<Generator> s = num_.generators();
    for (auto& g : den_.generators()) s.insert(g);
    return s;
}

std::string Expression::str() const {
    if (den_ == Poly(Rational(1))) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

namespace {

double eval_poly(const Poly& p, const std::map<Generator, double>& point) {
    double acc = 0.0;
    for (auto& [m, c] : p.terms()) {
        double t = static_cast<double>(c);
        for (auto& [g, e] : m) {
            auto it = point.find(g);
            if (it == point.end()) throw DomainError("evaluate: unassigned generator " + g.str());
            t *= std::pow(it->second, e);
        }
        acc += t;
    }
    return acc;
}

}  // namespace

double evaluate(const Expression& e, const std::map<Generator, double>& point) {
    double d = eval_poly(e.den(), point);
    if (d == 0.0) throw DomainError("evaluate: division by numeric zero");
    return eval_poly(e.num(), point) / d;
}

namespace {

Expression subst_poly(const Poly& p, const std::map<Generator, Expression>& rules) {
    Expression acc = Expression::zero();
    for (auto& [m, c] : p.terms()) {
        Expression t = Expression::constant(c);
        for (auto& [g, e] : m) {
            auto it = rules.find(g);
            Expression base = it == rules.end() ? Expression::gen(g) : it->second;
            t = t * base.pow(e);
        }
        acc = acc + t;
    }
    return acc;
}

}  // namespace

Expression substitute(const Expression& e, const std::map<Generator, Expression>& rules) {
    return subst_poly(e.num(), rules) / subst_poly(e.den(), rules);
}

std::vector<Expression> laurent_eta(const Expression& e, int n_min, int n_max) {
    if (n_max < n_min) throw DomainError("laurent_eta: empty range");
    Generator eta = Generator::eta();
    // denominator must be eta^k * (eta-free) after reduction
    const Poly& den = e.den();
    auto [dlo, dhi] = den.degree_range(eta);
    if (dlo != dhi)
        throw DomainError("laurent_eta: expression is not Laurent-finite in eta");
    int k = dlo;
    Poly den_rest = den.coeff_of(eta, k);
    Expression dr(den_rest, Poly(Rational(1)));
    std::vector<Expression> out;
    for (int n = n_min; n <= n_max; ++n) {
        int d = n + k;  // eta degree needed in the numerator
        Poly c = d < 0 ? Poly() : e.num().coeff_of(eta, d);
        out.push_back(Expression(c, Poly(Rational(1))) / dr);
    }
    return out;
}

std::pair<int, int> eta_range(const Expression& e) {
    if (e.is_zero()) return {0, 0};
    Generator eta = Generator::eta();
    auto [nlo, nhi] = e.num().degree_range(eta);
    auto [dlo, dhi] = e.den().degree_range(eta);
    if (dlo != dhi)
        throw DomainError("eta_range: expression is not Laurent-finite in eta");
    return {nlo - dhi, nhi - dhi};
}

}  // namespace pscl
