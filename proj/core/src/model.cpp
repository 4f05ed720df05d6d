#include "pscl/model.hpp"

#include <functional>

namespace pscl {

namespace {

// Raw derivative of a fraction given per-generator derivatives.
Expression derive(const Expression& e,
                  const std::function<Expression(const Generator&)>& dgen) {
    auto dpoly = [&](const Poly& p) {
        Expression acc = Expression::zero();
        for (auto& [m, c] : p.terms()) {
            for (auto& [g, exp] : m) {
                // c * exp * g^(exp-1) * dgen(g) * rest
                Expression dg = dgen(g);
                if (dg.is_zero()) continue;
                Poly rest;
                Monomial mm = m;
                if (exp == 1) mm.erase(g); else mm[g] = exp - 1;
                rest.add_term(std::move(mm), c * exp);
                acc = acc + Expression(rest, Poly(Rational(1))) * dg;
            }
        }
        return acc;
    };
    Expression n(e.num(), Poly(Rational(1)));
    Expression d(e.den(), Poly(Rational(1)));
    Expression dn = dpoly(e.num());
    Expression dd = dpoly(e.den());
    return (dn * d - n * dd) / (d * d);
}

// Constraint rule covering g, if any: the base rule on jet(f, k0) with the
// largest k0 <= g.order, prolonged (k - k0) times.
std::optional<Expression> constrained(const Generator& g, const EvolutionModel& m) {
    if (g.kind != GenKind::Jet) return std::nullopt;
    std::optional<Expression> best;
    int best_k = -1;
    for (auto& [key, rhs] : m.constraints) {
        if (key.kind != GenKind::Jet || key.name != g.name || key.order > g.order) continue;
        if (key.order > best_k) {
            best_k = key.order;
            best = rhs;
        }
    }
    if (!best) return std::nullopt;
    return prolong_dx(*best, m, g.order - best_k);
}

}  // namespace

Expression apply_constraints(const Expression& e, const EvolutionModel& m) {
    Expression cur = e;
    for (int pass = 0; pass < 32; ++pass) {
        std::map<Generator, Expression> rules;
        for (auto& g : cur.generators()) {
            if (auto r = constrained(g, m)) rules.emplace(g, *r);
        }
        if (rules.empty()) return cur;
        cur = substitute(cur, rules);
    }
    throw DomainError("apply_constraints: constraint map does not reach a fixed point");
}

Expression total_dx(const Expression& e, const EvolutionModel& m) {
    Expression in = apply_constraints(e, m);
    Expression d = derive(in, [&](const Generator& g) -> Expression {
        switch (g.kind) {
            case GenKind::Jet: return Expression::gen(Generator::jet(g.name, g.order + 1));
            case GenKind::Eta: return Expression::zero();
            case GenKind::Sin:
            case GenKind::Cos: {
                auto it = m.trig.find(g.name);
                if (it == m.trig.end())
                    throw DomainError("total_dx: no x-rule for potential " + g.name);
                Expression rate = it->second.dx;
                return g.kind == GenKind::Sin ? Expression::cos(g.name) * rate
                                              : -(Expression::sin(g.name) * rate);
            }
        }
        return Expression::zero();
    });
    return apply_constraints(d, m);
}

Expression prolong_dx(const Expression& e, const EvolutionModel& m, int k) {
    Expression cur = e;
    for (int i = 0; i < k; ++i) cur = total_dx(cur, m);
    return cur;
}

Expression total_dt_onshell(const Expression& e, const EvolutionModel& m) {
    Expression in = apply_constraints(e, m);
    // cache of D_x^k(E)
    std::map<int, Expression> prolonged;
    auto field_dt = [&](int k) -> Expression {
        if (!m.evolution)
            throw DomainError("total_dt_onshell: model lacks an evolution expression");
        auto it = prolonged.find(k);
        if (it != prolonged.end()) return it->second;
        Expression v = prolong_dx(apply_constraints(*m.evolution, m), m, k);
        prolonged.emplace(k, v);
        return v;
    };
    Expression d = derive(in, [&](const Generator& g) -> Expression {
        switch (g.kind) {
            case GenKind::Jet:
                if (g.name == m.field) return field_dt(g.order);
                throw DomainError("total_dt_onshell: no t-rule for field " + g.name);
            case GenKind::Eta: return Expression::zero();
            case GenKind::Sin:
            case GenKind::Cos: {
                auto it = m.trig.find(g.name);
                if (it == m.trig.end() || !it->second.dt)
                    throw DomainError("total_dt_onshell: no t-rule for potential " + g.name);
                Expression rate = *it->second.dt;
                return g.kind == GenKind::Sin ? Expression::cos(g.name) * rate
                                              : -(Expression::sin(g.name) * rate);
            }
        }
        return Expression::zero();
    });
    return apply_constraints(d, m);
}

bool is_zero_onshell(const Expression& e, const EvolutionModel& m) {
    return apply_constraints(e, m).is_zero();
}

}  // namespace pscl
