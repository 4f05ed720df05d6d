#pragma once

#include <optional>

#include "pscl/expr.hpp"

namespace pscl {

/// Chain rules for trig generators of one potential:
///   D_x sin(p) = cos(p) * dx,   D_t sin(p) = cos(p) * dt   (and -sin for cos).
/// dt may be absent for potentials whose t-derivative is not locally
/// expressible; D_t then fails on expressions containing the trig.
struct TrigRule {
    Expression dx;
    std::optional<Expression> dt;
};

/// The equation in solved form field_t = E(field, field_x, ...), together
/// with the constraint map (e.g. r -> -q, u_x -> 2q) and trig chain rules.
/// Immutable after construction; all operations below are pure functions.
struct EvolutionModel {
    std::string field;                              // evolving field, e.g. "q"
    std::optional<Expression> evolution;            // E, x-jets + trig only
    std::map<Generator, Expression> constraints;    // base rules, prolonged on use
    std::map<std::string, TrigRule> trig;           // by potential name

    EvolutionModel with_evolution(Expression e) const {
        EvolutionModel m = *this;
        m.evolution = std::move(e);
        return m;
    }
};

/// Substitute the constraint map (with x-prolongations of the base rules)
/// until no constrained generator remains.
Expression apply_constraints(const Expression& e, const EvolutionModel& m);

/// Total x-derivative: jet(f,k) -> jet(f,k+1), eta -> 0, trig via the
/// model's chain rules; constraints applied before and after.
Expression total_dx(const Expression& e, const EvolutionModel& m);

/// Total t-derivative with every t-derivative of the evolving field
/// eliminated through field_t = E and its x-prolongations. The result
/// contains only x-jets. Throws if the model lacks an evolution expression
/// or a needed trig t-rule.
Expression total_dt_onshell(const Expression& e, const EvolutionModel& m);

/// Exact test: does e normalize to 0 after constraint substitution?
/// (t-derivatives never appear as generators, so on-shell reduction is
/// performed by the callers that build e via total_dt_onshell.)
bool is_zero_onshell(const Expression& e, const EvolutionModel& m);

/// k-th x-prolongation D_x^k(e).
Expression prolong_dx(const Expression& e, const EvolutionModel& m, int k);

}  // namespace pscl
