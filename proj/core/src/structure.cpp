#include "pscl/structure.hpp"

namespace pscl {

StructureResidual residuals_f(const FTable& ft, const EvolutionModel& m) {
    const auto& f = ft.f;
    auto dt = [&](const Expression& e) { return total_dt_onshell(e, m); };
    auto dx = [&](const Expression& e) { return total_dx(e, m); };
    StructureResidual r;
    r.res[0] = -dt(f[0][0]) + dx(f[0][1]) - (f[2][0] * f[1][1] - f[1][0] * f[2][1]);
    r.res[1] = -dt(f[1][0]) + dx(f[1][1]) - (f[0][0] * f[2][1] - f[0][1] * f[2][0]);
    r.res[2] = -dt(f[2][0]) + dx(f[2][1]) - (f[0][0] * f[1][1] - f[0][1] * f[1][0]);
    return r;
}

StructureResidual residuals_qr(const QRModel& qr, const EvolutionModel& m) {
    Expression eta = Expression::eta();
    StructureResidual r;
    r.res[0] = total_dx(qr.A, m) - (qr.q * qr.C - qr.r * qr.B);
    r.res[1] = total_dt_onshell(qr.q, m) - (total_dx(qr.B, m) + Expression::constant(2) * qr.A * qr.q - eta * qr.B);
    r.res[2] = total_dt_onshell(qr.r, m) - (total_dx(qr.C, m) - Expression::constant(2) * qr.A * qr.r + eta * qr.C);
    return r;
}

FTable qr_to_f(const QRModel& qr) {
    Expression eta = Expression::eta();
    FTable ft;
    ft.f[0][0] = -eta;
    ft.f[0][1] = Expression::constant(-2) * qr.A;
    ft.f[1][0] = qr.r + qr.q;
    ft.f[1][1] = qr.C + qr.B;
    ft.f[2][0] = qr.r - qr.q;
    ft.f[2][1] = qr.C - qr.B;
    return ft;
}

EvolutionModel derive_evolution(const QRModel& qr, const EvolutionModel& base) {
    EvolutionModel m0 = base;
    m0.evolution.reset();
    Expression eta = Expression::eta();
    Expression rhs = total_dx(qr.B, m0) + Expression::constant(2) * qr.A * qr.q - eta * qr.B;
    auto [lo, hi] = eta_range(rhs);
    if (!rhs.is_zero() && (lo != 0 || hi != 0)) {
        // every eta power away from 0 must cancel; anything left is an error
        for (int n = lo; n <= hi; ++n) {
            if (n == 0) continue;
            if (!laurent_eta(rhs, n, n)[0].is_zero())
                throw DomainError("derive_evolution: residual eta-dependence in the derived flow");
        }
        rhs = laurent_eta(rhs, 0, 0)[0];
    }
    EvolutionModel m = m0.with_evolution(apply_constraints(rhs, m0));
    // the r-equation must be consistent with the derived flow
    Expression res = total_dt_onshell(qr.r, m) -
                     (total_dx(qr.C, m) - Expression::constant(2) * qr.A * qr.r + eta * qr.C);
    if (!is_zero_onshell(res, m))
        throw DomainError("derive_evolution: r-equation inconsistent with the derived flow");
    return m;
}

EvolutionModel with_phi_rules(const FTable& ft, const EvolutionModel& m) {
    const auto& f = ft.f;
    Expression s = Expression::sin("phi"), c = Expression::cos("phi");
    EvolutionModel ext = m;
    TrigRule rule;
    rule.dx = f[2][0] + f[0][0] * s + f[1][0] * c;
    rule.dt = f[2][1] + f[0][1] * s + f[1][1] * c;
    ext.trig.insert_or_assign("phi", rule);
    return ext;
}

Expression phi_compatibility(const FTable& ft, const EvolutionModel& m) {
    EvolutionModel ext = with_phi_rules(ft, m);
    Expression phi_x = ext.trig.at("phi").dx;
    Expression phi_t = *ext.trig.at("phi").dt;
    return total_dt_onshell(phi_x, ext) - total_dx(phi_t, ext);
}

std::pair<Expression, Expression> closedness_residuals(const FTable& ft,
                                                       const EvolutionModel& m) {
    const auto& f = ft.f;
    EvolutionModel ext = with_phi_rules(ft, m);
    Expression s = Expression::sin("phi"), c = Expression::cos("phi");
    Expression phi_x = ext.trig.at("phi").dx;
    Expression phi_t = *ext.trig.at("phi").dt;

    // theta_1 = P dx + Q dt; dx^dt coefficient of d(theta_1) is Q_x - P_t,
    // with the phi chain rules doing the substitution.
    Expression P = f[0][0] * c - f[1][0] * s;
    Expression Q = f[0][1] * c - f[1][1] * s;
    Expression theta = total_dx(Q, ext) - total_dt_onshell(P, ext);

    // Phi with generic phi: differentiate by Leibniz, drop the symmetric
    // phi_xt - phi_tx pair, then substitute phi_x, phi_t from the angle
    // system.
    auto dx = [&](const Expression& e) { return total_dx(e, m); };
    auto dt = [&](const Expression& e) { return total_dt_onshell(e, m); };
    Expression phi_res = (dx(f[2][1]) - dt(f[2][0]))
        + s * (dx(f[0][1]) - dt(f[0][0]))
        + c * (dx(f[1][1]) - dt(f[1][0]))
        + c * (phi_x * f[0][1] - phi_t * f[0][0])
        - s * (phi_x * f[1][1] - phi_t * f[1][0]);
    return {theta, phi_res};
}

}  // namespace pscl
