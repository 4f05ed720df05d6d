#pragma once

#include <array>

#include "pscl/model.hpp"

namespace pscl {

/// One-form coefficients omega_alpha = f[alpha][0] dx + f[alpha][1] dt,
/// alpha = 1..3 (index 0..2 here), omega_3 being the connection form.
struct FTable {
    std::array<std::array<Expression, 2>, 3> f;
};

/// The (q, r, A, B, C) coordinate representation:
///   omega_1  = -eta dx - 2A dt
///   omega_2  = (r+q) dx + (C+B) dt
///   omega_12 = (r-q) dx + (C-B) dt
struct QRModel {
    Expression q, r, A, B, C;
};

/// Residuals of the three structure equations, expected to vanish on-shell.
/// Gaussian curvature K = -1 is baked into the third one.
struct StructureResidual {
    std::array<Expression, 3> res;
    bool all_zero(const EvolutionModel& m) const {
        for (auto& e : res)
            if (!is_zero_onshell(e, m)) return false;
        return true;
    }
};

/// Residuals of the f-coefficient system:
///   -f11_t + f12_x - (f31 f22 - f21 f32)
///   -f21_t + f22_x - (f11 f32 - f12 f31)
///   -f31_t + f32_x - (f11 f22 - f12 f21)
/// with t-derivatives taken on-shell.
StructureResidual residuals_f(const FTable& ft, const EvolutionModel& m);

/// Residuals of the (q,r,A,B,C) system:
///   A_x - (qC - rB),  q_t - (B_x + 2Aq - eta B),  r_t - (C_x - 2Ar + eta C).
StructureResidual residuals_qr(const QRModel& qr, const EvolutionModel& m);

/// Convert the coordinate representation to the f-table:
///   f11 = -eta, f12 = -2A, f21 = r+q, f22 = C+B, f31 = r-q, f32 = C-B.
FTable qr_to_f(const QRModel& qr);

/// Recover the evolution equation q_t = B_x + 2Aq - eta B from the
/// coefficient data. Throws if the derived flow retains eta-dependence or
/// if the r-equation of the system is inconsistent with it under the
/// constraint map.
EvolutionModel derive_evolution(const QRModel& qr, const EvolutionModel& base);

/// Cross-derivative residual phi_xt - phi_tx of the angle system
///   phi_x = f31 + f11 sin(phi) + f21 cos(phi)
///   phi_t = f32 + f12 sin(phi) + f22 cos(phi)
/// with sin(phi), cos(phi) kept as generators. Zero on-shell iff the
/// system is completely integrable.
Expression phi_compatibility(const FTable& ft, const EvolutionModel& m);

/// dx^dt coefficients of d(theta_1) and d(Phi), where
///   theta_1 = (f11 cos phi - f21 sin phi) dx + (f12 cos phi - f22 sin phi) dt
///   Phi     = omega_12 - d phi + sin phi omega_1 + cos phi omega_2
/// with phi generic and phi_x, phi_t substituted from the angle system
/// after differentiation. Both vanish on-shell.
std::pair<Expression, Expression> closedness_residuals(const FTable& ft,
                                                       const EvolutionModel& m);

/// Extend a model with the angle-system chain rules for potential "phi".
EvolutionModel with_phi_rules(const FTable& ft, const EvolutionModel& m);

}  // namespace pscl
