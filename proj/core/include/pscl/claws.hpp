#pragma once

#include <vector>

#include "pscl/structure.hpp"

namespace pscl {

/// The density sequence g_1..g_N of the eta-inverse-power expansion of
/// q*Gamma, produced by the recursion
///   g_1 = q r,   g_{n+1} = -sum_{k=1}^{n-1} g_k g_{n-k} - q (g_n / q)_x.
struct GSequence {
    std::vector<Expression> g;  // g[0] is g_1
    const Expression& at(int n) const { return g.at(static_cast<size_t>(n - 1)); }
    int size() const { return static_cast<int>(g.size()); }
};

/// A density/flux pair with D_t(density) = D_x(flux) on-shell.
struct ConservationLaw {
    int order = 0;
    Expression density;
    Expression flux;
    bool trivial = false;   // density is a total x-derivative
    bool verified = false;  // exact on-shell check passed
};

/// Result of eta-power matching: the emitted laws plus the orders whose
/// series terms cancelled on both sides (no law at that order).
struct FluxResult {
    std::vector<ConservationLaw> laws;
    std::vector<int> cancelled_orders;
};

/// First N densities. Throws if q is identically zero.
GSequence g_sequence(const QRModel& qr, const EvolutionModel& m, int N);

/// Extract conservation laws by matching powers of eta in
///   sum_n dg_n/dt eta^-n = d/dx ( A + B sum_n (g_n/q) eta^-n ).
/// gs must extend far enough past the requested count to cover the highest
/// eta power of B; laws are emitted for n = 1 .. gs.size() - deg_eta(B).
/// Orders whose right side comes entirely from A and cancels against
/// dg_n/dt on-shell are reported in cancelled_orders instead.
/// Throws on leftover unmatched non-negative powers of eta.
FluxResult flux_sequence(const QRModel& qr, const GSequence& gs, const EvolutionModel& m);

/// The role-swapped mirror hierarchy built from the second Riccati chart:
/// (q,B) <-> (r,C), A -> -A, eta -> -eta.
QRModel hat_swap(const QRModel& qr);

/// Exact on-shell test of D_t(density) - D_x(flux) = 0.
bool verify(const ConservationLaw& law, const EvolutionModel& m);

/// True iff the variational derivative sum_k (-D_x)^k d(density)/d(q_k)
/// vanishes, i.e. the density is a total x-derivative. Requires the
/// density to reduce to a polynomial in the jets of the evolving field.
bool euler_trivial(const Expression& density, const EvolutionModel& m);

}  // namespace pscl
