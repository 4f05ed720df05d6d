#pragma once

#include <stdexcept>
#include <vector>

#include "pscl/claws.hpp"
#include "pscl/solutions.hpp"
#include "pscl/spectral.hpp"

namespace pscl {

/// Numeric failure during evolution (blow-up, invalid initial data,
/// unstable step size).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampled evolution of a field on a periodic grid. For potential
/// histories the stored samples are u and the field is q = u_x / 2; u may
/// carry an integer multiple of 2*pi across the period (kink winding),
/// which jet() removes as a linear ramp before differentiating.
struct FieldHistory {
    SpectralGrid grid;
    bool potential = false;
    std::vector<double> times;
    std::vector<std::vector<double>> samples;

    int frames() const { return static_cast<int>(times.size()); }
    /// k-th x-jet of the field q at frame ti.
    std::vector<double> jet(int k, int ti) const;
    /// Potential values u at frame ti (potential histories only).
    const std::vector<double>& potential_values(int ti) const;
};

/// Pseudo-spectral evolution of q_t = -6 q^2 q_x - q_xxx: exact
/// integrating factor for the third derivative, classical fourth-order
/// stepping of the nonlinear term (in the conservative form -2 (q^3)_x).
/// A frame is saved every save_every steps (plus the initial and final
/// states). Throws SolverError when max |q| exceeds 1e6.
FieldHistory evolve_mkdv(const SpectralGrid& g, std::vector<double> q0, double t_max,
                         double dt, int save_every);

/// Light-cone evolution of u_xt = sin u as u_t(x) = integral of sin u
/// from the left edge, computed by spectral antiderivative plus a linear
/// ramp for the mean. Requires |mean(sin u)| < 1e-5 throughout (decaying
/// u_t exists only then); otherwise throws SolverError.
FieldHistory evolve_sg(const SpectralGrid& g, std::vector<double> u0, double t_max,
                       double dt, int save_every);

/// History sampled from a closed-form solution (no evolution error).
FieldHistory exact_history(const SpectralGrid& g, const ExactSolution& sol, double t_max,
                           int frames);

/// Integral of the density over the period at frame ti, by the periodic
/// trapezoid rule. The density may use jets of the evolving field and,
/// for potential histories, sin/cos of the potential.
double conserved_integral(const Expression& density, const EvolutionModel& m,
                          const FieldHistory& h, int ti);

struct DriftEntry {
    int order = 0;
    bool trivial = false;
    std::vector<double> values;  // I(t) at each saved frame
    double max_drift = 0.0;      // max |I(t)-I(0)| / max(|I(0)|, 1)
    double max_abs = 0.0;        // max |I(t)|
};

struct DriftReport {
    std::vector<DriftEntry> entries;
};

DriftReport drift_report(const std::vector<ConservationLaw>& laws, const EvolutionModel& m,
                         const FieldHistory& h);

}  // namespace pscl
