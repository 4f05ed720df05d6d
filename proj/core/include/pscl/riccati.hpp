#pragma once

#include <vector>

#include "pscl/modelfile.hpp"
#include "pscl/solutions.hpp"

namespace pscl {

/// Numeric view of the (q, r, A, B, C) coefficients along an exact
/// solution, with eta fixed to a number. f(alpha, beta) gives the
/// one-form coordinate coefficients:
///   f11 = -eta, f12 = -2A, f21 = r+q, f22 = C+B, f31 = r-q, f32 = C-B.
/// A_off/B_off/C_off are additive perturbations for negative controls.
class CoefficientField {
public:
    CoefficientField(const QRModel& qr, const EvolutionModel& m,
                     ExactSolution sol, double eta);

    double eta_value() const { return eta_; }
    double q(double x, double t) const { return eval(cq_, x, t); }
    double r(double x, double t) const { return eval(cr_, x, t); }
    double A(double x, double t) const { return eval(cA_, x, t) + A_off; }
    double B(double x, double t) const { return eval(cB_, x, t) + B_off; }
    double C(double x, double t) const { return eval(cC_, x, t) + C_off; }
    /// alpha in 1..3, beta in 1..2
    double f(int alpha, int beta, double x, double t) const;

    double A_off = 0.0, B_off = 0.0, C_off = 0.0;

private:
    // Expressions compiled to flat term lists over value slots
    // (jets 0..8, sin, cos) for fast pointwise evaluation.
    struct Term {
        double c;
        std::vector<std::pair<int, int>> pw;  // slot, exponent
    };
    struct Compiled {
        std::vector<Term> num, den;
    };
    static std::vector<Term> compile_poly(const Poly& p, double eta);
    static double eval_terms(const std::vector<Term>& terms, const double* slots);
    Compiled compile(const Expression& e);
    double eval(const Compiled& c, double x, double t) const;
    Compiled cq_, cr_, cA_, cB_, cC_;
    ExactSolution sol_;
    double eta_;
    int max_jet_ = 0;
    bool needs_trig_ = false;
};

enum class PathDir { AlongX, AlongT };

/// A 1-D integration path at fixed t (AlongX) or fixed x (AlongT).
struct PathSpec {
    PathDir dir = PathDir::AlongX;
    double fixed = 0.0;   // the frozen coordinate
    double start = -10.0;
    double stop = 10.0;
    double step = 1e-3;   // uniform RK4 step (sign taken from stop-start)
};

struct PhiSample { double s; double phi; };
struct GammaSample {
    double s;
    bool hat = false;   // active chart
    double value = 0.0; // Gamma in the plain chart, Gamma-hat in the hat chart
    double gamma() const { return hat ? 1.0 / value : value; }
};
struct LinearSample {
    double s;
    double psi1 = 1.0, psi2 = 0.0;  // renormalized to unit norm
    double log_scale = 0.0;         // accumulated log of the removed norm
    double ratio() const { return psi2 / psi1; }
};

/// Fourth-order integration of the angle flow
///   phi' = f31 + f11 sin phi + f21 cos phi (along x; f*2 along t).
std::vector<PhiSample> flow_phi(const CoefficientField& cf, const PathSpec& p, double phi0);

/// Two-chart projective integration of the Riccati flow
///   Gamma'     = r - eta Gamma - q Gamma^2      (along x)
///   Gamma-hat' = q + eta Gamma-hat - r Gamma-hat^2
/// switching chart (value -> 1/value) when |value| exceeds 1.5.
std::vector<GammaSample> flow_gamma(const CoefficientField& cf, const PathSpec& p,
                                    double gamma0);

/// The linear system with the same coordinate coefficients,
///   psi1' =  eta/2 psi1 + q psi2,   psi2' = r psi1 - eta/2 psi2  (along x)
///   psi1' =  A psi1 + B psi2,       psi2' = C psi1 - A psi2      (along t)
/// renormalized each step with the log-scale recorded separately.
std::vector<LinearSample> flow_linear(const CoefficientField& cf, const PathSpec& p,
                                      double psi1_0, double psi2_0);

/// Uniform space-time grid for the finite-difference residual checks.
struct GridSpec {
    double x0 = -8.0, x1 = 8.0, t0 = 0.0, t1 = 0.5;
    int nx = 64, nt = 64;
    double h_int = 1e-3;    // RK4 substep along t (the stiff direction)
    double h_int_x = 1e-3;  // RK4 substep along x
    GridSpec refined(int factor) const {
        GridSpec g = *this;
        g.nx *= factor;
        g.nt *= factor;
        return g;
    }
};

/// Max-norm central-difference residual of (q Gamma)_t = (A + B Gamma)_x
/// (hat = false) or (r Gamma-hat)_t = (-A + C Gamma-hat)_x (hat = true),
/// with the chart filled over the grid by consistent integration.
double conservation_form_mismatch(const CoefficientField& cf, const GridSpec& g,
                                  bool hat, double y0);

/// Max-norm central-difference residual of d(theta_1) for
/// theta_1 = (f11 cos phi - f21 sin phi) dx + (f12 cos phi - f22 sin phi) dt.
double theta_closed_mismatch(const CoefficientField& cf, const GridSpec& g, double phi0);

/// Max deviation from 1 of the accumulated determinant of the one-step
/// propagators of the linear system along the path. The Wronskian of any
/// solution pair scales by exactly this product, and the trace-free right
/// side makes the exact value 1; measuring it stepwise (each step started
/// from the identity) avoids the cancellation a collapsing solution pair
/// would suffer over long paths.
double wronskian_drift(const CoefficientField& cf, const PathSpec& p);

/// Observed convergence orders from mismatches at h, h/2, h/4.
std::vector<double> convergence_orders(const std::vector<double>& mismatches);

}  // namespace pscl
