#include "pscl/pdebench.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace pscl {

namespace {

constexpr double kBlowup = 1e6;
constexpr double kMeanTol = 1e-5;

void check_finite(const std::vector<double>& f, const char* what) {
    for (double v : f) {
        if (!std::isfinite(v) || std::abs(v) > kBlowup)
            throw SolverError(std::string(what) + ": solution blew up");
    }
}

// Linear ramp slope carried by a potential sample (2*pi winding across
// the period), so that sample - slope*(x - x0) is periodic.
double winding_slope(const SpectralGrid& g, const std::vector<double>& u) {
    double jump = u.back() - u.front();
    double w = std::round(jump / (2.0 * M_PI));
    return 2.0 * M_PI * w / g.length();
}

std::vector<double> remove_ramp(const SpectralGrid& g, const std::vector<double>& u,
                                double slope) {
    std::vector<double> p(u.size());
    for (int i = 0; i < g.n(); ++i)
        p[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] - slope * (g.x(i) - g.x(0));
    return p;
}

}  // namespace

std::vector<double> FieldHistory::jet(int k, int ti) const {
    const auto& s = samples.at(static_cast<size_t>(ti));
    if (!potential) return grid.derivative(s, k);
    double slope = winding_slope(grid, s);
    auto p = grid.derivative(remove_ramp(grid, s, slope), k + 1);
    for (double& v : p) v *= 0.5;
    if (k == 0)
        for (double& v : p) v += slope * 0.5;
    return p;
}

const std::vector<double>& FieldHistory::potential_values(int ti) const {
    if (!potential) throw SolverError("history carries no potential");
    return samples.at(static_cast<size_t>(ti));
}

FieldHistory evolve_mkdv(const SpectralGrid& g, std::vector<double> q0, double t_max,
                         double dt, int save_every) {
    if (dt <= 0 || t_max < 0) throw SolverError("evolve_mkdv: bad time parameters");
    check_finite(q0, "evolve_mkdv");
    int steps = std::max(1, static_cast<int>(std::round(t_max / dt)));
    double h = t_max / steps;
    int nc = g.n() / 2 + 1;

    // Integrating factors for the linear part v_t = i k^3 v.
    std::vector<std::complex<double>> E(static_cast<size_t>(nc)),
        E2(static_cast<size_t>(nc));
    for (int j = 0; j < nc; ++j) {
        double k3 = std::pow(g.k(j), 3);
        E[static_cast<size_t>(j)] = std::exp(std::complex<double>(0.0, k3 * h / 2));
        E2[static_cast<size_t>(j)] = E[static_cast<size_t>(j)] * E[static_cast<size_t>(j)];
    }

    // Nonlinear term -6 q^2 q_x in the conservative form -2 (q^3)_x.
    auto nonlinear = [&](const std::vector<std::complex<double>>& v) {
        auto q = g.inverse(v);
        check_finite(q, "evolve_mkdv");
        for (double& x : q) x = x * x * x;
        auto w = g.forward(q);
        for (int j = 0; j < nc; ++j)
            w[static_cast<size_t>(j)] *= std::complex<double>(0.0, -2.0 * g.k(j));
        w.back() = 0.0;
        return w;
    };

    FieldHistory hist{g, false, {}, {}};
    hist.times.push_back(0.0);
    hist.samples.push_back(q0);
    auto v = g.forward(q0);
    for (int s = 1; s <= steps; ++s) {
        auto a = nonlinear(v);
        std::vector<std::complex<double>> tmp(static_cast<size_t>(nc));
        for (int j = 0; j < nc; ++j) {
            size_t u = static_cast<size_t>(j);
            tmp[u] = E[u] * (v[u] + h / 2.0 * a[u]);
        }
        auto b = nonlinear(tmp);
        for (int j = 0; j < nc; ++j) {
            size_t u = static_cast<size_t>(j);
            tmp[u] = E[u] * v[u] + h / 2.0 * b[u];
        }
        auto c = nonlinear(tmp);
        for (int j = 0; j < nc; ++j) {
            size_t u = static_cast<size_t>(j);
            tmp[u] = E2[u] * v[u] + h * E[u] * c[u];
        }
        auto d = nonlinear(tmp);
        for (int j = 0; j < nc; ++j) {
            size_t u = static_cast<size_t>(j);
            v[u] = E2[u] * v[u] +
                   h / 6.0 * (E2[u] * a[u] + 2.0 * E[u] * (b[u] + c[u]) + d[u]);
        }
        if (s % save_every == 0 || s == steps) {
            auto q = g.inverse(v);
            check_finite(q, "evolve_mkdv");
            hist.times.push_back(s * h);
            hist.samples.push_back(std::move(q));
        }
    }
    return hist;
}

FieldHistory evolve_sg(const SpectralGrid& g, std::vector<double> u0, double t_max,
                       double dt, int save_every) {
    if (dt <= 0 || t_max < 0) throw SolverError("evolve_sg: bad time parameters");
    check_finite(u0, "evolve_sg");
    int steps = std::max(1, static_cast<int>(std::round(t_max / dt)));
    double h = t_max / steps;

    // u_t(x) = integral of sin u from the left edge. The spectral
    // antiderivative handles the mean-removed part; the (required tiny)
    // mean contributes a linear ramp.
    auto rhs = [&](const std::vector<double>& u) {
        std::vector<double> s(u.size());
        for (size_t i = 0; i < u.size(); ++i) s[i] = std::sin(u[i]);
        double m = g.mean(s);
        if (std::abs(m) > kMeanTol)
            throw SolverError("evolve_sg: sin u has nonzero mean, no decaying u_t exists");
        auto a = g.antiderivative(s);
        double a0 = a[0] + m * g.x(0);
        for (int i = 0; i < g.n(); ++i)
            a[static_cast<size_t>(i)] += m * g.x(i) - a0;
        return a;
    };

    FieldHistory hist{g, true, {}, {}};
    hist.times.push_back(0.0);
    hist.samples.push_back(u0);
    auto u = u0;
    std::vector<double> tmp(u.size());
    for (int s = 1; s <= steps; ++s) {
        auto a = rhs(u);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + h / 2 * a[i];
        auto b = rhs(tmp);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + h / 2 * b[i];
        auto c = rhs(tmp);
        for (size_t i = 0; i < u.size(); ++i) tmp[i] = u[i] + h * c[i];
        auto d = rhs(tmp);
        for (size_t i = 0; i < u.size(); ++i)
            u[i] += h / 6 * (a[i] + 2 * b[i] + 2 * c[i] + d[i]);
        check_finite(u, "evolve_sg");
        if (s % save_every == 0 || s == steps) {
            hist.times.push_back(s * h);
            hist.samples.push_back(u);
        }
    }
    return hist;
}

FieldHistory exact_history(const SpectralGrid& g, const ExactSolution& sol, double t_max,
                           int frames) {
    if (frames < 2) throw SolverError("exact_history: need at least two frames");
    FieldHistory hist{g, sol.has_potential(), {}, {}};
    for (int f = 0; f < frames; ++f) {
        double t = t_max * f / (frames - 1);
        std::vector<double> s(static_cast<size_t>(g.n()));
        for (int i = 0; i < g.n(); ++i)
            s[static_cast<size_t>(i)] =
                hist.potential ? sol.u(g.x(i), t) : sol.q_jet(0, g.x(i), t);
        hist.times.push_back(t);
        hist.samples.push_back(std::move(s));
    }
    return hist;
}

double conserved_integral(const Expression& density, const EvolutionModel& m,
                          const FieldHistory& h, int ti) {
    Expression e = apply_constraints(density, m);
    int max_jet = 0;
    bool needs_trig = false;
    for (auto& gen : e.generators()) {
        switch (gen.kind) {
            case GenKind::Jet:
                if (gen.name != m.field)
                    throw DomainError("conserved_integral: unresolved field " + gen.name);
                max_jet = std::max(max_jet, gen.order);
                break;
            case GenKind::Sin:
            case GenKind::Cos:
                needs_trig = true;
                break;
            case GenKind::Eta:
                throw DomainError("conserved_integral: density depends on eta");
        }
    }
    std::vector<std::vector<double>> jets;
    for (int k = 0; k <= max_jet; ++k) jets.push_back(h.jet(k, ti));
    const std::vector<double>* u = needs_trig ? &h.potential_values(ti) : nullptr;

    double sum = 0.0;
    for (int i = 0; i < h.grid.n(); ++i) {
        std::map<Generator, double> point;
        for (auto& gen : e.generators()) {
            switch (gen.kind) {
                case GenKind::Jet:
                    point.emplace(gen, jets[static_cast<size_t>(gen.order)]
                                           [static_cast<size_t>(i)]);
                    break;
                case GenKind::Sin:
                    point.emplace(gen, std::sin((*u)[static_cast<size_t>(i)]));
                    break;
                case GenKind::Cos:
                    point.emplace(gen, std::cos((*u)[static_cast<size_t>(i)]));
                    break;
                case GenKind::Eta:
                    break;
            }
        }
        sum += evaluate(e, point);
    }
    return sum * h.grid.dx();
}

DriftReport drift_report(const std::vector<ConservationLaw>& laws, const EvolutionModel& m,
                         const FieldHistory& h) {
    DriftReport rep;
    for (const auto& law : laws) {
        DriftEntry entry;
        entry.order = law.order;
        entry.trivial = law.trivial;
        for (int ti = 0; ti < h.frames(); ++ti)
            entry.values.push_back(conserved_integral(law.density, m, h, ti));
        double i0 = entry.values.front();
        for (double v : entry.values) {
            entry.max_drift = std::max(entry.max_drift,
                                       std::abs(v - i0) / std::max(std::abs(i0), 1.0));
            entry.max_abs = std::max(entry.max_abs, std::abs(v));
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace pscl
