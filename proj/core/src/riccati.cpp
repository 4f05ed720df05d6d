#include "pscl/riccati.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace pscl {

namespace {

// Value slots for compiled coefficient expressions.
constexpr int kSlotSin = 9;
constexpr int kSlotCos = 10;
constexpr int kSlots = 11;

double ipow(double b, int e) {
    double v = 1.0;
    for (int i = 0; i < e; ++i) v *= b;
    return v;
}

}  // namespace

std::vector<CoefficientField::Term> CoefficientField::compile_poly(const Poly& p, double eta) {
    std::vector<CoefficientField::Term> out;
    for (auto& [mono, coeff] : p.terms()) {
        CoefficientField::Term term;
        term.c = static_cast<double>(coeff);
        for (auto& [g, e] : mono) {
            switch (g.kind) {
                case GenKind::Jet: term.pw.emplace_back(g.order, e); break;
                case GenKind::Eta: term.c *= ipow(eta, e); break;
                case GenKind::Sin: term.pw.emplace_back(kSlotSin, e); break;
                case GenKind::Cos: term.pw.emplace_back(kSlotCos, e); break;
            }
        }
        out.push_back(std::move(term));
    }
    return out;
}

double CoefficientField::eval_terms(const std::vector<Term>& terms, const double* slots) {
    double acc = 0.0;
    for (auto& t : terms) {
        double v = t.c;
        for (auto& [slot, e] : t.pw) v *= ipow(slots[slot], e);
        acc += v;
    }
    return acc;
}

CoefficientField::Compiled CoefficientField::compile(const Expression& e) {
    Compiled c;
    c.num = compile_poly(e.num(), eta_);
    if (!(e.den() == Poly(Rational(1)))) c.den = compile_poly(e.den(), eta_);
    return c;
}

CoefficientField::CoefficientField(const QRModel& qr, const EvolutionModel& m,
                                   ExactSolution sol, double eta)
    : sol_(std::move(sol)), eta_(eta) {
    std::array<Expression, 5> exprs = {
        apply_constraints(qr.q, m), apply_constraints(qr.r, m), apply_constraints(qr.A, m),
        apply_constraints(qr.B, m), apply_constraints(qr.C, m)};
    for (const Expression& e : exprs) {
        for (auto& g : e.generators()) {
            if (g.kind == GenKind::Jet) {
                if (g.name != m.field)
                    throw DomainError("CoefficientField: unresolved field " + g.name);
                if (g.order > 8)
                    throw DomainError("CoefficientField: jet order beyond supported range");
                max_jet_ = std::max(max_jet_, g.order);
            } else if (g.kind == GenKind::Sin || g.kind == GenKind::Cos) {
                if (!sol_.has_potential())
                    throw DomainError("CoefficientField: solution provides no potential for " +
                                      g.str());
                needs_trig_ = true;
            }
        }
    }
    cq_ = compile(exprs[0]);
    cr_ = compile(exprs[1]);
    cA_ = compile(exprs[2]);
    cB_ = compile(exprs[3]);
    cC_ = compile(exprs[4]);
}

double CoefficientField::eval(const Compiled& c, double x, double t) const {
    double slots[kSlots] = {};
    for (int k = 0; k <= max_jet_; ++k) slots[k] = sol_.q_jet(k, x, t);
    if (needs_trig_) {
        double u = sol_.u(x, t);
        slots[kSlotSin] = std::sin(u);
        slots[kSlotCos] = std::cos(u);
    }
    double num = eval_terms(c.num, slots);
    if (c.den.empty()) return num;
    double den = eval_terms(c.den, slots);
    if (den == 0.0) throw DomainError("CoefficientField: coefficient pole on the path");
    return num / den;
}

double CoefficientField::f(int alpha, int beta, double x, double t) const {
    switch (alpha * 10 + beta) {
        case 11: return -eta_;
        case 12: return -2.0 * A(x, t);
        case 21: return r(x, t) + q(x, t);
        case 22: return C(x, t) + B(x, t);
        case 31: return r(x, t) - q(x, t);
        case 32: return C(x, t) - B(x, t);
    }
    throw DomainError("CoefficientField::f: bad index");
}

namespace {

// One RK4 step of y' = f(s, y).
template <class F>
double rk4_step(const F& f, double s, double y, double h) {
    double k1 = f(s, y);
    double k2 = f(s + h / 2, y + h / 2 * k1);
    double k3 = f(s + h / 2, y + h / 2 * k2);
    double k4 = f(s + h, y + h * k3);
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

// Integrate from s0 to s1 with |substep| <= h, landing exactly on s1.
template <class F>
double integrate_to(const F& f, double s0, double s1, double y, double h) {
    double span = s1 - s0;
    if (span == 0.0) return y;
    int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / h)));
    double step = span / n;
    double s = s0;
    for (int i = 0; i < n; ++i, s = s0 + (i)*step) {
        y = rk4_step(f, s, y, step);
        if (!std::isfinite(y)) throw DomainError("flow integration produced a non-finite value");
    }
    return y;
}

struct XT {
    PathDir dir;
    double fixed;
    double x(double s) const { return dir == PathDir::AlongX ? s : fixed; }
    double t(double s) const { return dir == PathDir::AlongX ? fixed : s; }
};

constexpr double kChartSwitch = 1.5;

}  // namespace

std::vector<PhiSample> flow_phi(const CoefficientField& cf, const PathSpec& p, double phi0) {
    XT xt{p.dir, p.fixed};
    int b = p.dir == PathDir::AlongX ? 1 : 2;
    auto rhs = [&](double s, double phi) {
        double x = xt.x(s), t = xt.t(s);
        return cf.f(3, b, x, t) + cf.f(1, b, x, t) * std::sin(phi) +
               cf.f(2, b, x, t) * std::cos(phi);
    };
    int n = std::max(1, static_cast<int>(std::round(std::abs(p.stop - p.start) / p.step)));
    double ds = (p.stop - p.start) / n;
    std::vector<PhiSample> out;
    out.reserve(static_cast<size_t>(n) + 1);
    double phi = phi0;
    out.push_back({p.start, phi});
    for (int i = 0; i < n; ++i) {
        double s = p.start + i * ds;
        phi = rk4_step(rhs, s, phi, ds);
        if (!std::isfinite(phi)) throw DomainError("flow_phi: non-finite value");
        out.push_back({s + ds, phi});
    }
    return out;
}

namespace {

struct ChartState {
    bool hat;
    double value;
};

// Riccati right side in the given chart and direction.
double riccati_rhs(const CoefficientField& cf, bool hat, PathDir dir, double x, double t,
                   double y) {
    if (dir == PathDir::AlongX) {
        double qv = cf.q(x, t), rv = cf.r(x, t), eta = cf.eta_value();
        return hat ? qv + eta * y - rv * y * y : rv - eta * y - qv * y * y;
    }
    double Av = cf.A(x, t), Bv = cf.B(x, t), Cv = cf.C(x, t);
    return hat ? Bv + 2 * Av * y - Cv * y * y : Cv - 2 * Av * y - Bv * y * y;
}

// Advance a chart-switching projective state from s0 to s1.
void advance_chart(const CoefficientField& cf, PathDir dir, const XT& xt, double s0,
                   double s1, double h, ChartState& st) {
    double span = s1 - s0;
    if (span == 0.0) return;
    int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / h)));
    double step = span / n;
    for (int i = 0; i < n; ++i) {
        double s = s0 + i * step;
        auto rhs = [&](double ss, double y) {
            return riccati_rhs(cf, st.hat, dir, xt.x(ss), xt.t(ss), y);
        };
        double y = rk4_step(rhs, s, st.value, step);
        if (!std::isfinite(y)) {
            // retry the step in the other chart
            ChartState alt{!st.hat, 1.0 / st.value};
            auto rhs2 = [&](double ss, double yy) {
                return riccati_rhs(cf, alt.hat, dir, xt.x(ss), xt.t(ss), yy);
            };
            y = rk4_step(rhs2, s, alt.value, step);
            if (!std::isfinite(y))
                throw DomainError("flow_gamma: both charts blew up within one step");
            st = {alt.hat, y};
        } else {
            st.value = y;
        }
        if (std::abs(st.value) > kChartSwitch) {
            st.hat = !st.hat;
            st.value = 1.0 / st.value;
        }
    }
}

}  // namespace

std::vector<GammaSample> flow_gamma(const CoefficientField& cf, const PathSpec& p,
                                    double gamma0) {
    XT xt{p.dir, p.fixed};
    ChartState st{std::abs(gamma0) > kChartSwitch, std::abs(gamma0) > kChartSwitch
                                                       ? 1.0 / gamma0
                                                       : gamma0};
    int n = std::max(1, static_cast<int>(std::round(std::abs(p.stop - p.start) / p.step)));
    double ds = (p.stop - p.start) / n;
    std::vector<GammaSample> out;
    out.reserve(static_cast<size_t>(n) + 1);
    out.push_back({p.start, st.hat, st.value});
    for (int i = 0; i < n; ++i) {
        double s = p.start + i * ds;
        advance_chart(cf, p.dir, xt, s, s + ds, std::abs(ds), st);
        out.push_back({s + ds, st.hat, st.value});
    }
    return out;
}

std::vector<LinearSample> flow_linear(const CoefficientField& cf, const PathSpec& p,
                                      double psi1_0, double psi2_0) {
    XT xt{p.dir, p.fixed};
    auto deriv = [&](double s, double p1, double p2, double& d1, double& d2) {
        double x = xt.x(s), t = xt.t(s);
        if (p.dir == PathDir::AlongX) {
            double eta = cf.eta_value();
            d1 = eta / 2 * p1 + cf.q(x, t) * p2;
            d2 = cf.r(x, t) * p1 - eta / 2 * p2;
        } else {
            double Av = cf.A(x, t), Bv = cf.B(x, t), Cv = cf.C(x, t);
            d1 = Av * p1 + Bv * p2;
            d2 = Cv * p1 - Av * p2;
        }
    };
    int n = std::max(1, static_cast<int>(std::round(std::abs(p.stop - p.start) / p.step)));
    double ds = (p.stop - p.start) / n;
    std::vector<LinearSample> out;
    out.reserve(static_cast<size_t>(n) + 1);
    double p1 = psi1_0, p2 = psi2_0, ls = 0.0;
    {
        double norm = std::hypot(p1, p2);
        if (norm == 0.0) throw DomainError("flow_linear: zero initial state");
        p1 /= norm; p2 /= norm; ls = std::log(norm);
    }
    out.push_back({p.start, p1, p2, ls});
    for (int i = 0; i < n; ++i) {
        double s = p.start + i * ds;
        double a1, a2, b1, b2, c1, c2, d1, d2;
        deriv(s, p1, p2, a1, a2);
        deriv(s + ds / 2, p1 + ds / 2 * a1, p2 + ds / 2 * a2, b1, b2);
        deriv(s + ds / 2, p1 + ds / 2 * b1, p2 + ds / 2 * b2, c1, c2);
        deriv(s + ds, p1 + ds * c1, p2 + ds * c2, d1, d2);
        p1 += ds / 6 * (a1 + 2 * b1 + 2 * c1 + d1);
        p2 += ds / 6 * (a2 + 2 * b2 + 2 * c2 + d2);
        double norm = std::hypot(p1, p2);
        if (!std::isfinite(norm) || norm == 0.0)
            throw DomainError("flow_linear: non-finite state");
        p1 /= norm; p2 /= norm; ls += std::log(norm);
        out.push_back({s + ds, p1, p2, ls});
    }
    return out;
}

namespace {

// Fill the grid with a chart value by integrating along x on the t0 row and
// then along t up each column. from_right flips the x sweep (used for the
// hat chart whose x-flow is stable rightward-decreasing).
std::vector<std::vector<ChartState>> fill_grid(const CoefficientField& cf, const GridSpec& g,
                                               bool hat, double y0, bool from_right) {
    double dx = (g.x1 - g.x0) / g.nx;
    std::vector<std::vector<ChartState>> grid(static_cast<size_t>(g.nx) + 1,
                                              std::vector<ChartState>(static_cast<size_t>(g.nt) + 1));
    // t0 row; y0 is given in the requested chart
    XT row{PathDir::AlongX, g.t0};
    ChartState st{hat, y0};
    if (std::abs(st.value) > kChartSwitch) { st.hat = !st.hat; st.value = 1.0 / st.value; }
    if (!from_right) {
        for (int i = 0; i <= g.nx; ++i) {
            if (i > 0) advance_chart(cf, PathDir::AlongX, row, g.x0 + (i - 1) * dx,
                                     g.x0 + i * dx, g.h_int_x, st);
            grid[static_cast<size_t>(i)][0] = st;
        }
    } else {
        for (int i = g.nx; i >= 0; --i) {
            if (i < g.nx) advance_chart(cf, PathDir::AlongX, row, g.x0 + (i + 1) * dx,
                                        g.x0 + i * dx, g.h_int_x, st);
            grid[static_cast<size_t>(i)][0] = st;
        }
    }
    // columns
    double dt = (g.t1 - g.t0) / g.nt;
    for (int i = 0; i <= g.nx; ++i) {
        XT col{PathDir::AlongT, g.x0 + i * dx};
        ChartState cs = grid[static_cast<size_t>(i)][0];
        for (int j = 1; j <= g.nt; ++j) {
            advance_chart(cf, PathDir::AlongT, col, g.t0 + (j - 1) * dt, g.t0 + j * dt,
                          g.h_int, cs);
            grid[static_cast<size_t>(i)][static_cast<size_t>(j)] = cs;
        }
    }
    return grid;
}

}  // namespace

double conservation_form_mismatch(const CoefficientField& cf, const GridSpec& g, bool hat,
                                  double y0) {
    auto grid = fill_grid(cf, g, hat, y0, /*from_right=*/hat);
    double dx = (g.x1 - g.x0) / g.nx, dt = (g.t1 - g.t0) / g.nt;
    // The chart value genuinely reaches infinity on some grids (the t-flow
    // grows like exp(|2A| t)); the identity is checked away from poles, on
    // stencils whose nodes all stay in the requested chart, safely bounded.
    auto usable = [&](int i, int j) {
        const ChartState& st = grid[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return st.hat == hat && std::abs(st.value) <= 1.2;
    };
    auto value = [&](int i, int j) {
        return grid[static_cast<size_t>(i)][static_cast<size_t>(j)].value;
    };
    auto density = [&](int i, int j) {
        double x = g.x0 + i * dx, t = g.t0 + j * dt;
        return hat ? cf.r(x, t) * value(i, j) : cf.q(x, t) * value(i, j);
    };
    auto fluxv = [&](int i, int j) {
        double x = g.x0 + i * dx, t = g.t0 + j * dt;
        return hat ? -cf.A(x, t) + cf.C(x, t) * value(i, j)
                   : cf.A(x, t) + cf.B(x, t) * value(i, j);
    };
    double worst = 0.0;
    long used = 0;
    for (int i = 1; i < g.nx; ++i) {
        for (int j = 1; j < g.nt; ++j) {
            if (!(usable(i, j) && usable(i - 1, j) && usable(i + 1, j) &&
                  usable(i, j - 1) && usable(i, j + 1)))
                continue;
            double lhs = (density(i, j + 1) - density(i, j - 1)) / (2 * dt);
            double rhs = (fluxv(i + 1, j) - fluxv(i - 1, j)) / (2 * dx);
            worst = std::max(worst, std::abs(lhs - rhs));
            ++used;
        }
    }
    if (used == 0)
        throw DomainError("conservation_form_mismatch: no pole-free stencils on the grid");
    return worst;
}

double theta_closed_mismatch(const CoefficientField& cf, const GridSpec& g, double phi0) {
    double dx = (g.x1 - g.x0) / g.nx, dt = (g.t1 - g.t0) / g.nt;
    std::vector<std::vector<double>> phi(static_cast<size_t>(g.nx) + 1,
                                         std::vector<double>(static_cast<size_t>(g.nt) + 1));
    // t0 row, then columns (same sweep pattern as the chart grids)
    {
        XT xt{PathDir::AlongX, g.t0};
        double y = phi0;
        phi[0][0] = y;
        auto rhs = [&](double s, double v) {
            double x = xt.x(s), t = xt.t(s);
            return cf.f(3, 1, x, t) + cf.f(1, 1, x, t) * std::sin(v) +
                   cf.f(2, 1, x, t) * std::cos(v);
        };
        for (int i = 1; i <= g.nx; ++i) {
            y = integrate_to(rhs, g.x0 + (i - 1) * dx, g.x0 + i * dx, y, g.h_int_x);
            phi[static_cast<size_t>(i)][0] = y;
        }
    }
    for (int i = 0; i <= g.nx; ++i) {
        XT xt{PathDir::AlongT, g.x0 + i * dx};
        auto rhs = [&](double s, double v) {
            double x = xt.x(s), t = xt.t(s);
            return cf.f(3, 2, x, t) + cf.f(1, 2, x, t) * std::sin(v) +
                   cf.f(2, 2, x, t) * std::cos(v);
        };
        double y = phi[static_cast<size_t>(i)][0];
        for (int j = 1; j <= g.nt; ++j) {
            y = integrate_to(rhs, g.t0 + (j - 1) * dt, g.t0 + j * dt, y, g.h_int);
            phi[static_cast<size_t>(i)][static_cast<size_t>(j)] = y;
        }
    }
    auto P = [&](int i, int j) {
        double x = g.x0 + i * dx, t = g.t0 + j * dt, v = phi[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return cf.f(1, 1, x, t) * std::cos(v) - cf.f(2, 1, x, t) * std::sin(v);
    };
    auto Q = [&](int i, int j) {
        double x = g.x0 + i * dx, t = g.t0 + j * dt, v = phi[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return cf.f(1, 2, x, t) * std::cos(v) - cf.f(2, 2, x, t) * std::sin(v);
    };
    double worst = 0.0;
    for (int i = 1; i < g.nx; ++i)
        for (int j = 1; j < g.nt; ++j) {
            double lhs = (P(i, j + 1) - P(i, j - 1)) / (2 * dt);
            double rhs = (Q(i + 1, j) - Q(i - 1, j)) / (2 * dx);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

double wronskian_drift(const CoefficientField& cf, const PathSpec& p) {
    XT xt{p.dir, p.fixed};
    auto deriv = [&](double s, const std::array<double, 4>& y, std::array<double, 4>& d) {
        double x = xt.x(s), t = xt.t(s);
        double m11, m12, m21, m22;
        if (p.dir == PathDir::AlongX) {
            double eta = cf.eta_value();
            m11 = eta / 2; m12 = cf.q(x, t);
            m21 = cf.r(x, t); m22 = -eta / 2;
        } else {
            m11 = cf.A(x, t); m12 = cf.B(x, t);
            m21 = cf.C(x, t); m22 = -m11;
        }
        d = {m11 * y[0] + m12 * y[1], m21 * y[0] + m22 * y[1],
             m11 * y[2] + m12 * y[3], m21 * y[2] + m22 * y[3]};
    };
    int n = std::max(1, static_cast<int>(std::round(std::abs(p.stop - p.start) / p.step)));
    double ds = (p.stop - p.start) / n;
    double prod = 1.0, worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = p.start + i * ds;
        // one RK4 step of the fundamental matrix, restarted at the identity
        std::array<double, 4> y{1, 0, 0, 1}, a, b, c, d, tmp;
        deriv(s, y, a);
        for (int j = 0; j < 4; ++j) tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + ds / 2 * a[static_cast<size_t>(j)];
        deriv(s + ds / 2, tmp, b);
        for (int j = 0; j < 4; ++j) tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + ds / 2 * b[static_cast<size_t>(j)];
        deriv(s + ds / 2, tmp, c);
        for (int j = 0; j < 4; ++j) tmp[static_cast<size_t>(j)] = y[static_cast<size_t>(j)] + ds * c[static_cast<size_t>(j)];
        deriv(s + ds, tmp, d);
        for (int j = 0; j < 4; ++j)
            y[static_cast<size_t>(j)] += ds / 6 * (a[static_cast<size_t>(j)] + 2 * b[static_cast<size_t>(j)] + 2 * c[static_cast<size_t>(j)] + d[static_cast<size_t>(j)]);
        double det = y[0] * y[3] - y[1] * y[2];
        if (!std::isfinite(det)) throw DomainError("wronskian_drift: non-finite propagator");
        prod *= det;
        worst = std::max(worst, std::abs(prod - 1.0));
    }
    return worst;
}

std::vector<double> convergence_orders(const std::vector<double>& m) {
    std::vector<double> orders;
    for (size_t i = 0; i + 1 < m.size(); ++i) {
        if (m[i + 1] <= 0.0 || m[i] <= 0.0) {
            orders.push_back(std::numeric_limits<double>::infinity());
        } else {
            orders.push_back(std::log2(m[i] / m[i + 1]));
        }
    }
    return orders;
}

}  // namespace pscl
