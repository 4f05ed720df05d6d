#include "pscl/claws.hpp"

namespace pscl {

GSequence g_sequence(const QRModel& qr, const EvolutionModel& m, int N) {
    Expression q = apply_constraints(qr.q, m);
    Expression r = apply_constraints(qr.r, m);
    if (q.is_zero()) throw DomainError("g_sequence: q is identically zero");
    GSequence gs;
    if (N < 1) return gs;
    gs.g.push_back(q * r);
    for (int n = 1; n < N; ++n) {
        // g_{n+1} = -sum_{k=1}^{n-1} g_k g_{n-k} - q (g_n/q)_x
        Expression acc = Expression::zero();
        for (int k = 1; k <= n - 1; ++k) acc = acc + gs.at(k) * gs.at(n - k);
        Expression next = -acc - q * total_dx(gs.at(n) / q, m);
        gs.g.push_back(next);
    }
    return gs;
}

FluxResult flux_sequence(const QRModel& qr, const GSequence& gs, const EvolutionModel& m) {
    Expression q = apply_constraints(qr.q, m);
    Expression A = apply_constraints(qr.A, m);
    Expression B = apply_constraints(qr.B, m);
    Expression eta = Expression::eta();

    int bhi = B.is_zero() ? 0 : std::max(eta_range(B).second, 0);
    int N = gs.size() - bhi;
    if (N < 0) N = 0;

    // series S = A + B * sum_n (g_n/q) eta^-n; law n: flux = coeff of eta^-n
    Expression S = A;
    for (int n = 1; n <= gs.size(); ++n)
        S = S + B * (gs.at(n) / q) * eta.pow(-n);

    auto [slo, shi] = eta_range(S);
    // non-negative powers must be x-constants, else the data is inconsistent
    for (int d = 0; d <= shi; ++d) {
        Expression cd = laurent_eta(S, d, d)[0];
        if (!is_zero_onshell(total_dx(cd, m), m))
            throw DomainError("flux_sequence: unmatched eta^" + std::to_string(d) +
                              " term on the right-hand side");
    }

    // A alone, for detecting orders that cancel on both sides
    FluxResult out;
    for (int n = 1; n <= N; ++n) {
        Expression G = laurent_eta(S, -n, -n)[0];
        Expression An = A.is_zero() ? Expression::zero() : [&] {
            auto [alo, ahi] = eta_range(A);
            return (-n >= alo && -n <= ahi) ? laurent_eta(A, -n, -n)[0] : Expression::zero();
        }();
        Expression rest = G - An;
        ConservationLaw law{n, gs.at(n), G, false, false};
        law.verified = verify(law, m);
        if (rest.is_zero() && !An.is_zero() && law.verified) {
            // the series term at this order comes entirely from A and cancels
            // against dg_n/dt on-shell: no law at this order
            out.cancelled_orders.push_back(n);
            continue;
        }
        try {
            law.trivial = euler_trivial(law.density, m);
        } catch (const DomainError&) {
            law.trivial = false;  // undecidable for non-polynomial densities
        }
        out.laws.push_back(std::move(law));
    }
    return out;
}

QRModel hat_swap(const QRModel& qr) {
    std::map<Generator, Expression> flip{{Generator::eta(), -Expression::eta()}};
    QRModel h;
    h.q = substitute(qr.r, flip);
    h.r = substitute(qr.q, flip);
    h.A = -substitute(qr.A, flip);
    h.B = substitute(qr.C, flip);
    h.C = substitute(qr.B, flip);
    return h;
}

bool verify(const ConservationLaw& law, const EvolutionModel& m) {
    Expression res = total_dt_onshell(law.density, m) - total_dx(law.flux, m);
    return is_zero_onshell(res, m);
}

bool euler_trivial(const Expression& density, const EvolutionModel& m) {
    Expression d = apply_constraints(density, m);
    if (!d.den().is_constant())
        throw DomainError("euler_trivial: density is not polynomial after reduction");
    const Poly num = d.num() * (Rational(1) / (d.den().is_zero() ? Rational(1) : d.den().leading_coeff()));
    int max_order = -1;
    for (auto& g : num.generators()) {
        if (g.kind != GenKind::Jet || g.name != m.field)
            throw DomainError("euler_trivial: density contains non-jet generator " + g.str());
        max_order = std::max(max_order, g.order);
    }
    Expression euler = Expression::zero();
    int sign = 1;
    for (int k = 0; k <= max_order; ++k, sign = -sign) {
        Expression pd(num.partial(Generator::jet(m.field, k)), Poly(Rational(1)));
        euler = euler + Expression::constant(sign) * prolong_dx(pd, m, k);
    }
    return euler.is_zero();
}

}  // namespace pscl
