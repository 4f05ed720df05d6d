#include <doctest.h>

#include <random>

#include "pscl/claws.hpp"
#include "pscl/modelfile.hpp"
#include "pscl/parse.hpp"

using namespace pscl;

namespace {

const ModelSpec& mkdv() {
    static ModelSpec s = load_model_file(PSCL_MODEL_DIR "/mkdv.model");
    return s;
}

const ModelSpec& sg() {
    static ModelSpec s = load_model_file(PSCL_MODEL_DIR "/sine-gordon.model");
    return s;
}

// Deliberately plain re-implementation of the density recursion, kept
// independent of GSequence: every quantity is rebuilt from scratch each
// step and the quotient is differentiated by the explicit quotient rule.
std::vector<Expression> brute_force_densities(const QRModel& qr, const EvolutionModel& m,
                                              int N) {
    Expression q = apply_constraints(qr.q, m);
    Expression r = apply_constraints(qr.r, m);
    std::vector<Expression> g;
    g.push_back(q * r);
    while (static_cast<int>(g.size()) < N) {
        int n = static_cast<int>(g.size());  // have g_1..g_n
        Expression conv = Expression::zero();
        for (int k = 1; k <= n - 1; ++k)
            conv = conv + g[static_cast<size_t>(k - 1)] * g[static_cast<size_t>(n - k - 1)];
        Expression h = g.back() / q;  // g_n / q
        Expression h_x = (total_dx(g.back(), m) * q - g.back() * total_dx(q, m)) / (q * q);
        (void)h;
        g.push_back(-conv - q * h_x);
    }
    return g;
}

}  // namespace

TEST_CASE("first densities of the generic recursion") {
    QRModel generic{parse("q"), parse("r"), Expression::zero(), Expression::zero(),
                    Expression::zero()};
    EvolutionModel m;
    m.field = "q";
    auto gs = g_sequence(generic, m, 2);
    CHECK(gs.at(1) == parse("q*r"));
    CHECK(gs.at(2) == parse("-q*r_x"));
}

TEST_CASE("transcribed densities for the focusing cubic flow") {
    auto gs = g_sequence(mkdv().qr, mkdv().model, 4);
    CHECK(gs.at(1) == parse("-q^2"));
    CHECK(gs.at(2) == parse("q*q_x"));
    CHECK(gs.at(3) == parse("-q^4 - q*q_xx"));
    CHECK(gs.at(4) == parse("5*q^3*q_x + q*q_xxx"));
}

TEST_CASE("recursion agrees with a brute-force reimplementation") {
    auto gs = g_sequence(mkdv().qr, mkdv().model, 8);
    auto oracle = brute_force_densities(mkdv().qr, mkdv().model, 8);
    for (int n = 1; n <= 8; ++n) CHECK(gs.at(n) == oracle[static_cast<size_t>(n - 1)]);

    auto sgs = g_sequence(sg().qr, sg().model, 6);
    auto sgo = brute_force_densities(sg().qr, sg().model, 6);
    for (int n = 1; n <= 6; ++n) CHECK(sgs.at(n) == sgo[static_cast<size_t>(n - 1)]);
}

TEST_CASE("full hierarchy verifies exactly for the cubic flow") {
    auto gs = g_sequence(mkdv().qr, mkdv().model, 10);
    auto fr = flux_sequence(mkdv().qr, gs, mkdv().model);
    REQUIRE(static_cast<int>(fr.laws.size()) >= 8);
    CHECK(fr.cancelled_orders.empty());
    for (int n = 1; n <= 8; ++n) {
        const auto& law = fr.laws[static_cast<size_t>(n - 1)];
        CHECK(law.order == n);
        CHECK(law.verified);
        CHECK(verify(law, mkdv().model));
        CHECK(law.trivial == (n % 2 == 0));  // even orders are exact x-derivatives
    }
}

TEST_CASE("fluxes match the closed-form combination of densities") {
    // flux_n = -[(q_xx/q + 2 q^2) g_n + (q_x/q) g_{n+1} + g_{n+2}]
    auto gs = g_sequence(mkdv().qr, mkdv().model, 10);
    auto fr = flux_sequence(mkdv().qr, gs, mkdv().model);
    Expression qxx_q = parse("q_xx/q + 2*q^2"), qx_q = parse("q_x/q");
    for (int n = 1; n <= 6; ++n) {
        Expression expected =
            -(qxx_q * gs.at(n) + qx_q * gs.at(n + 1) + gs.at(n + 2));
        CHECK(is_zero_onshell(fr.laws[static_cast<size_t>(n - 1)].flux - expected,
                              mkdv().model));
    }
}

TEST_CASE("sine-Gordon hierarchy: first order cancels, rest verify") {
    auto gs = g_sequence(sg().qr, sg().model, 7);
    auto fr = flux_sequence(sg().qr, gs, sg().model);
    CHECK(fr.cancelled_orders == std::vector<int>{1});
    REQUIRE(static_cast<int>(fr.laws.size()) >= 5);
    Expression ratio = parse("-sin(u)/(2*q)");  // -sin(u)/u_x after u_x = 2q
    for (const auto& law : fr.laws) {
        CHECK(law.verified);
        CHECK(verify(law, sg().model));
        if (law.order >= 2 && law.order <= 6)
            CHECK(is_zero_onshell(law.flux - ratio * gs.at(law.order - 1), sg().model));
    }
}

TEST_CASE("mirror hierarchy from the swapped chart also verifies") {
    QRModel hat = hat_swap(mkdv().qr);
    auto gs = g_sequence(hat, mkdv().model, 6);
    auto fr = flux_sequence(hat, gs, mkdv().model);
    for (const auto& law : fr.laws) CHECK(law.verified);
    // swapping twice is the identity
    QRModel back = hat_swap(hat);
    CHECK(back.q == mkdv().qr.q);
    CHECK(back.B == mkdv().qr.B);
    CHECK(back.A == mkdv().qr.A);
}

TEST_CASE("triviality test equals having an antiderivative") {
    auto gs = g_sequence(mkdv().qr, mkdv().model, 6);
    for (int n = 1; n <= 6; ++n)
        CHECK(euler_trivial(gs.at(n), mkdv().model) == (n % 2 == 0));
    // explicit antiderivatives for the first two trivial densities
    CHECK(gs.at(2) == total_dx(parse("q^2/2"), mkdv().model));
    CHECK(gs.at(4) == total_dx(parse("5*q^4/4 + q*q_xx - q_x^2/2"), mkdv().model));
}

TEST_CASE("triviality test on random total derivatives") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> coef(-3, 3), pick(0, 3);
    const char* pool[] = {"q^2", "q*q_x", "q_xx", "q^3*q_x"};
    for (int i = 0; i < 10; ++i) {
        Expression p = Expression::zero();
        for (int j = 0; j < 3; ++j)
            p = p + Expression::constant(coef(rng)) * parse(pool[pick(rng)]);
        CHECK(euler_trivial(total_dx(p, mkdv().model), mkdv().model));
        CHECK(!euler_trivial(total_dx(p, mkdv().model) + parse("q^2"), mkdv().model));
    }
}

TEST_CASE("triviality is undecided for non-polynomial densities") {
    CHECK_THROWS_AS(euler_trivial(parse("sin(u)"), sg().model), DomainError);
}

TEST_CASE("a wrong flux fails verification") {
    auto gs = g_sequence(mkdv().qr, mkdv().model, 5);
    auto fr = flux_sequence(mkdv().qr, gs, mkdv().model);
    ConservationLaw bad = fr.laws[0];
    bad.flux = bad.flux + parse("q");
    CHECK(!verify(bad, mkdv().model));
}
