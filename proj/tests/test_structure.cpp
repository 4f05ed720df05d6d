#include <doctest.h>

#include <cmath>
#include <random>

#include "pscl/modelfile.hpp"
#include "pscl/parse.hpp"
#include "pscl/solutions.hpp"
#include "pscl/structure.hpp"

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

// jets of the soliton at a handful of points, for numeric spot checks
std::map<Generator, double> soliton_point(double x, double t, double eta) {
    auto sol = ExactSolution::mkdv_soliton(1.0);
    std::map<Generator, double> pt;
    for (int k = 0; k <= 6; ++k) pt[Generator::jet("q", k)] = sol.q_jet(k, x, t);
    pt[Generator::eta()] = eta;
    return pt;
}

}  // namespace

TEST_CASE("coefficient system holds on-shell for both models") {
    CHECK(residuals_qr(mkdv().qr, mkdv().model).all_zero(mkdv().model));
    CHECK(residuals_qr(sg().qr, sg().model).all_zero(sg().model));
}

TEST_CASE("first coefficient equation is an identity off-shell") {
    // A_x - (qC - rB) involves no time derivative, so it must vanish even
    // under a deliberately wrong evolution
    for (const ModelSpec* s : {&mkdv(), &sg()}) {
        EvolutionModel wrong = s->model.with_evolution(parse("q^5"));
        auto res = residuals_qr(s->qr, wrong);
        CHECK(is_zero_onshell(res.res[0], wrong));
        // ... while the q-equation now fails
        CHECK(!is_zero_onshell(res.res[1], wrong));
    }
}

TEST_CASE("one-form table follows from the coordinate data") {
    for (const ModelSpec* s : {&mkdv(), &sg()}) {
        REQUIRE(s->ftable.has_value());
        FTable ft = qr_to_f(s->qr);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                CHECK(is_zero_onshell(
                    ft.f[static_cast<size_t>(a)][static_cast<size_t>(b)] -
                        s->ftable->f[static_cast<size_t>(a)][static_cast<size_t>(b)],
                    s->model));
    }
    // spot values
    FTable ft = qr_to_f(sg().qr);
    CHECK(is_zero_onshell(ft.f[1][0], sg().model));                      // r + q = 0
    CHECK(is_zero_onshell(ft.f[2][0] + parse("u_x"), sg().model));      // r - q = -u_x
    CHECK(ft.f[0][0] == parse("-eta"));
}

TEST_CASE("curvature system holds on-shell for both models") {
    for (const ModelSpec* s : {&mkdv(), &sg()}) {
        CHECK(residuals_f(qr_to_f(s->qr), s->model).all_zero(s->model));
        if (s->ftable) CHECK(residuals_f(*s->ftable, s->model).all_zero(s->model));
    }
}

TEST_CASE("evolution equation is recovered from the coefficients") {
    EvolutionModel base = mkdv().model;
    base.evolution.reset();
    EvolutionModel derived = derive_evolution(mkdv().qr, base);
    REQUIRE(derived.evolution.has_value());
    CHECK(*derived.evolution == parse("-6*q^2*q_x - q_xxx"));

    EvolutionModel sgb = sg().model;
    sgb.evolution.reset();
    EvolutionModel sgd = derive_evolution(sg().qr, sgb);
    REQUIRE(sgd.evolution.has_value());
    CHECK(*sgd.evolution == parse("sin(u)/2"));
    // q_t = sin(u)/2 with u_x = 2q is the potential equation u_xt = sin u
    CHECK(is_zero_onshell(Expression::constant(2) * *sgd.evolution - Expression::sin("u"),
                          sgd.with_evolution(*sgd.evolution * Expression::constant(2))));
}

TEST_CASE("an eta-dependent flow is rejected") {
    QRModel bad = mkdv().qr;
    bad.B = bad.B + parse("eta*q^2");
    EvolutionModel base = mkdv().model;
    base.evolution.reset();
    CHECK_THROWS_AS(derive_evolution(bad, base), DomainError);
}

TEST_CASE("angle system is completely integrable exactly when on-shell") {
    for (const ModelSpec* s : {&mkdv(), &sg()}) {
        FTable ft = qr_to_f(s->qr);
        Expression res = phi_compatibility(ft, s->model);
        CHECK(is_zero_onshell(res, s->model));
    }
    // breaking one coefficient breaks integrability
    QRModel bad = mkdv().qr;
    bad.A = bad.A + parse("q");
    CHECK(!is_zero_onshell(phi_compatibility(qr_to_f(bad), mkdv().model), mkdv().model));
}

TEST_CASE("both characteristic one-forms are closed on-shell") {
    for (const ModelSpec* s : {&mkdv(), &sg()}) {
        auto [dtheta, dPhi] = closedness_residuals(qr_to_f(s->qr), s->model);
        CHECK(is_zero_onshell(dtheta, s->model));
        CHECK(is_zero_onshell(dPhi, s->model));
    }
}

TEST_CASE("random coefficient perturbations are detected") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> which(0, 2), coef(1, 3);
    const char* bumps[] = {"q", "q_x", "q^2", "eta*q"};
    for (int i = 0; i < 12; ++i) {
        QRModel bad = mkdv().qr;
        Expression bump =
            Expression::constant(coef(rng)) * parse(bumps[static_cast<size_t>(i) % 4]);
        switch (which(rng)) {
            case 0: bad.A = bad.A + bump; break;
            case 1: bad.B = bad.B + bump; break;
            default: bad.C = bad.C + bump; break;
        }
        bool qr_ok = residuals_qr(bad, mkdv().model).all_zero(mkdv().model);
        bool f_ok = residuals_f(qr_to_f(bad), mkdv().model).all_zero(mkdv().model);
        CHECK(!(qr_ok && f_ok));
    }
}

TEST_CASE("symbolic zero agrees with numeric evaluation along the soliton") {
    auto res = residuals_qr(mkdv().qr, mkdv().model);
    for (double x : {-2.0, 0.0, 0.7}) {
        auto pt = soliton_point(x, 0.3, 2.0);
        for (auto& e : res.res) {
            Expression reduced = apply_constraints(e, mkdv().model);
            CHECK(std::abs(evaluate(reduced, pt)) < 1e-9);
        }
    }
    // and a genuinely nonzero residual evaluates visibly nonzero
    QRModel bad = mkdv().qr;
    bad.A = bad.A + parse("q");
    Expression r0 = apply_constraints(residuals_qr(bad, mkdv().model).res[0],
                                      mkdv().model);
    CHECK(std::abs(evaluate(r0, soliton_point(0.2, 0.3, 2.0))) > 1e-3);
}
