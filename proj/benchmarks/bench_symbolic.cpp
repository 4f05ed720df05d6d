#include <benchmark/benchmark.h>

#include "pscl/claws.hpp"
#include "pscl/parse.hpp"

namespace {

pscl::EvolutionModel mkdv_model() {
    pscl::EvolutionModel m;
    m.field = "q";
    m.evolution = pscl::parse("-6*q^2*q_x - q_xxx");
    m.constraints.emplace(pscl::Generator::jet("r", 0), pscl::parse("-q"));
    return m;
}

pscl::QRModel mkdv_qr() {
    pscl::QRModel qr;
    qr.q = pscl::parse("q");
    qr.r = pscl::parse("-q");
    qr.A = pscl::parse("-1/2*eta^3 - eta*q^2");
    qr.B = pscl::parse("-q_xx - eta*q_x - eta^2*q - 2*q^3");
    qr.C = pscl::parse("q_xx - eta*q_x + eta^2*q + 2*q^3");
    return qr;
}

void BM_normalize(benchmark::State& state) {
    auto a = pscl::parse("(q^2 - q_x^2)*(q + q_xx)^3");
    auto b = pscl::parse("(q - q_x)*(q + q_xx)");
    for (auto _ : state) {
        auto r = a / b;
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_normalize);

void BM_total_dx(benchmark::State& state) {
    auto m = mkdv_model();
    auto e = pscl::parse("5*q^3*q_x + q*q_xxx");
    for (auto _ : state) {
        auto r = pscl::total_dx(e, m);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_total_dx);

void BM_g_sequence(benchmark::State& state) {
    auto m = mkdv_model();
    auto qr = mkdv_qr();
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto gs = pscl::g_sequence(qr, m, n);
        benchmark::DoNotOptimize(gs);
    }
}
BENCHMARK(BM_g_sequence)->Arg(4)->Arg(8);

void BM_verify_law(benchmark::State& state) {
    auto m = mkdv_model();
    auto qr = mkdv_qr();
    auto gs = pscl::g_sequence(qr, m, 7);
    auto fr = pscl::flux_sequence(qr, gs, m);
    const auto& law = fr.laws.at(2);
    for (auto _ : state) {
        bool ok = pscl::verify(law, m);
        benchmark::DoNotOptimize(ok);
    }
}
BENCHMARK(BM_verify_law);

}  // namespace
