#include <benchmark/benchmark.h>

#include <cmath>

#include "pscl/modelfile.hpp"
#include "pscl/pdebench.hpp"
#include "pscl/riccati.hpp"

namespace {

const pscl::ModelSpec& mkdv_spec() {
    static pscl::ModelSpec spec = pscl::load_model_file(PSCL_MODEL_DIR "/mkdv.model");
    return spec;
}

void BM_flow_gamma(benchmark::State& state) {
    const auto& spec = mkdv_spec();
    pscl::CoefficientField cf(spec.qr, spec.model, pscl::ExactSolution::mkdv_soliton(1.0),
                              3.0);
    pscl::PathSpec p{pscl::PathDir::AlongX, 0.0, -10.0, 10.0, 1e-3};
    for (auto _ : state) {
        auto samples = pscl::flow_gamma(cf, p, 0.0);
        benchmark::DoNotOptimize(samples);
    }
}
BENCHMARK(BM_flow_gamma);

void BM_evolve_mkdv(benchmark::State& state) {
    pscl::SpectralGrid g(256, 40.0);
    std::vector<double> q0(256);
    for (int i = 0; i < 256; ++i) q0[static_cast<size_t>(i)] = std::exp(-g.x(i) * g.x(i));
    for (auto _ : state) {
        auto h = pscl::evolve_mkdv(g, q0, 0.1, 1e-3, 100);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_evolve_mkdv);

}  // namespace

BENCHMARK_MAIN();
