#include "pscl/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pscl {

struct SpectralGrid::Plans {
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    explicit Plans(int n) {
        real = fftw_alloc_real(static_cast<size_t>(n));
        spec = fftw_alloc_complex(static_cast<size_t>(n) / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    }
    ~Plans() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real);
        fftw_free(spec);
    }
};

SpectralGrid::SpectralGrid(int n, double length) : n_(n), length_(length) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw std::invalid_argument("SpectralGrid: n must be a power of two >= 4");
    if (!(length > 0)) throw std::invalid_argument("SpectralGrid: length must be positive");
    plans_ = std::make_unique<Plans>(n);
}

SpectralGrid::~SpectralGrid() = default;
SpectralGrid::SpectralGrid(SpectralGrid&&) noexcept = default;
SpectralGrid& SpectralGrid::operator=(SpectralGrid&&) noexcept = default;

SpectralGrid::SpectralGrid(const SpectralGrid& o) : n_(o.n_), length_(o.length_) {
    plans_ = std::make_unique<Plans>(n_);
}

double SpectralGrid::k(int j) const { return 2.0 * M_PI * j / length_; }

std::vector<std::complex<double>> SpectralGrid::forward(const std::vector<double>& f) const {
    if (static_cast<int>(f.size()) != n_)
        throw std::invalid_argument("SpectralGrid: size mismatch");
    std::copy(f.begin(), f.end(), plans_->real);
    fftw_execute(plans_->fwd);
    std::vector<std::complex<double>> c(static_cast<size_t>(n_) / 2 + 1);
    for (size_t j = 0; j < c.size(); ++j)
        c[j] = {plans_->spec[j][0], plans_->spec[j][1]};
    return c;
}

std::vector<double> SpectralGrid::inverse(const std::vector<std::complex<double>>& c) const {
    if (c.size() != static_cast<size_t>(n_) / 2 + 1)
        throw std::invalid_argument("SpectralGrid: size mismatch");
    for (size_t j = 0; j < c.size(); ++j) {
        plans_->spec[j][0] = c[j].real();
        plans_->spec[j][1] = c[j].imag();
    }
    fftw_execute(plans_->bwd);
    std::vector<double> f(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) f[static_cast<size_t>(i)] = plans_->real[i] / n_;
    return f;
}

std::vector<double> SpectralGrid::derivative(const std::vector<double>& f, int order) const {
    if (order == 0) return f;
    auto c = forward(f);
    for (size_t j = 0; j < c.size(); ++j) {
        std::complex<double> ik(0.0, k(static_cast<int>(j)));
        c[j] *= std::pow(ik, order);
    }
    if (order % 2 != 0) c.back() = 0.0;  // Nyquist mode has no well-defined sign
    return inverse(c);
}

std::vector<double> SpectralGrid::antiderivative(const std::vector<double>& f) const {
    auto c = forward(f);
    c[0] = 0.0;
    for (size_t j = 1; j + 1 < c.size(); ++j)
        c[j] /= std::complex<double>(0.0, k(static_cast<int>(j)));
    c.back() = 0.0;
    return inverse(c);
}

double SpectralGrid::mean(const std::vector<double>& f) const {
    return std::accumulate(f.begin(), f.end(), 0.0) / n_;
}

}  // namespace pscl
