#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace pscl {

/// Uniform periodic grid on [-L/2, L/2) with N points (N a power of two)
/// and FFT-based differentiation. Each instance owns its FFTW plans and
/// scratch buffers; instances are cheap enough to create per run and are
/// not meant to be shared across threads.
class SpectralGrid {
public:
    SpectralGrid(int n, double length);
    ~SpectralGrid();
    SpectralGrid(const SpectralGrid&);
    SpectralGrid(SpectralGrid&&) noexcept;
    SpectralGrid& operator=(const SpectralGrid&) = delete;
    SpectralGrid& operator=(SpectralGrid&&) noexcept;

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double x(int i) const { return -length_ / 2 + i * dx(); }

    /// Forward real-to-complex transform (n/2 + 1 coefficients, unscaled).
    std::vector<std::complex<double>> forward(const std::vector<double>& f) const;
    /// Inverse transform including the 1/n scaling.
    std::vector<double> inverse(const std::vector<std::complex<double>>& c) const;

    /// Wavenumber 2*pi*j/L of coefficient j.
    double k(int j) const;

    /// order-th spectral derivative (odd orders zero the Nyquist mode).
    std::vector<double> derivative(const std::vector<double>& f, int order) const;

    /// Periodic antiderivative of the mean-removed input; the result has
    /// zero mean. The caller accounts for the mean separately.
    std::vector<double> antiderivative(const std::vector<double>& f) const;

    double mean(const std::vector<double>& f) const;

private:
    struct Plans;
    int n_;
    double length_;
    std::unique_ptr<Plans> plans_;
};

}  // namespace pscl
