#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace wulff {

// Scratch storage for one derivative evaluation. Owning one per thread makes
// concurrent use of a shared grid safe.
struct SpectralWorkspace {
    std::vector<std::complex<double>> modes;
    std::vector<double> real;
};

// Uniform periodic grid ψ_j = 2πj/n on [0, 2π) with FFT-based differentiation
// of the trigonometric interpolant and trapezoid quadrature.
class SpectralGrid {
public:
    explicit SpectralGrid(int n);
    ~SpectralGrid();
    SpectralGrid(const SpectralGrid&) = delete;
    SpectralGrid& operator=(const SpectralGrid&) = delete;

    // Process-wide cache, one grid per size.
    static std::shared_ptr<const SpectralGrid> shared(int n);

    [[nodiscard]] int size() const noexcept { return n_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }
    [[nodiscard]] double angle(int j) const noexcept { return spacing_ * j; }
    [[nodiscard]] std::span<const double> cosines() const noexcept { return cos_; }
    [[nodiscard]] std::span<const double> sines() const noexcept { return sin_; }

    [[nodiscard]] SpectralWorkspace make_workspace() const;

    // order ∈ {1, 2}. The Nyquist mode is dropped for odd orders.
    void derivative(std::span<const double> in, int order, std::span<double> out,
                    SpectralWorkspace& ws) const;
    [[nodiscard]] std::vector<double> derivative(std::span<const double> in, int order) const;

    // Trapezoid rule; exact for trigonometric polynomials of degree < n.
    [[nodiscard]] double integrate(std::span<const double> values) const noexcept;

private:
    int n_;
    double spacing_;
    std::vector<double> cos_;
    std::vector<double> sin_;
    void* forward_ = nullptr;
    void* backward_ = nullptr;
};

// Free-function form used across the library.
[[nodiscard]] std::vector<double> spectral_derivative(std::span<const double> samples, int order);

} // namespace wulff
