#pragma once

#include <vector>

namespace wulff {

struct Harmonic {
    int k = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
};

// f(ψ) = a0 + Σ cos_coeff·cos(kψ) + sin_coeff·sin(kψ)
struct TrigSeries {
    double a0 = 0.0;
    std::vector<Harmonic> terms;

    [[nodiscard]] int max_harmonic() const noexcept;

    // True iff every odd harmonic vanishes, i.e. f(ψ+π) = f(ψ).
    [[nodiscard]] bool centrally_symmetric() const noexcept;

    // Exact derivative of the given order (0 = the function itself).
    [[nodiscard]] double evaluate(double angle, int order = 0) const noexcept;

    // Samples of the order-th derivative at ψ_j = 2πj/n.
    [[nodiscard]] std::vector<double> sample(int n, int order = 0) const;

    [[nodiscard]] TrigSeries scaled(double factor) const;
};

} // namespace wulff
