#include "wulff/trig_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wulff {

int TrigSeries::max_harmonic() const noexcept {
    int kmax = 0;
    for (const auto& h : terms) kmax = std::max(kmax, h.k);
    return kmax;
}

bool TrigSeries::centrally_symmetric() const noexcept {
    return std::all_of(terms.begin(), terms.end(), [](const Harmonic& h) {
        return h.k % 2 == 0 || (h.cos_coeff == 0.0 && h.sin_coeff == 0.0);
    });
}

double TrigSeries::evaluate(double angle, int order) const noexcept {
    double value = order == 0 ? a0 : 0.0;
    for (const auto& h : terms) {
        const double kk = static_cast<double>(h.k);
        const double c = std::cos(kk * angle);
        const double s = std::sin(kk * angle);
        // d^m/dψ^m of (a cos + b sin) cycles with period 4 in m.
        const double scale = std::pow(kk, order);
        double term = 0.0;
        switch (order % 4) {
        case 0: term = h.cos_coeff * c + h.sin_coeff * s; break;
        case 1: term = -h.cos_coeff * s + h.sin_coeff * c; break;
        case 2: term = -h.cos_coeff * c - h.sin_coeff * s; break;
        case 3: term = h.cos_coeff * s - h.sin_coeff * c; break;
        }
        value += scale * term;
    }
    return value;
}

std::vector<double> TrigSeries::sample(int n, int order) const {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double step = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = evaluate(step * j, order);
    return out;
}

TrigSeries TrigSeries::scaled(double factor) const {
    TrigSeries out = *this;
    out.a0 *= factor;
    for (auto& h : out.terms) {
        h.cos_coeff *= factor;
        h.sin_coeff *= factor;
    }
    return out;
}

} // namespace wulff
