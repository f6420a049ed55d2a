#include "wulff/spectral.hpp"

#include "wulff/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace wulff {

namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

SpectralGrid::SpectralGrid(int n) : n_(n), spacing_(2.0 * std::numbers::pi / n) {
    if (n < 4 || n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "grid size must be even and >= 4, got " + std::to_string(n));
    }
    cos_.resize(static_cast<std::size_t>(n));
    sin_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        cos_[static_cast<std::size_t>(j)] = std::cos(angle(j));
        sin_[static_cast<std::size_t>(j)] = std::sin(angle(j));
    }

    std::vector<double> real(static_cast<std::size_t>(n));
    std::vector<std::complex<double>> modes(static_cast<std::size_t>(n / 2 + 1));
    auto* cplx = reinterpret_cast<fftw_complex*>(modes.data());
    // ESTIMATE keeps the chosen algorithm, and hence every output bit, stable
    // between runs.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_r2c_1d(n, real.data(), cplx, flags);
    backward_ = fftw_plan_dft_c2r_1d(n, cplx, real.data(), flags);
}

SpectralGrid::~SpectralGrid() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

std::shared_ptr<const SpectralGrid> SpectralGrid::shared(int n) {
    static std::mutex m;
    static std::map<int, std::shared_ptr<const SpectralGrid>> cache;
    std::lock_guard lock(m);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const SpectralGrid>(n);
    return slot;
}

SpectralWorkspace SpectralGrid::make_workspace() const {
    SpectralWorkspace ws;
    ws.modes.resize(static_cast<std::size_t>(n_ / 2 + 1));
    ws.real.resize(static_cast<std::size_t>(n_));
    return ws;
}

void SpectralGrid::derivative(std::span<const double> in, int order, std::span<double> out,
                              SpectralWorkspace& ws) const {
    if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size()) {
        throw Error(ErrorCode::GridMismatch, "derivative input does not match grid size");
    }
    if (order != 1 && order != 2) {
        throw Error(ErrorCode::InvalidArgument, "derivative order must be 1 or 2");
    }
    if (ws.modes.size() != static_cast<std::size_t>(n_ / 2 + 1)) ws = make_workspace();

    std::copy(in.begin(), in.end(), ws.real.begin());
    auto* cplx = reinterpret_cast<fftw_complex*>(ws.modes.data());
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_), ws.real.data(), cplx);

    const double norm = 1.0 / n_;
    const int nyquist = n_ / 2;
    for (int k = 0; k <= nyquist; ++k) {
        auto& c = ws.modes[static_cast<std::size_t>(k)];
        const double kk = static_cast<double>(k);
        if (order == 1) {
            c = (k == nyquist) ? std::complex<double>{} : std::complex<double>(0.0, kk * norm) * c;
        } else {
            c *= -kk * kk * norm;
        }
    }
    fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_), cplx, out.data());
}

std::vector<double> SpectralGrid::derivative(std::span<const double> in, int order) const {
    std::vector<double> out(in.size());
    auto ws = make_workspace();
    derivative(in, order, out, ws);
    return out;
}

double SpectralGrid::integrate(std::span<const double> values) const noexcept {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * spacing_;
}

std::vector<double> spectral_derivative(std::span<const double> samples, int order) {
    const auto grid = SpectralGrid::shared(static_cast<int>(samples.size()));
    return grid->derivative(samples, order);
}

} // namespace wulff
