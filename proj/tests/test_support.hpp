#pragma once

#include "wulff/anisotropy.hpp"
#include "wulff/curve.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <sstream>
#include <string>

namespace wulff::test {

inline constexpr double pi = std::numbers::pi;

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<double> sample_fn(int n, const std::function<double(double)>& f) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = f(2.0 * pi * j / n);
    return out;
}

// Composite Simpson on [0, 2π]; independent of the trapezoid path under test.
inline double simpson(const std::function<double(double)>& f, int panels = 20000) {
    const double h = 2.0 * pi / panels;
    double s = f(0.0) + f(2.0 * pi);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

// Random centrally symmetric, convex trig polynomial anisotropy.
inline TrigSeries random_symmetric_anisotropy(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        TrigSeries s{1.0, {}};
        for (int k = 2; k <= 6; k += 2) s.terms.push_back({k, 0.3 * u(rng) / (k * k - 1), 0.3 * u(rng) / (k * k - 1)});
        double lo = 1e9;
        for (int j = 0; j < 512; ++j) {
            const double t = 2.0 * pi * j / 512;
            lo = std::min(lo, s.evaluate(t) + s.evaluate(t, 2));
        }
        if (lo > 0.2) return s;
    }
}

inline std::filesystem::path temp_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("wulff_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace wulff::test
