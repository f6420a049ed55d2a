#pragma once

#include "wulff/anisotropy.hpp"
#include "wulff/curve.hpp"
#include "wulff/diagnostics.hpp"
#include "wulff/flow.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wulff {

// Everything needed to reproduce one run. Sections and keys of the config
// document:
//
//   [anisotropy]  a0, terms, allow_asymmetric
//   [initial]     a0, terms
//   [flow]        grid_n, t_end, safety, dt_max, conv_tol, renormalize, record_every
//   [output]      directory, snapshot_times, seed
//
// terms is a comma-separated list of (harmonic, cos_coeff, sin_coeff)
// triples, e.g. `terms = (2, 0.2, 0), (4, 0.01, 0)`.
struct RunSpec {
    TrigSeries anisotropy{1.0, {}};
    TrigSeries initial{1.0, {}};
    FlowConfig flow;
    std::string output_dir = "out";
    std::uint64_t seed = 7;
};

using Override = std::pair<std::string, std::string>; // "section.key", value

// "section.key=value" -> Override; throws ParseError.
[[nodiscard]] Override parse_override(std::string_view text);

// Throws ParseError (with line or field) and ValidationError (naming the
// violated invariant, e.g. "ValidationError: NonConvexAnisotropy: ...").
[[nodiscard]] RunSpec parse_config(std::string_view text, std::span<const Override> overrides = {});
[[nodiscard]] RunSpec load_config(const std::string& path, std::span<const Override> overrides = {});

struct RunInputs {
    AnisotropyProfile profile;
    CurveState initial;
};

// Builds the profile and initial curve; errors propagate with their own codes.
[[nodiscard]] RunInputs build_inputs(const RunSpec& spec);

inline constexpr std::string_view kTimeseriesHeader =
    "t,aniso_length,area,lambda,deficit,k_min,k_max,k_dev,r_in_w,r_out_w,hausdorff,"
    "margin_minkowski,margin_wulff_gage,margin_bonnesen,margin_lambda_lo,margin_lambda_hi";

void write_timeseries(std::span<const DiagnosticsRecord> records, const std::string& path);
[[nodiscard]] std::vector<DiagnosticsRecord> read_timeseries(const std::string& path);

// SVG with the Steiner-centred curve, the Steiner-centred (l0/2Ã)·∂W̃ and a
// label carrying t and their Hausdorff distance.
void write_snapshot(const CurveState& state, const AnisotropyProfile& profile, double l0, const std::string& path);

void write_points_csv(std::span<const Point> pts, const std::string& path);
void write_wulff_svg(const AnisotropyProfile& profile, const std::string& path);

} // namespace wulff
