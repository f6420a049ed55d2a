#include "wulff/cli.hpp"

#include "wulff/audit.hpp"
#include "wulff/errors.hpp"
#include "wulff/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wulff {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRuntime = 2;

struct InputFailure {
    Error error;
};

std::vector<Override> to_overrides(const std::vector<std::string>& raw) {
    std::vector<Override> out;
    for (const auto& r : raw) out.push_back(parse_override(r));
    return out;
}

// Config problems are reported as input errors whatever their code.
RunSpec load_or_fail(const std::string& path, const std::vector<Override>& overrides) {
    try {
        return load_config(path, overrides);
    } catch (const Error& e) {
        throw InputFailure{e};
    }
}

std::string output_path(const RunSpec& spec, const std::string& name) {
    return (std::filesystem::path(spec.output_dir) / name).string();
}

void prepare_output(const RunSpec& spec) {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + spec.output_dir + ": " + ec.message());
}

double max_length_drift(const Trajectory& traj) {
    double drift = 0.0;
    for (const auto& r : traj.records) drift = std::max(drift, std::abs(r.aniso_length - traj.l0) / traj.l0);
    return drift;
}

int execute_run(const RunSpec& spec, std::ostream& out) {
    const auto started = std::chrono::steady_clock::now();
    RunInputs inputs = [&] {
        try {
            return build_inputs(spec);
        } catch (const Error& e) {
            throw InputFailure{e};
        }
    }();
    prepare_output(spec);
    const auto csv = output_path(spec, "timeseries.csv");

    Trajectory traj;
    try {
        traj = run(inputs.initial, inputs.profile, spec.flow);
    } catch (const FlowAborted& e) {
        if (!e.partial().records.empty()) write_timeseries(e.partial().records, csv);
        out << "run: aborted at t = " << e.time() << ": " << e.what() << "\n";
        out << "  partial timeseries: " << csv << "\n";
        return kExitRuntime;
    }

    write_timeseries(traj.records, csv);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        write_snapshot(traj.snapshots[i], inputs.profile, traj.l0,
                       output_path(spec, "snapshot_" + std::to_string(i) + ".svg"));
    }
    write_snapshot(traj.final_state, inputs.profile, traj.l0, output_path(spec, "final.svg"));

    const auto& last = traj.records.back();
    out << std::setprecision(6);
    out << "run: " << stop_reason_name(traj.stop) << " after " << traj.steps << " steps at t = " << last.t << "\n";
    out << "  k_dev          = " << last.k_dev << "\n";
    out << "  deficit        = " << last.deficit << "\n";
    out << "  hausdorff      = " << last.hausdorff << "\n";
    out << "  max |dL|/L(0)  = " << max_length_drift(traj) << "\n";
    out << "  wulff radii    = [" << last.r_in_w << ", " << last.r_out_w
        << "] (Steiner-centred surrogate, translation not optimised)\n";

    int code = kExitOk;
    if (spec.flow.renormalize) {
        out << "  envelope       : skipped (renormalize on)\n";
    } else if (traj.records.size() >= 2) {
        try {
            const auto report = decay_envelope_check(traj.records, inputs.profile);
            out << "  envelope       : ok over " << report.records_checked << " records, rate " << report.rate
                << ", worst ratio " << report.worst_ratio << "\n";
        } catch (const Error& e) {
            out << "  envelope       : " << e.what() << "\n";
            code = kExitRuntime;
        }
    }
    out << "  timeseries     : " << csv << "\n";
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    out << "  elapsed        = " << std::fixed << std::setprecision(3) << elapsed.count() << " s\n"
        << std::defaultfloat;
    return code;
}

int execute_wulff(const RunSpec& spec, std::ostream& out) {
    const auto profile = [&] {
        try {
            return build_profile(spec.anisotropy, spec.flow.grid_n, !spec.flow.allow_asymmetric);
        } catch (const Error& e) {
            throw InputFailure{e};
        }
    }();
    prepare_output(spec);
    const auto pts = wulff_boundary(profile);
    write_points_csv(pts, output_path(spec, "wulff.csv"));
    write_wulff_svg(profile, output_path(spec, "wulff.svg"));
    out << std::setprecision(12);
    out << "wulff: N = " << profile.grid_n << ", symmetric = " << (profile.symmetric ? "yes" : "no") << "\n";
    out << "  area           = " << profile.wulff_area << "\n";
    out << "  min phi (M1)   = " << profile.m1 << "\n";
    out << "  max phi (M2)   = " << profile.m2 << "\n";
    out << "  boundary       : " << output_path(spec, "wulff.csv") << ", " << output_path(spec, "wulff.svg") << "\n";
    return kExitOk;
}

void print_tally(std::ostream& out, const char* name, const InequalityTally& t, bool applicable) {
    out << "  " << std::left << std::setw(12) << name << std::right;
    if (!applicable) {
        out << "skipped (asymmetric anisotropy)\n";
        return;
    }
    out << "violations " << t.violations << ", worst margin " << t.worst << "\n";
}

int execute_check(const RunSpec& spec, std::size_t trials, std::uint64_t seed, std::ostream& out) {
    const auto profile = [&] {
        try {
            return build_profile(spec.anisotropy, spec.flow.grid_n, !spec.flow.allow_asymmetric);
        } catch (const Error& e) {
            throw InputFailure{e};
        }
    }();
    const auto report = run_inequality_audit(profile, trials, seed);
    out << std::setprecision(6);
    out << "check: " << report.trials << " random convex states, seed " << seed << ", N = " << profile.grid_n << "\n";
    print_tally(out, "minkowski", report.minkowski, true);
    print_tally(out, "wulff_gage", report.wulff_gage, report.symmetric_checks);
    print_tally(out, "identity", report.identity, true);
    print_tally(out, "bonnesen", report.bonnesen, report.symmetric_checks);
    out << "  wulff radii Steiner-centred surrogate, tolerance " << kInequalityTolerance << "\n";
    out << "  total violations: " << report.total_violations() << "\n";
    if (report.total_violations() > 0) {
        out << error_name(ErrorCode::InequalityViolated) << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

std::vector<std::string> split_values(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

int report_error(const Error& e, std::ostream& err, int code) {
    err << "error: " << e.what() << "\n";
    return code;
}

int execute_sweep(const std::string& config, const std::vector<Override>& base, const std::string& param,
                  const std::string& values, bool parallel, std::ostream& out, std::ostream& err) {
    const auto list = split_values(values);
    if (list.empty()) {
        err << "error: " << error_name(ErrorCode::ParseError) << ": --values is empty\n";
        return kExitInput;
    }
    // Validate every point up front so a bad value fails before any run starts.
    std::vector<RunSpec> specs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto overrides = base;
        overrides.push_back(parse_override(param + "=" + list[i]));
        auto spec = load_or_fail(config, overrides);
        spec.output_dir = (std::filesystem::path(spec.output_dir) / ("sweep_" + std::to_string(i))).string();
        specs.push_back(std::move(spec));
    }

    auto one = [&](std::size_t i) {
        std::ostringstream buf;
        int code = kExitOk;
        try {
            code = execute_run(specs[i], buf);
        } catch (const InputFailure& f) {
            buf << "error: " << f.error.what() << "\n";
            code = kExitInput;
        } catch (const Error& e) {
            buf << "error: " << e.what() << "\n";
            code = kExitRuntime;
        }
        return std::make_pair(code, buf.str());
    };

    std::vector<std::pair<int, std::string>> results(list.size());
    if (parallel) {
        std::vector<std::future<std::pair<int, std::string>>> jobs;
        for (std::size_t i = 0; i < list.size(); ++i) jobs.push_back(std::async(std::launch::async, one, i));
        for (std::size_t i = 0; i < list.size(); ++i) results[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < list.size(); ++i) results[i] = one(i);
    }

    int worst = kExitOk;
    for (std::size_t i = 0; i < list.size(); ++i) {
        out << "[" << param << " = " << list[i] << "] -> " << specs[i].output_dir << "\n" << results[i].second;
        worst = std::max(worst, results[i].first);
    }
    return worst;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate and audit the anisotropic-length-preserving flow of convex curves", "wulffflow"};
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> raw_overrides;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "Config document")->required()->check(CLI::ExistingFile);
        sub->add_option("--override", raw_overrides, "section.key=value, repeatable");
    };

    auto* run_cmd = app.add_subcommand("run", "Integrate the flow and write diagnostics");
    add_common(run_cmd);

    auto* wulff_cmd = app.add_subcommand("wulff", "Write the Wulff boundary as CSV and SVG");
    add_common(wulff_cmd);

    std::size_t trials = 1000;
    std::optional<std::uint64_t> seed;
    auto* check_cmd = app.add_subcommand("check", "Audit the inequalities on random convex curves");
    add_common(check_cmd);
    check_cmd->add_option("--trials", trials, "Number of random curves")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", seed, "RNG seed (defaults to output.seed)");

    std::string param;
    std::string values;
    bool parallel = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run once per value of one config key");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--param", param, "section.key to vary")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
    sweep_cmd->add_flag("--parallel", parallel, "Run sweep points concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const auto overrides = to_overrides(raw_overrides);
        if (*sweep_cmd) return execute_sweep(config, overrides, param, values, parallel, out, err);

        const auto spec = load_or_fail(config, overrides);
        if (*run_cmd) return execute_run(spec, out);
        if (*wulff_cmd) return execute_wulff(spec, out);
        return execute_check(spec, trials, seed.value_or(spec.seed), out);
    } catch (const InputFailure& f) {
        return report_error(f.error, err, kExitInput);
    } catch (const Error& e) {
        const bool input = e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError;
        return report_error(e, err, input ? kExitInput : kExitRuntime);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace wulff
