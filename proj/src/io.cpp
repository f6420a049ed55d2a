#include "wulff/io.hpp"

#include "wulff/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <regex>
#include <sstream>

namespace wulff {

namespace pt = boost::property_tree;

namespace {

enum class Kind { Real, Integer, Boolean, Terms, RealList, Text };

const std::map<std::string, Kind>& schema() {
    static const std::map<std::string, Kind> keys = {
        {"anisotropy.a0", Kind::Real},          {"anisotropy.terms", Kind::Terms},
        {"anisotropy.allow_asymmetric", Kind::Boolean},
        {"initial.a0", Kind::Real},             {"initial.terms", Kind::Terms},
        {"flow.grid_n", Kind::Integer},         {"flow.t_end", Kind::Real},
        {"flow.safety", Kind::Real},            {"flow.dt_max", Kind::Real},
        {"flow.conv_tol", Kind::Real},          {"flow.renormalize", Kind::Boolean},
        {"flow.record_every", Kind::Integer},   {"output.directory", Kind::Text},
        {"output.snapshot_times", Kind::RealList}, {"output.seed", Kind::Integer},
    };
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad_field(const std::string& field, const std::string& what, const std::string& value) {
    throw Error(ErrorCode::ParseError, "field " + field + ": " + what + ", got '" + value + "'");
}

double to_real(const std::string& field, const std::string& raw) {
    const auto s = trim(raw);
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) {
        bad_field(field, "expected a finite number", raw);
    }
    return v;
}

long long to_integer(const std::string& field, const std::string& raw) {
    const auto s = trim(raw);
    long long v = 0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end) bad_field(field, "expected an integer", raw);
    return v;
}

bool to_boolean(const std::string& field, const std::string& raw) {
    auto s = trim(raw);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "off" || s == "no" || s == "0") return false;
    bad_field(field, "expected a boolean", raw);
}

std::vector<Harmonic> to_terms(const std::string& field, const std::string& raw) {
    static const std::regex triple(R"(\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*(,|$))");
    std::vector<Harmonic> out;
    const auto s = trim(raw);
    auto it = s.cbegin();
    std::smatch m;
    while (it != s.cend()) {
        if (!std::regex_search(it, s.cend(), m, triple, std::regex_constants::match_continuous)) {
            bad_field(field, "expected (harmonic, cos, sin) triples", raw);
        }
        const long long k = to_integer(field, m[1].str());
        if (k < 1) bad_field(field, "harmonic index must be >= 1", m[1].str());
        const bool duplicate = std::any_of(out.begin(), out.end(), [k](const Harmonic& h) { return h.k == k; });
        if (duplicate) bad_field(field, "harmonic listed twice", m[1].str());
        out.push_back({static_cast<int>(k), to_real(field, m[2].str()), to_real(field, m[3].str())});
        it = m.suffix().first;
        if (m[4].length() > 0 && it == s.cend()) bad_field(field, "trailing comma", raw);
    }
    return out;
}

std::vector<double> to_real_list(const std::string& field, const std::string& raw) {
    std::vector<double> out;
    const auto s = trim(raw);
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_real(field, item));
    return out;
}

pt::ptree read_tree(std::string_view text) {
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            throw Error(ErrorCode::ParseError, "key '" + section + "' must live inside a [section]");
        }
        for (const auto& [key, value] : body) {
            const std::string field = section + "." + key;
            if (!schema().contains(field)) throw Error(ErrorCode::ParseError, "unknown field " + field);
        }
    }
    return tree;
}

std::string validation(const Error& e) {
    return std::string(error_name(e.code())) + ": " + e.detail();
}

} // namespace

Override parse_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorCode::ParseError, "override '" + std::string(text) + "' is not key=value");
    }
    Override out{trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
    if (!schema().contains(out.first)) throw Error(ErrorCode::ParseError, "override names unknown field " + out.first);
    return out;
}

RunSpec parse_config(std::string_view text, std::span<const Override> overrides) {
    auto tree = read_tree(text);
    for (const auto& [key, value] : overrides) {
        if (!schema().contains(key)) throw Error(ErrorCode::ParseError, "override names unknown field " + key);
        tree.put(key, value);
    }

    RunSpec spec;
    auto get = [&](const std::string& key) { return tree.get_optional<std::string>(key); };
    if (auto v = get("anisotropy.a0")) spec.anisotropy.a0 = to_real("anisotropy.a0", *v);
    if (auto v = get("anisotropy.terms")) spec.anisotropy.terms = to_terms("anisotropy.terms", *v);
    if (auto v = get("anisotropy.allow_asymmetric")) spec.flow.allow_asymmetric = to_boolean("anisotropy.allow_asymmetric", *v);
    if (auto v = get("initial.a0")) spec.initial.a0 = to_real("initial.a0", *v);
    if (auto v = get("initial.terms")) spec.initial.terms = to_terms("initial.terms", *v);
    if (auto v = get("flow.grid_n")) spec.flow.grid_n = static_cast<int>(to_integer("flow.grid_n", *v));
    if (auto v = get("flow.t_end")) spec.flow.t_end = to_real("flow.t_end", *v);
    if (auto v = get("flow.safety")) spec.flow.safety = to_real("flow.safety", *v);
    if (auto v = get("flow.dt_max")) spec.flow.dt_max = to_real("flow.dt_max", *v);
    if (auto v = get("flow.conv_tol")) spec.flow.conv_tol = to_real("flow.conv_tol", *v);
    if (auto v = get("flow.renormalize")) spec.flow.renormalize = to_boolean("flow.renormalize", *v);
    if (auto v = get("flow.record_every")) spec.flow.record_every = static_cast<int>(to_integer("flow.record_every", *v));
    if (auto v = get("output.directory")) spec.output_dir = trim(*v);
    if (auto v = get("output.snapshot_times")) spec.flow.snapshot_times = to_real_list("output.snapshot_times", *v);
    if (auto v = get("output.seed")) {
        const auto seed = to_integer("output.seed", *v);
        if (seed < 0) bad_field("output.seed", "seed must be non-negative", *v);
        spec.seed = static_cast<std::uint64_t>(seed);
    }
    if (spec.output_dir.empty()) throw Error(ErrorCode::ValidationError, "output.directory is empty");

    try {
        spec.flow.validate();
        (void)build_inputs(spec);
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, validation(e));
    }
    return spec;
}

RunSpec load_config(const std::string& path, std::span<const Override> overrides) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

RunInputs build_inputs(const RunSpec& spec) {
    auto profile = build_profile(spec.anisotropy, spec.flow.grid_n, !spec.flow.allow_asymmetric);
    for (const auto& h : spec.initial.terms) {
        if (!std::isfinite(h.cos_coeff) || !std::isfinite(h.sin_coeff)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite initial coefficient");
        }
    }
    auto initial = make_state(spec.initial, spec.flow.grid_n);
    try {
        require_convex(initial);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConvexityLost, "initial curve is not strictly convex: " + e.detail());
    }
    return {std::move(profile), std::move(initial)};
}

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
    return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

constexpr int kCsvDigits = 15;

} // namespace

void write_timeseries(std::span<const DiagnosticsRecord> records, const std::string& path) {
    if (records.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
    auto out = open_for_write(path);
    out << kTimeseriesHeader << '\n';
    out << std::setprecision(kCsvDigits);
    for (const auto& r : records) {
        const double row[] = {r.t,       r.aniso_length, r.area,    r.lambda,  r.deficit, r.k_min,
                              r.k_max,   r.k_dev,        r.r_in_w,  r.r_out_w, r.hausdorff,
                              r.margins.minkowski, r.margins.wulff_gage, r.margins.bonnesen,
                              r.margins.lambda_lo, r.margins.lambda_hi};
        for (std::size_t i = 0; i < std::size(row); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    finish_write(out, path);
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::string line;
    std::getline(in, line);
    if (line != kTimeseriesHeader) throw Error(ErrorCode::ParseError, path + ": unexpected header");
    std::vector<DiagnosticsRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) v.push_back(to_real("line " + std::to_string(lineno), cell));
        if (v.size() != 16) throw Error(ErrorCode::ParseError, path + ": line " + std::to_string(lineno) + " has wrong column count");
        DiagnosticsRecord r;
        r.t = v[0]; r.aniso_length = v[1]; r.area = v[2]; r.lambda = v[3]; r.deficit = v[4];
        r.k_min = v[5]; r.k_max = v[6]; r.k_dev = v[7]; r.r_in_w = v[8]; r.r_out_w = v[9]; r.hausdorff = v[10];
        r.margins = {v[11], v[12], v[13], v[14], v[15]};
        out.push_back(r);
    }
    return out;
}

namespace {

struct Box {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    void add(std::span<const Point> pts) {
        for (const auto& p : pts) {
            x0 = std::min(x0, p[0]); x1 = std::max(x1, p[0]);
            y0 = std::min(y0, -p[1]); y1 = std::max(y1, -p[1]);
        }
    }
};

// SVG y grows downwards, so points are mirrored to keep counterclockwise.
void svg_path(std::ostream& out, std::span<const Point> pts, const std::string& style) {
    out << "  <path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out << (i ? " L " : "M ") << pts[i][0] << ' ' << -pts[i][1];
    }
    out << " Z\" " << style << "/>\n";
}

struct SvgPath {
    PointList pts;
    std::string color;
    bool dashed = false;
};

void svg_document(std::ostream& out, const Box& box, const std::vector<SvgPath>& paths, const std::string& label) {
    const double w = box.x1 - box.x0;
    const double h = box.y1 - box.y0;
    const double pad = 0.05 * std::max(w, h);
    const double vx = box.x0 - pad, vy = box.y0 - pad, vw = w + 2 * pad, vh = h + 2 * pad;
    const double stroke = 0.004 * std::max(vw, vh);
    out << std::setprecision(10);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << vx << ' ' << vy << ' ' << vw << ' ' << vh
        << "\" width=\"600\" height=\"" << static_cast<int>(600.0 * vh / vw) << "\">\n";
    for (const auto& path : paths) {
        std::ostringstream style;
        style << std::setprecision(6) << "fill=\"none\" stroke=\"" << path.color << "\" stroke-width=\"" << stroke
              << "\"";
        if (path.dashed) style << " stroke-dasharray=\"" << 4 * stroke << ' ' << 3 * stroke << "\"";
        svg_path(out, path.pts, style.str());
    }
    out << "  <text x=\"" << vx + pad * 0.3 << "\" y=\"" << vy + pad * 0.8 << "\" font-size=\"" << 0.6 * pad
        << "\" font-family=\"monospace\">" << label << "</text>\n";
    out << "</svg>\n";
}

} // namespace

void write_snapshot(const CurveState& state, const AnisotropyProfile& profile, double l0, const std::string& path) {
    const auto curve = reconstruct_points(centered(state));
    const auto limit = limit_shape_points(profile, l0);
    const double dist = hausdorff_distance(curve, limit);
    Box box;
    box.add(curve);
    box.add(limit);
    std::ostringstream label;
    label << std::setprecision(6) << "t = " << state.time << ", hausdorff = " << dist;
    auto out = open_for_write(path);
    svg_document(out, box,
                 {{curve, "#1f4e9c", false}, {limit, "#c0392b", true}},
                 label.str());
    finish_write(out, path);
}

void write_points_csv(std::span<const Point> pts, const std::string& path) {
    auto out = open_for_write(path);
    out << "x,y\n" << std::setprecision(kCsvDigits);
    for (const auto& p : pts) out << p[0] << ',' << p[1] << '\n';
    finish_write(out, path);
}

void write_wulff_svg(const AnisotropyProfile& profile, const std::string& path) {
    const auto pts = wulff_boundary(profile);
    Box box;
    box.add(pts);
    std::ostringstream label;
    label << std::setprecision(8) << "Wulff shape, area = " << profile.wulff_area;
    auto out = open_for_write(path);
    svg_document(out, box, {{pts, "#c0392b", false}}, label.str());
    finish_write(out, path);
}

} // namespace wulff
