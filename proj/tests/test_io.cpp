#include "test_support.hpp"

#include "wulff/errors.hpp"
#include "wulff/flow.hpp"
#include "wulff/io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <doctest.h>

using namespace wulff;
using namespace wulff::test;

namespace {

const std::string kData = WULFF_TEST_DATA_DIR;

std::string error_text(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("empty config gives defaults") {
    const auto spec = parse_config("");
    CHECK(spec.anisotropy.a0 == 1.0);
    CHECK(spec.anisotropy.terms.empty());
    CHECK(spec.initial.a0 == 1.0);
    CHECK(spec.flow.grid_n == 256);
    CHECK(spec.flow.safety == 0.25);
    CHECK(spec.flow.renormalize == false);
    CHECK(spec.output_dir == "out");
    CHECK(spec.seed == 7);
}

TEST_CASE("full config") {
    const auto spec = parse_config(R"(
[anisotropy]
a0 = 1.0
terms = (2, 0.2, 0), (4, 0.01, -0.005)

[initial]
a0 = 1.5
terms = (3, 0.05, 0.02)

[flow]
grid_n = 128
t_end = 2.5
safety = 0.5
dt_max = 1e-4
conv_tol = 1e-6
renormalize = true
record_every = 5

[output]
directory = results
snapshot_times = 0, 0.5, 1.0
seed = 42
)");
    REQUIRE(spec.anisotropy.terms.size() == 2);
    CHECK(spec.anisotropy.terms[1].k == 4);
    CHECK(spec.anisotropy.terms[1].sin_coeff == -0.005);
    CHECK(spec.initial.a0 == 1.5);
    CHECK(spec.initial.terms[0].k == 3);
    CHECK(spec.flow.grid_n == 128);
    CHECK(spec.flow.t_end == 2.5);
    CHECK(spec.flow.safety == 0.5);
    CHECK(spec.flow.dt_max == 1e-4);
    CHECK(spec.flow.conv_tol == 1e-6);
    CHECK(spec.flow.renormalize);
    CHECK(spec.flow.record_every == 5);
    CHECK(spec.output_dir == "results");
    CHECK(spec.flow.snapshot_times == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(spec.seed == 42);
}

TEST_CASE("validation errors name the invariant") {
    const auto asym = error_text([] { (void)load_config(kData + "/asymmetric.ini"); });
    CHECK(asym.find("ValidationError") == 0);
    CHECK(asym.find("AsymmetricAnisotropy") != std::string::npos);

    const auto nonconvex = error_text([] { (void)parse_config("[anisotropy]\nterms = (2, 0.34, 0)\n"); });
    CHECK(nonconvex.find("ValidationError: NonConvexAnisotropy") == 0);
    const auto negative = error_text([] { (void)parse_config("[anisotropy]\na0 = -1\n"); });
    CHECK(negative.find("ValidationError: NonPositiveSupport") == 0);
    const auto initial = error_text([] { (void)parse_config("[initial]\nterms = (2, 0.4, 0)\n"); });
    CHECK(initial.find("ValidationError: ConvexityLost") == 0);
    const auto grid = error_text([] { (void)parse_config("[flow]\ngrid_n = 100\n[anisotropy]\nterms = (50, 0.0001, 0)\n"); });
    CHECK(grid.find("ValidationError") == 0);
    CHECK_THROWS_WITH((void)parse_config("[flow]\nsafety = 0\n"), doctest::Contains("ValidationError"));
    CHECK_THROWS_WITH((void)parse_config("[output]\ndirectory =\n"), doctest::Contains("ValidationError"));

    // Explicit opt-in accepts the asymmetric profile.
    const auto spec = parse_config("[anisotropy]\nterms = (3, 0.02, 0)\nallow_asymmetric = true\n");
    CHECK(spec.flow.allow_asymmetric);
}

TEST_CASE("parse errors") {
    const auto line = error_text([] { (void)parse_config("[flow]\ngrid_n = 64\nthis line is broken\n"); });
    CHECK(line.find("ParseError: line 3") == 0);
    CHECK(error_text([] { (void)parse_config("[flow]\ngridn = 64\n"); }) == "ParseError: unknown field flow.gridn");
    CHECK(error_text([] { (void)parse_config("[bogus]\nx = 1\n"); }).find("ParseError: unknown field bogus.x") == 0);
    CHECK(error_text([] { (void)parse_config("[flow]\nt_end = soon\n"); }).find("ParseError: field flow.t_end") == 0);
    CHECK(error_text([] { (void)parse_config("[flow]\nt_end = nan\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("[flow]\nrenormalize = maybe\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("[anisotropy]\nterms = (2, 0.1)\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("[anisotropy]\nterms = (2, 0.1, 0),\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("[anisotropy]\nterms = (2, 0.1, 0), (2, 0.1, 0)\n"); })
              .find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("[anisotropy]\nterms = (0, 0.1, 0)\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)parse_config("grid_n = 64\n"); }).find("ParseError") == 0);
    CHECK(error_text([] { (void)load_config(kData + "/missing.ini"); }).find("IoError") == 0);
}

TEST_CASE("overrides") {
    const auto o = parse_override("flow.grid_n=64");
    CHECK(o.first == "flow.grid_n");
    CHECK(o.second == "64");
    CHECK_THROWS_WITH((void)parse_override("flow.grid_n"), doctest::Contains("ParseError"));
    CHECK_THROWS_WITH((void)parse_override("flow.nope=1"), doctest::Contains("unknown field"));

    const std::vector<Override> ov{parse_override("flow.t_end = 0.25"), parse_override("anisotropy.terms=(4, 0.05, 0)"),
                                   parse_override("output.seed=11")};
    const auto spec = load_config(kData + "/short_run.ini", ov);
    CHECK(spec.flow.t_end == 0.25);
    CHECK(spec.flow.grid_n == 64);
    REQUIRE(spec.anisotropy.terms.size() == 1);
    CHECK(spec.anisotropy.terms[0].k == 4);
    CHECK(spec.seed == 11);
    // Overrides go through the same validation.
    const std::vector<Override> bad{parse_override("anisotropy.terms=(4, 0.1, 0)")};
    CHECK_THROWS_WITH((void)load_config(kData + "/short_run.ini", bad),
                      doctest::Contains("ValidationError: NonConvexAnisotropy"));
}

TEST_CASE("build inputs") {
    const auto spec = load_config(kData + "/stationary.ini");
    const auto in = build_inputs(spec);
    CHECK(in.profile.grid_n == 128);
    CHECK(in.initial.grid_n() == 128);
    CHECK(in.initial.time == 0.0);
    for (int j = 0; j < 128; ++j) CHECK(in.initial.p[j] == doctest::Approx(2.0 * in.profile.p_tilde[j]));
}

TEST_CASE("timeseries CSV") {
    const auto dir = temp_dir("csv");
    const auto prof = build_profile({1.0, {{2, 0.2, 0.0}}}, 64);
    CurveState s{prof.p_tilde, 0.0};
    for (double& v : s.p) v *= 1.5;
    const auto rec = make_record(s, prof, anisotropic_length(s, prof));
    const auto path = (dir / "one.csv").string();
    write_timeseries(std::span(&rec, 1), path);

    const auto text = slurp(path);
    std::istringstream in(text);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "t,aniso_length,area,lambda,deficit,k_min,k_max,k_dev,r_in_w,r_out_w,hausdorff,"
                    "margin_minkowski,margin_wulff_gage,margin_bonnesen,margin_lambda_lo,margin_lambda_hi");
    CHECK(std::count(row.begin(), row.end(), ',') == 15);
    CHECK_FALSE(std::getline(in, extra));

    const auto back = read_timeseries(path);
    REQUIRE(back.size() == 1);
    CHECK(std::abs(back[0].deficit) < 1e-12);
    CHECK(std::abs(back[0].margins.minkowski) < 1e-12);
    CHECK(back[0].t == 0.0);
}

TEST_CASE("timeseries round trip keeps 12 digits") {
    const auto dir = temp_dir("roundtrip");
    const auto prof = build_profile({1.0, {{2, 0.2, 0.0}}}, 64);
    FlowConfig cfg;
    cfg.grid_n = 64;
    cfg.t_end = 0.2;
    cfg.record_every = 100;
    const auto traj = run(make_state({1.0, {{4, 0.05, 0.0}}}, 64), prof, cfg);
    const auto path = (dir / "ts.csv").string();
    write_timeseries(traj.records, path);
    const auto back = read_timeseries(path);
    REQUIRE(back.size() == traj.records.size());
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    for (std::size_t i = 0; i < back.size(); ++i) {
        const auto& a = back[i];
        const auto& b = traj.records[i];
        CHECK(close(a.t, b.t));
        CHECK(close(a.aniso_length, b.aniso_length));
        CHECK(close(a.area, b.area));
        CHECK(close(a.lambda, b.lambda));
        CHECK(close(a.deficit, b.deficit));
        CHECK(close(a.k_dev, b.k_dev));
        CHECK(close(a.hausdorff, b.hausdorff));
        CHECK(close(a.margins.bonnesen, b.margins.bonnesen));
        CHECK(close(a.margins.lambda_hi, b.margins.lambda_hi));
    }
    // Same data, same bytes.
    const auto again = (dir / "ts2.csv").string();
    write_timeseries(back, again);
    write_timeseries(traj.records, (dir / "ts3.csv").string());
    CHECK(slurp(dir / "ts3.csv") == slurp(dir / "ts.csv"));

    write_file(dir / "bad.csv", "t,x\n1,2\n");
    CHECK_THROWS_WITH((void)read_timeseries((dir / "bad.csv").string()), doctest::Contains("ParseError"));
    CHECK_THROWS_AS(write_timeseries({}, (dir / "empty.csv").string()), Error);
}

TEST_CASE("snapshot SVG is well formed") {
    namespace pt = boost::property_tree;
    const auto dir = temp_dir("svg");
    const auto prof = build_profile({1.0, {{2, 0.2, 0.0}}}, 128);
    auto s = make_state({1.0, {{4, 0.05, 0.0}, {1, 0.3, 0.1}}}, 128);
    s.time = 0.75;
    const auto path = (dir / "snap.svg").string();
    write_snapshot(s, prof, anisotropic_length(s, prof), path);

    pt::ptree tree;
    REQUIRE_NOTHROW(pt::read_xml(path, tree));
    const auto& svg = tree.get_child("svg");
    int paths = 0, texts = 0;
    for (const auto& [name, child] : svg) {
        if (name == "path") {
            ++paths;
            const auto d = child.get<std::string>("<xmlattr>.d");
            CHECK(d.rfind("M ", 0) == 0);
            CHECK(d.back() == 'Z');
        }
        if (name == "text") {
            ++texts;
            const auto label = child.get_value<std::string>();
            CHECK(label.find("t = 0.75") != std::string::npos);
            CHECK(label.find("hausdorff = ") != std::string::npos);
        }
    }
    CHECK(paths == 2);
    CHECK(texts == 1);
    CHECK(svg.get<std::string>("<xmlattr>.viewBox").size() > 0);

    const auto wpath = (dir / "wulff.svg").string();
    write_wulff_svg(prof, wpath);
    pt::ptree wtree;
    REQUIRE_NOTHROW(pt::read_xml(wpath, wtree));
    CHECK(wtree.get_child("svg").count("path") == 1);

    write_points_csv(wulff_boundary(prof), (dir / "w.csv").string());
    const auto csv = slurp(dir / "w.csv");
    CHECK(csv.rfind("x,y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 129);

    CHECK_THROWS_WITH(write_wulff_svg(prof, (dir / "no/such/dir/w.svg").string()), doctest::Contains("IoError"));
}
