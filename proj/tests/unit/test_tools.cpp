#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "fbdf/problems.hpp"
#include "fbdf/solver.hpp"
#include "fbdf_tools/csv.hpp"
#include "fbdf_tools/experiments.hpp"

using namespace fbdf;
using namespace fbdf::tools;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("fbdf_tool_tests_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, const fs::path& out_file) {
    const std::string cmd = std::string(FBDF_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Csv, FormatRoundTripsExactly) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
    EXPECT_EQ(format_double(NAN), "nan");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
}

TEST(Csv, TableRoundTrip) {
    const auto dir = scratch("csv");
    CsvTable t;
    t.header = {"a", "b", "c"};
    t.rows = {{1.0, 1.0 / 7.0, NAN}, {-3.0, 1e-17, INFINITY}};
    write_csv(dir / "t.csv", t);
    const auto r = read_csv(dir / "t.csv");
    EXPECT_EQ(r.header, t.header);
    ASSERT_EQ(r.rows.size(), 2u);
    EXPECT_EQ(r.rows[0][1], 1.0 / 7.0);
    EXPECT_TRUE(std::isnan(r.rows[0][2]));
    EXPECT_EQ(r.rows[1][2], INFINITY);
    EXPECT_EQ(r.column("c"), 2u);
    EXPECT_THROW(r.column("d"), std::out_of_range);

    std::ofstream(dir / "bad.csv") << "x,y\n1,abc\n";
    EXPECT_THROW(read_csv(dir / "bad.csv"), std::runtime_error);
    std::ofstream(dir / "ragged.csv") << "x,y\n1\n";
    EXPECT_THROW(read_csv(dir / "ragged.csv"), std::runtime_error);
}

TEST(Csv, TrajectoryRoundTrip) {
    const auto dir = scratch("traj");
    Vector x0(3);
    x0 << 2.0, 1.0, 2.0;
    const auto tr = fbdf_solve(lorenz_problem({}), SchemeKind::L1, Alpha(0.5), {0.1, 25}, x0);
    write_trajectory_csv(dir / "x.csv", tr, 1);
    const auto back = read_trajectory_csv(dir / "x.csv");
    EXPECT_EQ(back.dimension, 3u);
    EXPECT_EQ(back.times, tr.times);
    EXPECT_EQ(back.data, tr.data);
    EXPECT_EQ(read_csv(dir / "x.csv").header, (std::vector<std::string>{"t", "x1", "x2", "x3"}));

    write_trajectory_csv(dir / "s.csv", tr, 10);
    const auto thin = read_trajectory_csv(dir / "s.csv");
    ASSERT_EQ(thin.size(), 4u);
    EXPECT_EQ(thin.times.back(), tr.times.back());
}

TEST(Experiments, NamesAndOverrides) {
    for (const auto& n : experiment_names()) EXPECT_EQ(to_string(parse_experiment(n)), n);
    try {
        parse_experiment("lorenz_fig9");
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("lorenz_fig1"), std::string::npos);
    }
    ExperimentSpec spec;
    spec.name = ExperimentName::CoupledTable;
    spec.overrides = {{"h", "0.25"}};
    EXPECT_NO_THROW(spec.validate());
    spec.overrides["steps"] = "10";
    try {
        spec.validate();
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("alphas"), std::string::npos);
    }
}

TEST(Experiments, RerunIsByteIdentical) {
    const auto a = scratch("rerun_a"), b = scratch("rerun_b");
    for (const auto& dir : {a, b}) {
        ExperimentSpec spec;
        spec.name = ExperimentName::CoupledTable;
        spec.overrides = {{"T", "50"}, {"times", "10,20,50"}, {"alphas", "0.4,0.8"}};
        spec.output_dir = dir;
        const auto m = run_experiment(spec, dir == a ? 1 : 2);
        EXPECT_TRUE(m.all_completed);
        EXPECT_FALSE(m.files.empty());
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        ASSERT_TRUE(fs::exists(b / rel)) << rel;
        EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
        ++compared;
    }
    EXPECT_GE(compared, 5u);
    EXPECT_TRUE(fs::exists(a / "coupled_table" / "manifest.json"));
}

TEST(Experiments, VolterraDemoSummary) {
    const auto dir = scratch("volterra");
    ExperimentSpec spec;
    spec.name = ExperimentName::VolterraLemmaDemo;
    spec.overrides = {{"n", "20000"}};
    spec.output_dir = dir;
    const auto m = run_experiment(spec);
    EXPECT_NEAR(m.json["summary"]["predicted"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(m.json["summary"]["estimate"].get<double>(), 2.0, 0.1);
}

TEST(Sweep, OverflowCellIsReportedNotFatal) {
    SweepRequest req;
    req.problem = "lorenz";
    req.options.c1 = 10.0;
    req.options.c2 = 10.5;
    req.options.c3 = 10.0;
    req.horizon = 100.0;
    req.x0 = Vector(3);
    req.x0 << 2.0, 1.0, 2.0;
    req.cells = {{"fabm", 0.9, 0.5}, {"gl", 0.9, 0.5}, {"qia", 0.9, 0.5}};
    const auto rows = run_sweep(req, 2);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].status, SolveStatus::Overflow);
    EXPECT_TRUE(rows[0].failure_step.has_value());
    EXPECT_EQ(rows[1].status, SolveStatus::Completed);
    EXPECT_EQ(rows[2].status, SolveStatus::Completed);

    const auto dir = scratch("sweep");
    write_sweep_csv(dir / "s.csv", rows);
    const std::string text = slurp(dir / "s.csv");
    EXPECT_EQ(text.substr(0, text.find('\n')), "scheme,alpha,h,status,failure_step,final_index,wall_time");
    EXPECT_NE(text.find("overflow"), std::string::npos);
}

TEST(Problems, FactoryRejectsBadNames) {
    EXPECT_THROW(make_problem("", {}), std::invalid_argument);
    EXPECT_THROW(make_problem("van_der_pol", {}), std::invalid_argument);
    EXPECT_EQ(make_problem("subdiffusion", {.nx = 4, .ny = 4}).dimension, 16u);
}

TEST(ParseList, CommaSeparated) {
    EXPECT_EQ(parse_list("0.3, 0.6,0.9"), (std::vector<double>{0.3, 0.6, 0.9}));
    EXPECT_THROW(parse_list("0.3,x"), std::invalid_argument);
}

TEST(Cli, WeightsCsvHeaders) {
    const auto dir = scratch("cli_weights");
    EXPECT_EQ(run_cli("weights --scheme gl --alpha 0.5 --n 4", dir / "gl.txt"), 0);
    EXPECT_EQ(slurp(dir / "gl.txt").substr(0, 14), "k,omega,delta\n");
    EXPECT_EQ(run_cli("weights --scheme qia --alpha 0.5 --n 6", dir / "qia.txt"), 0);
    EXPECT_EQ(slurp(dir / "qia.txt").substr(0, 5), "j,mu\n");
    EXPECT_EQ(run_cli("weights --scheme rk4 --alpha 0.5 --n 4", dir / "bad.txt"), 1);
    EXPECT_EQ(run_cli("weights --scheme gl --alpha 1.5 --n 4", dir / "bad2.txt"), 1);
}

TEST(Cli, SolveExitCodes) {
    const auto dir = scratch("cli_solve");
    EXPECT_EQ(run_cli("solve --problem cubic --scheme bdf2 --alpha 0.5 --h 0.1 --T 2 --x0 2 --csv " +
                          (dir / "c.csv").string(),
                      dir / "ok.txt"),
              0);
    EXPECT_EQ(read_trajectory_csv(dir / "c.csv").size(), 21u);
    EXPECT_EQ(run_cli("solve --problem lorenz --c1 10 --c2 10.5 --c3 10 --scheme fabm --alpha 0.9 --h 0.5 --T 100 "
                      "--x0 2,1,2",
                      dir / "boom.txt"),
              3);
    EXPECT_EQ(run_cli("solve --problem '' --scheme gl --alpha 0.5 --h 0.1 --T 1", dir / "empty.txt"), 1);
}

TEST(Cli, ExperimentRejectsUnknownOverride) {
    const auto dir = scratch("cli_exp");
    EXPECT_EQ(run_cli("--out " + dir.string() + " experiment cubic_tables --set nope=1", dir / "log.txt"), 1);
    EXPECT_NE(slurp(dir / "log.txt").find("valid keys"), std::string::npos);
}

TEST(Cli, MittagLeffler) {
    const auto dir = scratch("cli_mlf");
    EXPECT_EQ(run_cli("mlf --alpha 1 --z 1", dir / "e.txt"), 0);
    EXPECT_NEAR(std::strtod(slurp(dir / "e.txt").c_str(), nullptr), std::exp(1.0), 1e-14);
}
