#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fbdf/ode.hpp"
#include "fbdf/weights.hpp"

namespace fbdf::tools {

enum class ExperimentName {
    LorenzFig1,
    LorenzFig2,
    SubdiffusionTables,
    CubicTables,
    CoupledTable,
    FabmStabilitySweep,
    VolterraLemmaDemo,
};

ExperimentName parse_experiment(std::string_view name);
std::string to_string(ExperimentName name);
std::vector<std::string> experiment_names();

// Default parameter values; these keys are the only accepted overrides.
std::map<std::string, std::string> experiment_defaults(ExperimentName name);

struct ExperimentSpec {
    ExperimentName name = ExperimentName::LorenzFig1;
    std::map<std::string, std::string> overrides;
    std::filesystem::path output_dir = "out";

    // Throws std::invalid_argument naming the valid keys when an override is unknown.
    void validate() const;
};

struct Manifest {
    nlohmann::json json;
    std::vector<std::filesystem::path> files;
    bool all_completed = true;
};

// Writes CSVs plus manifest.json under output_dir/<experiment>.
Manifest run_experiment(const ExperimentSpec& spec, unsigned jobs = 1);

// Problem factory for the CLI: lorenz, subdiffusion, cubic, coupled, linear.
struct ProblemOptions {
    double c1 = 0.25, c2 = 1.0, c3 = 0.25;
    std::size_t nx = 31, ny = 31;
    double k = 1.0;
    double lambda = -1.0;
};
FOdeProblem make_problem(const std::string& name, const ProblemOptions& opts);

// Scheme "fabm" selects the explicit predictor-corrector.
Trajectory solve_named(const FOdeProblem& problem, const std::string& scheme, double alpha, double h, double T,
                       const Vector& x0);

struct SweepCell {
    std::string scheme;
    double alpha = 0.5;
    double h = 0.1;
};

struct SweepRequest {
    std::string problem;
    ProblemOptions options;
    double horizon = 10.0;
    Vector x0;
    std::optional<Vector> y0;  // second initial value: reports p_alpha instead of q_alpha
    std::vector<SweepCell> cells;
};

struct SweepRow {
    SweepCell cell;
    SolveStatus status = SolveStatus::Completed;
    std::optional<std::size_t> failure_step;
    double final_index = 0.0;
    double wall_time = 0.0;
};

std::vector<SweepRow> run_sweep(const SweepRequest& request, unsigned jobs = 1);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

// Runs task(i) for i in [0, count) on at most `jobs` worker threads.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task);

std::vector<double> parse_list(const std::string& text);

}  // namespace fbdf::tools
