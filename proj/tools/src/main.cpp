#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbdf/analysis.hpp"
#include "fbdf/mlf.hpp"
#include "fbdf/volterra.hpp"
#include "fbdf/weights.hpp"
#include "fbdf_tools/csv.hpp"
#include "fbdf_tools/experiments.hpp"

namespace fs = std::filesystem;
using namespace fbdf;
using namespace fbdf::tools;

namespace {

enum ExitCode { Ok = 0, Usage = 1, NewtonFailed = 2, Overflowed = 3, Incomplete = 4 };

void emit(const CsvTable& table, const std::string& csv_path) {
    if (!csv_path.empty()) {
        write_csv(csv_path, table);
        return;
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) std::cout << (i ? "," : "") << table.header[i];
    std::cout << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << format_double(row[i]);
        std::cout << '\n';
    }
}

Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void add_problem_flags(CLI::App* cmd, std::string& problem, ProblemOptions& o) {
    cmd->add_option("--problem", problem, "lorenz, subdiffusion, cubic, coupled or linear")->required();
    cmd->add_option("--c1", o.c1, "Lorenz c1");
    cmd->add_option("--c2", o.c2, "Lorenz c2 (> 1/2)");
    cmd->add_option("--c3", o.c3, "Lorenz c3");
    cmd->add_option("--nx", o.nx, "sub-diffusion interior nodes in x");
    cmd->add_option("--ny", o.ny, "sub-diffusion interior nodes in y");
    cmd->add_option("--k", o.k, "sub-diffusion coefficient");
    cmd->add_option("--lambda", o.lambda, "rate of the linear test problem");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional BDF toolkit for Caputo fractional ODEs"};
    app.require_subcommand(1);
    // Step size is spelled --h, so help is long-form only.
    app.set_help_flag("--help", "print this help message and exit");
    std::string out_dir = "out";
    unsigned jobs = 1;
    app.add_option("--out", out_dir, "output directory for experiment and sweep artifacts");
    app.add_option("--jobs", jobs, "worker threads for experiments and sweeps")->check(CLI::Range(1u, 256u));

    // weights
    auto* w_cmd = app.add_subcommand("weights", "print convolution and starting weights");
    std::string w_scheme;
    double w_alpha = 0.5;
    std::size_t w_n = 10;
    std::string w_csv;
    w_cmd->add_option("--scheme", w_scheme, "gl, l1, bdf2 or qia")->required();
    w_cmd->add_option("--alpha", w_alpha, "fractional order in (0,1)")->required();
    w_cmd->add_option("--n", w_n, "number of steps")->required();
    w_cmd->add_option("--csv", w_csv, "write CSV to this path instead of stdout");

    // mlf
    auto* m_cmd = app.add_subcommand("mlf", "evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
    double m_alpha = 0.5, m_beta = 1.0, m_z = 0.0;
    m_cmd->add_option("--alpha", m_alpha)->required();
    m_cmd->add_option("--beta", m_beta);
    m_cmd->add_option("--z", m_z)->required();

    // volterra
    auto* v_cmd = app.add_subcommand("volterra", "limit of n^alpha x_n for a power-law Volterra recursion");
    double v_alpha = 0.5, v_c1 = 1.0, v_c2 = 0.1;
    std::size_t v_n = 100000;
    v_cmd->add_option("--alpha", v_alpha)->required();
    v_cmd->add_option("--c1", v_c1)->required();
    v_cmd->add_option("--c2", v_c2)->required();
    v_cmd->add_option("--n", v_n)->required();

    // solve
    auto* s_cmd = app.add_subcommand("solve", "integrate one problem with one scheme");
    std::string s_problem, s_scheme, s_csv;
    ProblemOptions s_opts;
    double s_alpha = 0.5, s_h = 0.1, s_T = 1.0;
    std::vector<double> s_x0;
    add_problem_flags(s_cmd, s_problem, s_opts);
    s_cmd->add_option("--scheme", s_scheme, "gl, l1, bdf2, qia or fabm")->required();
    s_cmd->add_option("--alpha", s_alpha)->required();
    s_cmd->add_option("--h", s_h)->required();
    s_cmd->add_option("--T", s_T)->required();
    s_cmd->add_option("--x0", s_x0, "comma separated initial value")->delimiter(',');
    s_cmd->add_option("--csv", s_csv);

    // decay
    auto* d_cmd = app.add_subcommand("decay", "contractivity (p) or dissipativity (q) index of trajectory CSVs");
    std::string d_kind, d_x, d_y, d_norm = "euclid", d_csv;
    double d_norm_at = 1.0;
    d_cmd->add_option("--kind", d_kind, "p or q")->required()->check(CLI::IsMember({"p", "q"}));
    d_cmd->add_option("--x", d_x, "trajectory CSV")->required();
    d_cmd->add_option("--y", d_y, "second trajectory CSV (kind p)");
    d_cmd->add_option("--norm", d_norm, "euclid or grid")->check(CLI::IsMember({"euclid", "grid"}));
    d_cmd->add_option("--normalize-at", d_norm_at, "reference time t1");
    d_cmd->add_option("--csv", d_csv);

    // ratios
    auto* r_cmd = app.add_subcommand("ratios", "stability ratios and contraction constants");
    std::string r_scheme;
    double r_alpha = 0.5, r_h = 1.0, r_lambda = -1.0, r_b = 1.0;
    r_cmd->add_option("--scheme", r_scheme)->required();
    r_cmd->add_option("--alpha", r_alpha)->required();
    r_cmd->add_option("--h", r_h)->required();
    r_cmd->add_option("--lambda", r_lambda);
    r_cmd->add_option("--b", r_b);

    // experiment
    auto* e_cmd = app.add_subcommand("experiment", "reproduce a named experiment");
    std::string e_name;
    std::vector<std::string> e_set;
    e_cmd->add_option("name", e_name, "experiment name")->required();
    e_cmd->add_option("--set", e_set, "override as key=value (repeatable)");

    // sweep
    auto* w2_cmd = app.add_subcommand("sweep", "run a (scheme, alpha, h) grid concurrently");
    std::string sw_problem, sw_csv;
    ProblemOptions sw_opts;
    std::vector<std::string> sw_schemes;
    std::vector<double> sw_alphas, sw_hs, sw_x0, sw_y0;
    double sw_T = 10.0;
    add_problem_flags(w2_cmd, sw_problem, sw_opts);
    w2_cmd->add_option("--schemes", sw_schemes)->delimiter(',')->required();
    w2_cmd->add_option("--alphas", sw_alphas)->delimiter(',')->required();
    w2_cmd->add_option("--hs", sw_hs)->delimiter(',')->required();
    w2_cmd->add_option("--T", sw_T)->required();
    w2_cmd->add_option("--x0", sw_x0)->delimiter(',');
    w2_cmd->add_option("--y0", sw_y0)->delimiter(',');
    w2_cmd->add_option("--csv", sw_csv, "summary CSV path (default <out>/sweep.csv)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*w_cmd) {
            const auto kind = parse_scheme(w_scheme);
            const auto w = make_weights(kind, Alpha(w_alpha), w_n);
            CsvTable t;
            if (kind == SchemeKind::Qia) {
                t.header = {"j", "mu"};
                const auto row = w.row(w_n);
                for (std::size_t j = 0; j < row.size(); ++j) t.rows.push_back({double(j), row[j]});
            } else {
                t.header = {"k", "omega", "delta"};
                for (std::size_t k = 0; k <= w_n; ++k)
                    t.rows.push_back({double(k), w.conv()[k], k == 0 ? NAN : w.starting()[k]});
            }
            emit(t, w_csv);
            return Ok;
        }
        if (*m_cmd) {
            const auto v = ml_eval({m_alpha, m_beta}, m_z);
            std::cout << format_double(v.value) << '\n';
            std::cerr << "branch=" << to_string(v.branch) << " error_estimate=" << format_double(v.error_estimate)
                      << " converged=" << (v.converged ? "true" : "false") << '\n';
            return v.converged ? Ok : Incomplete;
        }
        if (*v_cmd) {
            const auto x = volterra_solve(power_law_system(v_alpha, v_c1, v_c2, v_n), v_n);
            const double rho = v_c2 * power_kernel_mass(v_alpha);
            const auto est = asymptotic_limit_estimate(x, v_alpha);
            std::cout << "rho=" << format_double(rho) << '\n'
                      << "estimate=" << format_double(est.estimate) << '\n'
                      << "spread=" << format_double(est.spread) << '\n'
                      << "converged=" << (est.converged ? "true" : "false") << '\n'
                      << "predicted=" << format_double(rho < 1.0 ? v_c1 / (1.0 - rho) : INFINITY) << '\n';
            return est.converged ? Ok : Incomplete;
        }
        if (*s_cmd) {
            const auto prob = make_problem(s_problem, s_opts);
            Vector x0 = s_x0.empty() ? Vector::Zero(static_cast<Eigen::Index>(prob.dimension)) : to_vector(s_x0);
            const auto tr = solve_named(prob, s_scheme, s_alpha, s_h, s_T, x0);
            emit(trajectory_table(tr), s_csv);
            if (tr.status != SolveStatus::Completed)
                std::cerr << to_string(tr.status) << " at step " << *tr.failure_step << '\n';
            if (tr.status == SolveStatus::NewtonFailure) return NewtonFailed;
            if (tr.status == SolveStatus::Overflow) return Overflowed;
            return Ok;
        }
        if (*d_cmd) {
            const NormKind norm = d_norm == "grid" ? NormKind::GridAverage : NormKind::Euclidean;
            const auto x = read_trajectory_csv(d_x);
            DecayReport rep;
            if (d_kind == "p") {
                if (d_y.empty()) throw std::invalid_argument("--kind p needs --y");
                rep = contractivity_index(x, read_trajectory_csv(d_y), norm, d_norm_at);
            } else {
                rep = dissipativity_index(x, norm, d_norm_at);
            }
            if (rep.degenerate) {
                std::cerr << "degenerate: reference value e(t1) vanishes\n";
                return Incomplete;
            }
            emit(decay_table(rep), d_csv);
            return Ok;
        }
        if (*r_cmd) {
            const auto r = stability_ratios(parse_scheme(r_scheme), Alpha(r_alpha), r_h, r_lambda, r_b);
            std::cout << "rho1=" << format_double(r.rho1) << '\n' << "rho2=" << format_double(r.rho2) << '\n';
            if (r.rho3) std::cout << "rho3=" << format_double(*r.rho3) << '\n';
            if (r.rho4) std::cout << "rho4=" << format_double(*r.rho4) << '\n';
            std::cout << "c1=" << format_double(r.c1) << " x c_alpha\n"
                      << "c2=" << format_double(r.c2) << '\n'
                      << "c3=" << format_double(r.c3) << " x c_alpha\n"
                      << "lead=" << format_double(r.lead) << '\n'
                      << "positive_mass=" << format_double(r.positive_mass) << '\n'
                      << "contractive_feasible=" << (r.contractive_feasible ? "true" : "false") << '\n'
                      << "dissipative_feasible=" << (r.dissipative_feasible ? "true" : "false") << '\n'
                      << "feasible=" << (r.feasible ? "true" : "false") << '\n';
            return Ok;
        }
        if (*e_cmd) {
            ExperimentSpec spec;
            spec.name = parse_experiment(e_name);
            spec.output_dir = out_dir;
            for (const auto& kv : e_set) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("override must be key=value: " + kv);
                spec.overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            const auto m = run_experiment(spec, jobs);
            std::cout << (fs::path(out_dir) / e_name / "manifest.json").string() << '\n';
            return m.all_completed ? Ok : Incomplete;
        }
        if (*w2_cmd) {
            SweepRequest req;
            req.problem = sw_problem;
            req.options = sw_opts;
            req.horizon = sw_T;
            const auto prob = make_problem(sw_problem, sw_opts);
            req.x0 = sw_x0.empty() ? Vector::Zero(static_cast<Eigen::Index>(prob.dimension)) : to_vector(sw_x0);
            if (!sw_y0.empty()) req.y0 = to_vector(sw_y0);
            for (const auto& s : sw_schemes)
                for (double a : sw_alphas)
                    for (double h : sw_hs) req.cells.push_back({s, a, h});
            const auto rows = run_sweep(req, jobs);
            const fs::path path = sw_csv.empty() ? fs::path(out_dir) / "sweep.csv" : fs::path(sw_csv);
            write_sweep_csv(path, rows);
            std::cout << path.string() << '\n';
            // Blow-up of the explicit scheme is an observation, not a failed cell.
            for (const auto& r : rows) {
                if (r.status == SolveStatus::Completed) continue;
                if (r.cell.scheme == "fabm" && r.status == SolveStatus::Overflow) continue;
                return Incomplete;
            }
            return Ok;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return Usage;
    }
    return Usage;
}
