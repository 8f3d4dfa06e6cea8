#include "fbdf_tools/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fbdf/analysis.hpp"
#include "fbdf/problems.hpp"
#include "fbdf/solver.hpp"
#include "fbdf/volterra.hpp"
#include "fbdf_tools/csv.hpp"

namespace fbdf::tools {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<ExperimentName, std::string>>& name_table() {
    static const std::vector<std::pair<ExperimentName, std::string>> t = {
        {ExperimentName::LorenzFig1, "lorenz_fig1"},
        {ExperimentName::LorenzFig2, "lorenz_fig2"},
        {ExperimentName::SubdiffusionTables, "subdiffusion_tables"},
        {ExperimentName::CubicTables, "cubic_tables"},
        {ExperimentName::CoupledTable, "coupled_table"},
        {ExperimentName::FabmStabilitySweep, "fabm_stability_sweep"},
        {ExperimentName::VolterraLemmaDemo, "volterra_lemma_demo"},
    };
    return t;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

class Params {
public:
    Params(ExperimentName name, const std::map<std::string, std::string>& overrides)
        : values_(experiment_defaults(name)) {
        for (const auto& [k, v] : overrides) values_[k] = v;
    }
    const std::string& str(const std::string& key) const { return values_.at(key); }
    double num(const std::string& key) const {
        const auto& s = str(key);
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("override '" + key + "' is not a number: " + s);
        return v;
    }
    std::size_t count(const std::string& key) const {
        const double v = num(key);
        if (v < 0 || v != std::floor(v)) throw std::invalid_argument("override '" + key + "' must be a nonnegative integer");
        return static_cast<std::size_t>(v);
    }
    std::vector<double> list(const std::string& key) const { return parse_list(str(key)); }
    std::vector<std::string> words(const std::string& key) const { return split_on(str(key), ','); }
    std::vector<Vector> vectors(const std::string& key) const {
        std::vector<Vector> out;
        for (const auto& part : split_on(str(key), ';')) {
            const auto v = parse_list(part);
            out.push_back(Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())));
        }
        return out;
    }
    json as_json() const { return json(values_); }

private:
    std::map<std::string, std::string> values_;
};

std::size_t steps_for(double T, double h) {
    const double n = std::round(T / h);
    if (!(n >= 1)) throw std::invalid_argument("horizon must cover at least one step");
    return static_cast<std::size_t>(n);
}

std::string tag(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

json run_json(const std::string& scheme, double alpha, double h, double T, const Vector& x0) {
    return json{{"scheme", scheme}, {"alpha", alpha}, {"h", h}, {"T", T}, {"x0", to_std(x0)}, {"seed", 0}};
}

void record_status(json& j, const Trajectory& tr, Manifest& m) {
    j["status"] = to_string(tr.status);
    if (tr.failure_step) j["failure_step"] = *tr.failure_step;
    j["damped_steps"] = tr.damped_steps;
    if (tr.status != SolveStatus::Completed) m.all_completed = false;
}

void add_file(Manifest& m, const fs::path& root, const fs::path& p) {
    m.files.push_back(p);
    m.json["files"].push_back(fs::relative(p, root).generic_string());
}

// One index table: rows t, one column per alpha.
CsvTable index_table(const std::vector<double>& times, const std::vector<double>& alphas,
                     const std::vector<const DecayReport*>& reports) {
    CsvTable t;
    t.header.push_back("t");
    for (double a : alphas) t.header.push_back("alpha_" + tag(a));
    for (double tt : times) {
        std::vector<double> row{tt};
        for (const auto* r : reports) row.push_back(r ? r->index_at(tt) : NAN);
        t.rows.push_back(std::move(row));
    }
    return t;
}

void run_lorenz(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m) {
    const LorenzParams lp{P.num("c1"), P.num("c2"), P.num("c3")};
    const FOdeProblem prob = lorenz_problem(lp);
    const auto alphas = P.list("alphas");
    const auto x0s = P.vectors("x0s");
    const double h = P.num("h"), T = P.num("T");
    const std::string scheme = P.str("scheme");
    const double radius = std::sqrt(lp.a() / lp.b()) + P.num("eps");

    struct Run {
        double alpha;
        std::size_t which;
        Trajectory tr;
    };
    std::vector<Run> runs;
    for (double a : alphas)
        for (std::size_t i = 0; i < x0s.size(); ++i) runs.push_back({a, i, {}});
    parallel_for(runs.size(), jobs, [&](std::size_t i) {
        runs[i].tr = solve_named(prob, scheme, runs[i].alpha, h, T, x0s[runs[i].which]);
    });

    m.json["summary"]["radius"] = radius;
    for (const auto& r : runs) {
        const auto file = dir / ("traj_alpha" + tag(r.alpha) + "_x" + std::to_string(r.which + 1) + ".csv");
        write_trajectory_csv(file, r.tr, P.count("stride"));
        add_file(m, dir.parent_path(), file);
        json j = run_json(scheme, r.alpha, h, T, x0s[r.which]);
        record_status(j, r.tr, m);
        const auto ab = absorbing_entry(r.tr, radius);
        j["entry_step"] = ab.entry ? json(*ab.entry) : json(nullptr);
        j["stays_inside"] = ab.stays_inside;
        j["final_entry_step"] = ab.final_entry ? json(*ab.final_entry) : json(nullptr);
        j["final_norm"] = state_norm(r.tr.state_ptr(r.tr.size() - 1), r.tr.dimension, NormKind::Euclidean);
        m.json["runs"].push_back(j);
    }
}

// Contractivity/dissipativity index tables for a family of (scheme, alpha) runs.
struct IndexRun {
    std::string scheme;
    double alpha;
    Trajectory x, y;
    DecayReport rep;
};

void write_index_outputs(const Params& P, const fs::path& dir, Manifest& m, std::vector<IndexRun>& runs,
                         const std::vector<std::string>& schemes, const std::vector<double>& alphas,
                         const Vector& x0, const std::optional<Vector>& y0, double h, double T) {
    const auto times = P.list("times");
    const std::size_t stride = P.count("stride");
    const bool trajectories = P.num("trajectories") != 0.0;
    for (auto& r : runs) {
        const std::string stem = r.scheme + "_alpha" + tag(r.alpha);
        if (trajectories) {
            const auto fx = dir / ("traj_" + stem + "_x.csv");
            write_trajectory_csv(fx, r.x, stride);
            add_file(m, dir.parent_path(), fx);
            if (y0) {
                const auto fy = dir / ("traj_" + stem + "_y.csv");
                write_trajectory_csv(fy, r.y, stride);
                add_file(m, dir.parent_path(), fy);
            }
        }
        json j = run_json(r.scheme, r.alpha, h, T, x0);
        if (y0) j["y0"] = to_std(*y0);
        record_status(j, r.x, m);
        if (y0 && r.y.status != SolveStatus::Completed) {
            j["status_y"] = to_string(r.y.status);
            m.all_completed = false;
        }
        if (!r.rep.times.empty() && !r.rep.degenerate) {
            const auto fd = dir / ("decay_" + stem + ".csv");
            write_csv(fd, decay_table(r.rep, stride));
            add_file(m, dir.parent_path(), fd);
            j["final_index"] = r.rep.index.back();
        }
        m.json["runs"].push_back(j);
    }
    for (const auto& s : schemes) {
        std::vector<const DecayReport*> reps;
        for (double a : alphas) {
            const DecayReport* found = nullptr;
            for (const auto& r : runs)
                if (r.scheme == s && r.alpha == a && !r.rep.times.empty() && !r.rep.degenerate &&
                    r.rep.times.back() >= times.back() - 1e-9)
                    found = &r.rep;
            reps.push_back(found);
        }
        const auto table = index_table(times, alphas, reps);
        const auto ft = dir / ("index_table_" + s + ".csv");
        write_csv(ft, table);
        add_file(m, dir.parent_path(), ft);
        json tj;
        for (std::size_t c = 1; c < table.header.size(); ++c) tj[table.header[c]] = table.rows.back()[c];
        m.json["summary"]["final_index"][s] = tj;
    }
}

void run_index_family(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m, const FOdeProblem& prob,
                      NormKind norm, const Vector& x0, const std::optional<Vector>& y0) {
    const auto schemes = P.words("schemes");
    const auto alphas = P.list("alphas");
    const double h = P.num("h"), T = P.num("T");
    std::vector<IndexRun> runs;
    for (const auto& s : schemes)
        for (double a : alphas) runs.push_back({s, a, {}, {}, {}});
    parallel_for(runs.size(), jobs, [&](std::size_t i) {
        auto& r = runs[i];
        r.x = solve_named(prob, r.scheme, r.alpha, h, T, x0);
        if (y0) r.y = solve_named(prob, r.scheme, r.alpha, h, T, *y0);
        const bool ok = r.x.status == SolveStatus::Completed && (!y0 || r.y.status == SolveStatus::Completed);
        if (ok) r.rep = y0 ? contractivity_index(r.x, r.y, norm) : dissipativity_index(r.x, norm);
    });
    write_index_outputs(P, dir, m, runs, schemes, alphas, x0, y0, h, T);
}

void run_subdiffusion(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m) {
    const auto sd = subdiffusion_problem(P.count("nx"), P.count("ny"), P.num("k"));
    m.json["summary"]["lambda1"] = sd.grid.lambda1;
    m.json["summary"]["mu"] = *sd.problem.lambda_one_sided;
    run_index_family(P, dir, jobs, m, sd.problem, NormKind::GridAverage, subdiffusion_initial(sd.grid, 1),
                     subdiffusion_initial(sd.grid, 2));
}

void run_cubic(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m) {
    run_index_family(P, dir, jobs, m, scalar_cubic_problem(), NormKind::Euclidean, Vector::Constant(1, P.num("x0")),
                     Vector::Constant(1, P.num("y0")));
}

void run_coupled(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m) {
    const auto x0 = P.vectors("x0").at(0);
    run_index_family(P, dir, jobs, m, coupled_problem(), NormKind::Euclidean, x0, std::nullopt);
}

void run_fabm_sweep(const Params& P, const fs::path& dir, unsigned jobs, Manifest& m) {
    const LorenzParams lp{P.num("c1"), P.num("c2"), P.num("c3")};
    const FOdeProblem prob = lorenz_problem(lp);
    const auto alphas = P.list("alphas");
    const Vector x0 = P.vectors("x0").at(0);
    const double T = P.num("T");
    const double h_implicit = P.num("h_implicit");
    const double h_start = P.num("h_start");
    const std::size_t bisections = P.count("bisections");
    const auto schemes = P.words("implicit_schemes");

    auto blows = [&](double alpha, double h) {
        return fabm_solve(prob, Alpha(alpha), {h, steps_for(T, h)}, x0).status == SolveStatus::Overflow;
    };

    struct Search {
        double alpha;
        std::optional<double> stable, blowup;
        std::vector<std::pair<double, bool>> probes;
        std::vector<std::pair<std::string, Trajectory>> implicit;
    };
    std::vector<Search> res(alphas.size());
    parallel_for(alphas.size(), jobs, [&](std::size_t i) {
        Search& s = res[i];
        s.alpha = alphas[i];
        auto probe = [&](double h) {
            const bool b = blows(s.alpha, h);
            s.probes.emplace_back(h, b);
            (b ? s.blowup : s.stable) = h;
            return b;
        };
        // Geometric bracketing, then bisection in log h.
        if (probe(h_start)) {
            double h = h_start;
            for (int k = 0; k < 60 && !s.stable; ++k) probe(h *= 0.5);
        } else {
            double h = h_start;
            for (int k = 0; k < 8 && !s.blowup; ++k) probe(h *= 2.0);
        }
        if (s.stable && s.blowup) {
            double lo = *s.stable, hi = *s.blowup;
            for (std::size_t k = 0; k < bisections; ++k) {
                const double mid = std::sqrt(lo * hi);
                (probe(mid) ? hi : lo) = mid;
            }
            s.stable = lo;
            s.blowup = hi;
        }
        for (const auto& sch : schemes)
            s.implicit.emplace_back(sch, solve_named(prob, sch, s.alpha, h_implicit, T, x0));
    });

    for (const auto& s : res) {
        json j{{"alpha", s.alpha}, {"T", T}, {"x0", to_std(x0)}, {"seed", 0}};
        j["stable_h"] = s.stable ? json(*s.stable) : json(nullptr);
        j["blowup_h"] = s.blowup ? json(*s.blowup) : json(nullptr);
        CsvTable probes;
        probes.header = {"h", "blowup"};
        for (const auto& [h, b] : s.probes) probes.rows.push_back({h, b ? 1.0 : 0.0});
        const auto fp = dir / ("fabm_probes_alpha" + tag(s.alpha) + ".csv");
        write_csv(fp, probes);
        add_file(m, dir.parent_path(), fp);
        for (const auto& [sch, tr] : s.implicit) {
            json ij = run_json(sch, s.alpha, h_implicit, T, x0);
            ij["status"] = to_string(tr.status);
            if (tr.status != SolveStatus::Completed) m.all_completed = false;
            const auto ft = dir / ("traj_" + sch + "_alpha" + tag(s.alpha) + ".csv");
            write_trajectory_csv(ft, tr, P.count("stride"));
            add_file(m, dir.parent_path(), ft);
            j["implicit"].push_back(ij);
        }
        m.json["summary"]["thresholds"].push_back(j);
    }
}

void run_volterra_demo(const Params& P, const fs::path& dir, Manifest& m) {
    const double alpha = P.num("alpha"), c1 = P.num("c1"), rho = P.num("rho");
    const std::size_t n = P.count("n");
    const double c2 = rho / power_kernel_mass(alpha);
    const auto x = volterra_solve(power_law_system(alpha, c1, c2, n), n);
    const auto est = asymptotic_limit_estimate(x, alpha);
    const auto tr = transformed_limit_estimate(x, alpha);
    CsvTable t;
    t.header = {"n", "x", "scaled"};
    const std::size_t stride = std::max<std::size_t>(1, P.count("stride"));
    for (std::size_t k = 1; k <= n; ++k)
        if (k % stride == 0 || k == n) t.rows.push_back({double(k), x[k], std::pow(double(k), alpha) * x[k]});
    const auto f = dir / "volterra_sequence.csv";
    write_csv(f, t);
    add_file(m, dir.parent_path(), f);
    m.json["summary"] = {{"alpha", alpha},       {"c1", c1},
                         {"c2", c2},             {"rho", rho},
                         {"n", n},               {"predicted", c1 / (1.0 - rho)},
                         {"estimate", est.estimate}, {"spread", est.spread},
                         {"converged", est.converged}, {"transformed_estimate", tr.estimate}};
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split_on(text, ',')) {
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("malformed number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

ExperimentName parse_experiment(std::string_view name) {
    for (const auto& [k, s] : name_table())
        if (s == name) return k;
    std::string valid;
    for (const auto& s : experiment_names()) valid += (valid.empty() ? "" : ", ") + s;
    throw std::invalid_argument("unknown experiment '" + std::string(name) + "' (valid: " + valid + ")");
}

std::string to_string(ExperimentName name) {
    for (const auto& [k, s] : name_table())
        if (k == name) return s;
    return "?";
}

std::vector<std::string> experiment_names() {
    std::vector<std::string> out;
    for (const auto& [k, s] : name_table()) out.push_back(s);
    return out;
}

std::map<std::string, std::string> experiment_defaults(ExperimentName name) {
    switch (name) {
    case ExperimentName::LorenzFig1:
        return {{"alphas", "0.3,0.6,0.9"}, {"scheme", "gl"}, {"h", "0.2"}, {"T", "100"},
                {"c1", "0.25"}, {"c2", "1"}, {"c3", "0.25"}, {"eps", "0.1"},
                {"x0s", "2,1,2;-2,3,-2;-1,-4,-3"}, {"stride", "1"}};
    case ExperimentName::LorenzFig2:
        return {{"alphas", "0.3,0.6,0.9"}, {"scheme", "bdf2"}, {"h", "0.4"}, {"T", "200"},
                {"c1", "5"}, {"c2", "6"}, {"c3", "5"}, {"eps", "0.05"},
                {"x0s", "0.3,0.3,0.3;-0.3,0.3,-0.3;-0.3,-0.3,-0.3"}, {"stride", "1"}};
    case ExperimentName::SubdiffusionTables:
        return {{"alphas", "0.3,0.6,0.9,0.99"}, {"schemes", "l1,qia"}, {"h", "0.2"}, {"T", "100"},
                {"nx", "31"}, {"ny", "31"}, {"k", "1"}, {"times", "20,40,60,80,100"},
                {"stride", "5"}, {"trajectories", "1"}};
    case ExperimentName::CubicTables:
        return {{"alphas", "0.3,0.6,0.9,0.99"}, {"schemes", "gl,bdf2"}, {"h", "0.5"}, {"T", "5000"},
                {"x0", "2"}, {"y0", "-1"}, {"times", "1000,2000,3000,4000,5000"},
                {"stride", "10"}, {"trajectories", "1"}};
    case ExperimentName::CoupledTable:
        return {{"alphas", "0.3,0.6,0.9,0.99"}, {"schemes", "l1"}, {"h", "0.5"}, {"T", "5000"},
                {"x0", "-6,1"}, {"times", "1000,2000,3000,4000,5000"},
                {"stride", "10"}, {"trajectories", "1"}};
    case ExperimentName::FabmStabilitySweep:
        return {{"alphas", "0.5,0.9"}, {"c1", "10"}, {"c2", "10.5"}, {"c3", "10"}, {"x0", "2,1,2"},
                {"T", "100"}, {"h_start", "0.2"}, {"h_implicit", "0.2"}, {"bisections", "20"},
                {"implicit_schemes", "gl,l1,bdf2,qia"}, {"stride", "1"}};
    case ExperimentName::VolterraLemmaDemo:
        return {{"alpha", "0.5"}, {"c1", "1"}, {"rho", "0.5"}, {"n", "100000"}, {"stride", "100"}};
    }
    return {};
}

void ExperimentSpec::validate() const {
    const auto defaults = experiment_defaults(name);
    for (const auto& [k, v] : overrides) {
        if (defaults.count(k)) continue;
        std::string valid;
        for (const auto& [dk, dv] : defaults) valid += (valid.empty() ? "" : ", ") + dk;
        throw std::invalid_argument("unknown override '" + k + "' for " + to_string(name) + " (valid keys: " + valid + ")");
    }
}

Manifest run_experiment(const ExperimentSpec& spec, unsigned jobs) {
    spec.validate();
    const Params P(spec.name, spec.overrides);
    const fs::path dir = spec.output_dir / to_string(spec.name);
    fs::create_directories(dir);

    Manifest m;
    m.json["experiment"] = to_string(spec.name);
    m.json["parameters"] = P.as_json();
    m.json["overrides"] = json(spec.overrides);
    m.json["files"] = json::array();
    m.json["runs"] = json::array();

    switch (spec.name) {
    case ExperimentName::LorenzFig1:
    case ExperimentName::LorenzFig2: run_lorenz(P, dir, jobs, m); break;
    case ExperimentName::SubdiffusionTables: run_subdiffusion(P, dir, jobs, m); break;
    case ExperimentName::CubicTables: run_cubic(P, dir, jobs, m); break;
    case ExperimentName::CoupledTable: run_coupled(P, dir, jobs, m); break;
    case ExperimentName::FabmStabilitySweep: run_fabm_sweep(P, dir, jobs, m); break;
    case ExperimentName::VolterraLemmaDemo: run_volterra_demo(P, dir, m); break;
    }
    m.json["all_completed"] = m.all_completed;

    const auto mf = dir / "manifest.json";
    std::ofstream out(mf, std::ios::binary);
    out << m.json.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + mf.string());
    m.files.push_back(mf);
    return m;
}

FOdeProblem make_problem(const std::string& name, const ProblemOptions& o) {
    if (name.empty()) throw std::invalid_argument("problem name must not be empty");
    if (name == "lorenz") return lorenz_problem({o.c1, o.c2, o.c3});
    if (name == "subdiffusion") return subdiffusion_problem(o.nx, o.ny, o.k).problem;
    if (name == "cubic") return scalar_cubic_problem();
    if (name == "coupled") return coupled_problem();
    if (name == "linear") return scalar_linear_problem(o.lambda);
    throw std::invalid_argument("unknown problem '" + name + "' (expected lorenz, subdiffusion, cubic, coupled, linear)");
}

Trajectory solve_named(const FOdeProblem& problem, const std::string& scheme, double alpha, double h, double T,
                       const Vector& x0) {
    SolverConfig cfg;
    cfg.h = h;
    cfg.n_steps = steps_for(T, h);
    if (scheme == "fabm") return fabm_solve(problem, Alpha(alpha), cfg, x0);
    return fbdf_solve(problem, parse_scheme(scheme), Alpha(alpha), cfg, x0);
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& task) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<SweepRow> run_sweep(const SweepRequest& req, unsigned jobs) {
    if (req.cells.empty()) throw std::invalid_argument("sweep grid is empty");
    const FOdeProblem prob = make_problem(req.problem, req.options);
    const NormKind norm = req.problem == "subdiffusion" ? NormKind::GridAverage : NormKind::Euclidean;
    std::vector<SweepRow> rows(req.cells.size());
    parallel_for(req.cells.size(), jobs, [&](std::size_t i) {
        const auto& c = req.cells[i];
        SweepRow& r = rows[i];
        r.cell = c;
        const auto t0 = std::chrono::steady_clock::now();
        const Trajectory x = solve_named(prob, c.scheme, c.alpha, c.h, req.horizon, req.x0);
        r.status = x.status;
        r.failure_step = x.failure_step;
        r.final_index = NAN;
        if (x.status == SolveStatus::Completed && req.horizon > 1.0) {
            std::optional<DecayReport> rep;
            if (req.y0) {
                const Trajectory y = solve_named(prob, c.scheme, c.alpha, c.h, req.horizon, *req.y0);
                if (y.status == SolveStatus::Completed) rep = contractivity_index(x, y, norm);
            } else {
                rep = dissipativity_index(x, norm);
            }
            if (rep && !rep->degenerate) r.final_index = rep->index.back();
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    });
    return rows;
}

void write_sweep_csv(const fs::path& path, const std::vector<SweepRow>& rows) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "scheme,alpha,h,status,failure_step,final_index,wall_time\n";
    for (const auto& r : rows) {
        out << r.cell.scheme << ',' << format_double(r.cell.alpha) << ',' << format_double(r.cell.h) << ','
            << to_string(r.status) << ',' << (r.failure_step ? std::to_string(*r.failure_step) : "") << ','
            << format_double(r.final_index) << ',' << format_double(r.wall_time) << '\n';
    }
}

}  // namespace fbdf::tools
