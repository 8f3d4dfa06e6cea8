#include "fbdf/solver.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include <Eigen/LU>
#include <Eigen/SparseLU>

namespace fbdf {

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Completed: return "completed";
    case SolveStatus::NewtonFailure: return "newton_failure";
    case SolveStatus::Overflow: return "overflow";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size h must be positive");
    if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
    if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
    if (newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be at least 1");
}

namespace {

void check_problem(const FOdeProblem& p, const Vector& x0) {
    if (!p.rhs) throw std::invalid_argument("problem has no right-hand side");
    if (p.dimension < 1) throw std::invalid_argument("problem dimension must be at least 1");
    if (static_cast<std::size_t>(x0.size()) != p.dimension)
        throw std::invalid_argument("initial value dimension does not match the problem");
}

Matrix fd_jacobian(const FOdeProblem& p, double t, const Vector& x, const Vector& fx) {
    const auto d = x.size();
    Matrix J(d, d);
    Vector xp = x;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double step = 1e-7 * (1.0 + std::abs(x[i]));
        xp[i] = x[i] + step;
        J.col(i) = (p.rhs(t, xp) - fx) / step;
        xp[i] = x[i];
    }
    return J;
}

bool overflowed(const Vector& x) { return !x.allFinite() || x.norm() > overflow_threshold; }

Trajectory start_trajectory(const FOdeProblem& problem, const SolverConfig& config, const Vector& x0) {
    Trajectory tr;
    tr.dimension = problem.dimension;
    tr.h = config.h;
    tr.times.reserve(config.n_steps + 1);
    tr.data.reserve((config.n_steps + 1) * problem.dimension);
    tr.residuals.reserve(config.n_steps + 1);
    tr.times.push_back(0.0);
    tr.data.insert(tr.data.end(), x0.data(), x0.data() + x0.size());
    tr.residuals.push_back(0.0);
    return tr;
}

void push_state(Trajectory& tr, double t, const Vector& x, double residual) {
    tr.times.push_back(t);
    tr.data.insert(tr.data.end(), x.data(), x.data() + x.size());
    tr.residuals.push_back(residual);
}

// Sparse factorizations of (lead I - h^alpha A), one per distinct leading weight.
class LinearCache {
public:
    LinearCache(const SparseMatrix& a, double h_alpha) : a_(a), h_alpha_(h_alpha) {}

    const Eigen::SparseLU<SparseMatrix>& get(double lead) {
        auto it = cache_.find(lead);
        if (it != cache_.end()) return *it->second;
        SparseMatrix m(a_.rows(), a_.cols());
        m.setIdentity();
        m *= lead;
        m -= h_alpha_ * a_;
        m.makeCompressed();
        auto lu = std::make_unique<Eigen::SparseLU<SparseMatrix>>();
        lu->compute(m);
        if (lu->info() != Eigen::Success) throw std::runtime_error("sparse factorization failed");
        return *cache_.emplace(lead, std::move(lu)).first->second;
    }

private:
    const SparseMatrix& a_;
    double h_alpha_;
    std::map<double, std::unique_ptr<Eigen::SparseLU<SparseMatrix>>> cache_;
};

}  // namespace

double scaled_residual(const NewtonContext& ctx, const Vector& x, const Vector& fx, Vector& g) {
    g = ctx.lead * x + *ctx.history - ctx.h_alpha * fx;
    const double scale = std::max({1.0, x.norm(), ctx.history->norm(), ctx.h_alpha * fx.norm()});
    return g.norm() / scale;
}

NewtonResult newton_inner(const NewtonContext& ctx, const Vector& guess) {
    const FOdeProblem& p = *ctx.problem;
    NewtonResult res;
    res.x = guess;
    Vector fx = p.rhs(ctx.t, res.x);
    Vector g;
    double r = scaled_residual(ctx, res.x, fx, g);

    for (int it = 0; it < ctx.max_iter && !(r <= ctx.tol); ++it) {
        res.iterations = it + 1;
        const Matrix jf = p.jacobian ? p.jacobian(ctx.t, res.x) : fd_jacobian(p, ctx.t, res.x, fx);
        Matrix jg = -ctx.h_alpha * jf;
        jg.diagonal().array() += ctx.lead;
        Eigen::FullPivLU<Matrix> lu(jg);
        Vector dx;
        if (lu.isInvertible() && jg.allFinite()) {
            dx = lu.solve(-g);
        } else {
            dx = -g / ctx.lead;
            res.damped = true;
        }
        if (!dx.allFinite()) break;

        // Decrease is judged on the raw residual; the scaled one moves with x.
        const double gnorm = g.norm();
        double step = 1.0;
        Vector trial, ftrial, gtrial;
        double rtrial = INFINITY;
        bool decreased = false;
        for (int halving = 0; halving <= 20; ++halving) {
            trial = res.x + step * dx;
            ftrial = p.rhs(ctx.t, trial);
            rtrial = scaled_residual(ctx, trial, ftrial, gtrial);
            if (gtrial.norm() < gnorm) {
                decreased = true;
                break;
            }
            step *= 0.5;
            res.damped = true;
        }
        if (!decreased) break;
        res.x = trial;
        fx = ftrial;
        g = gtrial;
        r = rtrial;
    }

    if (!(r <= ctx.tol) && ctx.fallback == Fallback::FixedPoint) {
        res.damped = true;
        for (int it = 0; it < ctx.max_iter && !(r <= ctx.tol); ++it) {
            res.x = (ctx.h_alpha * fx - *ctx.history) / ctx.lead;
            fx = p.rhs(ctx.t, res.x);
            r = scaled_residual(ctx, res.x, fx, g);
            if (!std::isfinite(r)) break;
        }
    }
    res.residual = r;
    res.converged = r <= ctx.tol;
    return res;
}

void history_dot(std::span<const double> row, std::span<const double> states, std::size_t dim, Vector& out) {
    const std::size_t n = row.size() - 1;
    if (states.size() < n * dim) throw std::invalid_argument("history shorter than the weight row");
    out.setZero(static_cast<Eigen::Index>(dim));
    if (n == 0) return;
    // Coefficient of state k is row[n - k].
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) v[static_cast<Eigen::Index>(k)] = row[n - k];
    Eigen::Map<const Eigen::MatrixXd> hist(states.data(), static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
    out.noalias() = hist * v;
}

Trajectory fbdf_solve(const FOdeProblem& problem, SchemeKind scheme, Alpha alpha, const SolverConfig& config,
                      const Vector& x0) {
    config.validate();
    return fbdf_solve(problem, make_weights(scheme, alpha, config.n_steps), config, x0);
}

Trajectory fbdf_solve(const FOdeProblem& problem, const SchemeWeights& weights, const SolverConfig& config,
                      const Vector& x0) {
    config.validate();
    check_problem(problem, x0);
    if (weights.capacity() < config.n_steps) throw std::invalid_argument("weight table shorter than n_steps");

    const std::size_t d = problem.dimension;
    const double ha = std::pow(config.h, weights.alpha());
    Trajectory tr = start_trajectory(problem, config, x0);

    std::unique_ptr<LinearCache> linear;
    if (problem.linear_operator) linear = std::make_unique<LinearCache>(*problem.linear_operator, ha);

    std::vector<double> row;
    Vector history(static_cast<Eigen::Index>(d));
    Vector x = x0;
    NewtonContext ctx;
    ctx.problem = &problem;
    ctx.h_alpha = ha;
    ctx.history = &history;
    ctx.tol = config.newton_tol;
    ctx.max_iter = config.newton_max_iter;
    ctx.fallback = config.fallback;

    for (std::size_t n = 1; n <= config.n_steps; ++n) {
        const double t = static_cast<double>(n) * config.h;
        weights.row(n, row);
        history_dot(row, tr.data, d, history);
        ctx.t = t;
        ctx.lead = row[0];

        NewtonResult step;
        if (linear) {
            const auto& lu = linear->get(row[0]);
            Vector rhs = -history;
            if (problem.forcing) rhs += ha * problem.forcing(t);
            step.x = lu.solve(rhs);
            Vector g;
            step.residual = scaled_residual(ctx, step.x, problem.rhs(t, step.x), g);
            if (!(step.residual <= ctx.tol) && g.allFinite()) {
                step.x -= lu.solve(g);
                step.residual = scaled_residual(ctx, step.x, problem.rhs(t, step.x), g);
            }
            step.converged = step.residual <= ctx.tol;
            step.iterations = 1;
        } else {
            step = newton_inner(ctx, x);
        }
        if (step.damped) ++tr.damped_steps;

        if (overflowed(step.x)) {
            tr.status = SolveStatus::Overflow;
            tr.failure_step = n;
            return tr;
        }
        if (!step.converged) {
            tr.status = SolveStatus::NewtonFailure;
            tr.failure_step = n;
            return tr;
        }
        x = step.x;
        push_state(tr, t, x, step.residual);
    }
    return tr;
}

Trajectory fabm_solve(const FOdeProblem& problem, Alpha alpha, const SolverConfig& config, const Vector& x0) {
    config.validate();
    check_problem(problem, x0);
    const std::size_t d = problem.dimension;
    const std::size_t N = config.n_steps;
    const double a = alpha;
    const double ha = std::pow(config.h, a);
    const double cp = ha / gamma_fn(a + 1.0);
    const double cc = ha / gamma_fn(a + 2.0);

    std::vector<double> pa(N + 2), pa1(N + 2);
    for (std::size_t k = 0; k <= N + 1; ++k) {
        pa[k] = std::pow(static_cast<double>(k), a);
        pa1[k] = std::pow(static_cast<double>(k), a + 1.0);
    }
    // Predictor weights b_k = (k+1)^a - k^a; corrector interior weights by k = n - j + 1.
    std::vector<double> b(N + 1), c(N + 2);
    for (std::size_t k = 0; k <= N; ++k) b[k] = pa[k + 1] - pa[k];
    for (std::size_t k = 1; k <= N; ++k) c[k] = pa1[k + 1] - 2.0 * pa1[k] + pa1[k - 1];

    Trajectory tr = start_trajectory(problem, config, x0);
    std::vector<double> fhist;
    fhist.reserve((N + 1) * d);
    Vector f0 = problem.rhs(0.0, x0);
    fhist.insert(fhist.end(), f0.data(), f0.data() + d);

    Vector pred(static_cast<Eigen::Index>(d)), corr(static_cast<Eigen::Index>(d));
    for (std::size_t n = 0; n < N; ++n) {
        pred.setZero();
        corr.setZero();
        const double dn = static_cast<double>(n);
        for (std::size_t j = 0; j <= n; ++j) {
            Eigen::Map<const Vector> fj(fhist.data() + j * d, static_cast<Eigen::Index>(d));
            pred.noalias() += b[n - j] * fj;
            const double aj = j == 0 ? pa1[n] - (dn - a) * pa[n + 1] : c[n - j + 1];
            corr.noalias() += aj * fj;
        }
        const double t = static_cast<double>(n + 1) * config.h;
        const Vector xp = x0 + cp * pred;
        if (overflowed(xp)) {
            tr.status = SolveStatus::Overflow;
            tr.failure_step = n + 1;
            return tr;
        }
        const Vector x = x0 + cc * (corr + problem.rhs(t, xp));
        if (overflowed(x)) {
            tr.status = SolveStatus::Overflow;
            tr.failure_step = n + 1;
            return tr;
        }
        const Vector fx = problem.rhs(t, x);
        if (!fx.allFinite()) {
            tr.status = SolveStatus::Overflow;
            tr.failure_step = n + 1;
            return tr;
        }
        fhist.insert(fhist.end(), fx.data(), fx.data() + d);
        push_state(tr, t, x, 0.0);
    }
    return tr;
}

}  // namespace fbdf
