#pragma once

#include <span>
#include <vector>

#include "fbdf/ode.hpp"
#include "fbdf/weights.hpp"

namespace fbdf {

Trajectory fbdf_solve(const FOdeProblem& problem, SchemeKind scheme, Alpha alpha, const SolverConfig& config,
                      const Vector& x0);
// Reuses a prebuilt weight table (capacity must cover config.n_steps).
Trajectory fbdf_solve(const FOdeProblem& problem, const SchemeWeights& weights, const SolverConfig& config,
                      const Vector& x0);

Trajectory fabm_solve(const FOdeProblem& problem, Alpha alpha, const SolverConfig& config, const Vector& x0);

// out = sum_{j=1}^{n} row[j] x_{n-j}, where states holds x_0 .. x_{n-1} row-major with dimension dim.
void history_dot(std::span<const double> row, std::span<const double> states, std::size_t dim, Vector& out);

struct NewtonContext {
    const FOdeProblem* problem = nullptr;
    double t = 0.0;
    double lead = 1.0;     // w_0
    double h_alpha = 1.0;  // h^alpha
    const Vector* history = nullptr;
    double tol = 1e-12;
    int max_iter = 50;
    Fallback fallback = Fallback::DampedNewton;
};

struct NewtonResult {
    Vector x;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
    bool damped = false;
};

// Solves lead * x + history - h^alpha f(t, x) = 0 starting from guess.
NewtonResult newton_inner(const NewtonContext& ctx, const Vector& guess);

// Relative residual norm used by the inner solver.
double scaled_residual(const NewtonContext& ctx, const Vector& x, const Vector& fx, Vector& g);

}  // namespace fbdf
