#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fbdf {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

struct Dissipativity {
    double a = 0.0;
    double b = 1.0;
};

// D^alpha x = f(t, x).  Structural constants are metadata for diagnostics only.
struct FOdeProblem {
    std::string name;
    std::size_t dimension = 1;
    std::function<Vector(double, const Vector&)> rhs;
    std::function<Matrix(double, const Vector&)> jacobian;
    // Set when f(t, x) = linear_operator * x + forcing(t); enables a cached sparse factorization.
    std::shared_ptr<const SparseMatrix> linear_operator;
    std::function<Vector(double)> forcing;
    std::optional<double> lambda_one_sided;
    std::optional<Dissipativity> dissipativity;
};

enum class Fallback { DampedNewton, FixedPoint };

struct SolverConfig {
    double h = 0.1;
    std::size_t n_steps = 1;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    Fallback fallback = Fallback::DampedNewton;

    void validate() const;
};

enum class SolveStatus { Completed, NewtonFailure, Overflow };

const char* to_string(SolveStatus s);

inline constexpr double overflow_threshold = 1e150;

struct Trajectory {
    std::size_t dimension = 1;
    double h = 0.0;
    std::vector<double> times;
    std::vector<double> data;  // row-major: state n occupies [n*d, (n+1)*d)
    std::vector<double> residuals;
    SolveStatus status = SolveStatus::Completed;
    std::optional<std::size_t> failure_step;
    std::size_t damped_steps = 0;

    std::size_t size() const noexcept { return times.size(); }
    const double* state_ptr(std::size_t n) const { return data.data() + n * dimension; }
    Eigen::Map<const Vector> state(std::size_t n) const {
        return Eigen::Map<const Vector>(state_ptr(n), static_cast<Eigen::Index>(dimension));
    }
    double component(std::size_t n, std::size_t i) const { return data[n * dimension + i]; }
};

}  // namespace fbdf
