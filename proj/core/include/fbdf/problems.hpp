#pragma once

#include <cstddef>
#include <memory>

#include "fbdf/ode.hpp"

namespace fbdf {

struct LorenzParams {
    double c1 = 0.25;
    double c2 = 1.0;
    double c3 = 0.25;

    void validate() const;
    double a() const noexcept { return 0.5; }
    double b() const noexcept;
};

// (x3 + (x2 - c1) x1, 1 - c2 x2 - x1^2, -x1 - c3 x3)
FOdeProblem lorenz_problem(const LorenzParams& params);

struct SubdiffusionGrid {
    std::size_t nx = 31;
    std::size_t ny = 31;
    double k = 1.0;
    std::shared_ptr<const SparseMatrix> matrix;  // 5-point Dirichlet Laplacian A (positive definite)
    double lambda1 = 0.0;                        // smallest eigenvalue of A

    double dx() const noexcept { return 1.0 / static_cast<double>(nx + 1); }
    double dy() const noexcept { return 1.0 / static_cast<double>(ny + 1); }
    // Interior node (i, j), 1-based in each direction, maps to index (j-1)*nx + (i-1).
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return (j - 1) * nx + (i - 1); }
};

struct SubdiffusionProblem {
    FOdeProblem problem;
    SubdiffusionGrid grid;
};

SparseMatrix laplacian_5pt(std::size_t nx, std::size_t ny);
double laplacian_lambda1(std::size_t nx, std::size_t ny);

// D^alpha U = -k A U + G, with G = source (constant, zero by default).
SubdiffusionProblem subdiffusion_problem(std::size_t nx = 31, std::size_t ny = 31, double k = 1.0,
                                         double source = 0.0);

// Samples g(x, y) at the interior nodes.
template <class F>
Vector sample_grid(const SubdiffusionGrid& grid, F&& g) {
    Vector u(static_cast<Eigen::Index>(grid.nx * grid.ny));
    for (std::size_t j = 1; j <= grid.ny; ++j)
        for (std::size_t i = 1; i <= grid.nx; ++i)
            u[static_cast<Eigen::Index>(grid.index(i, j))] = g(i * grid.dx(), j * grid.dy());
    return u;
}

Vector subdiffusion_initial(const SubdiffusionGrid& grid, int which);

// D^alpha x = -x^3 - x
FOdeProblem scalar_cubic_problem();
// D^alpha x = lambda x
FOdeProblem scalar_linear_problem(double lambda);
// (-10 x y^2 - x, 10 x^2 y - y)
FOdeProblem coupled_problem();

}  // namespace fbdf
