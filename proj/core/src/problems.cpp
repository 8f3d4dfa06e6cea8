#include "fbdf/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fbdf {

void LorenzParams::validate() const {
    if (!(c1 > 0.0 && c2 > 0.0 && c3 > 0.0)) throw std::invalid_argument("Lorenz parameters must be positive");
    if (!(c2 > 0.5)) throw std::invalid_argument("Lorenz parameter c2 must exceed 1/2");
}

double LorenzParams::b() const noexcept { return std::min({c1, c2 - 0.5, c3}); }

FOdeProblem lorenz_problem(const LorenzParams& params) {
    params.validate();
    const double c1 = params.c1, c2 = params.c2, c3 = params.c3;
    FOdeProblem p;
    p.name = "lorenz";
    p.dimension = 3;
    p.rhs = [=](double, const Vector& x) {
        Vector f(3);
        f << x[2] + (x[1] - c1) * x[0], 1.0 - c2 * x[1] - x[0] * x[0], -x[0] - c3 * x[2];
        return f;
    };
    p.jacobian = [=](double, const Vector& x) {
        Matrix j(3, 3);
        j << x[1] - c1, x[0], 1.0,
             -2.0 * x[0], -c2, 0.0,
             -1.0, 0.0, -c3;
        return j;
    };
    p.dissipativity = Dissipativity{params.a(), params.b()};
    return p;
}

SparseMatrix laplacian_5pt(std::size_t nx, std::size_t ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 interior nodes per direction");
    const double ix2 = std::pow(static_cast<double>(nx + 1), 2);
    const double iy2 = std::pow(static_cast<double>(ny + 1), 2);
    const auto n = static_cast<Eigen::Index>(nx * ny);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(n) * 5);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const auto r = static_cast<Eigen::Index>(j * nx + i);
            trips.emplace_back(r, r, 2.0 * ix2 + 2.0 * iy2);
            if (i > 0) trips.emplace_back(r, r - 1, -ix2);
            if (i + 1 < nx) trips.emplace_back(r, r + 1, -ix2);
            if (j > 0) trips.emplace_back(r, r - static_cast<Eigen::Index>(nx), -iy2);
            if (j + 1 < ny) trips.emplace_back(r, r + static_cast<Eigen::Index>(nx), -iy2);
        }
    }
    SparseMatrix a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());
    a.makeCompressed();
    return a;
}

double laplacian_lambda1(std::size_t nx, std::size_t ny) {
    const double pi = std::numbers::pi;
    const double ax = static_cast<double>(nx + 1), ay = static_cast<double>(ny + 1);
    return (2.0 - 2.0 * std::cos(pi / ax)) * ax * ax + (2.0 - 2.0 * std::cos(pi / ay)) * ay * ay;
}

SubdiffusionProblem subdiffusion_problem(std::size_t nx, std::size_t ny, double k, double source) {
    if (!(k > 0.0)) throw std::invalid_argument("diffusion coefficient must be positive");
    SubdiffusionProblem out;
    auto a = std::make_shared<SparseMatrix>(laplacian_5pt(nx, ny));
    out.grid.nx = nx;
    out.grid.ny = ny;
    out.grid.k = k;
    out.grid.matrix = a;
    out.grid.lambda1 = laplacian_lambda1(nx, ny);

    auto op = std::make_shared<SparseMatrix>(-k * *a);
    const auto n = static_cast<Eigen::Index>(nx * ny);
    FOdeProblem& p = out.problem;
    p.name = "subdiffusion";
    p.dimension = nx * ny;
    p.linear_operator = op;
    p.forcing = [n, source](double) { return Vector::Constant(n, source); };
    p.rhs = [op, n, source](double, const Vector& u) {
        Vector f = *op * u;
        if (source != 0.0) f.array() += source;
        return f;
    };
    p.jacobian = [op](double, const Vector&) { return Matrix(*op); };
    p.lambda_one_sided = -k * out.grid.lambda1;
    return out;
}

Vector subdiffusion_initial(const SubdiffusionGrid& grid, int which) {
    const double pi = std::numbers::pi;
    if (which == 1) return sample_grid(grid, [pi](double x, double y) { return std::sin(2 * pi * x) * std::sin(2 * pi * y); });
    if (which == 2) return sample_grid(grid, [](double x, double y) { return 10.0 * x * y * (1 - x) * (1 - y); });
    throw std::invalid_argument("sub-diffusion initial value index must be 1 or 2");
}

FOdeProblem scalar_cubic_problem() {
    FOdeProblem p;
    p.name = "cubic";
    p.dimension = 1;
    p.rhs = [](double, const Vector& x) { return Vector::Constant(1, -x[0] * x[0] * x[0] - x[0]); };
    p.jacobian = [](double, const Vector& x) { return Matrix::Constant(1, 1, -3.0 * x[0] * x[0] - 1.0); };
    p.lambda_one_sided = -1.0;
    p.dissipativity = Dissipativity{0.0, 1.0};
    return p;
}

FOdeProblem scalar_linear_problem(double lambda) {
    FOdeProblem p;
    p.name = "linear";
    p.dimension = 1;
    p.rhs = [lambda](double, const Vector& x) { return Vector::Constant(1, lambda * x[0]); };
    p.jacobian = [lambda](double, const Vector&) { return Matrix::Constant(1, 1, lambda); };
    p.lambda_one_sided = lambda;
    if (lambda < 0.0) p.dissipativity = Dissipativity{0.0, -lambda};
    return p;
}

FOdeProblem coupled_problem() {
    FOdeProblem p;
    p.name = "coupled";
    p.dimension = 2;
    p.rhs = [](double, const Vector& z) {
        const double x = z[0], y = z[1];
        Vector f(2);
        f << -10.0 * x * y * y - x, 10.0 * x * x * y - y;
        return f;
    };
    p.jacobian = [](double, const Vector& z) {
        const double x = z[0], y = z[1];
        Matrix j(2, 2);
        j << -10.0 * y * y - 1.0, -20.0 * x * y,
             20.0 * x * y, 10.0 * x * x - 1.0;
        return j;
    };
    p.dissipativity = Dissipativity{0.0, 1.0};
    return p;
}

}  // namespace fbdf
