#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mpflow {

/// Uniform node-centered grid on [0,lx] x [0,ly] with square cells.
/// Nodes sit at (i*h, j*h), 0 <= i < nx, 0 <= j < ny.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;
    double ly = 0.0;
    double h = 0.0;

    double x(int i) const { return i * h; }
    double y(int j) const { return j * h; }
    std::size_t size() const { return std::size_t(nx) * std::size_t(ny); }

    bool operator==(const GridSpec&) const = default;
};

/// Validates node counts and the square-cell requirement
/// (lx/(nx-1) and ly/(ny-1) must agree to 1e-12 relative).
GridSpec make_grid(int nx, int ny, double lx, double ly);

/// Unit square helper used throughout the verification harness.
inline GridSpec make_unit_grid(int n) { return make_grid(n, n, 1.0, 1.0); }

struct ScalarField {
    GridSpec grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), v(g.size(), 0.0) {}

    double& operator()(int i, int j) { return v[std::size_t(j) * grid.nx + i]; }
    double operator()(int i, int j) const { return v[std::size_t(j) * grid.nx + i]; }
};

struct VectorField {
    GridSpec grid;
    std::vector<double> x;
    std::vector<double> y;

    VectorField() = default;
    explicit VectorField(const GridSpec& g)
        : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    double& vx(int i, int j) { return x[std::size_t(j) * grid.nx + i]; }
    double vx(int i, int j) const { return x[std::size_t(j) * grid.nx + i]; }
    double& vy(int i, int j) { return y[std::size_t(j) * grid.nx + i]; }
    double vy(int i, int j) const { return y[std::size_t(j) * grid.nx + i]; }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw std::invalid_argument("incompatible grids");
}

template <class F>
ScalarField sample(const GridSpec& g, F&& f) {
    ScalarField q(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) q(i, j) = f(g.x(i), g.y(j));
    return q;
}

template <class Fx, class Fy>
VectorField sample_vector(const GridSpec& g, Fx&& fx, Fy&& fy) {
    VectorField q(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            q.vx(i, j) = fx(g.x(i), g.y(j));
            q.vy(i, j) = fy(g.x(i), g.y(j));
        }
    return q;
}

} // namespace mpflow
