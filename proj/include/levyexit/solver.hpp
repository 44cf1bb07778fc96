#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "levyexit/gauss_approx.hpp"
#include "levyexit/problems.hpp"
#include "levyexit/quadrature.hpp"

namespace levyexit {

// Raised when a run cannot proceed for numerical reasons (mesh invariant
// violations, time step too large for the domain). The CLI maps it to exit
// code 3, as opposed to configuration errors (exit code 2).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Temporal partition plus per-dimension spatial grids. Absorbing dimensions
// carry explicit boundary nodes pinned to u = 1 and keep the first/last
// interior node at least `offset` away from the boundary, so that every
// Gauss-Hermite abscissa (drift included) stays inside the domain. Periodic
// dimensions store distinct nodes only; the wrap interval closes the grid.
struct Mesh {
    int dim;
    double dt;
    int n_steps;
    double t_max;
    std::array<std::vector<double>, 2> grids;
    std::array<Boundary, 2> boundary;
    std::array<double, 2> period;
    std::array<double, 2> offset;

    std::size_t size(int d) const { return grids[d].size(); }
    std::size_t num_nodes() const {
        return dim == 1 ? size(0) : size(0) * size(1);
    }
};

// Nodal exit-probability values at one time level, dim-0 major in 2D.
struct ProbField {
    std::vector<double> values;
};

struct SolverConfig {
    ProblemSpec problem;
    std::optional<ApproxParams> approx;      // empty: jumps disabled
    std::optional<double> sigma_override;    // direct sigma for the jump dim
    double dt = 1e-4;
    double t_max = 1.0;
    std::array<int, 2> nodes = {101, 0};     // per-dimension node counts
    int m_hermite = 4;
    double h_jump = 0.0;                     // 0 -> sqrt(dt)
    int threads = 0;
    std::vector<double> snapshot_times;      // horizons to record
};

Mesh build_mesh(const SolverConfig& cfg);

// Terminal condition: 0 at interior nodes, 1 at absorbing boundary nodes.
ProbField terminal_field(const Mesh& mesh);

// One update u^{n+1} -> u^n: at every interior node the Poisson-weighted sum
// of the Gauss-Hermite Brownian expectation and the trapezoid jump
// expectation (with analytic exterior mass), boundary nodes kept at 1.
ProbField backward_step(const ProbField& next, const SolverConfig& cfg);

struct SolveResult {
    Mesh mesh;
    ProbField u0;  // P(t_max, x) over the mesh nodes
    std::vector<std::pair<double, ProbField>> snapshots;  // (horizon, field)
};

// Full backward sweep from the terminal condition. u^n corresponds to the
// exit horizon t_max - t_n, so one sweep yields P(t, x) for every recorded
// horizon.
SolveResult solve(const SolverConfig& cfg);

// Evaluates a nodal field anywhere in the domain through the scheme's
// interpolant.
double probe_field(const Mesh& mesh, const ProbField& field,
                   std::array<double, 2> point);

}  // namespace levyexit
