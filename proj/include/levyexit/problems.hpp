#pragma once

#include <array>
#include <optional>

namespace levyexit {

struct Interval {
    double lo, hi;
};

enum class Boundary { absorbing, periodic };

// Incompressible cellular velocity field scaled by the Peclet number:
//   v_theta = -m pi cos(m pi r) sin(n theta),  v_r = n sin(m pi r) cos(n theta).
struct CellularDrift {
    double pe;
    int m;
    int n;
};

// Geometry and physics of one exit problem. dim == 1 is the benchmark on
// [0,1] with absorbing ends; dim == 2 is the anisotropic (theta, r) problem,
// periodic in theta and absorbing in r, jumps acting on r only.
struct ProblemSpec {
    int dim;
    std::array<Interval, 2> domain;
    std::array<Boundary, 2> boundary;
    double chi;    // normalized jump/diffusion scale
    double alpha;  // stability index
    std::optional<CellularDrift> drift;

    static ProblemSpec benchmark_1d(double alpha, double chi);
    static ProblemSpec cellular_2d(double alpha, double chi, double pe, int m,
                                   int n);

    // index of the coordinate driven by the stable jumps (0 in 1D, r in 2D)
    int jump_dim() const { return dim == 1 ? 0 : 1; }
};

struct Velocity {
    double v_theta;
    double v_r;
};

// Closed-form cellular velocity; zero without a configured drift.
Velocity velocity(const ProblemSpec& spec, double theta, double r);

}  // namespace levyexit
