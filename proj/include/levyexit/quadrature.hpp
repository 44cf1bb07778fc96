#pragma once

#include <span>
#include <vector>

#include "levyexit/gauss_approx.hpp"
#include "levyexit/pchip.hpp"

namespace levyexit {

// Gauss-Hermite rule normalized against the Gaussian density
// rho(xi) = pi^(-1/2) exp(-xi^2): weights sum to 1, nodes symmetric about 0.
struct HermiteRule {
    int m;
    std::vector<double> nodes;
    std::vector<double> weights;

    double max_abscissa() const;
};

// Nodes by Newton iteration on the orthonormal Hermite recurrence,
// weights normalized by their sum. 2 <= m <= 64.
HermiteRule hermite_rule(int m);

// Tensor-product quadrature of the interpolated field against the Gaussian
// kernel: sum_m w_m u(x + drift_step + sigma_step o e_m), with sigma_step the
// per-dimension scale sigma*sqrt(2 dt). Evaluation points must stay inside
// the interpolant's domain; a point escaping it is a mesh-construction bug
// and surfaces as a hard error from the interpolant.
double brownian_expectation(const HermiteRule& rule, const Interpolant& field,
                            std::span<const double> x,
                            std::span<const double> drift_step,
                            std::span<const double> sigma_step);

// Trapezoid rule for the jump expectation at one point: abscissae cover the
// part of the jump annulus whose landing x + jump_scale*q stays inside
// (lo, hi); the probability of landing outside is carried analytically in
// exterior_mass. Weights are rescaled so sum(v) + exterior_mass = 1 exactly.
struct JumpRule {
    std::vector<double> abscissae;  // q values, annulus coordinates
    std::vector<double> weights;
    double exterior_mass;
};

JumpRule jump_rule_for_point(const JumpLaw& law, double x, double jump_scale,
                             double lo, double hi, double h);

}  // namespace levyexit
