#pragma once

#include "levyexit/rng.hpp"

namespace levyexit {

// Derived quantities of the Gaussian approximation of a symmetric
// alpha-stable process: the Levy measure is split at eps, small jumps are
// replaced by a Brownian motion of standard deviation sigma_eps, large jumps
// by a compound Poisson process of intensity lambda with amplitudes on the
// annulus eps <= |q| <= eps_out. The symmetric drift term vanishes.
struct ApproxParams {
    double alpha;
    double eps;
    double eps_out;
    double c_const;    // C_{1,alpha}
    double sigma_eps;  // sqrt(2 c eps^(2-alpha) / (2-alpha))
    double lambda;     // 2 c (eps^-alpha - eps_out^-alpha) / alpha
};

// Computes the closed forms above. alpha restricted to the superdiffusive
// range [1, 2); requires 0 < eps < eps_out.
ApproxParams build_approx(double alpha, double eps = 0.1,
                          double eps_out = 1e5);

// Normalized jump amplitude law phi(q) = nu(q)/lambda on the annulus
// E = {eps <= |q| <= eps_out}.
struct JumpLaw {
    ApproxParams approx;

    double density(double q) const;  // phi(q), zero off E
};

// Exact CDF of phi: flat at 1/2 across the gap (-eps, eps), power-law pieces
// on each side of the annulus.
double jump_cdf(const JumpLaw& law, double q);

// Inverse-CDF draw: uniform sign, magnitude
// (eps^-a - U (eps^-a - eps_out^-a))^(-1/a).
double sample_jump(const JumpLaw& law, Rng& rng);

struct PoissonWeights {
    double p0;  // P(N_dt = 0) = exp(-lambda dt)
    double p1;  // P(N_dt = 1) = lambda dt exp(-lambda dt)
};

PoissonWeights poisson_weights(double lambda, double dt);

}  // namespace levyexit
