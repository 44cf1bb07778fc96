#include "levyexit/gauss_approx.hpp"

#include <cmath>
#include <stdexcept>

#include "levyexit/stable.hpp"

namespace levyexit {

ApproxParams build_approx(double alpha, double eps, double eps_out) {
    if (!(alpha >= 1.0) || !(alpha < 2.0))
        throw std::invalid_argument("build_approx: alpha must be in [1, 2)");
    if (!(eps > 0.0) || !(eps < eps_out))
        throw std::invalid_argument("build_approx: need 0 < eps < eps_out");
    ApproxParams p;
    p.alpha = alpha;
    p.eps = eps;
    p.eps_out = eps_out;
    p.c_const = levy_constant(alpha, 1);
    p.sigma_eps =
        std::sqrt(2.0 * p.c_const * std::pow(eps, 2.0 - alpha) / (2.0 - alpha));
    p.lambda = 2.0 * p.c_const *
               (std::pow(eps, -alpha) - std::pow(eps_out, -alpha)) / alpha;
    return p;
}

double JumpLaw::density(double q) const {
    const double a = std::abs(q);
    if (a < approx.eps || a > approx.eps_out) return 0.0;
    return approx.c_const / std::pow(a, 1.0 + approx.alpha) / approx.lambda;
}

double jump_cdf(const JumpLaw& law, double q) {
    const ApproxParams& p = law.approx;
    const double ea = std::pow(p.eps, -p.alpha);
    const double eo = std::pow(p.eps_out, -p.alpha);
    auto upper_half = [&](double x) {
        // CDF for x >= 0
        if (x < p.eps) return 0.5;
        if (x >= p.eps_out) return 1.0;
        return 0.5 + (ea - std::pow(x, -p.alpha)) / (2.0 * (ea - eo));
    };
    return (q >= 0.0) ? upper_half(q) : 1.0 - upper_half(-q);
}

double sample_jump(const JumpLaw& law, Rng& rng) {
    const ApproxParams& p = law.approx;
    const double ea = std::pow(p.eps, -p.alpha);
    const double eo = std::pow(p.eps_out, -p.alpha);
    const double u = rng.uniform();
    const double mag = std::pow(ea - u * (ea - eo), -1.0 / p.alpha);
    return (rng.uniform() < 0.5) ? -mag : mag;
}

PoissonWeights poisson_weights(double lambda, double dt) {
    if (!(lambda > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("poisson_weights: lambda, dt must be > 0");
    const double mu = lambda * dt;
    const double p0 = std::exp(-mu);
    return {p0, mu * p0};
}

}  // namespace levyexit
