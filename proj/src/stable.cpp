#include "levyexit/stable.hpp"

#include <cmath>
#include <stdexcept>

namespace levyexit {

StableParams::StableParams(double alpha_, double beta_, double scale_,
                           double location_)
    : alpha(alpha_), beta(beta_), scale(scale_), location(location_) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("StableParams: alpha must be in (0, 2]");
    if (!(beta >= -1.0) || !(beta <= 1.0))
        throw std::invalid_argument("StableParams: beta must be in [-1, 1]");
    if (!(scale > 0.0))
        throw std::invalid_argument("StableParams: scale must be positive");
}

double levy_constant(double alpha, int dim) {
    if (!(alpha > 0.0) || alpha >= 2.0)
        throw std::invalid_argument("levy_constant: alpha must be in (0, 2)");
    if (dim < 1) throw std::invalid_argument("levy_constant: dim must be >= 1");
    const double d = static_cast<double>(dim);
    return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma((alpha + d) / 2.0) /
           (std::pow(M_PI, d / 2.0) * std::tgamma((2.0 - alpha) / 2.0));
}

LevyMeasure1D::LevyMeasure1D(double alpha_)
    : alpha(alpha_), c_const(levy_constant(alpha_, 1)) {}

double LevyMeasure1D::density(double q) const {
    return c_const / std::pow(std::abs(q), 1.0 + alpha);
}

std::complex<double> char_fn(const StableParams& p, double k) {
    if (k == 0.0) return {1.0, 0.0};
    const double sgn = (k > 0.0) ? 1.0 : -1.0;
    const double ak = std::abs(k);
    std::complex<double> expo;
    if (std::abs(p.alpha - 1.0) < 1e-12) {
        expo = std::complex<double>(
            -p.scale * ak,
            -p.scale * ak * p.beta * (M_PI * p.alpha / 2.0) * sgn * std::log(ak) +
                k * p.location);
    } else {
        const double amp = std::pow(p.scale, p.alpha) * std::pow(ak, p.alpha);
        expo = std::complex<double>(
            -amp, amp * p.beta * sgn * std::tan(M_PI * p.alpha / 2.0) +
                      k * p.location);
    }
    return std::exp(expo);
}

double sample_sas_one(double alpha, Rng& rng) {
    const double u = M_PI * (rng.uniform_open() - 0.5);  // (-pi/2, pi/2)
    if (alpha == 2.0) {
        // S(2,0,1,0) is N(0, 2); reuse the CMS pair via Box-Muller form
        const double w = rng.exponential();
        return 2.0 * std::sin(u) * std::sqrt(w);
    }
    const double w = rng.exponential();
    if (std::abs(alpha - 1.0) < 1e-9) return std::tan(u);  // Cauchy
    const double s = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    return s * std::pow(std::cos(u - alpha * u) / w, (1.0 - alpha) / alpha);
}

std::vector<double> sample_sas(double alpha, Rng& rng, std::size_t n) {
    if (!(alpha >= 1.0) || !(alpha <= 2.0))
        throw std::invalid_argument("sample_sas: alpha must be in [1, 2]");
    if (n == 0) throw std::invalid_argument("sample_sas: n must be >= 1");
    std::vector<double> out(n);
    for (auto& x : out) x = sample_sas_one(alpha, rng);
    return out;
}

}  // namespace levyexit
