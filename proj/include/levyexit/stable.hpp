#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "levyexit/rng.hpp"

namespace levyexit {

// Parameters of the stable law S(alpha, beta, scale, location).
struct StableParams {
    double alpha;     // stability index, (0, 2]
    double beta;      // skewness, [-1, 1]
    double scale;     // sigma > 0
    double location;  // mu

    StableParams(double alpha_, double beta_ = 0.0, double scale_ = 1.0,
                 double location_ = 0.0);
};

// Symmetric alpha-stable Levy measure in one dimension,
// nu(q) = c_const / |q|^(1+alpha).
struct LevyMeasure1D {
    double alpha;
    double c_const;
    static constexpr int dim = 1;

    explicit LevyMeasure1D(double alpha_);

    double density(double q) const;
};

// Normalization constant C_{d,alpha} of the jump intensity:
//   alpha * 2^(alpha-1) * Gamma((alpha+d)/2) / (pi^(d/2) * Gamma((2-alpha)/2)).
// Rejects alpha <= 0 and alpha >= 2 (the measure degenerates at alpha = 2).
double levy_constant(double alpha, int dim);

// Characteristic function of S(alpha, beta, scale, location); the alpha = 1
// branch is taken when |alpha - 1| < 1e-12.
std::complex<double> char_fn(const StableParams& params, double k);

// One draw from the symmetric standard stable law S(alpha, 0, 1, 0) by the
// Chambers-Mallows-Stuck transform. alpha = 2 falls back to the Gaussian
// special case, |alpha - 1| < 1e-9 to the Cauchy tan form.
double sample_sas_one(double alpha, Rng& rng);

// n i.i.d. draws from S(alpha, 0, 1, 0); deterministic given the rng state.
std::vector<double> sample_sas(double alpha, Rng& rng, std::size_t n);

}  // namespace levyexit
