#include "levyexit/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace levyexit {

ProblemSpec ProblemSpec::benchmark_1d(double alpha, double chi) {
    if (!(chi > 0.0)) throw std::invalid_argument("ProblemSpec: chi > 0");
    ProblemSpec s;
    s.dim = 1;
    s.domain = {Interval{0.0, 1.0}, Interval{0.0, 0.0}};
    s.boundary = {Boundary::absorbing, Boundary::absorbing};
    s.chi = chi;
    s.alpha = alpha;
    return s;
}

ProblemSpec ProblemSpec::cellular_2d(double alpha, double chi, double pe,
                                     int m, int n) {
    if (!(chi > 0.0)) throw std::invalid_argument("ProblemSpec: chi > 0");
    if (m < 1 || n < 1)
        throw std::invalid_argument("ProblemSpec: mode numbers must be >= 1");
    ProblemSpec s;
    s.dim = 2;
    s.domain = {Interval{-M_PI, M_PI}, Interval{0.0, 1.0}};
    s.boundary = {Boundary::periodic, Boundary::absorbing};
    s.chi = chi;
    s.alpha = alpha;
    if (pe != 0.0) s.drift = CellularDrift{pe, m, n};
    return s;
}

Velocity velocity(const ProblemSpec& spec, double theta, double r) {
    if (!spec.drift) return {0.0, 0.0};
    const double m = spec.drift->m;
    const double n = spec.drift->n;
    return {-m * M_PI * std::cos(m * M_PI * r) * std::sin(n * theta),
            n * std::sin(m * M_PI * r) * std::cos(n * theta)};
}

}  // namespace levyexit
