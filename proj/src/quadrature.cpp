#include "levyexit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyexit {

double HermiteRule::max_abscissa() const {
    double m = 0.0;
    for (double e : nodes) m = std::max(m, std::abs(e));
    return m;
}

HermiteRule hermite_rule(int m) {
    if (m < 2 || m > 64)
        throw std::invalid_argument("hermite_rule: m must be in [2, 64]");
    const int n = m;
    std::vector<long double> x(n), w(n);
    const long double pim4 = 0.7511255444649424828587030L;  // pi^(-1/4)
    long double z = 0.0L;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Initial root guesses, largest root first.
        if (i == 0)
            z = std::sqrt(2.0L * n + 1.0L) -
                1.85575L * std::pow(2.0L * n + 1.0L, -0.16667L);
        else if (i == 1)
            z -= 1.14L * std::pow((long double)n, 0.426L) / z;
        else if (i == 2)
            z = 1.86L * z - 0.86L * x[0];
        else if (i == 3)
            z = 1.91L * z - 0.91L * x[1];
        else
            z = 2.0L * z - x[i - 2];
        long double pp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p1 = pim4, p2 = 0.0L;
            for (int j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0L / j) * p2 -
                     std::sqrt((j - 1.0L) / j) * p3;
            }
            pp = std::sqrt(2.0L * n) * p2;
            const long double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-18L * std::max<long double>(1.0L, std::abs(z)))
                break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0L / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    if (n % 2 == 1) x[n / 2] = 0.0L;
    long double wsum = 0.0L;
    for (auto v : w) wsum += v;  // = sqrt(pi) analytically
    HermiteRule rule;
    rule.m = m;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // descending |node| order from the construction; sort ascending
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return x[a] < x[b]; });
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = static_cast<double>(x[idx[i]]);
        rule.weights[i] = static_cast<double>(w[idx[i]] / wsum);
    }
    return rule;
}

double brownian_expectation(const HermiteRule& rule, const Interpolant& field,
                            std::span<const double> x,
                            std::span<const double> drift_step,
                            std::span<const double> sigma_step) {
    const int d = field.dim();
    if (static_cast<int>(x.size()) != d ||
        static_cast<int>(drift_step.size()) != d ||
        static_cast<int>(sigma_step.size()) != d)
        throw std::invalid_argument("brownian_expectation: dimension mismatch");
    if (d == 1) {
        double acc = 0.0;
        for (int m = 0; m < rule.m; ++m)
            acc += rule.weights[m] *
                   field.eval1(x[0] + drift_step[0] +
                               sigma_step[0] * rule.nodes[m]);
        return acc;
    }
    double acc = 0.0;
    for (int m0 = 0; m0 < rule.m; ++m0) {
        const PchipLine line = field.line_at(x[0] + drift_step[0] +
                                             sigma_step[0] * rule.nodes[m0]);
        double inner = 0.0;
        for (int m1 = 0; m1 < rule.m; ++m1)
            inner += rule.weights[m1] *
                     line.eval(x[1] + drift_step[1] +
                               sigma_step[1] * rule.nodes[m1]);
        acc += rule.weights[m0] * inner;
    }
    return acc;
}

JumpRule jump_rule_for_point(const JumpLaw& law, double x, double jump_scale,
                             double lo, double hi, double h) {
    if (!(jump_scale > 0.0))
        throw std::invalid_argument("jump_rule_for_point: jump_scale > 0");
    if (!(h > 0.0)) throw std::invalid_argument("jump_rule_for_point: h > 0");
    if (!(x > lo && x < hi))
        throw std::invalid_argument(
            "jump_rule_for_point: x must be strictly inside the domain");
    const ApproxParams& p = law.approx;
    const double qlo = (lo - x) / jump_scale;
    const double qhi = (hi - x) / jump_scale;

    JumpRule rule;
    rule.exterior_mass = 1.0;
    double inside_mass = 0.0;

    // one trapezoid panel chain per side of the annulus, clipped to the
    // domain slice; endpoints of each chain are mesh points by construction
    const double sides[2][2] = {{std::max(-p.eps_out, qlo), -p.eps},
                                {p.eps, std::min(p.eps_out, qhi)}};
    for (const auto& side : sides) {
        const double a = side[0], b = side[1];
        if (!(b - a >= h)) continue;  // slice narrower than one h: exterior
        const int nsub = static_cast<int>(std::ceil((b - a) / h));
        const double step = (b - a) / nsub;
        const double mass = jump_cdf(law, b) - jump_cdf(law, a);
        const std::size_t base = rule.abscissae.size();
        for (int i = 0; i <= nsub; ++i) {
            const double q = (i == nsub) ? b : a + i * step;
            double w = law.density(q) * step;
            if (i == 0 || i == nsub) w *= 0.5;
            rule.abscissae.push_back(q);
            rule.weights.push_back(w);
        }
        // rescale the side to its analytic mass; keeps the total a convex
        // combination despite the O(h^2) trapezoid defect
        double raw = 0.0;
        for (std::size_t i = base; i < rule.weights.size(); ++i)
            raw += rule.weights[i];
        if (raw > 0.0) {
            const double s = mass / raw;
            for (std::size_t i = base; i < rule.weights.size(); ++i)
                rule.weights[i] *= s;
            inside_mass += mass;
        }
    }
    rule.exterior_mass = 1.0 - inside_mass;
    return rule;
}

}  // namespace levyexit
