#include "levyexit/pchip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace levyexit {

namespace {

// Interval lookup shared by PchipLine and the tensor pass. Wraps (periodic)
// or clamps (clamped, with a hard error outside the grid) the query in place.
std::size_t locate_on(const std::vector<double>& x, BoundaryMode mode,
                      double period, double& q) {
    const std::size_t n = x.size();
    if (mode == BoundaryMode::periodic) {
        double rel = std::fmod(q - x[0], period);
        if (rel < 0.0) rel += period;
        q = x[0] + rel;
        if (q >= x[n - 1]) return n - 1;  // wrap interval
        const auto it = std::upper_bound(x.begin(), x.end(), q);
        return static_cast<std::size_t>(it - x.begin()) - 1;
    }
    const double span = x[n - 1] - x[0];
    const double tol = 1e-9 * std::max(span, 1.0);
    if (q < x[0] - tol || q > x[n - 1] + tol)
        throw std::domain_error("pchip: evaluation point outside grid range");
    q = std::clamp(q, x[0], x[n - 1]);
    const auto it = std::upper_bound(x.begin(), x.end(), q);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i > 0) --i;
    if (i > n - 2) i = n - 2;
    return i;
}

// MATLAB-style endpoint slope: one-sided three-point estimate, clipped so the
// end piece cannot overshoot.
double endpoint_slope(double h0, double h1, double del0, double del1) {
    double d = ((2.0 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
        d = 0.0;
    else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
        d = 3.0 * del0;
    return d;
}

double interior_slope(double h_prev, double del_prev, double h_cur,
                      double del_cur) {
    if (del_prev * del_cur <= 0.0) return 0.0;
    const double w1 = 2.0 * h_cur + h_prev;
    const double w2 = h_cur + 2.0 * h_prev;
    return (w1 + w2) / (w1 / del_prev + w2 / del_cur);
}

double cubic(double x0, double h, double y0, double y1, double d0, double d1,
             double x) {
    const double t = (x - x0) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1;
}

}  // namespace

void pchip_slopes(std::span<const double> x, std::span<const double> y,
                  BoundaryMode mode, double period, std::span<double> d) {
    const std::size_t n = x.size();
    if (n < 2) throw std::invalid_argument("pchip: need at least 2 nodes");
    if (mode == BoundaryMode::clamped) {
        if (n == 2) {
            d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
            return;
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hp = x[i] - x[i - 1];
            const double hc = x[i + 1] - x[i];
            const double dp = (y[i] - y[i - 1]) / hp;
            const double dc = (y[i + 1] - y[i]) / hc;
            d[i] = interior_slope(hp, dp, hc, dc);
        }
        {
            const double h0 = x[1] - x[0], h1 = x[2] - x[1];
            const double del0 = (y[1] - y[0]) / h0, del1 = (y[2] - y[1]) / h1;
            d[0] = endpoint_slope(h0, h1, del0, del1);
        }
        {
            const double h0 = x[n - 1] - x[n - 2], h1 = x[n - 2] - x[n - 3];
            const double del0 = (y[n - 1] - y[n - 2]) / h0;
            const double del1 = (y[n - 2] - y[n - 3]) / h1;
            d[n - 1] = endpoint_slope(h0, h1, del0, del1);
        }
        return;
    }
    // periodic: x holds distinct nodes, the wrap interval closes the line
    if (n < 3)
        throw std::invalid_argument("pchip: periodic line needs >= 3 nodes");
    if (!(period > x[n - 1] - x[0]))
        throw std::invalid_argument("pchip: period must exceed grid span");
    const double h_wrap = period - (x[n - 1] - x[0]);
    const double del_wrap = (y[0] - y[n - 1]) / h_wrap;
    for (std::size_t i = 0; i < n; ++i) {
        double hp, dp;
        if (i == 0) {
            hp = h_wrap;
            dp = del_wrap;
        } else {
            hp = x[i] - x[i - 1];
            dp = (y[i] - y[i - 1]) / hp;
        }
        double hc, dc;
        if (i == n - 1) {
            hc = h_wrap;
            dc = del_wrap;
        } else {
            hc = x[i + 1] - x[i];
            dc = (y[i + 1] - y[i]) / hc;
        }
        d[i] = interior_slope(hp, dp, hc, dc);
    }
}

PchipLine::PchipLine(const std::vector<double>* grid,
                     std::vector<double> values, BoundaryMode mode,
                     double period)
    : x_(grid), y_(std::move(values)), mode_(mode), period_(period) {
    if (y_.size() != x_->size())
        throw std::invalid_argument("pchip: grid/value size mismatch");
    d_.resize(y_.size());
    refresh_slopes();
}

PchipLine::PchipLine(const std::vector<double>* grid, BoundaryMode mode,
                     double period)
    : x_(grid), y_(grid->size(), 0.0), d_(grid->size(), 0.0), mode_(mode),
      period_(period) {}

void PchipLine::set_values(std::span<const double> values) {
    if (values.size() != y_.size())
        throw std::invalid_argument("pchip: value count mismatch");
    std::copy(values.begin(), values.end(), y_.begin());
    refresh_slopes();
}

void PchipLine::refresh_slopes() {
    pchip_slopes(*x_, y_, mode_, period_, d_);
}

std::size_t PchipLine::locate(double& q) const {
    return locate_on(*x_, mode_, period_, q);
}

double PchipLine::eval_in(std::size_t i, double q) const {
    const std::vector<double>& x = *x_;
    const std::size_t n = x.size();
    if (mode_ == BoundaryMode::periodic && i == n - 1) {
        const double h = period_ - (x[n - 1] - x[0]);
        return cubic(x[n - 1], h, y_[n - 1], y_[0], d_[n - 1], d_[0], q);
    }
    return cubic(x[i], x[i + 1] - x[i], y_[i], y_[i + 1], d_[i], d_[i + 1], q);
}

double PchipLine::eval(double q) const {
    double qq = q;
    const std::size_t i = locate(qq);
    return eval_in(i, qq);
}

Interpolant Interpolant::build(std::vector<std::vector<double>> grids,
                               std::vector<double> values,
                               std::vector<BoundaryMode> modes,
                               std::vector<double> periods) {
    Interpolant out;
    out.dim_ = static_cast<int>(grids.size());
    if (out.dim_ < 1 || out.dim_ > 2)
        throw std::invalid_argument("Interpolant: dim must be 1 or 2");
    if (modes.size() != grids.size())
        throw std::invalid_argument("Interpolant: modes/grids size mismatch");
    if (periods.empty()) periods.assign(grids.size(), 0.0);
    for (std::size_t d = 0; d < grids.size(); ++d) {
        const auto& g = grids[d];
        if (g.size() < 2)
            throw std::invalid_argument("Interpolant: need >= 2 nodes per dim");
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1]))
                throw std::invalid_argument(
                    "Interpolant: grid must be strictly increasing");
    }
    out.grids_ = std::move(grids);
    out.modes_ = std::move(modes);
    out.periods_ = std::move(periods);

    if (out.dim_ == 1) {
        if (values.size() != out.grids_[0].size())
            throw std::invalid_argument("Interpolant: value count mismatch");
        out.line1d_ = PchipLine(&out.grids_[0], std::move(values),
                                out.modes_[0], out.periods_[0]);
        return out;
    }

    const std::size_t n0 = out.grids_[0].size();
    const std::size_t n1 = out.grids_[1].size();
    if (values.size() != n0 * n1)
        throw std::invalid_argument("Interpolant: value count mismatch");
    out.values_ = std::move(values);
    // slopes along dimension 0, one pass per dimension-1 grid line
    out.slopes0_.resize(n0 * n1);
    std::vector<double> line(n0), slopes(n0);
    for (std::size_t k = 0; k < n1; ++k) {
        for (std::size_t i = 0; i < n0; ++i) line[i] = out.values_[i * n1 + k];
        pchip_slopes(out.grids_[0], line, out.modes_[0], out.periods_[0],
                     slopes);
        for (std::size_t i = 0; i < n0; ++i)
            out.slopes0_[i * n1 + k] = slopes[i];
    }
    return out;
}

double Interpolant::eval1(double x) const { return line1d_.eval(x); }

void Interpolant::line_values(double x0, std::span<double> out) const {
    const auto& g0 = grids_[0];
    const std::size_t n0 = g0.size();
    const std::size_t n1 = grids_[1].size();
    // locate x0 once; every dimension-1 line shares the interval
    double q = x0;
    const std::size_t i = locate_on(g0, modes_[0], periods_[0], q);
    std::size_t ia = i, ib;
    double xa = g0[i], h;
    if (modes_[0] == BoundaryMode::periodic && i == n0 - 1) {
        ib = 0;
        h = periods_[0] - (g0[n0 - 1] - g0[0]);
    } else {
        ib = i + 1;
        h = g0[i + 1] - g0[i];
    }
    for (std::size_t k = 0; k < n1; ++k)
        out[k] = cubic(xa, h, values_[ia * n1 + k], values_[ib * n1 + k],
                       slopes0_[ia * n1 + k], slopes0_[ib * n1 + k], q);
}

PchipLine Interpolant::line_at(double x0) const {
    std::vector<double> f(grids_[1].size());
    line_values(x0, f);
    return PchipLine(&grids_[1], std::move(f), modes_[1], periods_[1]);
}

double Interpolant::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dim_)
        throw std::invalid_argument("Interpolant: point dimension mismatch");
    if (dim_ == 1) return line1d_.eval(point[0]);
    return line_at(point[0]).eval(point[1]);
}

Interpolant pchip_build(std::vector<std::vector<double>> grids,
                        std::vector<double> values,
                        std::vector<BoundaryMode> modes,
                        std::vector<double> periods) {
    return Interpolant::build(std::move(grids), std::move(values),
                              std::move(modes), std::move(periods));
}

double pchip_eval(const Interpolant& interp, std::span<const double> point) {
    return interp.eval(point);
}

}  // namespace levyexit
