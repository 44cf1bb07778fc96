#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace levyexit {

enum class BoundaryMode { clamped, periodic };

// Fritsch-Carlson monotone cubic slopes for one grid line. For periodic
// lines the grid holds distinct nodes only and `period` closes the last
// interval back to the first node. Slopes never exceed 3x the adjacent
// secants, so each cubic piece stays inside its nodal value range.
void pchip_slopes(std::span<const double> x, std::span<const double> y,
                  BoundaryMode mode, double period, std::span<double> d);

// One-dimensional monotone cubic over a fixed grid, slopes precomputed.
class PchipLine {
public:
    PchipLine() = default;
    PchipLine(const std::vector<double>* grid, std::vector<double> values,
              BoundaryMode mode, double period);
    // Scratch form: allocate once, feed values per use via set_values.
    PchipLine(const std::vector<double>* grid, BoundaryMode mode,
              double period);

    void set_values(std::span<const double> values);

    double eval(double q) const;
    // Evaluation with a pre-located interval index (periodic wrap interval is
    // index size-1). Skips the binary search in hot loops.
    double eval_in(std::size_t interval, double q) const;
    std::size_t locate(double& q) const;  // may wrap/clamp q in place

    const std::vector<double>& values() const { return y_; }
    void refresh_slopes();

private:
    const std::vector<double>* x_ = nullptr;
    std::vector<double> y_, d_;
    BoundaryMode mode_ = BoundaryMode::clamped;
    double period_ = 0.0;
};

// Tensor-product monotone cubic interpolant in one or two dimensions.
// In 2D an evaluation interpolates along dimension 0 at the target
// coordinate on every dimension-1 grid line, then along dimension 1
// through the resulting values; the pass order is fixed.
class Interpolant {
public:
    static Interpolant build(std::vector<std::vector<double>> grids,
                             std::vector<double> values,
                             std::vector<BoundaryMode> modes,
                             std::vector<double> periods = {});

    int dim() const { return dim_; }
    const std::vector<double>& grid(int d) const { return grids_[d]; }
    const std::vector<double>& values() const { return values_; }

    double eval(std::span<const double> point) const;
    double eval1(double x) const;

    // 2D only: the dimension-0 pass at coordinate x0, returning the implied
    // line over the dimension-1 grid. The line then answers many x1 queries.
    PchipLine line_at(double x0) const;
    // Same pass writing the line values into a caller buffer (hot loops).
    void line_values(double x0, std::span<double> out) const;

private:
    int dim_ = 1;
    std::vector<std::vector<double>> grids_;
    std::vector<double> values_;
    std::vector<BoundaryMode> modes_;
    std::vector<double> periods_;
    std::vector<double> slopes0_;  // along dim 0; layout matches values_
    PchipLine line1d_;             // dim()==1 fast path
};

// Free-function spellings used across the library and bindings.
Interpolant pchip_build(std::vector<std::vector<double>> grids,
                        std::vector<double> values,
                        std::vector<BoundaryMode> modes,
                        std::vector<double> periods = {});
double pchip_eval(const Interpolant& interp, std::span<const double> point);

}  // namespace levyexit
