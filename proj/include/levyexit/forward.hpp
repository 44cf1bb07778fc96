#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "levyexit/gauss_approx.hpp"
#include "levyexit/problems.hpp"
#include "levyexit/rng.hpp"

namespace levyexit {

enum class ProcessKind { exact_stable, gaussian_approx };

struct SimConfig {
    double dt;
    double t_max;
    std::size_t n_samples;
    std::uint64_t seed;
    double chi = 1.0;
    ProcessKind kind = ProcessKind::gaussian_approx;
};

struct MsdPoint {
    double t;
    double msd;
};

// Free-space mean-squared displacement <x^2(t)> on a geometric recording
// grid (30 points per decade up to t_max). Each recorded time is estimated
// from an independent ensemble of n_samples trajectories, which keeps the
// fit points uncorrelated under the heavy-tailed sample noise. Exact-stable
// paths clip each increment's magnitude at eps_out, mirroring the truncated
// second moment of the approximated process.
std::vector<MsdPoint> simulate_msd(const SimConfig& cfg,
                                   const ApproxParams& approx,
                                   int threads = 0);

// Least-squares slope of log(msd) against log(t) over [t_lo, t_hi].
double fit_loglog_slope(const std::vector<MsdPoint>& table, double t_lo,
                        double t_hi);

// n samples of the process at time t_max (free space, start at 0).
std::vector<double> simulate_terminal(const SimConfig& cfg,
                                      const ApproxParams& approx,
                                      int threads = 0);

struct LogPdfBin {
    double center;
    std::optional<double> log_density;  // empty bin -> no value, not -inf
};

// Normalized log-histogram of X at t_max over [-range, range].
std::vector<LogPdfBin> empirical_logpdf(const SimConfig& cfg,
                                        const ApproxParams& approx,
                                        double range, int bins,
                                        int threads = 0);

struct ExitRecord {
    bool exited;
    std::optional<double> exit_time;
    std::array<double, 2> final_position;
};

// One trajectory of the exit problem; exit is declared at the first step end
// at which the position leaves the open domain (jump landings in the
// exterior count), absorbing dimensions stop the path, periodic ones wrap.
ExitRecord simulate_exit_one(const SimConfig& cfg, const ProblemSpec& problem,
                             const ApproxParams& approx,
                             std::array<double, 2> start, Rng& rng);

// Direct Monte Carlo exit probability estimates: for each start point the
// fraction of n_samples trajectories with first exit at or before each
// requested time. Trajectories parallelize in fixed-size blocks with
// per-block seeds, so results do not depend on the thread count.
std::vector<std::vector<double>> dmc_exit(
    const SimConfig& cfg, const ProblemSpec& problem,
    const ApproxParams& approx,
    const std::vector<std::array<double, 2>>& starts,
    const std::vector<double>& times, int threads = 0);

}  // namespace levyexit
