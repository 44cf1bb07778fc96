#include "levyexit/forward.hpp"

#include <cmath>
#include <stdexcept>

#include "levyexit/parallel.hpp"
#include "levyexit/stable.hpp"

namespace levyexit {

namespace {

constexpr std::size_t kBlock = 2048;  // trajectories per reduction block

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("SimConfig: dt > 0");
    if (!(cfg.t_max > 0.0)) throw std::invalid_argument("SimConfig: t_max > 0");
    if (cfg.n_samples < 1)
        throw std::invalid_argument("SimConfig: n_samples >= 1");
    if (!(cfg.chi > 0.0)) throw std::invalid_argument("SimConfig: chi > 0");
}

// One free-space increment of the driving process over dt, in process units
// (callers scale by chi). clip_exact bounds the exact-path increment
// magnitude at eps_out.
double increment(const SimConfig& cfg, const ApproxParams& ap,
                 const JumpLaw& law, bool clip_exact, Rng& rng) {
    if (cfg.kind == ProcessKind::exact_stable) {
        double inc =
            std::pow(cfg.dt, 1.0 / ap.alpha) * sample_sas_one(ap.alpha, rng);
        if (clip_exact) {
            if (inc > ap.eps_out) inc = ap.eps_out;
            if (inc < -ap.eps_out) inc = -ap.eps_out;
        }
        return inc;
    }
    double inc = ap.sigma_eps * std::sqrt(cfg.dt) * rng.normal();
    if (ap.lambda > 0.0) {
        const int jumps = rng.poisson(ap.lambda * cfg.dt);
        for (int j = 0; j < jumps; ++j) inc += sample_jump(law, rng);
    }
    return inc;
}

std::vector<double> recording_times(double dt, double t_max) {
    // 30 per decade starting from max(dt, t_max/1000)
    const double t_lo = std::max(dt, 1e-3 * t_max);
    std::vector<double> out;
    for (int k = 0;; ++k) {
        const double t = t_lo * std::pow(10.0, k / 30.0);
        if (t > t_max * (1.0 + 1e-12)) break;
        out.push_back(std::min(t, t_max));
    }
    return out;
}

}  // namespace

std::vector<MsdPoint> simulate_msd(const SimConfig& cfg,
                                   const ApproxParams& approx, int threads) {
    validate(cfg);
    const JumpLaw law{approx};
    const std::vector<double> times = recording_times(cfg.dt, cfg.t_max);
    const std::size_t blocks_per_time =
        (cfg.n_samples + kBlock - 1) / kBlock;
    struct Partial {
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::vector<MsdPoint> table(times.size());
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const std::size_t steps =
            std::max<std::size_t>(1, std::llround(times[ti] / cfg.dt));
        const double t_actual = static_cast<double>(steps) * cfg.dt;
        const std::uint64_t time_seed = derive_seed(cfg.seed, ti);
        auto partials = parallel_map<Partial>(
            blocks_per_time, threads, [&](std::size_t b) {
                Partial p;
                Rng rng(derive_seed(time_seed, b));
                const std::size_t begin = b * kBlock;
                const std::size_t end =
                    std::min(cfg.n_samples, begin + kBlock);
                for (std::size_t i = begin; i < end; ++i) {
                    double x = 0.0;
                    for (std::size_t k = 0; k < steps; ++k)
                        x += cfg.chi * increment(cfg, approx, law, true, rng);
                    p.sum += x * x;
                    ++p.count;
                }
                return p;
            });
        double sum = 0.0;
        for (const auto& p : partials) sum += p.sum;
        table[ti] = {t_actual, sum / static_cast<double>(cfg.n_samples)};
    }
    return table;
}

double fit_loglog_slope(const std::vector<MsdPoint>& table, double t_lo,
                        double t_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& p : table) {
        if (p.t < t_lo * (1.0 - 1e-9) || p.t > t_hi * (1.0 + 1e-9)) continue;
        if (!(p.msd > 0.0)) continue;
        const double lx = std::log(p.t), ly = std::log(p.msd);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_loglog_slope: too few points");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

std::vector<double> simulate_terminal(const SimConfig& cfg,
                                      const ApproxParams& approx,
                                      int threads) {
    validate(cfg);
    const JumpLaw law{approx};
    const std::size_t steps =
        std::max<std::size_t>(1, std::llround(cfg.t_max / cfg.dt));
    const std::size_t blocks = (cfg.n_samples + kBlock - 1) / kBlock;
    std::vector<double> out(cfg.n_samples);
    parallel_for(blocks, threads, [&](std::size_t b) {
        Rng rng(derive_seed(cfg.seed, b));
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(cfg.n_samples, begin + kBlock);
        for (std::size_t i = begin; i < end; ++i) {
            double x = 0.0;
            for (std::size_t k = 0; k < steps; ++k)
                x += cfg.chi * increment(cfg, approx, law, false, rng);
            out[i] = x;
        }
    });
    return out;
}

std::vector<LogPdfBin> empirical_logpdf(const SimConfig& cfg,
                                        const ApproxParams& approx,
                                        double range, int bins, int threads) {
    if (!(range > 0.0) || bins < 1)
        throw std::invalid_argument("empirical_logpdf: bad histogram shape");
    const std::vector<double> samples = simulate_terminal(cfg, approx, threads);
    std::vector<std::size_t> counts(bins, 0);
    const double width = 2.0 * range / bins;
    for (double x : samples) {
        if (x < -range || x >= range) continue;
        const int b = static_cast<int>((x + range) / width);
        if (b >= 0 && b < bins) ++counts[b];
    }
    std::vector<LogPdfBin> out(bins);
    const double norm = static_cast<double>(cfg.n_samples) * width;
    for (int b = 0; b < bins; ++b) {
        out[b].center = -range + (b + 0.5) * width;
        if (counts[b] > 0)
            out[b].log_density = std::log(static_cast<double>(counts[b]) / norm);
    }
    return out;
}

namespace {

struct StepState {
    std::array<double, 2> x;
    bool exited = false;
    std::size_t exit_step = 0;
};

// Advances one trajectory to exit or step limit. Positions update by the
// full composited Euler step (drift + Brownian + jumps), then the exit test
// runs against the open domain.
StepState run_trajectory(const SimConfig& cfg, const ProblemSpec& prob,
                         const ApproxParams& ap, const JumpLaw& law,
                         std::array<double, 2> start, std::size_t max_steps,
                         Rng& rng) {
    StepState s{start, false, 0};
    // a start outside the open domain has already exited
    for (int d = 0; d < prob.dim; ++d) {
        if (prob.boundary[d] == Boundary::absorbing &&
            (s.x[d] <= prob.domain[d].lo || s.x[d] >= prob.domain[d].hi)) {
            s.exited = true;
            return s;
        }
    }
    const int jd = prob.jump_dim();
    const double sqdt = std::sqrt(cfg.dt);
    for (std::size_t k = 0; k < max_steps; ++k) {
        double b_theta = 0.0, b_r = 0.0;
        if (prob.drift) {
            const Velocity v = velocity(prob, s.x[0], s.x[1]);
            b_theta = prob.drift->pe * v.v_theta;
            b_r = prob.drift->pe * v.v_r;
        }
        if (prob.dim == 2) {
            // theta: plain Brownian; r: the approximated stable process
            s.x[0] += b_theta * cfg.dt + prob.chi * sqdt * rng.normal();
            s.x[1] += b_r * cfg.dt +
                      prob.chi * increment(cfg, ap, law, false, rng);
        } else {
            s.x[jd] += prob.chi * increment(cfg, ap, law, false, rng);
        }
        bool out = false;
        for (int d = 0; d < prob.dim; ++d) {
            if (prob.boundary[d] == Boundary::periodic) {
                const double period = prob.domain[d].hi - prob.domain[d].lo;
                double rel = std::fmod(s.x[d] - prob.domain[d].lo, period);
                if (rel < 0.0) rel += period;
                s.x[d] = prob.domain[d].lo + rel;
            } else if (s.x[d] <= prob.domain[d].lo ||
                       s.x[d] >= prob.domain[d].hi) {
                out = true;
            }
        }
        if (out) {
            s.exited = true;
            s.exit_step = k + 1;
            return s;
        }
    }
    return s;
}

}  // namespace

ExitRecord simulate_exit_one(const SimConfig& cfg, const ProblemSpec& problem,
                             const ApproxParams& approx,
                             std::array<double, 2> start, Rng& rng) {
    validate(cfg);
    const JumpLaw law{approx};
    const std::size_t steps =
        std::max<std::size_t>(1, std::llround(cfg.t_max / cfg.dt));
    const StepState s =
        run_trajectory(cfg, problem, approx, law, start, steps, rng);
    ExitRecord rec;
    rec.exited = s.exited;
    rec.final_position = s.x;
    if (s.exited)
        rec.exit_time = static_cast<double>(s.exit_step) * cfg.dt;
    return rec;
}

std::vector<std::vector<double>> dmc_exit(
    const SimConfig& cfg, const ProblemSpec& problem,
    const ApproxParams& approx,
    const std::vector<std::array<double, 2>>& starts,
    const std::vector<double>& times, int threads) {
    validate(cfg);
    const JumpLaw law{approx};
    const std::size_t max_steps =
        std::max<std::size_t>(1, std::llround(cfg.t_max / cfg.dt));
    std::vector<std::size_t> time_steps(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || times[i] > cfg.t_max * (1.0 + 1e-9))
            throw std::invalid_argument("dmc_exit: time outside [0, t_max]");
        time_steps[i] = static_cast<std::size_t>(
            std::llround(times[i] / cfg.dt));
    }
    const std::size_t blocks_per_start =
        (cfg.n_samples + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> probs(
        starts.size(), std::vector<double>(times.size(), 0.0));
    using Counts = std::vector<std::int64_t>;
    for (std::size_t si = 0; si < starts.size(); ++si) {
        const std::uint64_t start_seed = derive_seed(cfg.seed, si);
        auto partials = parallel_map<Counts>(
            blocks_per_start, threads, [&](std::size_t b) {
                Counts c(times.size(), 0);
                Rng rng(derive_seed(start_seed, b));
                const std::size_t begin = b * kBlock;
                const std::size_t end =
                    std::min(cfg.n_samples, begin + kBlock);
                for (std::size_t i = begin; i < end; ++i) {
                    const StepState s = run_trajectory(
                        cfg, problem, approx, law, starts[si], max_steps, rng);
                    if (!s.exited) continue;
                    for (std::size_t ti = 0; ti < times.size(); ++ti)
                        if (s.exit_step <= time_steps[ti]) ++c[ti];
                }
                return c;
            });
        for (std::size_t ti = 0; ti < times.size(); ++ti) {
            std::int64_t total = 0;
            for (const auto& c : partials) total += c[ti];
            probs[si][ti] =
                static_cast<double>(total) / static_cast<double>(cfg.n_samples);
        }
    }
    return probs;
}

}  // namespace levyexit
