#include "levyexit/solver.hpp"

#include <algorithm>
#include <cmath>

#include "levyexit/parallel.hpp"

namespace levyexit {

namespace {

constexpr std::size_t kNodeChunk = 64;

std::size_t clamped_interval(const std::vector<double>& g, double q) {
    auto it = std::upper_bound(g.begin(), g.end(), q);
    std::size_t i = static_cast<std::size_t>(it - g.begin());
    if (i > 0) --i;
    if (i > g.size() - 2) i = g.size() - 2;
    return i;
}

struct Resolved {
    std::array<double, 2> sigma;     // per-dimension diffusion scale
    std::array<double, 2> maxdrift;  // per-dimension drift bound
    bool jumps;
    double p0, p1;
};

Resolved resolve(const SolverConfig& cfg, double dt) {
    const ProblemSpec& prob = cfg.problem;
    Resolved r{};
    double sigma_jump;
    if (cfg.sigma_override)
        sigma_jump = *cfg.sigma_override;
    else if (cfg.approx)
        sigma_jump = prob.chi * cfg.approx->sigma_eps;
    else
        throw std::invalid_argument(
            "SolverConfig: need approx params or sigma_override");
    if (!(sigma_jump > 0.0))
        throw std::invalid_argument("SolverConfig: diffusion scale must be > 0");
    if (prob.dim == 1) {
        r.sigma = {sigma_jump, 0.0};
    } else {
        r.sigma = {prob.chi, sigma_jump};  // theta: plain Brownian
    }
    if (prob.drift) {
        r.maxdrift = {std::abs(prob.drift->pe) * prob.drift->m * M_PI,
                      std::abs(prob.drift->pe) * prob.drift->n};
    } else {
        r.maxdrift = {0.0, 0.0};
    }
    r.jumps = cfg.approx.has_value() && cfg.approx->lambda > 0.0;
    if (r.jumps) {
        const PoissonWeights w = poisson_weights(cfg.approx->lambda, dt);
        r.p0 = w.p0;
        r.p1 = w.p1;
    } else {
        r.p0 = 1.0;
        r.p1 = 0.0;
    }
    return r;
}

}  // namespace

Mesh build_mesh(const SolverConfig& cfg) {
    const ProblemSpec& prob = cfg.problem;
    if (prob.dim < 1 || prob.dim > 2)
        throw std::invalid_argument("build_mesh: dim must be 1 or 2");
    if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0))
        throw std::invalid_argument("build_mesh: dt and t_max must be > 0");
    if (cfg.m_hermite < 2)
        throw std::invalid_argument("build_mesh: m_hermite >= 2");
    for (int d = 0; d < prob.dim; ++d)
        if (cfg.nodes[d] < 4)
            throw std::invalid_argument("build_mesh: nodes_per_dim >= 4");

    Mesh mesh;
    mesh.dim = prob.dim;
    mesh.n_steps = std::max<int>(1, std::llround(cfg.t_max / cfg.dt));
    mesh.dt = cfg.t_max / mesh.n_steps;
    mesh.t_max = cfg.t_max;
    mesh.boundary = prob.boundary;

    if (cfg.h_jump > 0.0 && cfg.h_jump > std::sqrt(mesh.dt) * (1.0 + 1e-12))
        throw std::invalid_argument("build_mesh: h_jump must be <= sqrt(dt)");

    const Resolved res = resolve(cfg, mesh.dt);
    const double maxe = hermite_rule(cfg.m_hermite).max_abscissa();
    for (int d = 0; d < prob.dim; ++d) {
        const Interval iv = prob.domain[d];
        const int n = cfg.nodes[d];
        if (prob.boundary[d] == Boundary::periodic) {
            mesh.period[d] = iv.hi - iv.lo;
            mesh.offset[d] = 0.0;
            const int distinct = n - 1;  // first and last node identified
            if (distinct < 3)
                throw std::invalid_argument(
                    "build_mesh: periodic dimension needs >= 4 nodes");
            auto& g = mesh.grids[d];
            g.resize(distinct);
            const double h = mesh.period[d] / distinct;
            for (int i = 0; i < distinct; ++i) g[i] = iv.lo + i * h;
        } else {
            const double radius =
                res.sigma[d] * std::sqrt(2.0 * mesh.dt) * maxe +
                res.maxdrift[d] * mesh.dt;
            mesh.offset[d] = radius;
            const double width = iv.hi - iv.lo;
            if (!(radius < 0.5 * width))
                throw NumericalError(
                    "build_mesh: boundary offset exceeds half the domain "
                    "width; reduce dt");
            auto& g = mesh.grids[d];
            g.resize(n);
            g.front() = iv.lo;
            g.back() = iv.hi;
            const int inner = n - 2;
            const double a = iv.lo + radius, b = iv.hi - radius;
            for (int i = 0; i < inner; ++i)
                g[i + 1] =
                    (inner == 1) ? 0.5 * (a + b)
                                 : a + (b - a) * i / static_cast<double>(inner - 1);
        }
    }
    return mesh;
}

ProbField terminal_field(const Mesh& mesh) {
    ProbField f;
    f.values.assign(mesh.num_nodes(), 0.0);
    if (mesh.dim == 1) {
        if (mesh.boundary[0] == Boundary::absorbing) {
            f.values.front() = 1.0;
            f.values.back() = 1.0;
        }
        return f;
    }
    const std::size_t n0 = mesh.size(0), n1 = mesh.size(1);
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
        if (mesh.boundary[1] == Boundary::absorbing) {
            f.values[i0 * n1] = 1.0;
            f.values[i0 * n1 + n1 - 1] = 1.0;
        }
    }
    return f;
}

namespace {

// Everything the per-step update needs, precomputed once per solve: the
// quadrature abscissae are time-independent because the drift is autonomous.
struct Plan {
    Mesh mesh;
    HermiteRule herm;
    Resolved res;
    double jump_scale = 0.0;
    double h = 0.0;
    std::optional<JumpLaw> law;
    int threads = 1;

    struct Node {
        std::size_t flat;
        // dim 0 evaluation coordinates: 1D Hermite points; 2D theta values
        std::vector<double> pts0;
        std::vector<std::size_t> pts0_iv;  // 1D interval hints
        double theta_jump = 0.0;           // 2D: drift-shifted theta
        std::vector<double> r_pts;         // 2D Hermite r coordinates
        std::vector<std::size_t> r_iv;
        std::vector<double> jump_landing;
        std::vector<std::size_t> jump_iv;
        std::vector<double> jump_w;
        double ext = 0.0;
    };
    std::vector<Node> nodes;
};

Plan make_plan(const SolverConfig& cfg) {
    Plan plan;
    plan.mesh = build_mesh(cfg);
    plan.herm = hermite_rule(cfg.m_hermite);
    plan.res = resolve(cfg, plan.mesh.dt);
    plan.threads = resolve_threads(cfg.threads);
    plan.h = cfg.h_jump > 0.0 ? cfg.h_jump : std::sqrt(plan.mesh.dt);
    plan.jump_scale = cfg.problem.chi;
    if (plan.res.jumps) plan.law = JumpLaw{*cfg.approx};

    const Mesh& mesh = plan.mesh;
    const ProblemSpec& prob = cfg.problem;
    const int m = plan.herm.m;
    const double sq2dt = std::sqrt(2.0 * mesh.dt);

    auto check_inside = [&](double q, int d) {
        const Interval iv = prob.domain[d];
        const double tol = 1e-12 * std::max(1.0, iv.hi - iv.lo);
        if (q < iv.lo - tol || q > iv.hi + tol)
            throw NumericalError(
                "backward step: quadrature abscissa left the domain");
        return std::clamp(q, iv.lo, iv.hi);
    };

    if (mesh.dim == 1) {
        const auto& g = mesh.grids[0];
        const std::size_t n = g.size();
        plan.nodes.resize(n - 2);
        parallel_for(plan.nodes.size(), plan.threads, [&](std::size_t k) {
            Plan::Node& node = plan.nodes[k];
            const std::size_t i = k + 1;
            const double x = g[i];
            node.flat = i;
            node.pts0.resize(m);
            node.pts0_iv.resize(m);
            for (int j = 0; j < m; ++j) {
                const double q = check_inside(
                    x + plan.res.sigma[0] * sq2dt * plan.herm.nodes[j], 0);
                node.pts0[j] = q;
                node.pts0_iv[j] = clamped_interval(g, q);
            }
            if (plan.law) {
                const JumpRule rule = jump_rule_for_point(
                    *plan.law, x, plan.jump_scale, prob.domain[0].lo,
                    prob.domain[0].hi, plan.h);
                node.ext = rule.exterior_mass;
                node.jump_w = rule.weights;
                node.jump_landing.resize(rule.abscissae.size());
                node.jump_iv.resize(rule.abscissae.size());
                for (std::size_t l = 0; l < rule.abscissae.size(); ++l) {
                    const double q =
                        std::clamp(x + plan.jump_scale * rule.abscissae[l],
                                   prob.domain[0].lo, prob.domain[0].hi);
                    node.jump_landing[l] = q;
                    node.jump_iv[l] = clamped_interval(g, q);
                }
            }
        });
        return plan;
    }

    const auto& g0 = mesh.grids[0];
    const auto& g1 = mesh.grids[1];
    const std::size_t n0 = g0.size(), n1 = g1.size();
    plan.nodes.resize(n0 * (n1 - 2));
    parallel_for(plan.nodes.size(), plan.threads, [&](std::size_t k) {
        Plan::Node& node = plan.nodes[k];
        const std::size_t i0 = k / (n1 - 2);
        const std::size_t i1 = k % (n1 - 2) + 1;
        const double theta = g0[i0];
        const double r = g1[i1];
        node.flat = i0 * n1 + i1;
        double b_theta = 0.0, b_r = 0.0;
        if (prob.drift) {
            const Velocity v = velocity(prob, theta, r);
            b_theta = prob.drift->pe * v.v_theta;
            b_r = prob.drift->pe * v.v_r;
        }
        const double theta_base = theta + b_theta * mesh.dt;
        const double r_base = check_inside(r + b_r * mesh.dt, 1);
        node.theta_jump = theta_base;  // periodic eval wraps on its own
        node.pts0.resize(m);
        node.r_pts.resize(m);
        node.r_iv.resize(m);
        for (int j = 0; j < m; ++j) {
            node.pts0[j] =
                theta_base + plan.res.sigma[0] * sq2dt * plan.herm.nodes[j];
            const double q = check_inside(
                r_base + plan.res.sigma[1] * sq2dt * plan.herm.nodes[j], 1);
            node.r_pts[j] = q;
            node.r_iv[j] = clamped_interval(g1, q);
        }
        if (plan.law) {
            const JumpRule rule = jump_rule_for_point(
                *plan.law, r_base, plan.jump_scale, prob.domain[1].lo,
                prob.domain[1].hi, plan.h);
            node.ext = rule.exterior_mass;
            node.jump_w = rule.weights;
            node.jump_landing.resize(rule.abscissae.size());
            node.jump_iv.resize(rule.abscissae.size());
            for (std::size_t l = 0; l < rule.abscissae.size(); ++l) {
                const double q =
                    std::clamp(r_base + plan.jump_scale * rule.abscissae[l],
                               prob.domain[1].lo, prob.domain[1].hi);
                node.jump_landing[l] = q;
                node.jump_iv[l] = clamped_interval(g1, q);
            }
        }
    });
    return plan;
}

void step_with_plan(const Plan& plan, const std::vector<double>& in,
                    std::vector<double>& out) {
    const Mesh& mesh = plan.mesh;
    const int m = plan.herm.m;
    const auto& w = plan.herm.weights;

    if (mesh.dim == 1) {
        out = in;  // boundary nodes carry over (pinned to 1)
        const PchipLine line(&mesh.grids[0], in, BoundaryMode::clamped, 0.0);
        const std::size_t chunks =
            (plan.nodes.size() + kNodeChunk - 1) / kNodeChunk;
        parallel_for(chunks, plan.threads, [&](std::size_t c) {
            const std::size_t lo = c * kNodeChunk;
            const std::size_t hi =
                std::min(plan.nodes.size(), lo + kNodeChunk);
            for (std::size_t k = lo; k < hi; ++k) {
                const Plan::Node& node = plan.nodes[k];
                double brown = 0.0;
                for (int j = 0; j < m; ++j)
                    brown +=
                        w[j] * line.eval_in(node.pts0_iv[j], node.pts0[j]);
                double u = plan.res.p0 * brown;
                if (plan.res.jumps) {
                    double jump = node.ext;
                    for (std::size_t l = 0; l < node.jump_w.size(); ++l)
                        jump += node.jump_w[l] *
                                line.eval_in(node.jump_iv[l],
                                             node.jump_landing[l]);
                    u += plan.res.p1 * jump;
                }
                out[node.flat] = u;
            }
        });
        return;
    }

    const std::size_t n1 = mesh.size(1);
    out = in;
    const Interpolant interp = Interpolant::build(
        {mesh.grids[0], mesh.grids[1]}, in,
        {BoundaryMode::periodic, BoundaryMode::clamped},
        {mesh.period[0], 0.0});
    const std::size_t chunks =
        (plan.nodes.size() + kNodeChunk - 1) / kNodeChunk;
    parallel_for(chunks, plan.threads, [&](std::size_t c) {
        std::vector<double> fbuf(n1);
        PchipLine rline(&mesh.grids[1], BoundaryMode::clamped, 0.0);
        const std::size_t lo = c * kNodeChunk;
        const std::size_t hi = std::min(plan.nodes.size(), lo + kNodeChunk);
        for (std::size_t k = lo; k < hi; ++k) {
            const Plan::Node& node = plan.nodes[k];
            double brown = 0.0;
            for (int j0 = 0; j0 < m; ++j0) {
                interp.line_values(node.pts0[j0], fbuf);
                rline.set_values(fbuf);
                double inner = 0.0;
                for (int j1 = 0; j1 < m; ++j1)
                    inner += w[j1] *
                             rline.eval_in(node.r_iv[j1], node.r_pts[j1]);
                brown += w[j0] * inner;
            }
            double u = plan.res.p0 * brown;
            if (plan.res.jumps) {
                interp.line_values(node.theta_jump, fbuf);
                rline.set_values(fbuf);
                double jump = node.ext;
                for (std::size_t l = 0; l < node.jump_w.size(); ++l)
                    jump += node.jump_w[l] *
                            rline.eval_in(node.jump_iv[l],
                                          node.jump_landing[l]);
                u += plan.res.p1 * jump;
            }
            out[node.flat] = u;
        }
    });
}

}  // namespace

ProbField backward_step(const ProbField& next, const SolverConfig& cfg) {
    const Plan plan = make_plan(cfg);
    if (next.values.size() != plan.mesh.num_nodes())
        throw std::invalid_argument("backward_step: field size mismatch");
    ProbField out;
    step_with_plan(plan, next.values, out.values);
    return out;
}

SolveResult solve(const SolverConfig& cfg) {
    const Plan plan = make_plan(cfg);
    const Mesh& mesh = plan.mesh;

    // map requested horizons to backward indices
    std::vector<std::pair<int, double>> snaps;
    for (double t : cfg.snapshot_times) {
        const double steps = t / mesh.dt;
        const int s = static_cast<int>(std::llround(steps));
        if (s < 1 || s > mesh.n_steps || std::abs(steps - s) > 1e-6)
            throw std::invalid_argument(
                "solve: snapshot times must be multiples of dt in (0, t_max]");
        snaps.emplace_back(s, t);
    }

    SolveResult result;
    result.mesh = mesh;
    ProbField u = terminal_field(mesh);
    std::vector<double> next;
    for (int n = mesh.n_steps - 1; n >= 0; --n) {
        step_with_plan(plan, u.values, next);
        u.values.swap(next);
        const int horizon_steps = mesh.n_steps - n;
        for (const auto& [s, t] : snaps)
            if (s == horizon_steps) result.snapshots.emplace_back(t, u);
    }
    result.u0 = std::move(u);
    return result;
}

double probe_field(const Mesh& mesh, const ProbField& field,
                   std::array<double, 2> point) {
    if (mesh.dim == 1) {
        const Interpolant interp = Interpolant::build(
            {mesh.grids[0]}, field.values,
            {mesh.boundary[0] == Boundary::periodic ? BoundaryMode::periodic
                                                    : BoundaryMode::clamped},
            {mesh.period[0]});
        return interp.eval1(point[0]);
    }
    const Interpolant interp = Interpolant::build(
        {mesh.grids[0], mesh.grids[1]}, field.values,
        {mesh.boundary[0] == Boundary::periodic ? BoundaryMode::periodic
                                                : BoundaryMode::clamped,
         mesh.boundary[1] == Boundary::periodic ? BoundaryMode::periodic
                                                : BoundaryMode::clamped},
        {mesh.period[0], mesh.period[1]});
    return interp.eval(std::span<const double>(point.data(), 2));
}

}  // namespace levyexit
