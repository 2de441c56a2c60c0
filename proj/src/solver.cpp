#include "stcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stcp/rng.hpp"

namespace stcp {

namespace {

constexpr double kClamp = 1e300;

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> project_nonneg(std::vector<double> v) {
    for (double& x : v) x = std::max(x, 0.0);
    return v;
}

struct StartOutcome {
    std::vector<double> x;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
    std::vector<std::pair<int, double>> trace;
};

// One multistart: projected gradient with Armijo, warm-started over the
// smoothing schedule. Tracks the best iterate under the exact objective.
StartOutcome run_start(const SampleSpace& space, const ResidualConfig& config,
                       const SolverOptions& opts, std::vector<double> x) {
    ResidualConfig exact = config;
    exact.smoothing_mu = 0.0;

    std::vector<double> stages;
    if (config.kind == NcpKind::Min)
        stages = opts.mu_schedule.empty() ? std::vector<double>{1e-4} : opts.mu_schedule;
    else
        stages = {0.0};

    StartOutcome out;
    out.x = x;
    out.objective = erm_objective(space, x, exact).value;
    out.trace.emplace_back(0, out.objective);

    int iter_total = 0;
    for (double mu : stages) {
        ResidualConfig work = config;
        work.smoothing_mu = mu;
        double f = erm_objective(space, x, work).value;
        for (int it = 0; it < opts.max_iterations; ++it) {
            std::vector<double> g = erm_gradient(space, x, work);
            std::vector<double> step(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) step[i] = x[i] - g[i];
            step = project_nonneg(std::move(step));
            double pg = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = x[i] - step[i];
                pg += d * d;
            }
            pg = std::sqrt(pg);
            if (pg <= opts.gradient_tolerance) {
                out.converged = true;
                break;
            }
            double t = opts.armijo.initial_step;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                std::vector<double> xn(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - t * g[i];
                xn = project_nonneg(std::move(xn));
                double decrease = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) decrease += g[i] * (x[i] - xn[i]);
                double fn = erm_objective(space, xn, work).value;
                if (fn <= f - opts.armijo.sufficient_decrease * decrease) {
                    x = std::move(xn);
                    f = fn;
                    accepted = true;
                    break;
                }
                t *= opts.armijo.backtrack;
            }
            ++iter_total;
            double fe = erm_objective(space, x, exact).value;
            if (fe < out.objective) {
                out.objective = fe;
                out.x = x;
            }
            out.trace.emplace_back(iter_total, out.objective);
            if (!accepted) break;  // no further progress at this mu
            if (out.objective <= opts.objective_tolerance) {
                out.converged = true;
                break;
            }
        }
        if (out.objective <= opts.objective_tolerance) break;
    }
    out.iterations = iter_total;
    if (out.objective <= opts.objective_tolerance) out.converged = true;
    return out;
}

SolveResult solve_impl(const SampleSpace& space, const ResidualConfig& config,
                       const SolverOptions& opts) {
    opts.validate();
    const int I = space.dim();
    SolveResult best;
    bool have_best = false;
    for (int s = 0; s < opts.multistart_count; ++s) {
        std::vector<double> x0(I);
        for (int i = 0; i < I; ++i) x0[i] = rng::uniform(0.0, 2.0, opts.seed, s, i);
        StartOutcome o = run_start(space, config, opts, std::move(x0));
        // Lowest objective wins; ties go to the lowest start index.
        if (!have_best || o.objective < best.objective) {
            best.x_star = o.x;
            best.objective = o.objective;
            best.converged = o.converged;
            best.iterations = o.iterations;
            best.start_index = s;
            best.trace = o.trace;
            have_best = true;
        }
    }
    return best;
}

}  // namespace

void SolverOptions::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("solver: max_iterations must be >= 1");
    if (!(gradient_tolerance > 0.0) || !(objective_tolerance > 0.0))
        throw std::invalid_argument("solver: tolerances must be positive");
    if (!(armijo.backtrack > 0.0 && armijo.backtrack < 1.0))
        throw std::invalid_argument("solver: backtrack factor must lie in (0,1)");
    if (!(armijo.sufficient_decrease > 0.0 && armijo.sufficient_decrease < 1.0))
        throw std::invalid_argument("solver: sufficient-decrease must lie in (0,1)");
    if (multistart_count < 1) throw std::invalid_argument("solver: multistart_count must be >= 1");
    for (std::size_t k = 1; k < mu_schedule.size(); ++k)
        if (!(mu_schedule[k] < mu_schedule[k - 1]))
            throw std::invalid_argument("solver: mu schedule must be strictly decreasing");
    for (double mu : mu_schedule)
        if (!(mu > 0.0)) throw std::invalid_argument("solver: mu schedule entries must be positive");
}

SolveResult solve_erm(const SampleSpace& space, const ResidualConfig& config,
                      const SolverOptions& options) {
    return solve_impl(space, config, options);
}

SolveResult solve_ev(const SampleSpace& space, const ResidualConfig& config,
                     const SolverOptions& options) {
    return solve_impl(ev_space(space), config, options);
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(std::pow(10.0, 0.5 * k));
    return grid;
}

RayProbeReport ray_probe(const SampleSpace& space, std::span<const double> direction,
                         const std::vector<double>& lambda_grid,
                         const ResidualConfig& config) {
    if (static_cast<int>(direction.size()) != space.dim())
        throw std::invalid_argument("ray_probe: direction dimension mismatch");
    double nrm = norm2(direction);
    if (nrm == 0.0) throw std::invalid_argument("ray_probe: direction must be nonzero");
    RayProbeReport rep;
    rep.direction.assign(direction.begin(), direction.end());
    for (double& d : rep.direction) {
        if (d < 0.0) throw std::invalid_argument("ray_probe: direction must be nonnegative");
        d /= nrm;
    }
    for (std::size_t k = 1; k < lambda_grid.size(); ++k)
        if (!(lambda_grid[k] > lambda_grid[k - 1]))
            throw std::invalid_argument("ray_probe: lambda grid must be increasing");
    if (!lambda_grid.empty() && !(lambda_grid.front() > 0.0))
        throw std::invalid_argument("ray_probe: lambda grid must be positive");

    rep.value_at_one = erm_objective(space, rep.direction, config).value;
    std::vector<double> xl(rep.direction.size());
    for (double lam : lambda_grid) {
        for (std::size_t i = 0; i < xl.size(); ++i) xl[i] = lam * rep.direction[i];
        double v = erm_objective(space, xl, config).value;
        if (!std::isfinite(v) || v > kClamp) {
            v = kClamp;
            rep.overflow_clamped = true;
        }
        rep.lambdas.push_back(lam);
        rep.values.push_back(v);
    }

    const auto& v = rep.values;
    const std::size_t n = v.size();
    if (rep.overflow_clamped) {
        rep.verdict = RayVerdict::Grows;
        rep.bound_estimate = v.back();
        return rep;
    }
    if (n >= 5) {
        bool tail_increasing = true;
        for (std::size_t k = n - 4; k < n; ++k)
            if (!(v[k] > v[k - 1])) tail_increasing = false;
        double grow_floor =
            std::max(1e6 * std::numeric_limits<double>::epsilon(), 1e3 * rep.value_at_one);
        if (tail_increasing && v.back() >= grow_floor) {
            rep.verdict = RayVerdict::Grows;
            rep.bound_estimate = v.back();
            return rep;
        }
        double tail_max = 0.0, tail_min = std::numeric_limits<double>::infinity();
        for (std::size_t k = n - 5; k < n; ++k) {
            tail_max = std::max(tail_max, v[k]);
            tail_min = std::min(tail_min, v[k]);
        }
        double plateau = 0.0;
        for (std::size_t k = n - 5; k < n; ++k) plateau += v[k];
        plateau /= 5.0;
        double overall_max = *std::max_element(v.begin(), v.end());
        bool flat = tail_max == 0.0 || (tail_max - tail_min) < 0.01 * tail_max;
        bool never_blew_up = overall_max <= 2.0 * rep.value_at_one + plateau;
        if (flat && never_blew_up) {
            rep.verdict = RayVerdict::Bounded;
            rep.bound_estimate = overall_max;
            return rep;
        }
    }
    rep.verdict = RayVerdict::Inconclusive;
    rep.bound_estimate = *std::max_element(v.begin(), v.end());
    return rep;
}

namespace {

void simplex_grid_rec(int I, int m, int coord, int remaining, std::vector<int>& cur,
                      std::vector<std::vector<double>>& out) {
    if (coord == I - 1) {
        cur[coord] = remaining;
        std::vector<double> p(I);
        for (int i = 0; i < I; ++i) p[i] = static_cast<double>(cur[i]) / m;
        out.push_back(std::move(p));
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[coord] = k;
        simplex_grid_rec(I, m, coord + 1, remaining - k, cur, out);
    }
}

}  // namespace

std::vector<std::vector<double>> simplex_grid_points(int I, int resolution) {
    std::vector<std::vector<double>> out;
    std::vector<int> cur(I, 0);
    simplex_grid_rec(I, resolution, 0, resolution, cur, out);
    return out;
}

CoercivityScan coercivity_scan(const SampleSpace& space, const ResidualConfig& config,
                               const DirectionGridSpec& grid,
                               const std::vector<double>& lambda_grid) {
    const int I = space.dim();
    int res = grid.simplex_resolution;
    if (res <= 0) res = I <= 4 ? 8 : 5;
    std::vector<std::vector<double>> dirs = simplex_grid_points(I, res);
    for (int r = 0; r < grid.random_directions; ++r) {
        std::vector<double> d(I);
        double s = 0.0;
        for (int i = 0; i < I; ++i) {
            double u = rng::uniform01(grid.seed, 0x5d17, r, i);
            d[i] = -std::log(std::max(u, 0x1.0p-53));
            s += d[i];
        }
        for (double& x : d) x /= s;
        dirs.push_back(std::move(d));
    }

    CoercivityScan scan;
    bool all_grow = true;
    for (const auto& d : dirs) {
        RayProbeReport rep = ray_probe(space, d, lambda_grid, config);
        if (rep.verdict != RayVerdict::Grows) all_grow = false;
        if (rep.verdict == RayVerdict::Bounded && !scan.bounded_witness)
            scan.bounded_witness = rep.direction;
        scan.reports.push_back(std::move(rep));
    }
    if (scan.bounded_witness)
        scan.aggregate = RayVerdict::Bounded;
    else if (all_grow)
        scan.aggregate = RayVerdict::Grows;
    else
        scan.aggregate = RayVerdict::Inconclusive;
    return scan;
}

BoundednessReport boundedness_probe(const SampleSpace& space, const ResidualConfig& config,
                                    std::span<const double> witness,
                                    const std::vector<double>& lambda_grid) {
    if (static_cast<int>(witness.size()) != space.dim())
        throw std::invalid_argument("boundedness_probe: witness dimension mismatch");
    double nrm = norm2(witness);
    if (nrm == 0.0) throw std::invalid_argument("boundedness_probe: witness must be nonzero");
    for (double w : witness)
        if (w < 0.0) throw std::invalid_argument("boundedness_probe: witness must be nonnegative");

    BoundednessReport rep;
    QMoments mom = expected_q_moments(space);
    for (double v : mom.negative_part_sq) rep.g_zero += v;
    SupportSets supp = support_sets(witness);
    for (int i : supp.nonzero_indices) rep.support_moment += mom.per_component_sq[i];

    std::vector<double> xl(witness.size());
    for (double lam : lambda_grid) {
        for (std::size_t i = 0; i < xl.size(); ++i) xl[i] = lam * witness[i];
        rep.lambdas.push_back(lam);
        rep.values.push_back(erm_objective(space, xl, config).value);
    }
    rep.plateau_estimate = rep.values.back();
    if (rep.plateau_estimate <= 1e-6)
        rep.regime = "vanishing";
    else if (rep.plateau_estimate > rep.g_zero + 1e-12)
        rep.regime = "plateau_exceeds_g0";
    else
        rep.regime = "other";
    return rep;
}

}  // namespace stcp
