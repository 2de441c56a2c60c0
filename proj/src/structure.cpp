#include "stcp/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "stcp/ncp.hpp"
#include "stcp/objective.hpp"
#include "stcp/rng.hpp"

namespace stcp {

namespace {

int auto_resolution(int I) { return I <= 3 ? 20 : (I == 4 ? 10 : 8); }

SampleSpace zero_q_space(const SampleSpace& space) {
    std::vector<Realization> rs = space.realizations();
    for (auto& r : rs) std::fill(r.q.begin(), r.q.end(), 0.0);
    return SampleSpace(std::move(rs), space.provenance());
}

std::vector<std::vector<double>> seed_points(int I, const CheckOptions& opts, int res) {
    std::vector<std::vector<double>> pts = simplex_grid_points(I, res);
    for (int r = 0; r < opts.random_starts; ++r) {
        std::vector<double> p(I);
        double s = 0.0;
        for (int i = 0; i < I; ++i) {
            double u = rng::uniform01(opts.seed, 0x51AD, r, i);
            p[i] = -std::log(std::max(u, 0x1.0p-53));
            s += p[i];
        }
        for (double& x : p) x /= s;
        pts.push_back(std::move(p));
    }
    return pts;
}

// Projected-gradient descent on the smoothed merit, renormalized back to
// the simplex after every step.
std::vector<double> polish_point(const SampleSpace& space0, std::vector<double> x,
                                 const CheckOptions& opts) {
    for (double mu : {1e-2, 1e-3, 1e-4, 1e-5}) {
        ResidualConfig cfg{NcpKind::Min, mu};
        double f = erm_objective(space0, x, cfg).value;
        for (int it = 0; it < opts.polish_iterations; ++it) {
            std::vector<double> g = erm_gradient(space0, x, cfg);
            double gg = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
            if (gg == 0.0) break;
            bool accepted = false;
            double t = 1.0;
            for (int bt = 0; bt < 45; ++bt) {
                std::vector<double> xn(x.size());
                double s = 0.0;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    xn[i] = std::max(x[i] - t * g[i], 0.0);
                    s += xn[i];
                }
                if (s > 1e-12) {
                    for (double& v : xn) v /= s;
                    double fn = erm_objective(space0, xn, cfg).value;
                    if (fn < f - 1e-4 * t * gg || fn < f * (1.0 - 1e-12)) {
                        x = std::move(xn);
                        f = fn;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if (!accepted) break;
        }
    }
    return x;
}

struct ZeroList {
    std::vector<std::vector<double>> points;
    void add(const std::vector<double>& p) {
        for (const auto& q : points) {
            double d = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) d += (p[i] - q[i]) * (p[i] - q[i]);
            if (std::sqrt(d) < 1e-5) return;
        }
        points.push_back(p);
    }
};

CheckReport check_core(const SampleSpace& space0, const CheckOptions& opts) {
    const int I = space0.dim();
    int res = opts.grid_resolution > 0 ? opts.grid_resolution : auto_resolution(I);
    std::vector<std::vector<double>> pts = seed_points(I, opts, res);

    std::vector<double> merits(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) merits[k] = structure_merit(space0, pts[k]);

    ZeroList zeros;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_point = pts.front();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (merits[k] < best) {
            best = merits[k];
            best_point = pts[k];
        }
        if (merits[k] <= opts.not_r0_tol) zeros.add(pts[k]);
    }

    // Polish the most promising non-certified points, best merit first.
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return merits[a] < merits[b]; });
    int polished = 0;
    for (std::size_t k : order) {
        if (polished >= opts.polish_budget) break;
        if (merits[k] <= opts.not_r0_tol) continue;
        ++polished;
        std::vector<double> p = polish_point(space0, pts[k], opts);
        double m = structure_merit(space0, p);
        if (m < best) {
            best = m;
            best_point = p;
        }
        if (m <= opts.not_r0_tol) zeros.add(p);
    }

    CheckReport rep;
    rep.grid = {res, opts.random_starts, opts.not_r0_tol, opts.is_r0_tol};
    rep.all_witnesses = zeros.points;
    rep.certificate_residual = best;
    if (best <= opts.not_r0_tol) {
        rep.verdict = R0Verdict::NotR0;
        rep.witness = zeros.points.empty() ? best_point : zeros.points.front();
        rep.certificate_residual =
            structure_merit(space0, rep.witness.value());
    } else if (best > opts.is_r0_tol) {
        rep.verdict = R0Verdict::IsR0;
    } else {
        rep.verdict = R0Verdict::Inconclusive;
    }
    return rep;
}

}  // namespace

double structure_merit(const SampleSpace& space, std::span<const double> x) {
    double total = 0.0;
    for (const auto& r : space.realizations()) {
        std::vector<double> y = r.tensor.contract_to_vector(x);
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double m = std::min(x[i], y[i]);
            sq += m * m;
        }
        total += r.weight * sq;
    }
    return total;
}

CheckReport check_r0(const Tensor& A, const CheckOptions& opts) {
    SampleSpace single({Realization{1.0, A, std::vector<double>(A.dim(), 0.0)}});
    return check_core(single, opts);
}

CheckReport check_stochastic_r0(const SampleSpace& space, const CheckOptions& opts) {
    return check_core(zero_q_space(space), opts);
}

Theorem41Conditions check_theorem41_conditions(const SampleSpace& space,
                                               std::span<const double> x, double tol) {
    double nrm = 0.0;
    for (double v : x) nrm += v * v;
    if (nrm == 0.0) throw std::invalid_argument("check_theorem41_conditions: x must be nonzero");
    SupportSets supp = support_sets(x);
    Theorem41Conditions out;
    for (const auto& r : space.realizations()) {
        std::vector<double> y = r.tensor.contract_to_vector(x);
        for (int i : supp.nonzero_indices)
            if (std::fabs(y[i]) > tol) out.cond_a = true;
        for (int i : supp.zero_indices)
            if (y[i] < -tol) out.cond_b = true;
        if (out.cond_a && out.cond_b) break;
    }
    return out;
}

namespace {

double xi_violation(const Tensor& A, std::span<const double> x) {
    SupportSets supp = support_sets(x);
    std::vector<double> y = A.contract_to_vector(x);
    double v = 0.0;
    for (int i : supp.nonzero_indices) v = std::max(v, std::fabs(y[i]));
    for (int i : supp.zero_indices) v = std::max(v, std::max(-y[i], 0.0));
    return v;
}

}  // namespace

std::vector<XiPoint> find_xi_points(const Tensor& A, const CheckOptions& opts, double tol) {
    SampleSpace single({Realization{1.0, A, std::vector<double>(A.dim(), 0.0)}});
    const int I = A.dim();
    int res = opts.grid_resolution > 0 ? opts.grid_resolution : auto_resolution(I);
    std::vector<std::vector<double>> pts = seed_points(I, opts, res);

    std::vector<double> merits(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) merits[k] = structure_merit(single, pts[k]);
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return merits[a] < merits[b]; });
    int polished = 0;
    for (std::size_t k : order) {
        if (polished >= opts.polish_budget) break;
        if (merits[k] <= opts.not_r0_tol) continue;
        ++polished;
        pts.push_back(polish_point(single, pts[k], opts));
    }

    ZeroList kept;
    std::vector<XiPoint> out;
    for (const auto& p : pts) {
        double v = xi_violation(A, p);
        if (v <= tol) {
            std::size_t before = kept.points.size();
            kept.add(p);
            if (kept.points.size() > before) out.push_back({p, v});
        }
    }
    return out;
}

std::vector<Prop42Record> check_prop42_conditions(const SampleSpace& perturbation_space,
                                                  const std::vector<XiPoint>& xi_points,
                                                  const std::vector<double>& b_grid) {
    if (expectation_tensor(perturbation_space).frobenius_norm() > 1e-10)
        throw std::invalid_argument("check_prop42_conditions: perturbation space must have zero mean");
    std::vector<Prop42Record> out;
    for (const auto& xp : xi_points) {
        SupportSets supp = support_sets(xp.x);
        Prop42Record rec;
        std::vector<double> second_moment(perturbation_space.dim(), 0.0);
        std::vector<std::vector<double>> contractions;
        contractions.reserve(perturbation_space.realizations().size());
        for (const auto& r : perturbation_space.realizations()) {
            std::vector<double> y = r.tensor.contract_to_vector(xp.x);
            for (int i = 0; i < perturbation_space.dim(); ++i)
                second_moment[i] += r.weight * y[i] * y[i];
            contractions.push_back(std::move(y));
        }
        for (int i : supp.nonzero_indices)
            if (second_moment[i] > 1e-10) rec.cond1 = true;
        rec.cond2 = !b_grid.empty();
        for (double b : b_grid) {
            double weight_below = 0.0;
            std::size_t k = 0;
            for (const auto& r : perturbation_space.realizations()) {
                for (int i : supp.zero_indices)
                    if (contractions[k][i] < -b) {
                        weight_below += r.weight;
                        break;
                    }
                ++k;
            }
            if (!(weight_below > 0.0)) rec.cond2 = false;
        }
        out.push_back(rec);
    }
    return out;
}

Prop41Record check_prop41(const SampleSpace& space, const CheckOptions& opts) {
    Prop41Record rec;
    rec.mean_report = check_r0(expectation_tensor(space), opts);
    rec.mean_is_r0 = rec.mean_report.verdict == R0Verdict::IsR0;
    rec.stochastic = check_stochastic_r0(space, opts);
    return rec;
}

double perturbation_stability_test(const Tensor& A, double radius, int draws,
                                   std::uint64_t seed, const CheckOptions& opts) {
    if (draws < 1) throw std::invalid_argument("perturbation_stability_test: draws must be >= 1");
    if (radius < 0.0) throw std::invalid_argument("perturbation_stability_test: radius must be >= 0");
    if (check_r0(A, opts).verdict != R0Verdict::IsR0)
        throw std::invalid_argument("perturbation_stability_test: base tensor must verify as R0");
    double total = std::pow(static_cast<double>(A.dim()), A.order());
    if (total > 1e6)
        throw std::invalid_argument("perturbation_stability_test: dim^order exceeds desk-scale guard");
    const auto flat_count = static_cast<std::size_t>(total);
    int survived = 0;
    for (int d = 0; d < draws; ++d) {
        std::vector<TensorEntry> entries;
        entries.reserve(flat_count);
        double nrm2 = 0.0;
        for (std::size_t flat = 0; flat < flat_count; ++flat) {
            double z = rng::normal01(seed, d, flat, 0);
            Index idx(A.order());
            std::size_t rem = flat;
            for (int k = A.order() - 1; k >= 0; --k) {
                idx[k] = static_cast<int>(rem % A.dim());
                rem /= A.dim();
            }
            entries.push_back({std::move(idx), z});
            nrm2 += z * z;
        }
        double scale =
            nrm2 > 0.0 ? radius * rng::uniform01(seed, 0xABCD, d) / std::sqrt(nrm2) : 0.0;
        TensorAccumulator acc(A.order(), A.dim());
        acc.add(A, 1.0);
        acc.add(Tensor(A.order(), A.dim(), std::move(entries)), scale);
        if (check_r0(acc.build(), opts).verdict == R0Verdict::IsR0) ++survived;
    }
    return static_cast<double>(survived) / draws;
}

}  // namespace stcp
