#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stcp/sample_space.hpp"
#include "stcp/solver.hpp"

namespace stcp {

enum class R0Verdict { IsR0, NotR0, Inconclusive };

struct CheckOptions {
    // NOT_R0 at merit <= not_r0_tol, IS_R0 at merit > is_r0_tol; the gap in
    // between returns INCONCLUSIVE so rounding noise cannot flip verdicts.
    double not_r0_tol = 1e-10;
    double is_r0_tol = 1e-6;
    int grid_resolution = 0;  // 0 = auto (20 for I<=3, 10 for I=4, 8 for I=5)
    int random_starts = 200;
    int polish_budget = 100;  // most promising points polished
    int polish_iterations = 120;
    std::uint64_t seed = 0;
};

struct GridSpecRecord {
    int resolution = 0;
    int random_starts = 0;
    double not_r0_tol = 0.0;
    double is_r0_tol = 0.0;
};

struct CheckReport {
    R0Verdict verdict = R0Verdict::Inconclusive;
    std::optional<std::vector<double>> witness;  // on the unit simplex
    // Every certified zero found (deduplicated, deterministic order).
    std::vector<std::vector<double>> all_witnesses;
    double certificate_residual = 0.0;  // merit at the witness / grid minimum
    GridSpecRecord grid;
};

// Merit for structure checks: sum_k w_k ||min(x, A_k x^{N-1})||^2 (q ignored).
double structure_merit(const SampleSpace& space, std::span<const double> x);

// R_0 decision by minimizing ||min(x, A x^{N-1})||^2 over the unit simplex
// (grid seeding + projected-gradient polish renormalized to the simplex).
// The zero set of the merit is invariant under positive scaling, so the
// simplex restriction loses nothing.
CheckReport check_r0(const Tensor& A, const CheckOptions& opts = {});

// Same machinery over all realizations at once; on singleton spaces this
// coincides with check_r0.
CheckReport check_stochastic_r0(const SampleSpace& space, const CheckOptions& opts = {});

struct Theorem41Conditions {
    bool cond_a = false;  // some realization has (A_k x^{N-1})_i != 0 on the support
    bool cond_b = false;  // some realization has (A_k x^{N-1})_i < 0 off the support
};

Theorem41Conditions check_theorem41_conditions(const SampleSpace& space,
                                               std::span<const double> x, double tol);

struct XiPoint {
    std::vector<double> x;  // simplex point
    double max_violation = 0.0;
};

// Simplex-grid scan (plus polish) for the degenerate directions of A:
// (Ax^{N-1})_i = 0 on the support of x and >= 0 off it. Non-exhaustive:
// an empty result means none at grid resolution, not that none exist.
std::vector<XiPoint> find_xi_points(const Tensor& A, const CheckOptions& opts = {},
                                    double tol = 1e-8);

struct Prop42Record {
    bool cond1 = false;  // E{((A0 x^{N-1})_i)^2} > 0 on the support
    bool cond2 = false;  // P{(A0 x^{N-1})_i < -b} > 0 off the support, all b in grid
};

// Evaluates the two construction conditions of the zero-mean perturbation
// space at each supplied degenerate point. cond2 is empirical, up to the
// largest b supplied.
std::vector<Prop42Record> check_prop42_conditions(const SampleSpace& perturbation_space,
                                                  const std::vector<XiPoint>& xi_points,
                                                  const std::vector<double>& b_grid);

struct Prop41Record {
    bool mean_is_r0 = false;
    CheckReport mean_report;
    CheckReport stochastic;
};

Prop41Record check_prop41(const SampleSpace& space, const CheckOptions& opts = {});

// Fraction of radius-bounded random perturbations of an R_0 tensor that
// remain R_0. Requires check_r0(A) = IS_R0.
double perturbation_stability_test(const Tensor& A, double radius, int draws,
                                   std::uint64_t seed, const CheckOptions& opts = {});

}  // namespace stcp
