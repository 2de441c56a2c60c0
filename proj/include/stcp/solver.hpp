#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stcp/objective.hpp"

namespace stcp {

struct ArmijoParams {
    double initial_step = 1.0;
    double backtrack = 0.5;
    double sufficient_decrease = 1e-4;
};

struct SolverOptions {
    int max_iterations = 2000;  // per smoothing stage
    double gradient_tolerance = 1e-8;
    double objective_tolerance = 1e-16;
    ArmijoParams armijo;
    std::vector<double> mu_schedule = {1e-1, 1e-2, 1e-3, 1e-4};  // MIN only
    int multistart_count = 8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct SolveResult {
    std::vector<double> x_star;  // componentwise >= 0
    double objective = 0.0;      // exact (unsmoothed) objective at x_star
    bool converged = false;
    int iterations = 0;          // total accepted iterations across stages/starts
    int start_index = 0;         // multistart that produced x_star
    // (iteration, best exact objective so far) for the winning start; the
    // running minimum keeps the trace non-increasing across smoothing stages.
    std::vector<std::pair<int, double>> trace;
};

// Projected-gradient descent (projection = max(.,0)) with Armijo
// backtracking, warm-started across the mu schedule, best of all starts.
SolveResult solve_erm(const SampleSpace& space, const ResidualConfig& config,
                      const SolverOptions& options);

// Same machinery applied to the expected-value merit.
SolveResult solve_ev(const SampleSpace& space, const ResidualConfig& config,
                     const SolverOptions& options);

enum class RayVerdict { Grows, Bounded, Inconclusive };

struct RayProbeReport {
    std::vector<double> direction;  // unit vector, >= 0
    std::vector<double> lambdas;
    std::vector<double> values;     // G(lambda * direction)
    double value_at_one = 0.0;      // G(direction)
    RayVerdict verdict = RayVerdict::Inconclusive;
    double bound_estimate = 0.0;
    bool overflow_clamped = false;
};

std::vector<double> default_lambda_grid();  // {10^0, 10^0.5, ..., 10^4}

// All points with coordinates k/resolution summing to 1, deterministic order.
std::vector<std::vector<double>> simplex_grid_points(int dim, int resolution);

RayProbeReport ray_probe(const SampleSpace& space, std::span<const double> direction,
                         const std::vector<double>& lambda_grid,
                         const ResidualConfig& config);

struct DirectionGridSpec {
    int simplex_resolution = 0;  // 0 = auto per dimension
    int random_directions = 100;
    std::uint64_t seed = 0;
};

struct CoercivityScan {
    std::vector<RayProbeReport> reports;
    RayVerdict aggregate = RayVerdict::Inconclusive;
    std::optional<std::vector<double>> bounded_witness;
};

// Ray probes over a simplex direction grid plus seeded random directions.
// Aggregate GROWS only if every direction grows; any bounded direction is
// returned as a witness.
CoercivityScan coercivity_scan(const SampleSpace& space, const ResidualConfig& config,
                               const DirectionGridSpec& grid,
                               const std::vector<double>& lambda_grid = default_lambda_grid());

struct BoundednessReport {
    double g_zero = 0.0;            // sum_i E{q_i^2 1[q_i<0]}
    std::vector<double> lambdas;
    std::vector<double> values;     // G(lambda * witness)
    double plateau_estimate = 0.0;  // final probed value
    double support_moment = 0.0;    // sum over nonzero support of E{q_i^2}
    std::string regime;             // "plateau_exceeds_g0" | "vanishing" | "other"
};

BoundednessReport boundedness_probe(const SampleSpace& space, const ResidualConfig& config,
                                    std::span<const double> witness,
                                    const std::vector<double>& lambda_grid);

}  // namespace stcp
