#pragma once

#include <span>
#include <utility>
#include <vector>

#include "stcp/ncp.hpp"
#include "stcp/sample_space.hpp"

namespace stcp {

struct ObjectiveValue {
    double value = 0.0;
    // (weight, squared residual norm) per realization, in canonical order.
    std::vector<std::pair<double, double>> per_realization;
};

// G(x) = sum_k w_k ||Phi(x, omega_k)||^2, summed in realization order.
ObjectiveValue erm_objective(const SampleSpace& space, std::span<const double> x,
                             const ResidualConfig& config);

// Gradient of the (smoothed) objective. Requires FB, or MIN with
// smoothing_mu > 0; exact MIN is nonsmooth and rejected.
std::vector<double> erm_gradient(const SampleSpace& space, std::span<const double> x,
                                 const ResidualConfig& config);

// ||Phi_bar(x)||^2 using the expectation tensor and expectation q.
ObjectiveValue ev_objective(const SampleSpace& space, std::span<const double> x,
                            const ResidualConfig& config);

// The EV problem is a one-realization ERM problem over the mean data.
SampleSpace ev_space(const SampleSpace& space);

}  // namespace stcp
