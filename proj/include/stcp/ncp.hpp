#pragma once

#include <span>
#include <vector>

#include "stcp/tensor.hpp"

namespace stcp {

enum class NcpKind { Min, FB };

// NCP-function choice plus smoothing parameter. smoothing_mu = 0 means the
// exact function; a positive mu replaces min(a,b) by
//   (a + b - sqrt((a-b)^2 + 4 mu^2)) / 2,
// which satisfies |min_mu - min| <= mu. FB is smooth in squared form and
// ignores mu.
struct ResidualConfig {
    NcpKind kind = NcpKind::Min;
    double smoothing_mu = 0.0;
};

double phi(NcpKind kind, double a, double b);
double phi_smoothed(NcpKind kind, double a, double b, double mu);

struct PhiGrad {
    double da = 0.0;
    double db = 0.0;
};

// Partial derivatives of the (smoothed) NCP function. For exact MIN the
// nonsmooth kink is resolved toward the min argument; callers that need a
// true gradient must use mu > 0 or FB. FB at the origin uses
// (1 - 1/sqrt(2)) for both partials.
PhiGrad phi_grad(NcpKind kind, double a, double b, double mu);

// Residual vector Phi for one realization: component i is
// phi((Ax^{N-1})_i + q_i, x_i).
std::vector<double> residual(const Tensor& A, std::span<const double> q,
                             std::span<const double> x, const ResidualConfig& config);

// Two-sided growth comparison between the MIN and FB functions:
//   (2/(sqrt(2)+2)) |min(a,b)| <= |a+b-sqrt(a^2+b^2)| <= (sqrt(2)+2) |min(a,b)|
// checked with 1e-12 absolute slack.
bool growth_bounds_hold(double a, double b);

// Squared norm of the MIN residual written through the diagonal sign matrix
// D = diag(sign(Ax^{N-1}+q-x)), with sign(0) = 0:
//   (1/2)(y)^T (I-D) y + (1/2) x^T (I+D) x,  y = Ax^{N-1}+q.
double quadratic_form_residual(const Tensor& A, std::span<const double> q,
                               std::span<const double> x);

struct SupportSets {
    std::vector<int> zero_indices;     // |x_i| <= tolerance
    std::vector<int> nonzero_indices;  // the rest
    double tolerance = 0.0;
};

SupportSets support_sets(std::span<const double> x, double tol = 1e-9);

inline double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace stcp
