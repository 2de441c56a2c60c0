#include "stcp/ncp.hpp"

#include <cmath>
#include <stdexcept>

namespace stcp {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

double phi(NcpKind kind, double a, double b) {
    switch (kind) {
        case NcpKind::Min:
            return std::min(a, b);
        case NcpKind::FB:
            return a + b - std::sqrt(a * a + b * b);
    }
    return 0.0;
}

double phi_smoothed(NcpKind kind, double a, double b, double mu) {
    if (kind == NcpKind::FB || mu == 0.0) return phi(kind, a, b);
    double d = a - b;
    return 0.5 * (a + b - std::sqrt(d * d + 4.0 * mu * mu));
}

PhiGrad phi_grad(NcpKind kind, double a, double b, double mu) {
    if (kind == NcpKind::FB) {
        double r = std::sqrt(a * a + b * b);
        if (r == 0.0) {
            double g = 1.0 - 1.0 / kSqrt2;
            return {g, g};
        }
        return {1.0 - a / r, 1.0 - b / r};
    }
    if (mu > 0.0) {
        double d = a - b;
        double s = std::sqrt(d * d + 4.0 * mu * mu);
        return {0.5 * (1.0 - d / s), 0.5 * (1.0 + d / s)};
    }
    // Exact MIN: one-sided choice at the kink.
    return a <= b ? PhiGrad{1.0, 0.0} : PhiGrad{0.0, 1.0};
}

std::vector<double> residual(const Tensor& A, std::span<const double> q,
                             std::span<const double> x, const ResidualConfig& config) {
    if (q.size() != x.size() || static_cast<int>(x.size()) != A.dim())
        throw std::invalid_argument("residual: dimension mismatch");
    std::vector<double> y = A.contract_to_vector(x);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = phi_smoothed(config.kind, y[i] + q[i], x[i], config.smoothing_mu);
    return out;
}

bool growth_bounds_hold(double a, double b) {
    constexpr double slack = 1e-12;
    double m = std::fabs(std::min(a, b));
    double fb = std::fabs(a + b - std::sqrt(a * a + b * b));
    double lo = 2.0 / (kSqrt2 + 2.0);
    double hi = kSqrt2 + 2.0;
    return lo * m <= fb + slack && fb <= hi * m + slack;
}

double quadratic_form_residual(const Tensor& A, std::span<const double> q,
                               std::span<const double> x) {
    if (q.size() != x.size() || static_cast<int>(x.size()) != A.dim())
        throw std::invalid_argument("quadratic_form_residual: dimension mismatch");
    std::vector<double> y = A.contract_to_vector(x);
    double val = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double yi = y[i] + q[i];
        double d = sign0(yi - x[i]);
        val += 0.5 * (1.0 - d) * yi * yi + 0.5 * (1.0 + d) * x[i] * x[i];
    }
    return val;
}

SupportSets support_sets(std::span<const double> x, double tol) {
    if (tol < 0.0) throw std::invalid_argument("support_sets: tolerance must be >= 0");
    SupportSets s;
    s.tolerance = tol;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (std::fabs(x[i]) <= tol)
            s.zero_indices.push_back(static_cast<int>(i));
        else
            s.nonzero_indices.push_back(static_cast<int>(i));
    }
    return s;
}

}  // namespace stcp
