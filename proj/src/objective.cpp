#include "stcp/objective.hpp"

#include <stdexcept>

namespace stcp {

ObjectiveValue erm_objective(const SampleSpace& space, std::span<const double> x,
                             const ResidualConfig& config) {
    if (static_cast<int>(x.size()) != space.dim())
        throw std::invalid_argument("erm_objective: dimension mismatch");
    ObjectiveValue out;
    out.per_realization.reserve(space.realizations().size());
    for (const auto& r : space.realizations()) {
        std::vector<double> phi = residual(r.tensor, r.q, x, config);
        double sq = 0.0;
        for (double v : phi) sq += v * v;
        out.per_realization.emplace_back(r.weight, sq);
        out.value += r.weight * sq;
    }
    return out;
}

std::vector<double> erm_gradient(const SampleSpace& space, std::span<const double> x,
                                 const ResidualConfig& config) {
    if (static_cast<int>(x.size()) != space.dim())
        throw std::invalid_argument("erm_gradient: dimension mismatch");
    if (config.kind == NcpKind::Min && config.smoothing_mu <= 0.0)
        throw std::invalid_argument("erm_gradient: exact MIN is nonsmooth; use FB or smoothing_mu > 0");
    const int I = space.dim();
    std::vector<double> grad(I, 0.0);
    for (const auto& r : space.realizations()) {
        std::vector<double> y = r.tensor.contract_to_vector(x);
        std::vector<double> jac = r.tensor.jacobian(x);
        for (int i = 0; i < I; ++i) {
            double a = y[i] + r.q[i];
            double p = phi_smoothed(config.kind, a, x[i], config.smoothing_mu);
            if (p == 0.0) continue;
            PhiGrad g = phi_grad(config.kind, a, x[i], config.smoothing_mu);
            double ca = 2.0 * r.weight * p * g.da;
            for (int j = 0; j < I; ++j)
                grad[j] += ca * jac[static_cast<std::size_t>(i) * I + j];
            grad[i] += 2.0 * r.weight * p * g.db;
        }
    }
    return grad;
}

SampleSpace ev_space(const SampleSpace& space) {
    return SampleSpace({Realization{1.0, expectation_tensor(space), expectation_q(space)}},
                       Provenance::Explicit);
}

ObjectiveValue ev_objective(const SampleSpace& space, std::span<const double> x,
                            const ResidualConfig& config) {
    return erm_objective(ev_space(space), x, config);
}

}  // namespace stcp
