#include "stcp/sample_space.hpp"

#include <cmath>
#include <stdexcept>

#include "stcp/rng.hpp"

namespace stcp {

void GeneratorSpec::validate() const {
    int I = base.dim();
    if (static_cast<int>(q_base.size()) != I)
        throw std::invalid_argument("generator: q_base length does not match tensor dimension");
    if (static_cast<int>(q_coefficients.size()) != omega_dim())
        throw std::invalid_argument("generator: one q coefficient vector required per omega coordinate");
    for (const auto& qc : q_coefficients)
        if (static_cast<int>(qc.size()) != I)
            throw std::invalid_argument("generator: q coefficient length does not match dimension");
    for (const auto& c : coefficients) {
        if (c.tensor.order() != base.order() || c.tensor.dim() != I)
            throw std::invalid_argument("generator: coefficient tensor shape mismatch");
        if (c.omega_index < 0 || c.omega_index >= omega_dim())
            throw std::invalid_argument("generator: coefficient omega index out of range");
    }
    for (const auto& d : omega_dists) {
        if (d.kind == OmegaDistKind::Uniform && d.b <= d.a)
            throw std::invalid_argument("generator: uniform distribution requires hi > lo");
        if (d.kind == OmegaDistKind::Normal && d.b <= 0.0)
            throw std::invalid_argument("generator: normal distribution requires stddev > 0");
    }
}

Realization GeneratorSpec::evaluate(const std::vector<double>& omega, double weight) const {
    if (static_cast<int>(omega.size()) != omega_dim())
        throw std::invalid_argument("generator: omega length does not match omega_dim");
    TensorAccumulator acc(base.order(), base.dim());
    acc.add(base, 1.0);
    for (const auto& c : coefficients) {
        double w = omega[c.omega_index];
        double t = c.transform == EntryTransform::Abs ? std::fabs(w) : w;
        acc.add(c.tensor, t);
    }
    std::vector<double> q = q_base;
    for (int j = 0; j < omega_dim(); ++j)
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += omega[j] * q_coefficients[j][i];
    return Realization{weight, acc.build(), std::move(q)};
}

SampleSpace::SampleSpace(std::vector<Realization> realizations, Provenance provenance)
    : realizations_(std::move(realizations)), provenance_(provenance) {
    if (realizations_.empty())
        throw std::invalid_argument("sample space requires at least one realization");
    int N = realizations_.front().tensor.order();
    int I = realizations_.front().tensor.dim();
    double wsum = 0.0;
    for (const auto& r : realizations_) {
        if (r.tensor.order() != N || r.tensor.dim() != I)
            throw std::invalid_argument("sample space realizations must share order and dimension");
        if (static_cast<int>(r.q.size()) != I)
            throw std::invalid_argument("sample space q length does not match dimension");
        if (!(r.weight > 0.0))
            throw std::invalid_argument("sample space weights must be positive");
        wsum += r.weight;
    }
    if (std::fabs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("sample space weights must sum to 1 (got " +
                                    std::to_string(wsum) + ")");
    for (auto& r : realizations_) r.weight /= wsum;
}

namespace {

double draw_coordinate(const OmegaDist& d, std::uint64_t seed, std::uint64_t k,
                       std::uint64_t j) {
    if (d.kind == OmegaDistKind::Uniform)
        return rng::uniform(d.a, d.b, seed, k, 2 * j);
    return d.a + d.b * rng::normal01(seed, k, 2 * j, 0);
}

}  // namespace

SampleSpace materialize(const GeneratorSpec& spec, int n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("materialize: sample count must be >= 1");
    spec.validate();
    std::vector<Realization> rs;
    rs.reserve(n);
    for (int k = 0; k < n; ++k) {
        std::vector<double> omega(spec.omega_dim());
        for (int j = 0; j < spec.omega_dim(); ++j)
            omega[j] = draw_coordinate(spec.omega_dists[j], seed, k, j);
        rs.push_back(spec.evaluate(omega, 1.0 / n));
    }
    return SampleSpace(std::move(rs), Provenance::Generated);
}

SampleSpace materialize_at(const GeneratorSpec& spec,
                           const std::vector<std::vector<double>>& omegas) {
    if (omegas.empty()) throw std::invalid_argument("materialize_at: no omega points");
    spec.validate();
    std::vector<Realization> rs;
    rs.reserve(omegas.size());
    for (const auto& omega : omegas)
        rs.push_back(spec.evaluate(omega, 1.0 / static_cast<double>(omegas.size())));
    return SampleSpace(std::move(rs), Provenance::Generated);
}

Tensor expectation_tensor(const SampleSpace& space) {
    TensorAccumulator acc(space.order(), space.dim());
    for (const auto& r : space.realizations()) acc.add(r.tensor, r.weight);
    return acc.build();
}

std::vector<double> expectation_q(const SampleSpace& space) {
    std::vector<double> q(space.dim(), 0.0);
    for (const auto& r : space.realizations())
        for (int i = 0; i < space.dim(); ++i) q[i] += r.weight * r.q[i];
    return q;
}

QMoments expected_q_moments(const SampleSpace& space) {
    QMoments m;
    m.per_component_sq.assign(space.dim(), 0.0);
    m.negative_part_sq.assign(space.dim(), 0.0);
    for (const auto& r : space.realizations()) {
        for (int i = 0; i < space.dim(); ++i) {
            double sq = r.q[i] * r.q[i];
            m.per_component_sq[i] += r.weight * sq;
            if (r.q[i] < 0.0) m.negative_part_sq[i] += r.weight * sq;
        }
    }
    for (double v : m.per_component_sq) m.total_sq += v;
    return m;
}

}  // namespace stcp
