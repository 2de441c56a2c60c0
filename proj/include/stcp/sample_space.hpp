#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stcp/tensor.hpp"

namespace stcp {

// One (A(omega), q(omega)) pair with its probability mass.
struct Realization {
    double weight = 0.0;
    Tensor tensor;
    std::vector<double> q;
};

enum class OmegaDistKind { Uniform, Normal };

struct OmegaDist {
    OmegaDistKind kind = OmegaDistKind::Uniform;
    double a = 0.0;  // lo or mean
    double b = 1.0;  // hi or stddev
};

enum class EntryTransform { Linear, Abs };

// One term of the random tensor field: transform(omega[omega_index]) * tensor.
// Several coefficients may reference the same omega coordinate, which is how
// mixed entries such as omega - |omega| are expressed.
struct TensorCoefficient {
    Tensor tensor;
    int omega_index = 0;
    EntryTransform transform = EntryTransform::Linear;
};

// Affine-in-omega random field:
//   A(omega) = base + sum_j t_j(omega[c_j]) * C_j
//   q(omega) = q_base + sum_j omega_j * q_coefficients[j]
struct GeneratorSpec {
    Tensor base;
    std::vector<TensorCoefficient> coefficients;
    std::vector<double> q_base;
    std::vector<std::vector<double>> q_coefficients;  // one per omega coordinate
    std::vector<OmegaDist> omega_dists;               // size = omega_dim

    int omega_dim() const { return static_cast<int>(omega_dists.size()); }
    void validate() const;
    Realization evaluate(const std::vector<double>& omega, double weight) const;
};

enum class Provenance { Explicit, Generated };

// Finite weighted stand-in for (Omega, F, P). Immutable after construction;
// weights are validated to sum to 1 and renormalized exactly.
class SampleSpace {
public:
    explicit SampleSpace(std::vector<Realization> realizations,
                         Provenance provenance = Provenance::Explicit);

    const std::vector<Realization>& realizations() const { return realizations_; }
    int order() const { return realizations_.front().tensor.order(); }
    int dim() const { return realizations_.front().tensor.dim(); }
    Provenance provenance() const { return provenance_; }

private:
    std::vector<Realization> realizations_;
    Provenance provenance_;
};

// n equally weighted Monte Carlo draws, reproducible from the seed via
// counter-based variates keyed by (seed, realization, coordinate).
SampleSpace materialize(const GeneratorSpec& spec, int n, std::uint64_t seed);

// Evaluate the generator at explicitly given omega points (equal weights).
SampleSpace materialize_at(const GeneratorSpec& spec,
                           const std::vector<std::vector<double>>& omegas);

Tensor expectation_tensor(const SampleSpace& space);
std::vector<double> expectation_q(const SampleSpace& space);

struct QMoments {
    double total_sq = 0.0;                     // E ||q||^2
    std::vector<double> per_component_sq;      // E q_i^2
    std::vector<double> negative_part_sq;      // E q_i^2 1[q_i < 0]
};

QMoments expected_q_moments(const SampleSpace& space);

}  // namespace stcp
