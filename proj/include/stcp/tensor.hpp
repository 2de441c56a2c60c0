#pragma once

#include <map>
#include <span>
#include <vector>

namespace stcp {

// Index tuple of length `order`, 0-based, each component in [0, dim).
using Index = std::vector<int>;

struct TensorEntry {
    Index idx;
    double value = 0.0;

    bool operator==(const TensorEntry&) const = default;
};

// Order-N, dimension-I real tensor in sparse coordinate form. Unspecified
// entries are exactly zero. Entries are kept sorted lexicographically;
// duplicate index tuples are a construction error.
class Tensor {
public:
    Tensor(int order, int dim);
    Tensor(int order, int dim, std::vector<TensorEntry> entries);

    static Tensor identity(int order, int dim);  // a_{ii...i} = 1
    static Tensor zero(int order, int dim);

    int order() const { return order_; }
    int dim() const { return dim_; }
    const std::vector<TensorEntry>& entries() const { return entries_; }

    // (Ax^{N-1})_i: contraction over the trailing N-1 modes.
    std::vector<double> contract_to_vector(std::span<const double> x) const;

    // Ax^N: full contraction, summed directly over stored entries.
    double contract_to_scalar(std::span<const double> x) const;

    // Jacobian of x |-> Ax^{N-1}, row-major I x I.
    std::vector<double> jacobian(std::span<const double> x) const;

    double frobenius_norm() const;

    bool operator==(const Tensor& other) const = default;

private:
    int order_;
    int dim_;
    std::vector<TensorEntry> entries_;
};

double scalar_product(const Tensor& a, const Tensor& b);

// Dense materialization, refused when dim^order exceeds 10^6.
std::vector<double> to_dense(const Tensor& a);

// Entry-wise accumulator for sums of tensors (expectations, generators).
class TensorAccumulator {
public:
    TensorAccumulator(int order, int dim) : order_(order), dim_(dim) {}
    void add(const Tensor& t, double scale);
    Tensor build() const;  // drops exactly-zero accumulated values

private:
    int order_;
    int dim_;
    std::map<Index, double> values_;
};

}  // namespace stcp
