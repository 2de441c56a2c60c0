#include "stcp/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stcp {

namespace {

void check_dim(const Tensor& t, std::span<const double> x) {
    if (static_cast<int>(x.size()) != t.dim())
        throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                    " does not match tensor dimension " +
                                    std::to_string(t.dim()));
}

}  // namespace

Tensor::Tensor(int order, int dim) : Tensor(order, dim, {}) {}

Tensor::Tensor(int order, int dim, std::vector<TensorEntry> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
    if (order_ < 2) throw std::invalid_argument("tensor order must be >= 2");
    if (dim_ < 1) throw std::invalid_argument("tensor dimension must be >= 1");
    for (const auto& e : entries_) {
        if (static_cast<int>(e.idx.size()) != order_)
            throw std::invalid_argument("index tuple length does not match tensor order");
        for (int i : e.idx)
            if (i < 0 || i >= dim_)
                throw std::invalid_argument("tensor index " + std::to_string(i) +
                                            " out of range [0, " + std::to_string(dim_) + ")");
    }
    std::sort(entries_.begin(), entries_.end(),
              [](const TensorEntry& a, const TensorEntry& b) { return a.idx < b.idx; });
    for (std::size_t k = 1; k < entries_.size(); ++k)
        if (entries_[k].idx == entries_[k - 1].idx)
            throw std::invalid_argument("duplicate tensor index tuple");
}

Tensor Tensor::identity(int order, int dim) {
    std::vector<TensorEntry> es;
    es.reserve(dim);
    for (int i = 0; i < dim; ++i) es.push_back({Index(order, i), 1.0});
    return Tensor(order, dim, std::move(es));
}

Tensor Tensor::zero(int order, int dim) { return Tensor(order, dim); }

std::vector<double> Tensor::contract_to_vector(std::span<const double> x) const {
    check_dim(*this, x);
    std::vector<double> out(dim_, 0.0);
    for (const auto& e : entries_) {
        double p = e.value;
        for (int k = 1; k < order_; ++k) p *= x[e.idx[k]];
        out[e.idx[0]] += p;
    }
    return out;
}

double Tensor::contract_to_scalar(std::span<const double> x) const {
    check_dim(*this, x);
    double s = 0.0;
    for (const auto& e : entries_) {
        double p = e.value;
        for (int k = 0; k < order_; ++k) p *= x[e.idx[k]];
        s += p;
    }
    return s;
}

std::vector<double> Tensor::jacobian(std::span<const double> x) const {
    check_dim(*this, x);
    std::vector<double> jac(static_cast<std::size_t>(dim_) * dim_, 0.0);
    for (const auto& e : entries_) {
        for (int k = 1; k < order_; ++k) {
            double p = e.value;
            for (int m = 1; m < order_; ++m)
                if (m != k) p *= x[e.idx[m]];
            jac[static_cast<std::size_t>(e.idx[0]) * dim_ + e.idx[k]] += p;
        }
    }
    return jac;
}

double Tensor::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += e.value * e.value;
    return std::sqrt(s);
}

double scalar_product(const Tensor& a, const Tensor& b) {
    if (a.order() != b.order() || a.dim() != b.dim())
        throw std::invalid_argument("scalar product requires matching order and dimension");
    // Both entry lists are sorted; merge walk.
    double s = 0.0;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].idx < eb[j].idx)
            ++i;
        else if (eb[j].idx < ea[i].idx)
            ++j;
        else {
            s += ea[i].value * eb[j].value;
            ++i;
            ++j;
        }
    }
    return s;
}

std::vector<double> to_dense(const Tensor& a) {
    double total = std::pow(static_cast<double>(a.dim()), a.order());
    if (total > 1e6)
        throw std::invalid_argument("dense materialization refused: dim^order exceeds 10^6");
    std::vector<double> dense(static_cast<std::size_t>(total), 0.0);
    for (const auto& e : a.entries()) {
        std::size_t flat = 0;
        for (int k = 0; k < a.order(); ++k) flat = flat * a.dim() + e.idx[k];
        dense[flat] = e.value;
    }
    return dense;
}

void TensorAccumulator::add(const Tensor& t, double scale) {
    if (t.order() != order_ || t.dim() != dim_)
        throw std::invalid_argument("accumulator shape mismatch");
    for (const auto& e : t.entries()) values_[e.idx] += scale * e.value;
}

Tensor TensorAccumulator::build() const {
    std::vector<TensorEntry> es;
    es.reserve(values_.size());
    for (const auto& [idx, v] : values_)
        if (v != 0.0) es.push_back({idx, v});
    return Tensor(order_, dim_, std::move(es));
}

}  // namespace stcp
