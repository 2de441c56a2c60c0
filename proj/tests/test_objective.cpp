#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stcp/objective.hpp"
#include "stcp/rng.hpp"

using stcp::NcpKind;
using stcp::Realization;
using stcp::ResidualConfig;
using stcp::SampleSpace;
using stcp::Tensor;

namespace {

SampleSpace random_space(std::uint64_t seed, int dim, int realizations) {
    std::vector<Realization> rs;
    for (int k = 0; k < realizations; ++k) {
        stcp::TensorAccumulator acc(3, dim);
        for (int e = 0; e < 5; ++e) {
            stcp::Index idx(3);
            for (int m = 0; m < 3; ++m)
                idx[m] = static_cast<int>(stcp::rng::uniform01(seed, k * 10 + e, m) * dim);
            acc.add(Tensor(3, dim, {{idx, stcp::rng::uniform(-2.0, 2.0, seed, k * 10 + e, 9)}}),
                    1.0);
        }
        std::vector<double> q(dim);
        for (int i = 0; i < dim; ++i) q[i] = stcp::rng::uniform(-1.0, 1.0, seed, 200 + k, i);
        rs.push_back({1.0 / realizations, acc.build(), std::move(q)});
    }
    return SampleSpace(std::move(rs));
}

std::vector<double> rand_x(std::uint64_t seed, int dim) {
    std::vector<double> x(dim);
    for (int i = 0; i < dim; ++i) x[i] = stcp::rng::uniform(0.0, 2.0, seed, 777, i);
    return x;
}

}  // namespace

TEST_CASE("objective vanishes exactly at a common complementarity solution") {
    // identity tensor, q = (-1, -4): x = (1, 2) solves every realization
    Realization r{1.0, Tensor::identity(3, 2), {-1.0, -4.0}};
    SampleSpace s({r});
    std::vector<double> x{1.0, 2.0};
    for (NcpKind kind : {NcpKind::Min, NcpKind::FB}) {
        auto v = stcp::erm_objective(s, x, {kind, 0.0});
        CHECK(v.value == 0.0);
    }
}

TEST_CASE("objective at the origin equals the negative-part q moment for MIN") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SampleSpace s = random_space(seed, 3, 4);
        auto m = stcp::expected_q_moments(s);
        double want = 0.0;
        for (double v : m.negative_part_sq) want += v;
        std::vector<double> zero(3, 0.0);
        auto v = stcp::erm_objective(s, zero, {NcpKind::Min, 0.0});
        CHECK(v.value == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("per-realization parts are weighted and sum to the value") {
    SampleSpace s = random_space(3, 3, 5);
    std::vector<double> x = rand_x(3, 3);
    auto v = stcp::erm_objective(s, x, {NcpKind::FB, 0.0});
    REQUIRE(v.per_realization.size() == 5);
    double sum = 0.0;
    for (auto [w, r2] : v.per_realization) sum += w * r2;
    CHECK(v.value == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("gradient matches central finite differences") {
    const double h = 1e-6;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SampleSpace s = random_space(100 + seed, 3, 3);
        std::vector<double> x = rand_x(100 + seed, 3);
        for (ResidualConfig cfg : {ResidualConfig{NcpKind::FB, 0.0},
                                   ResidualConfig{NcpKind::Min, 1e-2}}) {
            std::vector<double> g = stcp::erm_gradient(s, x, cfg);
            for (int j = 0; j < 3; ++j) {
                std::vector<double> xp = x, xm = x;
                xp[j] += h;
                xm[j] -= h;
                double fd = (stcp::erm_objective(s, xp, cfg).value -
                             stcp::erm_objective(s, xm, cfg).value) / (2 * h);
                CHECK(std::abs(g[j] - fd) <= 1e-4 * (1.0 + std::abs(fd)));
            }
        }
    }
}

TEST_CASE("exact MIN gradient is refused") {
    SampleSpace s = random_space(1, 2, 2);
    std::vector<double> x{0.5, 0.5};
    CHECK_THROWS_AS(stcp::erm_gradient(s, x, {NcpKind::Min, 0.0}), std::invalid_argument);
}

TEST_CASE("EV objective works on the mean data and matches singleton ERM") {
    SampleSpace s = random_space(7, 3, 6);
    std::vector<double> x = rand_x(7, 3);
    SampleSpace mean = stcp::ev_space(s);
    REQUIRE(mean.realizations().size() == 1);
    for (NcpKind kind : {NcpKind::Min, NcpKind::FB}) {
        auto ev = stcp::ev_objective(s, x, {kind, 0.0});
        auto erm = stcp::erm_objective(mean, x, {kind, 0.0});
        CHECK(ev.value == doctest::Approx(erm.value).epsilon(1e-12));
    }
    // on singleton spaces ERM and EV coincide
    SampleSpace single({Realization{1.0, s.realizations()[0].tensor, s.realizations()[0].q}});
    auto a = stcp::erm_objective(single, x, {NcpKind::FB, 0.0});
    auto b = stcp::ev_objective(single, x, {NcpKind::FB, 0.0});
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-12));
}

TEST_CASE("zero-q objective scales with degree 2(N-1) under min structure on rays") {
    // with q = 0 and x >= 0, Phi components are min(x_i, (Ax^{N-1})_i);
    // both arguments are positively homogeneous, degrees 1 and N-1, so for
    // lambda >= 1 and nonnegative tensors the value grows polynomially.
    Tensor t = Tensor::identity(3, 2);
    SampleSpace s({{1.0, t, {0.0, 0.0}}});
    std::vector<double> x{1.0, 1.0};
    auto v1 = stcp::erm_objective(s, x, {NcpKind::Min, 0.0});
    std::vector<double> x2{2.0, 2.0};
    auto v2 = stcp::erm_objective(s, x2, {NcpKind::Min, 0.0});
    // min(lambda, lambda^2) = lambda for lambda >= 1, squared and summed
    CHECK(v1.value == doctest::Approx(2.0));
    CHECK(v2.value == doctest::Approx(8.0));
}

TEST_CASE("smoothed objective converges to the exact one as mu drops") {
    SampleSpace s = random_space(11, 3, 3);
    std::vector<double> x = rand_x(11, 3);
    double exact = stcp::erm_objective(s, x, {NcpKind::Min, 0.0}).value;
    double prev_err = 1e300;
    for (double mu : {1e-1, 1e-2, 1e-3, 1e-4}) {
        double v = stcp::erm_objective(s, x, {NcpKind::Min, mu}).value;
        double err = std::abs(v - exact);
        CHECK(err <= prev_err + 1e-15);
        prev_err = err;
    }
    CHECK(prev_err <= 1e-3);
}
