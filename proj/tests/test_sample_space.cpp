#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "stcp/sample_space.hpp"

using stcp::EntryTransform;
using stcp::GeneratorSpec;
using stcp::OmegaDist;
using stcp::OmegaDistKind;
using stcp::Realization;
using stcp::SampleSpace;
using stcp::Tensor;

namespace {

GeneratorSpec simple_spec() {
    GeneratorSpec spec{Tensor::identity(3, 2),
                       {{Tensor(3, 2, {{{0, 1, 1}, 1.0}}), 0, EntryTransform::Linear}},
                       {-1.0, -1.0},
                       {{0.5, 0.0}},
                       {{OmegaDistKind::Uniform, -1.0, 1.0}}};
    return spec;
}

}  // namespace

TEST_CASE("sample space validates its input") {
    CHECK_THROWS_AS(SampleSpace({}), std::invalid_argument);
    Realization r{1.0, Tensor::identity(3, 2), {0.0, 0.0}};
    Realization bad_weight{-0.5, Tensor::identity(3, 2), {0.0, 0.0}};
    CHECK_THROWS_AS(SampleSpace({r, bad_weight}), std::invalid_argument);
    Realization bad_shape{1.0, Tensor::identity(3, 3), {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(SampleSpace({r, bad_shape}), std::invalid_argument);
    Realization half{0.5, Tensor::identity(3, 2), {0.0, 0.0}};
    CHECK_THROWS_AS(SampleSpace({half, r}), std::invalid_argument);  // sums to 1.5
    SampleSpace ok({half, half});
    CHECK(ok.realizations().size() == 2);
}

TEST_CASE("weights are renormalized to sum exactly to 1") {
    Realization a{0.1, Tensor::identity(3, 2), {0.0, 0.0}};
    Realization b{0.3, Tensor::identity(3, 2), {0.0, 0.0}};
    Realization c{0.6, Tensor::identity(3, 2), {0.0, 0.0}};
    SampleSpace s({a, b, c});
    double sum = 0.0;
    for (const auto& r : s.realizations()) sum += r.weight;
    CHECK(sum == 1.0);
}

TEST_CASE("generator evaluation is affine in omega with the chosen transform") {
    GeneratorSpec spec = simple_spec();
    spec.coefficients.push_back({Tensor(3, 2, {{{1, 0, 0}, 2.0}}), 0, EntryTransform::Abs});
    spec.validate();
    for (double w : {-0.75, 0.0, 0.4}) {
        Realization r = spec.evaluate({w}, 1.0);
        std::vector<double> x{1.0, 1.0};
        std::vector<double> y = r.tensor.contract_to_vector(x);
        // row 0: identity + w * (0,1,1); row 1: identity + |w| * 2 * (1,0,0)
        CHECK(y[0] == doctest::Approx(1.0 + w).epsilon(1e-12));
        CHECK(y[1] == doctest::Approx(1.0 + 2.0 * std::abs(w)).epsilon(1e-12));
        CHECK(r.q[0] == doctest::Approx(-1.0 + 0.5 * w).epsilon(1e-12));
        CHECK(r.q[1] == -1.0);
    }
}

TEST_CASE("materialize is deterministic in the seed and order-independent") {
    GeneratorSpec spec = simple_spec();
    SampleSpace a = stcp::materialize(spec, 50, 42);
    SampleSpace b = stcp::materialize(spec, 50, 42);
    REQUIRE(a.realizations().size() == 50);
    for (std::size_t k = 0; k < 50; ++k) {
        CHECK(a.realizations()[k].tensor == b.realizations()[k].tensor);
        CHECK(a.realizations()[k].q == b.realizations()[k].q);
    }
    // prefix stability: the first 10 draws of a 50-draw space equal a 10-draw space
    SampleSpace c = stcp::materialize(spec, 10, 42);
    for (std::size_t k = 0; k < 10; ++k)
        CHECK(c.realizations()[k].tensor == a.realizations()[k].tensor);
    SampleSpace d = stcp::materialize(spec, 50, 43);
    bool any_differ = false;
    for (std::size_t k = 0; k < 50; ++k)
        if (!(d.realizations()[k].q == a.realizations()[k].q)) any_differ = true;
    CHECK(any_differ);
}

TEST_CASE("materialize_at hits the requested omega points with equal weights") {
    GeneratorSpec spec = simple_spec();
    SampleSpace s = stcp::materialize_at(spec, {{-0.25}, {0.25}});
    REQUIRE(s.realizations().size() == 2);
    CHECK(s.realizations()[0].weight == 0.5);
    CHECK(s.realizations()[1].weight == 0.5);
    CHECK(s.realizations()[0].q[0] == doctest::Approx(-1.125));
    CHECK(s.realizations()[1].q[0] == doctest::Approx(-0.875));
}

TEST_CASE("expectation tensor and q are the weighted entrywise means") {
    Tensor t1(3, 2, {{{0, 0, 0}, 2.0}});
    Tensor t2(3, 2, {{{0, 0, 0}, -1.0}, {{1, 1, 1}, 3.0}});
    SampleSpace s({{0.25, t1, {4.0, 0.0}}, {0.75, t2, {0.0, -2.0}}});
    Tensor mean = stcp::expectation_tensor(s);
    CHECK(mean == Tensor(3, 2, {{{0, 0, 0}, -0.25}, {{1, 1, 1}, 2.25}}));
    std::vector<double> mq = stcp::expectation_q(s);
    CHECK(mq[0] == doctest::Approx(1.0));
    CHECK(mq[1] == doctest::Approx(-1.5));
}

TEST_CASE("empirical generator mean approaches the analytic mean") {
    GeneratorSpec spec = simple_spec();  // E omega = 0, so mean = base
    SampleSpace s = stcp::materialize(spec, 10000, 5);
    Tensor mean = stcp::expectation_tensor(s);
    // entry (0,1,1) averages omega; identity diagonal stays exact
    for (const auto& e : mean.entries()) {
        if (e.idx == stcp::Index{0, 1, 1})
            CHECK(std::abs(e.value) <= 0.05);
        else
            CHECK(std::abs(e.value - 1.0) <= 1e-12);
    }
    std::vector<double> mq = stcp::expectation_q(s);
    CHECK(std::abs(mq[0] + 1.0) <= 0.05);
}

TEST_CASE("q second moments split into total, per-component and negative parts") {
    // q takes (1, 0.5) and (-1, 0.2) with equal mass
    SampleSpace s({{0.5, Tensor::zero(3, 2), {1.0, 0.5}},
                   {0.5, Tensor::zero(3, 2), {-1.0, 0.2}}});
    auto m = stcp::expected_q_moments(s);
    CHECK(m.per_component_sq[0] == doctest::Approx(1.0));
    CHECK(m.per_component_sq[1] == doctest::Approx(0.5 * 0.25 + 0.5 * 0.04));
    CHECK(m.total_sq == doctest::Approx(m.per_component_sq[0] + m.per_component_sq[1]));
    CHECK(m.negative_part_sq[0] == doctest::Approx(0.5));  // only the -1 draw
    CHECK(m.negative_part_sq[1] == doctest::Approx(0.0));
}

TEST_CASE("normal omega draws have roughly the requested moments") {
    GeneratorSpec spec{Tensor::zero(3, 1),
                       {},
                       {0.0},
                       {{1.0}},
                       {{OmegaDistKind::Normal, 2.0, 3.0}}};
    SampleSpace s = stcp::materialize(spec, 20000, 9);
    double mean = 0.0, var = 0.0;
    for (const auto& r : s.realizations()) mean += r.weight * r.q[0];
    for (const auto& r : s.realizations())
        var += r.weight * (r.q[0] - mean) * (r.q[0] - mean);
    CHECK(std::abs(mean - 2.0) <= 0.1);
    CHECK(std::abs(var - 9.0) <= 0.5);
}

TEST_CASE("generator validation rejects inconsistent shapes") {
    GeneratorSpec spec = simple_spec();
    spec.q_base = {1.0};  // wrong length
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = simple_spec();
    spec.coefficients[0].omega_index = 3;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = simple_spec();
    spec.coefficients[0].tensor = Tensor(3, 3);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}
