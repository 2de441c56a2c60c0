#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "stcp/io.hpp"

using stcp::io::json;
using stcp::io::ParseError;

namespace {

json minimal_problem() {
    return json::parse(R"({
        "order": 3,
        "dim": 2,
        "samples": [
            {"weight": 0.5, "tensor": [[[0,0,0], 1.0]], "q": [0.0, 1.0]},
            {"weight": 0.5, "tensor": [], "q": [-1.0, 0.0]}
        ]
    })");
}

}  // namespace

TEST_CASE("explicit sample problems parse into the expected space") {
    auto p = stcp::io::parse_problem(minimal_problem());
    REQUIRE(p.space.realizations().size() == 2);
    CHECK(p.space.order() == 3);
    CHECK(p.space.dim() == 2);
    CHECK(p.space.realizations()[0].tensor.entries().size() == 1);
    CHECK(p.space.realizations()[1].q[0] == -1.0);
}

TEST_CASE("canonical form is round-trip stable") {
    auto p1 = stcp::io::parse_problem(minimal_problem());
    auto p2 = stcp::io::parse_problem(p1.canonical);
    CHECK(p1.canonical == p2.canonical);
    CHECK(stcp::io::emit_report(p1.canonical) == stcp::io::emit_report(p2.canonical));
}

TEST_CASE("errors carry the offending field path") {
    auto check_message = [](json j, const std::string& needle) {
        try {
            stcp::io::parse_problem(j);
            FAIL_CHECK("expected ParseError mentioning " << needle);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    json j = minimal_problem();
    j.erase("order");
    check_message(j, "order");

    j = minimal_problem();
    j["samples"][1]["weight"] = 0.6;  // sums to 1.1
    check_message(j, "samples[*].weight");

    j = minimal_problem();
    j["samples"][0]["tensor"] = json::array({json::array({json::array({0, 0, 5}), 1.0})});
    check_message(j, "samples[0].tensor");

    j = minimal_problem();
    j["samples"][0]["q"] = json::array({1.0});
    check_message(j, "samples[0].q");

    j = minimal_problem();
    j["generator"] = json::object();
    check_message(j, "exactly one");
}

TEST_CASE("generator problems materialize reproducibly") {
    json j = json::parse(R"({
        "order": 3,
        "dim": 2,
        "generator": {
            "base_tensor": [[[0,0,0], 1.0], [[1,1,1], 1.0]],
            "coefficients": [
                {"omega_index": 0, "transform": "linear", "tensor": [[[0,1,1], 0.5]]}
            ],
            "q_base": [-1.0, -1.0],
            "q_coefficients": [[0.25, 0.0]],
            "omega_dist": [{"type": "uniform", "lo": -1.0, "hi": 1.0}],
            "num_samples": 16,
            "seed": 3
        }
    })");
    auto p1 = stcp::io::parse_problem(j);
    auto p2 = stcp::io::parse_problem(j);
    REQUIRE(p1.space.realizations().size() == 16);
    for (std::size_t k = 0; k < 16; ++k) {
        CHECK(p1.space.realizations()[k].tensor == p2.space.realizations()[k].tensor);
        CHECK(p1.space.realizations()[k].q == p2.space.realizations()[k].q);
    }
    // omega_values pins the evaluation points instead of sampling
    j["generator"].erase("num_samples");
    j["generator"].erase("seed");
    j["generator"]["omega_values"] = json::array({json::array({-1.0}), json::array({1.0})});
    auto p3 = stcp::io::parse_problem(j);
    REQUIRE(p3.space.realizations().size() == 2);
    CHECK(p3.space.realizations()[0].q[0] == doctest::Approx(-1.25));
    CHECK(p3.space.realizations()[1].q[0] == doctest::Approx(-0.75));
}

TEST_CASE("builtin examples parse and have the advertised shapes") {
    for (const char* name : {"example4_1", "example4_2", "example4_2_perturbed"}) {
        auto p = stcp::io::parse_problem(stcp::io::builtin_example(name));
        CHECK(p.space.order() == 3);
        CHECK(!p.metadata.empty());
    }
    auto p41 = stcp::io::parse_problem(stcp::io::builtin_example("example4_1"));
    CHECK(p41.space.dim() == 3);
    CHECK(p41.space.realizations().size() == 2);
    auto p42 = stcp::io::parse_problem(stcp::io::builtin_example("example4_2"));
    CHECK(p42.space.dim() == 5);
    CHECK(p42.space.realizations()[0].tensor.entries().size() == 12);
    auto id = stcp::io::parse_problem(stcp::io::builtin_example("identity", 4, 2));
    CHECK(id.space.order() == 4);
    CHECK(id.space.dim() == 2);
    CHECK_THROWS_AS(stcp::io::builtin_example("no_such_example"), ParseError);
}

TEST_CASE("two-point example evaluates to the documented tensors") {
    auto p = stcp::io::parse_problem(stcp::io::builtin_example("example4_1"));
    const auto& lo = p.space.realizations()[0].tensor;  // omega = -0.25
    const auto& hi = p.space.realizations()[1].tensor;  // omega = +0.25
    // hand-checked contractions: each realization has a nonzero degenerate point
    std::vector<double> x_lo{1.0, 1.0, 0.0};
    for (double v : lo.contract_to_vector(x_lo)) CHECK(v == doctest::Approx(0.0));
    std::vector<double> x_hi{0.0, 1.0, 1.0};
    for (double v : hi.contract_to_vector(x_hi)) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("emit_report is byte-stable for identical payloads") {
    json a{{"b", 1}, {"a", json::array({1.5, 2.5})}};
    json b{{"a", json::array({1.5, 2.5})}, {"b", 1}};
    CHECK(stcp::io::emit_report(a) == stcp::io::emit_report(b));
    CHECK(stcp::io::emit_report(a).back() == '\n');
}

TEST_CASE("report serializers cover every verdict spelling") {
    stcp::CheckReport r;
    r.verdict = stcp::R0Verdict::IsR0;
    CHECK(stcp::io::to_json(r)["verdict"] == "IS_R0");
    r.verdict = stcp::R0Verdict::NotR0;
    CHECK(stcp::io::to_json(r)["verdict"] == "NOT_R0");
    r.verdict = stcp::R0Verdict::Inconclusive;
    CHECK(stcp::io::to_json(r)["verdict"] == "INCONCLUSIVE");

    stcp::RayProbeReport rp;
    rp.verdict = stcp::RayVerdict::Grows;
    CHECK(stcp::io::to_json(rp)["verdict"] == "GROWS");
    rp.verdict = stcp::RayVerdict::Bounded;
    CHECK(stcp::io::to_json(rp)["verdict"] == "BOUNDED");
}

TEST_CASE("parse_problem_file reports missing files") {
    CHECK_THROWS_AS(stcp::io::parse_problem_file("/no/such/file.json"), ParseError);
}
