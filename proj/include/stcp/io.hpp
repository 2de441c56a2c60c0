#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "stcp/sample_space.hpp"
#include "stcp/solver.hpp"
#include "stcp/structure.hpp"

namespace stcp::io {

using json = nlohmann::json;

// Schema or validation failure; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParsedProblem {
    SampleSpace space;
    json metadata;  // object, possibly empty
    json canonical; // normalized problem file (round-trip stable)
};

ParsedProblem parse_problem(const json& j);
ParsedProblem parse_problem_text(const std::string& text);
ParsedProblem parse_problem_file(const std::string& path);

// Built-in problem files: example4_1, example4_2, example4_2_perturbed,
// identity, zero. order/dim apply to identity and zero only.
json builtin_example(const std::string& name, int order = 3, int dim = 3);

// Canonical serialization: sorted keys, fixed indentation, trailing newline.
std::string emit_report(const json& report);

json tensor_to_json(const Tensor& t);

json to_json(const CheckReport& r);
json to_json(const SolveResult& r);
json to_json(const RayProbeReport& r);
json to_json(const CoercivityScan& r);
json to_json(const BoundednessReport& r);
json to_json(const Theorem41Conditions& r);
json to_json(const Prop41Record& r);
json to_json(const std::vector<XiPoint>& pts);
json to_json(const std::vector<Prop42Record>& recs);

}  // namespace stcp::io
