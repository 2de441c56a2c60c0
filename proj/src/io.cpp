#include "stcp/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stcp::io {

namespace {

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ParseError(path + ": expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
    return j.get<int>();
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(path + ": missing required field '" + key + "'");
    return j.at(key);
}

std::vector<double> parse_vector(const json& j, int dim, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError(path + ": expected an array of length " + std::to_string(dim));
    std::vector<double> out(dim);
    for (int i = 0; i < dim; ++i) out[i] = require_number(j[i], path + "[" + std::to_string(i) + "]");
    return out;
}

Tensor parse_tensor(const json& j, int order, int dim, const std::string& path) {
    if (!j.is_array()) throw ParseError(path + ": expected an array of [indices, value] pairs");
    std::vector<TensorEntry> entries;
    entries.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string epath = path + "[" + std::to_string(k) + "]";
        const json& e = j[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_array())
            throw ParseError(epath + ": expected [[i1,...,iN], value]");
        if (static_cast<int>(e[0].size()) != order)
            throw ParseError(epath + ": index tuple length must equal order " + std::to_string(order));
        Index idx(order);
        for (int m = 0; m < order; ++m) {
            idx[m] = require_int(e[0][m], epath + ".index");
            if (idx[m] < 0 || idx[m] >= dim)
                throw ParseError(epath + ": index " + std::to_string(idx[m]) +
                                 " out of range [0, " + std::to_string(dim) + ")");
        }
        entries.push_back({std::move(idx), require_number(e[1], epath + ".value")});
    }
    try {
        return Tensor(order, dim, std::move(entries));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

OmegaDist parse_dist(const json& j, const std::string& path) {
    std::string type = require_field(j, "type", path).get<std::string>();
    OmegaDist d;
    if (type == "uniform") {
        d.kind = OmegaDistKind::Uniform;
        d.a = require_number(require_field(j, "lo", path), path + ".lo");
        d.b = require_number(require_field(j, "hi", path), path + ".hi");
        if (d.b <= d.a) throw ParseError(path + ": uniform requires hi > lo");
    } else if (type == "normal") {
        d.kind = OmegaDistKind::Normal;
        d.a = require_number(require_field(j, "mean", path), path + ".mean");
        d.b = require_number(require_field(j, "stddev", path), path + ".stddev");
        if (d.b <= 0.0) throw ParseError(path + ": normal requires stddev > 0");
    } else {
        throw ParseError(path + ".type: unknown distribution '" + type + "'");
    }
    return d;
}

json dist_to_json(const OmegaDist& d) {
    if (d.kind == OmegaDistKind::Uniform)
        return json{{"type", "uniform"}, {"lo", d.a}, {"hi", d.b}};
    return json{{"type", "normal"}, {"mean", d.a}, {"stddev", d.b}};
}

GeneratorSpec parse_generator(const json& g, int order, int dim, const std::string& path) {
    GeneratorSpec spec{Tensor(order, dim), {}, {}, {}, {}};
    spec.base = parse_tensor(require_field(g, "base_tensor", path), order, dim, path + ".base_tensor");
    const json& dists = require_field(g, "omega_dist", path);
    if (!dists.is_array() || dists.empty())
        throw ParseError(path + ".omega_dist: expected a nonempty array");
    for (std::size_t k = 0; k < dists.size(); ++k)
        spec.omega_dists.push_back(parse_dist(dists[k], path + ".omega_dist[" + std::to_string(k) + "]"));
    const json& coeffs = require_field(g, "coefficients", path);
    if (!coeffs.is_array()) throw ParseError(path + ".coefficients: expected an array");
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const std::string cpath = path + ".coefficients[" + std::to_string(k) + "]";
        const json& c = coeffs[k];
        TensorCoefficient tc{parse_tensor(require_field(c, "tensor", cpath), order, dim, cpath + ".tensor"),
                             require_int(require_field(c, "omega_index", cpath), cpath + ".omega_index"),
                             EntryTransform::Linear};
        std::string tr = c.value("transform", std::string("linear"));
        if (tr == "abs")
            tc.transform = EntryTransform::Abs;
        else if (tr != "linear")
            throw ParseError(cpath + ".transform: expected 'linear' or 'abs'");
        if (tc.omega_index < 0 || tc.omega_index >= static_cast<int>(spec.omega_dists.size()))
            throw ParseError(cpath + ".omega_index: out of range");
        spec.coefficients.push_back(std::move(tc));
    }
    spec.q_base = parse_vector(require_field(g, "q_base", path), dim, path + ".q_base");
    const json& qc = require_field(g, "q_coefficients", path);
    if (!qc.is_array() || qc.size() != spec.omega_dists.size())
        throw ParseError(path + ".q_coefficients: expected one vector per omega coordinate");
    for (std::size_t k = 0; k < qc.size(); ++k)
        spec.q_coefficients.push_back(
            parse_vector(qc[k], dim, path + ".q_coefficients[" + std::to_string(k) + "]"));
    return spec;
}

json generator_to_json(const GeneratorSpec& spec, const json& g_in) {
    json g;
    g["base_tensor"] = tensor_to_json(spec.base);
    g["coefficients"] = json::array();
    for (const auto& c : spec.coefficients)
        g["coefficients"].push_back(
            json{{"tensor", tensor_to_json(c.tensor)},
                 {"omega_index", c.omega_index},
                 {"transform", c.transform == EntryTransform::Abs ? "abs" : "linear"}});
    g["q_base"] = spec.q_base;
    g["q_coefficients"] = spec.q_coefficients;
    g["omega_dist"] = json::array();
    for (const auto& d : spec.omega_dists) g["omega_dist"].push_back(dist_to_json(d));
    if (g_in.contains("omega_values"))
        g["omega_values"] = g_in.at("omega_values");
    else {
        g["num_samples"] = g_in.at("num_samples");
        g["seed"] = g_in.at("seed");
    }
    return g;
}

}  // namespace

json tensor_to_json(const Tensor& t) {
    json out = json::array();
    for (const auto& e : t.entries()) out.push_back(json::array({e.idx, e.value}));
    return out;
}

ParsedProblem parse_problem(const json& j) {
    if (!j.is_object()) throw ParseError("problem: expected a JSON object");
    int order = require_int(require_field(j, "order", "problem"), "problem.order");
    int dim = require_int(require_field(j, "dim", "problem"), "problem.dim");
    if (order < 2) throw ParseError("problem.order: must be >= 2");
    if (dim < 1) throw ParseError("problem.dim: must be >= 1");
    bool has_samples = j.contains("samples");
    bool has_generator = j.contains("generator");
    if (has_samples == has_generator)
        throw ParseError("problem: exactly one of 'samples' or 'generator' is required");

    json metadata = j.value("metadata", json::object());
    json canonical;
    canonical["order"] = order;
    canonical["dim"] = dim;
    if (!metadata.empty()) canonical["metadata"] = metadata;

    if (has_samples) {
        const json& samples = j.at("samples");
        if (!samples.is_array() || samples.empty())
            throw ParseError("problem.samples: expected a nonempty array");
        std::vector<Realization> rs;
        double wsum = 0.0;
        json csamples = json::array();
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const std::string spath = "problem.samples[" + std::to_string(k) + "]";
            const json& s = samples[k];
            double w = require_number(require_field(s, "weight", spath), spath + ".weight");
            if (!(w > 0.0)) throw ParseError(spath + ".weight: must be > 0");
            Tensor t = parse_tensor(require_field(s, "tensor", spath), order, dim, spath + ".tensor");
            std::vector<double> q = parse_vector(require_field(s, "q", spath), dim, spath + ".q");
            wsum += w;
            csamples.push_back(json{{"weight", w}, {"tensor", tensor_to_json(t)}, {"q", q}});
            rs.push_back({w, std::move(t), std::move(q)});
        }
        if (std::fabs(wsum - 1.0) > 1e-9)
            throw ParseError("problem.samples[*].weight: weights must sum to 1 (got " +
                             std::to_string(wsum) + ")");
        canonical["samples"] = csamples;
        return {SampleSpace(std::move(rs), Provenance::Explicit), metadata, canonical};
    }

    const json& g = j.at("generator");
    GeneratorSpec spec = parse_generator(g, order, dim, "problem.generator");
    if (g.contains("omega_values")) {
        const json& ov = g.at("omega_values");
        if (!ov.is_array() || ov.empty())
            throw ParseError("problem.generator.omega_values: expected a nonempty array");
        std::vector<std::vector<double>> omegas;
        for (std::size_t k = 0; k < ov.size(); ++k)
            omegas.push_back(parse_vector(ov[k], spec.omega_dim(),
                                          "problem.generator.omega_values[" + std::to_string(k) + "]"));
        canonical["generator"] = generator_to_json(spec, g);
        return {materialize_at(spec, omegas), metadata, canonical};
    }
    int n = require_int(require_field(g, "num_samples", "problem.generator"),
                        "problem.generator.num_samples");
    if (n < 1) throw ParseError("problem.generator.num_samples: must be >= 1");
    auto seed = static_cast<std::uint64_t>(
        require_int(require_field(g, "seed", "problem.generator"), "problem.generator.seed"));
    canonical["generator"] = generator_to_json(spec, g);
    try {
        return {materialize(spec, n, seed), metadata, canonical};
    } catch (const std::invalid_argument& ex) {
        throw ParseError(std::string("problem.generator: ") + ex.what());
    }
}

ParsedProblem parse_problem_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("problem: malformed JSON");
    return parse_problem(j);
}

ParsedProblem parse_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

namespace {

json example4_1() {
    json lin = json::array();
    for (auto [i, j, k, v] : std::vector<std::tuple<int, int, int, double>>{
             {0, 0, 0, -2}, {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, -2}, {0, 2, 2, 1},
             {1, 1, 1, 1}, {1, 1, 2, -2}, {1, 2, 1, -2}, {1, 2, 2, 1}})
        lin.push_back(json::array({json::array({i, j, k}), v}));
    json abs = json::array();
    for (auto [i, j, k, v] : std::vector<std::tuple<int, int, int, double>>{
             {0, 0, 1, -1}, {0, 1, 0, -1}, {0, 2, 2, 1}, {1, 1, 1, 1}, {1, 2, 2, 1}})
        abs.push_back(json::array({json::array({i, j, k}), v}));
    json p;
    p["order"] = 3;
    p["dim"] = 3;
    p["metadata"] = {
        {"name", "example4_1"},
        {"description",
         "Order-3 dimension-3 family whose entries combine w and |w|, w uniform on "
         "[-0.5, 0.5]; materialized here at the two points w = -0.25 and w = +0.25."},
        {"discrepancy_note",
         "Direct evaluation of these entries shows that x = (0,0,1) zeroes the min "
         "residual for every w: component 3 of A(w)x^2 vanishes identically and "
         "components 1-2 equal w + |w| >= 0. The family is therefore NOT a "
         "stochastic R0 family as entered, whatever the construction intended."}};
    p["generator"] = {
        {"base_tensor", json::array()},
        {"coefficients",
         json::array({json{{"tensor", lin}, {"omega_index", 0}, {"transform", "linear"}},
                      json{{"tensor", abs}, {"omega_index", 0}, {"transform", "abs"}}})},
        {"q_base", json::array({0.0, 0.0, 0.0})},
        {"q_coefficients", json::array({json::array({0.0, 0.0, 0.0})})},
        {"omega_dist", json::array({json{{"type", "uniform"}, {"lo", -0.5}, {"hi", 0.5}}})},
        {"omega_values", json::array({json::array({-0.25}), json::array({0.25})})}};
    return p;
}

json example4_2_entries() {
    json t = json::array();
    for (auto [i, j, k, v] : std::vector<std::tuple<int, int, int, double>>{
             {0, 2, 2, 1}, {0, 3, 3, -2}, {0, 4, 4, -3},
             {1, 2, 2, 1}, {1, 3, 3, -6}, {1, 4, 4, -3},
             {2, 0, 2, -1}, {2, 1, 2, -1},
             {3, 0, 3, 2}, {3, 1, 3, 6},
             {4, 0, 4, 3}, {4, 1, 4, 3}})
        t.push_back(json::array({json::array({i, j, k}), v}));
    return t;
}

json example4_2() {
    json p;
    p["order"] = 3;
    p["dim"] = 5;
    p["metadata"] = {
        {"name", "example4_2"},
        {"description",
         "Deterministic order-3 dimension-5 tensor with twelve nonzero entries; not "
         "R0 (witness (0,0,1,0,0) among others)."}};
    p["samples"] = json::array({json{{"weight", 1.0},
                                     {"tensor", example4_2_entries()},
                                     {"q", json::array({0.0, 0.0, 0.0, 0.0, 0.0})}}});
    return p;
}

json example4_2_perturbed() {
    json pert = json::array();
    for (auto [i, j, k, v] : std::vector<std::tuple<int, int, int, double>>{
             {0, 2, 2, 0.5}, {2, 0, 2, -0.5}, {2, 2, 0, -0.5}})
        pert.push_back(json::array({json::array({i, j, k}), v}));
    json p;
    p["order"] = 3;
    p["dim"] = 5;
    p["metadata"] = {
        {"name", "example4_2_perturbed"},
        {"description",
         "example4_2 plus a zero-mean random perturbation 0.5*w0 on entries touching "
         "index 3, w0 standard normal."},
        {"discrepancy_note",
         "The perturbation vanishes wherever x3 = 0, so x = (1,0,0,0,0) still zeroes "
         "the min residual for every w0; the perturbed family is NOT a stochastic R0 "
         "family even though the degenerate directions with x3 > 0 are removed."}};
    p["generator"] = {
        {"base_tensor", example4_2_entries()},
        {"coefficients",
         json::array({json{{"tensor", pert}, {"omega_index", 0}, {"transform", "linear"}}})},
        {"q_base", json::array({0.0, 0.0, 0.0, 0.0, 0.0})},
        {"q_coefficients", json::array({json::array({0.0, 0.0, 0.0, 0.0, 0.0})})},
        {"omega_dist", json::array({json{{"type", "normal"}, {"mean", 0.0}, {"stddev", 1.0}}})},
        {"num_samples", 10000},
        {"seed", 7}};
    return p;
}

json diagonal_problem(const std::string& name, int order, int dim, double diag) {
    json t = json::array();
    if (diag != 0.0)
        for (int i = 0; i < dim; ++i) {
            json idx = json::array();
            for (int k = 0; k < order; ++k) idx.push_back(i);
            t.push_back(json::array({idx, diag}));
        }
    json p;
    p["order"] = order;
    p["dim"] = dim;
    p["metadata"] = {{"name", name}};
    p["samples"] =
        json::array({json{{"weight", 1.0}, {"tensor", t}, {"q", std::vector<double>(dim, 0.0)}}});
    return p;
}

}  // namespace

json builtin_example(const std::string& name, int order, int dim) {
    if (name == "example4_1") return example4_1();
    if (name == "example4_2") return example4_2();
    if (name == "example4_2_perturbed") return example4_2_perturbed();
    if (name == "identity") return diagonal_problem("identity", order, dim, 1.0);
    if (name == "zero") return diagonal_problem("zero", order, dim, 0.0);
    throw ParseError("unknown builtin example '" + name + "'");
}

std::string emit_report(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string verdict_name(R0Verdict v) {
    switch (v) {
        case R0Verdict::IsR0: return "IS_R0";
        case R0Verdict::NotR0: return "NOT_R0";
        case R0Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

std::string ray_verdict_name(RayVerdict v) {
    switch (v) {
        case RayVerdict::Grows: return "GROWS";
        case RayVerdict::Bounded: return "BOUNDED";
        case RayVerdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

}  // namespace

json to_json(const CheckReport& r) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["certificate_residual"] = r.certificate_residual;
    if (r.witness) j["witness"] = *r.witness;
    j["all_witnesses"] = r.all_witnesses;
    j["grid"] = {{"resolution", r.grid.resolution},
                 {"random_starts", r.grid.random_starts},
                 {"not_r0_tol", r.grid.not_r0_tol},
                 {"is_r0_tol", r.grid.is_r0_tol}};
    return j;
}

json to_json(const SolveResult& r) {
    json trace = json::array();
    for (const auto& [it, f] : r.trace) trace.push_back(json::array({it, f}));
    return json{{"x_star", r.x_star},     {"objective", r.objective},
                {"converged", r.converged}, {"iterations", r.iterations},
                {"start_index", r.start_index}, {"trace", trace}};
}

json to_json(const RayProbeReport& r) {
    return json{{"direction", r.direction},
                {"lambdas", r.lambdas},
                {"values", r.values},
                {"value_at_one", r.value_at_one},
                {"verdict", ray_verdict_name(r.verdict)},
                {"bound_estimate", r.bound_estimate},
                {"overflow_clamped", r.overflow_clamped}};
}

json to_json(const CoercivityScan& r) {
    json reports = json::array();
    for (const auto& rep : r.reports) reports.push_back(to_json(rep));
    json j;
    j["aggregate"] = ray_verdict_name(r.aggregate);
    if (r.bounded_witness) j["bounded_witness"] = *r.bounded_witness;
    j["reports"] = reports;
    return j;
}

json to_json(const BoundednessReport& r) {
    return json{{"g_zero", r.g_zero},
                {"lambdas", r.lambdas},
                {"values", r.values},
                {"plateau_estimate", r.plateau_estimate},
                {"support_moment", r.support_moment},
                {"regime", r.regime}};
}

json to_json(const Theorem41Conditions& r) {
    return json{{"cond_a", r.cond_a}, {"cond_b", r.cond_b}};
}

json to_json(const Prop41Record& r) {
    return json{{"mean_is_r0", r.mean_is_r0},
                {"mean_report", to_json(r.mean_report)},
                {"stochastic", to_json(r.stochastic)}};
}

json to_json(const std::vector<XiPoint>& pts) {
    json j = json::array();
    for (const auto& p : pts) j.push_back(json{{"x", p.x}, {"max_violation", p.max_violation}});
    return j;
}

json to_json(const std::vector<Prop42Record>& recs) {
    json j = json::array();
    for (const auto& r : recs) j.push_back(json{{"cond1", r.cond1}, {"cond2", r.cond2}});
    return j;
}

}  // namespace stcp::io
