#include "comdf/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "comdf/errors.hpp"

namespace comdf {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    fail(ErrorCode::Parse, "scenario " + where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            parse_fail(where, "unknown key '" + item.key() + "'");
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) parse_fail(where, "missing key '" + key + "'");
    return obj.at(key);
}

double as_number(const json& value, const std::string& where) {
    if (!value.is_number()) parse_fail(where, "expected a number");
    return value.get<double>();
}

Matrix parse_matrix(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) parse_fail(where, "expected a non-empty array of rows");
    const std::size_t rows = value.size();
    if (!value[0].is_array() || value[0].empty())
        parse_fail(where, "expected rows to be non-empty arrays");
    const std::size_t cols = value[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!value[i].is_array() || value[i].size() != cols)
            parse_fail(where, "row " + std::to_string(i + 1) + " has inconsistent length");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = as_number(value[i][j], where + " entry (" + std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1) + ")");
    }
    if (!is_finite(m)) parse_fail(where, "entries must be finite");
    return m;
}

Vector parse_vector(const json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) parse_fail(where, "expected a non-empty array");
    Vector v(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        v(i) = as_number(value[i], where + " entry " + std::to_string(i + 1));
    if (!v.allFinite()) parse_fail(where, "entries must be finite");
    return v;
}

PlantModel parse_plant(const json& obj) {
    if (!obj.is_object()) parse_fail("plant", "expected an object");
    if (obj.contains("preset")) {
        reject_unknown_keys(obj, "plant", {"preset", "T"});
        const std::string preset = require(obj, "plant", "preset").get<std::string>();
        if (preset != "constant_velocity")
            parse_fail("plant", "unknown preset '" + preset + "'");
        return PlantModel::constant_velocity(as_number(require(obj, "plant", "T"), "plant.T"));
    }
    reject_unknown_keys(obj, "plant", {"A", "Q"});
    PlantModel plant{parse_matrix(require(obj, "plant", "A"), "plant.A"),
                    parse_matrix(require(obj, "plant", "Q"), "plant.Q")};
    plant.validate();
    return plant;
}

std::vector<Sensor> parse_sensors(const json& arr, int state_dim) {
    if (!arr.is_array() || arr.empty()) parse_fail("sensors", "expected a non-empty array");
    std::vector<Sensor> sensors;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "sensors[" + std::to_string(i + 1) + "]";
        const json& obj = arr[i];
        if (!obj.is_object()) parse_fail(where, "expected an object");
        reject_unknown_keys(obj, where, {"type", "C", "R"});
        const std::string type = require(obj, where, "type").get<std::string>();
        Sensor sensor;
        if (type == "position" || type == "velocity") {
            if (state_dim != 4)
                parse_fail(where, "'" + type + "' sensors require the 4-dimensional plant");
            if (obj.contains("C")) parse_fail(where, "'" + type + "' sensors fix C; drop the key");
            sensor.C = type == "position" ? position_observation_matrix()
                                          : velocity_observation_matrix();
            sensor.R = obj.contains("R")
                           ? parse_matrix(obj.at("R"), where + ".R")
                           : Matrix(type == "position" ? Matrix::Identity(2, 2)
                                                       : Matrix(5.0 * Matrix::Identity(2, 2)));
        } else if (type == "custom") {
            sensor.C = parse_matrix(require(obj, where, "C"), where + ".C");
            sensor.R = parse_matrix(require(obj, where, "R"), where + ".R");
        } else {
            parse_fail(where, "unknown sensor type '" + type + "'");
        }
        if (sensor.C.cols() != state_dim)
            parse_fail(where, "C has " + std::to_string(sensor.C.cols()) +
                                  " columns but the state dimension is " +
                                  std::to_string(state_dim));
        sensors.push_back(std::move(sensor));
    }
    return sensors;
}

DiGraph parse_graph(const json& obj, int sensor_count) {
    if (!obj.is_object()) parse_fail("graph", "expected an object");
    reject_unknown_keys(obj, "graph", {"edges"});
    const json& edges_json = require(obj, "graph", "edges");
    if (!edges_json.is_array()) parse_fail("graph.edges", "expected an array of [from, to] pairs");
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const json& e = edges_json[i];
        const std::string where = "graph.edges[" + std::to_string(i + 1) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            parse_fail(where, "expected a [from, to] pair of integers");
        int from = e[0].get<int>();
        int to = e[1].get<int>();
        if (from < 1 || from > sensor_count || to < 1 || to > sensor_count)
            parse_fail(where, "node ids are 1-based and must be in 1.." +
                                  std::to_string(sensor_count));
        edges.emplace_back(from - 1, to - 1);
    }
    return DiGraph(sensor_count, edges);
}

void parse_design(const json& obj, ScenarioConfig& cfg) {
    if (!obj.is_object()) parse_fail("design", "expected an object");
    reject_unknown_keys(obj, "design",
                        {"policy", "slack", "shift", "mu_table", "anchor_own_measurement"});
    const std::string policy = require(obj, "design", "policy").get<std::string>();
    if (policy == "distributed") {
        cfg.policy = MuPolicy::Distributed;
        cfg.slack = obj.contains("slack") ? as_number(obj.at("slack"), "design.slack") : 1.0;
        cfg.shift = obj.contains("shift") ? as_number(obj.at("shift"), "design.shift") : 1.0;
        if (obj.contains("mu_table"))
            parse_fail("design", "mu_table is only valid with the explicit policy");
    } else if (policy == "unified") {
        cfg.policy = MuPolicy::Unified;
        if (obj.contains("slack") || obj.contains("shift") || obj.contains("mu_table"))
            parse_fail("design", "unified policy takes no slack/shift/mu_table");
    } else if (policy == "explicit") {
        cfg.policy = MuPolicy::Explicit;
        cfg.mu_table = parse_matrix(require(obj, "design", "mu_table"), "design.mu_table");
        if (obj.contains("slack") || obj.contains("shift"))
            parse_fail("design", "explicit policy takes no slack/shift");
    } else {
        parse_fail("design", "unknown policy '" + policy + "'");
    }
    if (obj.contains("anchor_own_measurement")) {
        if (!obj.at("anchor_own_measurement").is_boolean())
            parse_fail("design.anchor_own_measurement", "expected a boolean");
        cfg.anchor_own_measurement = obj.at("anchor_own_measurement").get<bool>();
    }
}

void parse_run(const json& obj, ScenarioConfig& cfg) {
    if (!obj.is_object()) parse_fail("run", "expected an object");
    reject_unknown_keys(obj, "run",
                        {"l", "horizon", "trials", "seed", "x0", "P0",
                         "independent_initial_estimates"});
    auto as_count = [&](const char* key) {
        const json& v = require(obj, "run", key);
        if (!v.is_number_integer() || v.get<long long>() < 1)
            parse_fail(std::string("run.") + key, "expected a positive integer");
        return static_cast<long>(v.get<long long>());
    };
    cfg.fusion_steps = as_count("l");
    cfg.horizon = as_count("horizon");
    cfg.trials = as_count("trials");
    const json& seed = require(obj, "run", "seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0))
        parse_fail("run.seed", "expected a nonnegative integer");
    cfg.seed = seed.get<std::uint64_t>();
    cfg.x0 = parse_vector(require(obj, "run", "x0"), "run.x0");
    cfg.P0 = parse_matrix(require(obj, "run", "P0"), "run.P0");
    if (obj.contains("independent_initial_estimates")) {
        if (!obj.at("independent_initial_estimates").is_boolean())
            parse_fail("run.independent_initial_estimates", "expected a boolean");
        cfg.independent_initial_estimates = obj.at("independent_initial_estimates").get<bool>();
    }
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_to_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

bool same(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

bool same(const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::Parse, std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("document", "expected a JSON object");
    reject_unknown_keys(doc, "document", {"plant", "sensors", "graph", "design", "run"});

    ScenarioConfig cfg;
    cfg.plant = parse_plant(require(doc, "document", "plant"));
    cfg.sensors = parse_sensors(require(doc, "document", "sensors"), cfg.plant.state_dim());
    cfg.graph = parse_graph(require(doc, "document", "graph"),
                            static_cast<int>(cfg.sensors.size()));
    parse_design(require(doc, "document", "design"), cfg);
    parse_run(require(doc, "document", "run"), cfg);
    cfg.validate();
    // Explicit tables are validated against the now-known sensor count.
    if (cfg.policy == MuPolicy::Explicit) MuTable{*cfg.mu_table}.validate(cfg.graph.node_count());
    return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_json(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    json doc;
    doc["plant"] = {{"A", matrix_to_json(cfg.plant.A)}, {"Q", matrix_to_json(cfg.plant.Q)}};

    json sensors = json::array();
    const bool planar = cfg.plant.state_dim() == 4;
    for (const Sensor& s : cfg.sensors) {
        json entry;
        if (planar && s.C.rows() == 2 && same(s.C, position_observation_matrix()))
            entry["type"] = "position";
        else if (planar && s.C.rows() == 2 && same(s.C, velocity_observation_matrix()))
            entry["type"] = "velocity";
        else {
            entry["type"] = "custom";
            entry["C"] = matrix_to_json(s.C);
        }
        entry["R"] = matrix_to_json(s.R);
        sensors.push_back(std::move(entry));
    }
    doc["sensors"] = std::move(sensors);

    json edges = json::array();
    const auto& adj = cfg.graph.adjacency();
    for (int from = 0; from < cfg.graph.node_count(); ++from)
        for (int to = 0; to < cfg.graph.node_count(); ++to)
            if (adj(to, from)) edges.push_back(json::array({from + 1, to + 1}));
    doc["graph"] = {{"edges", std::move(edges)}};

    json design;
    switch (cfg.policy) {
        case MuPolicy::Distributed:
            design["policy"] = "distributed";
            design["slack"] = cfg.slack;
            design["shift"] = cfg.shift;
            break;
        case MuPolicy::Unified:
            design["policy"] = "unified";
            break;
        case MuPolicy::Explicit:
            design["policy"] = "explicit";
            design["mu_table"] = matrix_to_json(*cfg.mu_table);
            break;
    }
    if (cfg.anchor_own_measurement) design["anchor_own_measurement"] = true;
    doc["design"] = std::move(design);

    json run;
    run["l"] = cfg.fusion_steps;
    run["horizon"] = cfg.horizon;
    run["trials"] = cfg.trials;
    run["seed"] = cfg.seed;
    run["x0"] = vector_to_json(cfg.x0);
    run["P0"] = matrix_to_json(cfg.P0);
    if (cfg.independent_initial_estimates) run["independent_initial_estimates"] = true;
    doc["run"] = std::move(run);

    return doc.dump(2) + "\n";
}

bool scenario_equal(const ScenarioConfig& a, const ScenarioConfig& b) {
    if (!same(a.plant.A, b.plant.A) || !same(a.plant.Q, b.plant.Q)) return false;
    if (a.sensors.size() != b.sensors.size()) return false;
    for (std::size_t i = 0; i < a.sensors.size(); ++i)
        if (!same(a.sensors[i].C, b.sensors[i].C) || !same(a.sensors[i].R, b.sensors[i].R))
            return false;
    if (!(a.graph == b.graph)) return false;
    if (a.policy != b.policy || a.anchor_own_measurement != b.anchor_own_measurement)
        return false;
    if (a.policy == MuPolicy::Distributed && (a.slack != b.slack || a.shift != b.shift))
        return false;
    if (a.policy == MuPolicy::Explicit && !same(*a.mu_table, *b.mu_table)) return false;
    return a.fusion_steps == b.fusion_steps && a.horizon == b.horizon &&
           a.trials == b.trials && a.seed == b.seed && same(a.x0, b.x0) && same(a.P0, b.P0) &&
           a.independent_initial_estimates == b.independent_initial_estimates;
}

}  // namespace comdf
