#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "metsub/analysis.hpp"
#include "metsub/masks.hpp"
#include "metsub/sequence.hpp"
#include "metsub/spaces/compact_set.hpp"
#include "metsub/spaces/hermite.hpp"
#include "metsub/spaces/wasserstein.hpp"

namespace metsub {

using json = nlohmann::json;

// Canonical text form: two-space indent, sorted keys (the parser's natural
// order), trailing newline. Serialize/parse/serialize is byte-identical.
inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_input(what + ": " + e.what());
    }
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write file: " + path);
    out << text;
}

// ---- data documents -------------------------------------------------------

struct PointsDoc {
    std::string space = "euclidean";  // euclidean | sphere
    std::size_t dim = 0;
    ElementSequence<Vec> seq;
};

inline json to_json(const PointsDoc& doc) {
    json pts = json::array();
    for (const auto& p : doc.seq.elems) pts.push_back(p);
    return {{"space", doc.space},
            {"dim", doc.dim},
            {"closed", doc.seq.closed()},
            {"points", pts}};
}

inline PointsDoc points_from_json(const json& j) {
    PointsDoc doc;
    try {
        doc.space = j.at("space").get<std::string>();
        doc.dim = j.at("dim").get<std::size_t>();
        doc.seq.boundary =
            j.at("closed").get<bool>() ? Boundary::closed : Boundary::open;
        for (const auto& p : j.at("points")) {
            doc.seq.elems.push_back(p.get<Vec>());
            if (doc.seq.elems.back().size() != doc.dim)
                throw invalid_input("points document: dim mismatch");
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("points document: ") + e.what());
    }
    if (doc.space != "euclidean" && doc.space != "sphere")
        throw invalid_input("points document: unknown space " + doc.space);
    return doc;
}

struct HermiteDoc {
    ElementSequence<HermitePair> seq;
};

inline json to_json(const HermiteDoc& doc) {
    json pairs = json::array();
    for (const auto& e : doc.seq.elems) pairs.push_back({{"p", e.p}, {"v", e.v}});
    return {{"closed", doc.seq.closed()}, {"pairs", pairs}};
}

inline HermiteDoc hermite_from_json(const json& j) {
    HermiteDoc doc;
    try {
        doc.seq.boundary = j.value("closed", false) ? Boundary::closed : Boundary::open;
        for (const auto& e : j.at("pairs"))
            doc.seq.elems.push_back(
                HermitePair::make(e.at("p").get<Vec>(), e.at("v").get<Vec>()));
    } catch (const json::exception& e) {
        throw invalid_input(std::string("hermite document: ") + e.what());
    }
    return doc;
}

struct SetsDoc {
    ElementSequence<FiniteSet> seq;
};

inline json to_json(const SetsDoc& doc) {
    json sets = json::array();
    for (const auto& s : doc.seq.elems) {
        json one = json::array();
        for (const auto& p : s.points) one.push_back(p);
        sets.push_back(one);
    }
    return {{"closed", doc.seq.closed()}, {"sets", sets}};
}

inline SetsDoc sets_from_json(const json& j) {
    SetsDoc doc;
    try {
        doc.seq.boundary = j.value("closed", false) ? Boundary::closed : Boundary::open;
        for (const auto& s : j.at("sets")) {
            std::vector<Vec> pts;
            for (const auto& p : s) pts.push_back(p.get<Vec>());
            doc.seq.elems.push_back(make_set(std::move(pts)));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("sets document: ") + e.what());
    }
    return doc;
}

struct MeasuresDoc {
    ElementSequence<Measure1D> seq;
};

inline json to_json(const MeasuresDoc& doc) {
    json ms = json::array();
    for (const auto& m : doc.seq.elems) {
        json atoms = json::array();
        for (const auto& a : m.atoms) atoms.push_back({{"x", a.x}, {"w", a.w}});
        ms.push_back({{"atoms", atoms}});
    }
    return {{"closed", doc.seq.closed()}, {"measures", ms}};
}

inline MeasuresDoc measures_from_json(const json& j) {
    MeasuresDoc doc;
    try {
        doc.seq.boundary = j.value("closed", false) ? Boundary::closed : Boundary::open;
        for (const auto& m : j.at("measures")) {
            std::vector<Atom> atoms;
            for (const auto& a : m.at("atoms"))
                atoms.push_back({a.at("x").get<double>(), a.at("w").get<double>()});
            doc.seq.elems.push_back(make_measure(std::move(atoms)));
        }
    } catch (const json::exception& e) {
        throw invalid_input(std::string("measures document: ") + e.what());
    }
    return doc;
}

// ---- report serialization -------------------------------------------------

inline json to_json(const ContractivityReport& r) {
    return {{"delta_trace", r.delta_trace}, {"mu", r.mu},       {"best_L", r.best_l},
            {"best_mu", r.best_mu},         {"C_P", r.c_p},     {"degenerate", r.degenerate}};
}

inline json to_json(const DisplacementReport& r) {
    return {{"per_level", r.per_level}, {"C_S", r.c_s}};
}

inline json to_json(const ProximityType1Report& r) {
    return {{"deltas", r.deltas},
            {"sups", r.sups},
            {"exponent", r.exponent},
            {"constant", r.constant},
            {"residual", r.residual},
            {"mu_w", r.mu_w},
            {"admissible_delta", r.admissible_delta},
            {"identical", r.identical}};
}

inline json to_json(const ProximityType2Report& r) {
    return {{"e", r.e},           {"ratios", r.ratios}, {"eta_hat", r.eta_hat},
            {"m_hat", r.m_hat},   {"E_hat", r.e_cap},   {"burn_in", r.burn_in},
            {"identical", r.identical}};
}

inline json to_json(const DividedDiffTrace& r) {
    json diffs = json::array();
    for (const auto& lvl : r.diffs) {
        json one = json::array();
        for (const auto& d : lvl) one.push_back(d);
        diffs.push_back(one);
    }
    return {{"diffs", diffs},
            {"deltas", r.deltas},
            {"interpolant_gaps", r.interpolant_gaps}};
}

inline json to_json(const CauchyTrace& r) {
    return {{"d", r.d}, {"fitted_ratio", r.fitted_ratio}, {"fitted_base", r.fitted_base}};
}

inline json to_json(const ApproxOrderReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"h", row.h},
                        {"error", row.error},
                        {"bound", row.bound},
                        {"within", row.within}});
    return {{"rows", rows},
            {"fitted_slope", r.fitted_slope},
            {"lipschitz_verified", r.lipschitz_verified}};
}

inline json to_json(const LocalityReport& r) {
    return {{"spread", r.spread},
            {"bound", r.bound},
            {"differing", r.differing},
            {"within", r.within}};
}

inline json to_json(const MaskTable& r) {
    return {{"even", r.even}, {"odd", r.odd}};
}

// NaNs serialize to null under nlohmann; normalize them for schema checks.
inline json finite_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

// ---- CSV traces -----------------------------------------------------------

inline std::string csv_trace(const std::string& column,
                             const std::vector<double>& values) {
    std::ostringstream out;
    out << "level," << column << "\n";
    out.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << "," << values[i] << "\n";
    return out.str();
}

// ---- published schemas and a minimal structural validator -----------------

inline json data_schemas() {
    const json number = {{"type", "number"}};
    const json vec = {{"type", "array"}, {"items", number}};
    json schemas;
    schemas["points"] = {
        {"type", "object"},
        {"required", {"space", "dim", "closed", "points"}},
        {"properties",
         {{"space", {{"type", "string"}, {"enum", {"euclidean", "sphere"}}}},
          {"dim", {{"type", "integer"}}},
          {"closed", {{"type", "boolean"}}},
          {"points", {{"type", "array"}, {"items", vec}}}}}};
    schemas["hermite"] = {
        {"type", "object"},
        {"required", {"pairs"}},
        {"properties",
         {{"closed", {{"type", "boolean"}}},
          {"pairs",
           {{"type", "array"},
            {"items",
             {{"type", "object"},
              {"required", {"p", "v"}},
              {"properties", {{"p", vec}, {"v", vec}}}}}}}}}};
    schemas["sets"] = {
        {"type", "object"},
        {"required", {"sets"}},
        {"properties",
         {{"closed", {{"type", "boolean"}}},
          {"sets", {{"type", "array"}, {"items", {{"type", "array"}, {"items", vec}}}}}}}};
    schemas["measures"] = {
        {"type", "object"},
        {"required", {"measures"}},
        {"properties",
         {{"closed", {{"type", "boolean"}}},
          {"measures",
           {{"type", "array"},
            {"items",
             {{"type", "object"},
              {"required", {"atoms"}},
              {"properties",
               {{"atoms",
                 {{"type", "array"},
                  {"items",
                   {{"type", "object"},
                    {"required", {"x", "w"}},
                    {"properties", {{"x", number}, {"w", number}}}}}}}}}}}}}}}};
    return schemas;
}

inline json report_schemas() {
    const json number = {{"type", "number"}};
    const json number_array = {{"type", "array"}, {"items", number}};
    json schemas;
    schemas["contractivity"] = {
        {"type", "object"},
        {"required", {"delta_trace", "mu", "best_L", "C_P", "degenerate"}},
        {"properties",
         {{"delta_trace", number_array},
          {"mu", {{"type", "array"}}},
          {"best_L", {{"type", "integer"}}},
          {"best_mu", {{"type", "number"}}},
          {"C_P", number},
          {"degenerate", {{"type", "boolean"}}}}}};
    schemas["displacement"] = {
        {"type", "object"},
        {"required", {"per_level", "C_S"}},
        {"properties", {{"per_level", number_array}, {"C_S", number}}}};
    schemas["proximity1"] = {
        {"type", "object"},
        {"required", {"deltas", "sups", "exponent", "constant", "identical"}},
        {"properties",
         {{"deltas", number_array},
          {"sups", number_array},
          {"exponent", number},
          {"constant", number},
          {"residual", number},
          {"mu_w", number},
          {"identical", {{"type", "boolean"}}}}}};
    schemas["proximity2"] = {
        {"type", "object"},
        {"required", {"e", "ratios", "m_hat", "E_hat", "burn_in", "identical"}},
        {"properties",
         {{"e", number_array},
          {"ratios", number_array},
          {"m_hat", {{"type", "integer"}}},
          {"E_hat", number},
          {"burn_in", {{"type", "integer"}}},
          {"identical", {{"type", "boolean"}}}}}};
    schemas["divided_diff"] = {
        {"type", "object"},
        {"required", {"diffs", "deltas", "interpolant_gaps"}},
        {"properties",
         {{"diffs", {{"type", "array"}}},
          {"deltas", number_array},
          {"interpolant_gaps", number_array}}}};
    schemas["cauchy"] = {
        {"type", "object"},
        {"required", {"d", "fitted_ratio", "fitted_base"}},
        {"properties",
         {{"d", number_array}, {"fitted_ratio", number}, {"fitted_base", number}}}};
    schemas["approx_order"] = {
        {"type", "object"},
        {"required", {"rows", "fitted_slope"}},
        {"properties",
         {{"rows",
           {{"type", "array"},
            {"items",
             {{"type", "object"},
              {"required", {"h", "error", "bound", "within"}}}}}},
          {"fitted_slope", number},
          {"lipschitz_verified", {{"type", "boolean"}}}}}};
    schemas["locality"] = {
        {"type", "object"},
        {"required", {"spread", "bound", "differing", "within"}},
        {"properties",
         {{"spread", {{"type", "integer"}}},
          {"bound", {{"type", "integer"}}},
          {"differing", {{"type", "integer"}}},
          {"within", {{"type", "boolean"}}}}}};
    schemas["masks"] = {
        {"type", "object"},
        {"required", {"even", "odd"}},
        {"properties", {{"even", number_array}, {"odd", number_array}}}};
    return schemas;
}

// Structural validation for the subset of JSON Schema used above:
// type, properties, required, items, enum. Returns "" when valid,
// otherwise a path-qualified message.
inline std::string validate_schema(const json& schema, const json& value,
                                   const std::string& path = "$") {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        const bool ok =
            (t == "object" && value.is_object()) ||
            (t == "array" && value.is_array()) ||
            (t == "string" && value.is_string()) ||
            (t == "boolean" && value.is_boolean()) ||
            (t == "integer" && value.is_number_integer()) ||
            (t == "number" && (value.is_number() || value.is_null()));
        if (!ok) return path + ": expected " + t;
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"])
            if (e == value) found = true;
        if (!found) return path + ": value not in enum";
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return path + ": missing required key " + key.get<std::string>();
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key)) {
                    const auto err = validate_schema(sub, value[key], path + "." + key);
                    if (!err.empty()) return err;
                }
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            const auto err = validate_schema(schema["items"], value[i],
                                             path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    }
    return "";
}

}  // namespace metsub
