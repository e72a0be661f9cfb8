#pragma once

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "uassoc/chain.hpp"
#include "uassoc/homology.hpp"
#include "uassoc/point.hpp"

namespace uassoc {

using Json = nlohmann::json;

inline Json point_to_json(const Tree& tree, const std::vector<Rational>& labels) {
    Json j;
    j["tree"] = serialize_tree(tree);
    Json arr = Json::array();
    for (const Rational& x : labels) arr.push_back(rational_to_string(x));
    j["labels"] = std::move(arr);
    return j;
}

inline Json point_to_json(const LabeledPoint& p) { return point_to_json(p.tree, p.labels); }
inline Json point_to_json(const NormalPoint& p) { return point_to_json(p.tree, p.labels); }

inline LabeledPoint point_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("tree") || !j.contains("labels"))
        throw std::invalid_argument("point JSON needs \"tree\" and \"labels\"");
    LabeledPoint p;
    p.tree = parse_tree(j.at("tree").get<std::string>());
    for (const auto& x : j.at("labels"))
        p.labels.push_back(rational_from_string(x.get<std::string>()));
    validate_point(p);
    return p;
}

/// Terms sorted by (degree, tree text); coefficients as decimal strings.
inline Json chain_to_json(const ChainElement& x) {
    std::vector<std::pair<std::pair<int, std::string>, BigInt>> rows;
    for (const auto& [key, coef] : x.terms())
        rows.push_back({{cell_degree(parse_tree(key)), key}, coef});
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Json arr = Json::array();
    for (const auto& [dk, coef] : rows) {
        Json term;
        term["coef"] = coef.str();
        term["tree"] = dk.second;
        arr.push_back(std::move(term));
    }
    return arr;
}

inline Json convention_report_json(const ConventionReport& report) {
    Json j;
    j["max_weight"] = report.max_weight;
    Json cands = Json::array();
    for (const auto& c : report.candidates) {
        Json e;
        e["convention"] = c.convention.to_string();
        e["passes"] = c.passes;
        if (!c.passes) {
            e["first_failure"] = c.first_failure;
            e["residual"] = chain_to_json(c.residual);
        }
        cands.push_back(std::move(e));
    }
    j["candidates"] = std::move(cands);
    if (report.validated) j["validated"] = report.validated->to_string();
    return j;
}

inline Json homology_report_json(const ChainComplexSlice& slice, const HomologySummary& summary) {
    Json j;
    j["arity"] = slice.arity;
    j["max_corks"] = slice.max_corks;
    Json fv = Json::array();
    for (const auto& b : slice.basis) fv.push_back(b.size());
    j["f_vector"] = std::move(fv);
    j["euler"] = euler_characteristic(slice);
    Json hs = Json::array();
    for (const auto& h : summary.degrees) {
        Json e;
        e["degree"] = h.degree;
        e["betti"] = h.betti;
        Json tor = Json::array();
        for (const BigInt& t : h.torsion) tor.push_back(t.str());
        e["torsion"] = std::move(tor);
        hs.push_back(std::move(e));
    }
    j["homology"] = std::move(hs);
    return j;
}

/// Face-poset export: one node per cell, one arc per boundary incidence.
inline Json export_json(const ChainComplexSlice& slice) {
    Json nodes = Json::array();
    for (std::size_t k = 0; k < slice.basis.size(); ++k)
        for (const Tree& t : slice.basis[k]) {
            Json n;
            n["tree"] = serialize_tree(t);
            n["dim"] = k;
            nodes.push_back(std::move(n));
        }
    Json arcs = Json::array();
    for (std::size_t k = 1; k < slice.basis.size(); ++k) {
        const IntMatrix& m = slice.boundary[k];
        for (std::size_t col = 0; col < slice.basis[k].size(); ++col)
            for (std::size_t row = 0; row < slice.basis[k - 1].size(); ++row)
                if (m[row][col] != 0) {
                    Json a;
                    a["from"] = serialize_tree(slice.basis[k][col]);
                    a["to"] = serialize_tree(slice.basis[k - 1][row]);
                    a["coef"] = m[row][col].str();
                    arcs.push_back(std::move(a));
                }
    }
    Json j;
    j["arity"] = slice.arity;
    j["max_corks"] = slice.max_corks;
    j["nodes"] = std::move(nodes);
    j["arcs"] = std::move(arcs);
    return j;
}

inline std::string export_dot(const ChainComplexSlice& slice) {
    std::ostringstream os;
    os << "digraph faces {\n";
    for (std::size_t k = 0; k < slice.basis.size(); ++k)
        for (const Tree& t : slice.basis[k])
            os << "  \"" << serialize_tree(t) << "\" [dim=" << k << "];\n";
    for (std::size_t k = 1; k < slice.basis.size(); ++k) {
        const IntMatrix& m = slice.boundary[k];
        for (std::size_t col = 0; col < slice.basis[k].size(); ++col)
            for (std::size_t row = 0; row < slice.basis[k - 1].size(); ++row)
                if (m[row][col] != 0)
                    os << "  \"" << serialize_tree(slice.basis[k][col]) << "\" -> \""
                       << serialize_tree(slice.basis[k - 1][row]) << "\" [coef="
                       << m[row][col].str() << "];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace uassoc
