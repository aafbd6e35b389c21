#pragma once

// JSON serialization of tensors and curvature reports. Components are nested
// arrays in row-major order over the chart's coordinate order, which the
// "index_order" field documents.

#include <string>

#include <json.hpp>

#include "rotgas/curvature.hpp"
#include "rotgas/tensor.hpp"

namespace rotgas {

inline nlohmann::json components_to_json(const CovTensor& t, int slot, std::size_t base, std::size_t stride) {
    if (slot == t.order()) return t[base];
    nlohmann::json arr = nlohmann::json::array();
    std::size_t sub = stride / kDim;
    for (int i = 0; i < kDim; ++i)
        arr.push_back(components_to_json(t, slot + 1, base + static_cast<std::size_t>(i) * sub, sub));
    return arr;
}

inline nlohmann::json tensor_to_json(const CovTensor& t) {
    nlohmann::json j;
    j["order"] = t.order();
    j["chart"] = chart_name(t.chart());
    j["index_order"] = "row-major";
    j["components"] = components_to_json(t, 0, 0, t.size());
    return j;
}

inline void components_from_json(const nlohmann::json& node, CovTensor& t, int slot, std::size_t base,
                                 std::size_t stride) {
    if (slot == t.order()) {
        t[base] = node.get<double>();
        return;
    }
    std::size_t sub = stride / kDim;
    for (int i = 0; i < kDim; ++i)
        components_from_json(node.at(static_cast<std::size_t>(i)), t, slot + 1,
                             base + static_cast<std::size_t>(i) * sub, sub);
}

inline CovTensor tensor_from_json(const nlohmann::json& j) {
    CovTensor t(j.at("order").get<int>(), chart_from_name(j.at("chart").get<std::string>()));
    components_from_json(j.at("components"), t, 0, 0, t.size());
    return t;
}

inline nlohmann::json report_to_json(const CurvatureReport& rep, const GasParameters& gp) {
    nlohmann::json j;
    j["gas"] = {{"mass", gp.m}, {"radius", gp.R}};
    j["point"] = {{"beta", rep.point.beta},
                  {"omega", {rep.point.omega.x, rep.point.omega.y, rep.point.omega.z}},
                  {"theta", rep.point.theta()}};
    j["chart"] = chart_name(rep.chart);
    j["metric"] = tensor_to_json(rep.g);
    j["metric_inverse"] = tensor_to_json(rep.g_inv);
    j["Dg"] = tensor_to_json(rep.Dg);
    j["D2g"] = tensor_to_json(rep.D2g);
    j["hessian_curvature"] = tensor_to_json(rep.K);
    j["riemann"] = tensor_to_json(rep.Riem);
    j["sectional"] = {{"min", rep.sect.min}, {"max", rep.sect.max}, {"planes", rep.sect.planes}};
    j["kn_deviation"] = rep.kn_dev;
    return j;
}

} // namespace rotgas
