#include "trigokit/report_json.hpp"

#include <json.hpp>

namespace trigokit {

namespace {

using nlohmann::json;

json to_json(const ResidualReport& r) {
    json out;
    for (const auto& eq : r.equations) {
        out[eq.name] = {
            {"max_abs", eq.max_abs},
            {"relative", eq.relative},
            {"worst_k", {eq.worst_k[0], eq.worst_k[1], eq.worst_k[2]}},
        };
    }
    return out;
}

json to_json(const SymMat3& m) {
    return json::array({m.e11, m.e22, m.e33, m.e23, m.e13, m.e12});
}

json to_json(const TwinPair& t) {
    return {
        {"a", {t.a.x, t.a.y, t.a.z}},
        {"n", {t.n.x, t.n.y, t.n.z}},
    };
}

} // namespace

std::string residual_report_json(const ResidualReport& r, int indent) {
    return to_json(r).dump(indent);
}

std::string structure_report_json(const StructureReport& r, int indent) {
    json out;
    out["kind"] = structure_kind_name(r.kind);
    out["invariant_axis"] = r.invariant_axis >= 0 ? json(r.invariant_axis + 1) : json(nullptr);

    switch (r.kind) {
        case StructureKind::Constant:
            out["well"] = r.well_pair[0];
            break;
        case StructureKind::SimpleLaminate:
            out["well_pair"] = {r.well_pair[0], r.well_pair[1]};
            if (r.normal) out["normal"] = {r.normal->n.x, r.normal->n.y, r.normal->n.z};
            if (r.normal) out["shear_amplitude"] = {r.normal->a.x, r.normal->a.y, r.normal->a.z};
            out["profile"] = r.profile.to_string();
            break;
        case StructureKind::CrossingTwin:
            out["f_axis"] = r.f_axis + 1;
            out["g_axis"] = r.g_axis + 1;
            out["f"] = r.f.to_string();
            out["g"] = r.g.to_string();
            out["shear"] = r.shear;
            break;
        case StructureKind::Inadmissible:
            break;
    }

    json diag;
    diag["defect_fraction"] = r.diagnostics.defect_fraction;
    diag["failed_stage"] =
        r.diagnostics.failed_stage.empty() ? json(nullptr) : json(r.diagnostics.failed_stage);
    if (!r.diagnostics.detail.empty()) diag["detail"] = r.diagnostics.detail;
    diag["psi_constant"] = {r.diagnostics.psi_constant[0], r.diagnostics.psi_constant[1],
                            r.diagnostics.psi_constant[2]};
    diag["residuals"] = to_json(r.diagnostics.residuals);
    diag["slice_average_deviation"] = {{"e23", r.diagnostics.slice_deviation.e23},
                                       {"e13", r.diagnostics.slice_deviation.e13},
                                       {"e12", r.diagnostics.slice_deviation.e12}};
    out["diagnostics"] = diag;
    return out.dump(indent);
}

std::string well_set_json(const WellSet& set, int indent) {
    json out;
    out["params"] = {{"d1", set.params.d1}, {"d2", set.params.d2}, {"d3", set.params.d3}};
    json wells = json::array();
    for (const auto& w : set.wells) wells.push_back(to_json(w));
    out["wells"] = wells;
    return out.dump(indent);
}

std::string twin_table_json(const std::array<TwinTableRow, 6>& rows, int indent) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back({
            {"pair", {row.well_i, row.well_j}},
            {"solution_a", to_json(row.decomposition.solution_a)},
            {"solution_b", to_json(row.decomposition.solution_b)},
        });
    }
    return arr.dump(indent);
}

} // namespace trigokit
