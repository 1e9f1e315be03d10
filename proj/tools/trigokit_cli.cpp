// Command line front end: well algebra, field generation, verification,
// classification, displacement reconstruction and CSV export on periodic
// strain fields.
//
// Exit codes: 0 success, 1 model-level failure, 2 usage, 3 generator
// precondition, 4 file format.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trigokit/classifier.hpp"
#include "trigokit/errors.hpp"
#include "trigokit/field_io.hpp"
#include "trigokit/generators.hpp"
#include "trigokit/report_json.hpp"
#include "trigokit/spectral.hpp"
#include "trigokit/wells.hpp"

namespace {

using namespace trigokit;
using nlohmann::json;

int exit_code_for(const Error& err) {
    switch (err.code()) {
        case ErrorCode::BadIndex:
        case ErrorCode::BadPair:
        case ErrorCode::BadProfile:
        case ErrorCode::NonPositiveDelta:
            return 2;
        case ErrorCode::SpacingMismatch:
        case ErrorCode::PeriodicityViolation:
            return 3;
        case ErrorCode::FormatError:
        case ErrorCode::IoError:
            return 4;
        default:
            return 1;
    }
}

std::string format_mat(const SymMat3& m) {
    std::ostringstream os;
    os.precision(12);
    for (int i = 0; i < 3; ++i) {
        os << "  [";
        for (int j = 0; j < 3; ++j) os << " " << m(i, j);
        os << " ]\n";
    }
    return os.str();
}

std::string format_vec(const Vec3& v) {
    auto snap = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
    std::ostringstream os;
    os.precision(12);
    os << "(" << snap(v.x) << ", " << snap(v.y) << ", " << snap(v.z) << ")";
    return os.str();
}

struct GridFlags {
    std::vector<int> dims = {16, 16, 16};
    std::vector<double> lengths = {1.0, 1.0, 1.0};

    TorusGrid grid() const {
        if (dims.size() != 3) throw Error(ErrorCode::BadIndex, "--dims needs three values");
        if (lengths.size() != 3) throw Error(ErrorCode::BadIndex, "--lengths needs three values");
        return TorusGrid(dims[0], dims[1], dims[2], lengths[0], lengths[1], lengths[2]);
    }
};

WellParams params_from(const std::vector<double>& d) {
    if (d.size() != 3) throw Error(ErrorCode::BadIndex, "--d needs three values d1,d2,d3");
    return WellParams{d[0], d[1], d[2]};
}

// Well params for verification: explicit --d wins, otherwise the constant
// diagonal of the field itself.
WellParams params_for_field(const StrainField& e, const std::optional<std::vector<double>>& d) {
    if (d) return params_from(*d);
    for (std::size_t cell = 0; cell < e.grid.cells(); ++cell) {
        if (!e.masked(cell))
            return WellParams{e.comp[kE11][cell], e.comp[kE22][cell], e.comp[kE33][cell]};
    }
    return WellParams{e.comp[kE11][0], e.comp[kE22][0], e.comp[kE33][0]};
}

json verify_json(const StrainField& e, const ResidualReport& rep, const SliceAverageReport& sl,
                 const InclusionResult& inc, double tol, bool pass) {
    json out;
    out["pass"] = pass;
    out["tolerance"] = tol;
    out["defect_fraction"] = e.defect_fraction();
    out["inclusion"] = {{"masked_defects", inc.masked_defects},
                        {"unmasked_defects", inc.unmasked_defects}};
    out["residuals"] = json::parse(residual_report_json(rep));
    out["slice_average_deviation"] = {{"e23", sl.e23}, {"e13", sl.e13}, {"e12", sl.e12}};
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"Stress-free strain microstructures of the four-well trigonal system: "
                 "generation, verification, reconstruction and classification on periodic grids"};
    app.require_subcommand(1);

    // ---- wells ----------------------------------------------------------
    std::vector<double> wells_d = {1.0, 2.0, 3.0};
    std::string wells_format = "text";
    auto* cmd_wells = app.add_subcommand("wells", "Print the four wells and the twin table");
    cmd_wells->add_option("--d", wells_d, "Material constants d1,d2,d3")->delimiter(',')->capture_default_str();
    cmd_wells->add_option("--format", wells_format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- map-ortho ------------------------------------------------------
    double ortho_delta = 1.0;
    std::string ortho_format = "text";
    auto* cmd_ortho =
        app.add_subcommand("map-ortho", "Map the orthorhombic wells into the trigonal frame");
    cmd_ortho->add_option("--delta", ortho_delta, "Orthorhombic shear parameter (> 0)")->required();
    cmd_ortho->add_option("--format", ortho_format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- gen ------------------------------------------------------------
    GridFlags gen_grid;
    std::vector<double> gen_d = {1.0, 2.0, 3.0};
    std::string gen_out, gen_disp_out;
    auto* cmd_gen = app.add_subcommand("gen", "Generate an admissible strain field");
    cmd_gen->require_subcommand(1);

    auto add_gen_common = [&](CLI::App* sub) {
        sub->add_option("--dims", gen_grid.dims, "Cell counts N1,N2,N3")->delimiter(',')->capture_default_str();
        sub->add_option("--lengths", gen_grid.lengths, "Side lengths L1,L2,L3")->delimiter(',')->capture_default_str();
        sub->add_option("--d", gen_d, "Material constants d1,d2,d3")->delimiter(',')->capture_default_str();
        sub->add_option("--out", gen_out, "Output .sfield path")->required();
        sub->add_option("--disp", gen_disp_out, "Optional output .dfield path");
    };

    int const_well = 1;
    auto* gen_const = cmd_gen->add_subcommand("constant", "Single-well constant field");
    add_gen_common(gen_const);
    gen_const->add_option("--well", const_well, "Well index 1..4")->capture_default_str();

    std::vector<int> lam_pair = {1, 2};
    std::string lam_normal = "axis";
    std::string lam_profile;
    auto* gen_lam = cmd_gen->add_subcommand("laminate", "Simple laminate between two wells");
    add_gen_common(gen_lam);
    gen_lam->add_option("--pair", lam_pair, "Well pair i,j")->delimiter(',');
    gen_lam->add_option("--normal", lam_normal, "Twin normal choice: axis|diagonal")
        ->check(CLI::IsMember({"axis", "diagonal"}));
    gen_lam->add_option("--profile", lam_profile, "Layer profile over {+,-}, one per layer")
        ->required();

    int cross_axis = 2; // 1-based invariant axis
    std::string cross_f, cross_g;
    bool cross_swap = false;
    auto* gen_cross = cmd_gen->add_subcommand("crossing", "Crossing-twin field");
    add_gen_common(gen_cross);
    gen_cross->add_option("--axis", cross_axis, "Invariant axis 1..3")->capture_default_str();
    gen_cross->add_option("--f", cross_f, "f profile over {+,-} on the f-axis")->required();
    gen_cross->add_option("--g", cross_g, "g profile over {+,-} on the g-axis")->required();
    gen_cross->add_flag("--swap-roles", cross_swap,
                        "Put f on the smaller active axis instead of the larger");

    // ---- verify ---------------------------------------------------------
    std::string verify_path;
    double verify_tol = 1e-8;
    std::optional<std::vector<double>> verify_d;
    std::string verify_format = "json";
    auto* cmd_verify = app.add_subcommand("verify", "Check compatibility and well inclusion");
    cmd_verify->add_option("path", verify_path, ".sfield input")->required();
    cmd_verify->add_option("--tol", verify_tol, "Relative residual tolerance")->capture_default_str();
    cmd_verify->add_option("--d", verify_d, "Material constants (default: field diagonal)")
        ->delimiter(',');
    cmd_verify->add_option("--format", verify_format, "Output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // ---- classify -------------------------------------------------------
    std::string classify_path;
    double classify_tol = 1e-8;
    std::optional<std::vector<double>> classify_d;
    auto* cmd_classify = app.add_subcommand("classify", "Classify an admissible field");
    cmd_classify->add_option("path", classify_path, ".sfield input")->required();
    cmd_classify->add_option("--tol", classify_tol, "Relative residual tolerance")->capture_default_str();
    cmd_classify->add_option("--d", classify_d, "Material constants (default: field diagonal)")
        ->delimiter(',');

    // ---- reconstruct ----------------------------------------------------
    std::string rec_path, rec_out;
    double rec_tol = 1e-8;
    auto* cmd_rec = app.add_subcommand("reconstruct", "Recover a displacement from a strain field");
    cmd_rec->add_option("path", rec_path, ".sfield input")->required();
    cmd_rec->add_option("--out", rec_out, "Output .dfield path")->required();
    cmd_rec->add_option("--tol", rec_tol, "Relative residual tolerance")->capture_default_str();

    // ---- export ---------------------------------------------------------
    std::string exp_path, exp_comp = "e12", exp_out;
    int exp_axis = 2;
    int exp_index = 0;
    auto* cmd_export = app.add_subcommand("export", "Write one 2D slice of a component as CSV");
    cmd_export->add_option("path", exp_path, ".sfield input")->required();
    cmd_export->add_option("--component", exp_comp, "One of e11,e22,e33,e23,e13,e12")->capture_default_str();
    cmd_export->add_option("--axis", exp_axis, "Slice axis 1..3")->capture_default_str();
    cmd_export->add_option("--index", exp_index, "Slice index along that axis")->capture_default_str();
    cmd_export->add_option("--out", exp_out, "Output .csv path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*cmd_wells) {
            const WellSet set = build_wells(params_from(wells_d));
            const auto table = twin_table(set.params);
            if (wells_format == "json") {
                json out;
                out["wells"] = json::parse(well_set_json(set));
                out["twin_table"] = json::parse(twin_table_json(table));
                std::cout << out.dump(2) << "\n";
            } else {
                for (int w = 1; w <= 4; ++w)
                    std::cout << "well " << w << ":\n" << format_mat(set.well(w));
                std::cout << "twin table (two (a,n) solutions per pair):\n";
                for (const auto& row : table) {
                    std::cout << "pair (" << row.well_i << "," << row.well_j << "):\n"
                              << "  A: n = " << format_vec(row.decomposition.solution_a.n)
                              << ", a = " << format_vec(row.decomposition.solution_a.a) << "\n"
                              << "  B: n = " << format_vec(row.decomposition.solution_b.n)
                              << ", a = " << format_vec(row.decomposition.solution_b.a) << "\n";
                }
            }
            return 0;
        }

        if (*cmd_ortho) {
            const OrthoParams op{ortho_delta};
            const auto ow = ortho_wells(op);
            const WellParams image = ortho_image_params(op);
            if (ortho_format == "json") {
                json out;
                out["delta"] = ortho_delta;
                out["trigonal_params"] = {{"d1", image.d1}, {"d2", image.d2}, {"d3", image.d3}};
                json wells = json::array(), images = json::array();
                for (const auto& w : ow) {
                    wells.push_back({w.e11, w.e22, w.e33, w.e23, w.e13, w.e12});
                    const SymMat3 m = map_to_trigonal(w, op);
                    images.push_back({m.e11, m.e22, m.e33, m.e23, m.e13, m.e12});
                }
                out["ortho_wells"] = wells;
                out["mapped_wells"] = images;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "trigonal parameters: d = (" << image.d1 << ", " << image.d2 << ", "
                          << image.d3 << ")\n";
                for (std::size_t w = 0; w < ow.size(); ++w) {
                    std::cout << "ortho well " << w + 1 << ":\n" << format_mat(ow[w]);
                    std::cout << "maps to:\n" << format_mat(map_to_trigonal(ow[w], op));
                }
            }
            return 0;
        }

        if (*cmd_gen) {
            const TorusGrid grid = gen_grid.grid();
            const WellParams params = params_from(gen_d);
            GenResult result;
            if (*gen_const) {
                result = gen_constant(grid, params, const_well);
            } else if (*gen_lam) {
                if (lam_pair.size() != 2)
                    throw Error(ErrorCode::BadPair, "--pair needs two well indices");
                result = gen_laminate(grid, params, lam_pair[0], lam_pair[1],
                                      lam_normal == "axis" ? NormalChoice::Axis
                                                           : NormalChoice::Diagonal,
                                      ProfileBits::parse(lam_profile));
            } else {
                if (cross_axis < 1 || cross_axis > 3)
                    throw Error(ErrorCode::BadIndex, "--axis must be 1..3");
                CrossingSpec spec;
                spec.invariant_axis = cross_axis - 1;
                const int p = spec.invariant_axis == 0 ? 1 : 0;
                const int q = spec.invariant_axis == 2 ? 1 : 2;
                spec.f_axis = cross_swap ? p : q;
                spec.g_axis = cross_swap ? q : p;
                spec.f = ProfileBits::parse(cross_f);
                spec.g = ProfileBits::parse(cross_g);
                result = gen_crossing(grid, params, spec);
            }

            write_field(gen_out, result.strain);
            if (!gen_disp_out.empty()) write_disp(gen_disp_out, result.disp);

            const SymMat3 mean = result.strain.mean();
            std::cout << "wrote " << gen_out << ": dims " << grid.n[0] << "x" << grid.n[1] << "x"
                      << grid.n[2] << ", defect fraction " << result.strain.defect_fraction()
                      << ", mean (e23,e13,e12) = (" << mean.e23 << ", " << mean.e13 << ", "
                      << mean.e12 << ")\n";
            if (!gen_disp_out.empty()) std::cout << "wrote " << gen_disp_out << "\n";
            return 0;
        }

        if (*cmd_verify) {
            const StrainField e = read_field(verify_path);
            const WellParams params = params_for_field(e, verify_d);
            const ResidualReport rep = saint_venant_residual(e);
            const SliceAverageReport sl = slice_average_check(e);
            const InclusionResult inc = inclusion_labels(e, params);
            const bool pass = rep.max_relative() <= verify_tol && inc.unmasked_defects == 0;

            if (verify_format == "json") {
                std::cout << verify_json(e, rep, sl, inc, verify_tol, pass).dump(2) << "\n";
            } else {
                for (const auto& eq : rep.equations)
                    std::cout << eq.name << ": max_abs " << eq.max_abs << ", relative "
                              << eq.relative << ", worst k (" << eq.worst_k[0] << ","
                              << eq.worst_k[1] << "," << eq.worst_k[2] << ")\n";
                std::cout << "slice averages (e23,e13,e12): " << sl.e23 << ", " << sl.e13 << ", "
                          << sl.e12 << "\n";
                std::cout << "inclusion: " << inc.unmasked_defects << " unmasked defects, "
                          << inc.masked_defects << " masked\n";
                std::cout << (pass ? "PASS" : "FAIL") << "\n";
            }
            return pass ? 0 : 1;
        }

        if (*cmd_classify) {
            const StrainField e = read_field(classify_path);
            const WellParams params = params_for_field(e, classify_d);
            ClassifyOptions opts;
            opts.sv_tol_relative = classify_tol;
            const StructureReport report = classify(e, params, opts);
            std::cout << structure_report_json(report, 2) << "\n";
            return report.kind == StructureKind::Inadmissible ? 1 : 0;
        }

        if (*cmd_rec) {
            const StrainField e = read_field(rec_path);
            const DisplacementField u = reconstruct_displacement(e, rec_tol);
            write_disp(rec_out, u);
            const StrainField back = symmetrized_gradient(u);
            double err = 0.0;
            for (int c = 0; c < 6; ++c)
                for (std::size_t i = 0; i < e.grid.cells(); ++i)
                    err = std::max(err, std::abs(back.comp[std::size_t(c)][i] -
                                                 e.comp[std::size_t(c)][i]));
            std::cout << "wrote " << rec_out << ", round-trip max error " << err << "\n";
            return 0;
        }

        if (*cmd_export) {
            const StrainField e = read_field(exp_path);
            int comp = -1;
            for (int c = 0; c < 6; ++c)
                if (exp_comp == kCompNames[std::size_t(c)]) comp = c;
            if (comp < 0) throw Error(ErrorCode::BadIndex, "unknown component " + exp_comp);
            if (exp_axis < 1 || exp_axis > 3)
                throw Error(ErrorCode::BadIndex, "--axis must be 1..3");
            const int axis = exp_axis - 1;
            if (exp_index < 0 || exp_index >= e.grid.n[std::size_t(axis)])
                throw Error(ErrorCode::BadIndex, "slice index out of range");

            const int row_axis = axis == 0 ? 1 : 0;
            const int col_axis = axis == 2 ? 1 : 2;
            std::ofstream out(exp_out);
            if (!out) throw Error(ErrorCode::IoError, "cannot open '" + exp_out + "'");
            out.precision(17);
            for (int rr = 0; rr < e.grid.n[std::size_t(row_axis)]; ++rr) {
                for (int cc = 0; cc < e.grid.n[std::size_t(col_axis)]; ++cc) {
                    std::array<int, 3> coord{};
                    coord[std::size_t(axis)] = exp_index;
                    coord[std::size_t(row_axis)] = rr;
                    coord[std::size_t(col_axis)] = cc;
                    if (cc) out << ",";
                    out << e.comp[std::size_t(comp)][e.grid.index(coord[0], coord[1], coord[2])];
                }
                out << "\n";
            }
            std::cout << "wrote " << exp_out << "\n";
            return 0;
        }
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code_for(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
