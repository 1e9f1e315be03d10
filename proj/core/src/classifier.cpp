#include "trigokit/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "trigokit/errors.hpp"

namespace trigokit {

namespace {

constexpr double kEntryTol = 1e-9;   // entrywise comparisons; guards float I/O
constexpr double kPsiTol = 1e-10;    // primitive-level assertions

std::string fmt_mag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string cell_string(const TorusGrid& g, std::size_t cell) {
    const auto c = g.unpack(cell);
    return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
}

} // namespace

InclusionResult inclusion_labels(const StrainField& e, const WellParams& params) {
    const WellSet set = build_wells(params);
    InclusionResult out;
    out.labels.assign(e.grid.cells(), 0);

    const std::size_t cells = e.grid.cells();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const SymMat3 t = e.tensor_at(cell);
        std::uint8_t label = 0;
        for (int w = 0; w < 4; ++w) {
            if (max_abs_diff(t, set.wells[std::size_t(w)]) <= kEntryTol) {
                label = std::uint8_t(w + 1);
                break;
            }
        }
        out.labels[cell] = label;
        if (label == 0) {
            if (e.masked(cell)) {
                ++out.masked_defects;
            } else {
                ++out.unmasked_defects;
                if (out.first_unmasked_defect == SIZE_MAX) out.first_unmasked_defect = cell;
            }
        }
    }
    return out;
}

InclusionResult check_inclusion(const StrainField& e, const WellParams& params) {
    InclusionResult out = inclusion_labels(e, params);
    if (out.unmasked_defects > 0)
        throw Error(ErrorCode::InclusionViolation,
                    "unmasked cell " + cell_string(e.grid, out.first_unmasked_defect) +
                        " matches no well (" + std::to_string(out.unmasked_defects) + " such cells)");
    return out;
}

const ComponentWaves& PlanarWaveDecomp::for_comp(int comp) const {
    for (const auto& c : comps)
        if (c.comp == comp) return c;
    throw Error(ErrorCode::BadIndex, "no planar waves for component");
}

PlanarWaveDecomp planar_decompose(const StrainField& e) {
    const auto& g = e.grid;
    PlanarWaveDecomp out;
    out.grid = g;

    struct Layout {
        int comp, selector, a, b;
    };
    const std::array<Layout, 3> layouts = {Layout{kE23, 0, 1, 2}, Layout{kE13, 1, 0, 2},
                                           Layout{kE12, 2, 0, 1}};

    for (int li = 0; li < 3; ++li) {
        const Layout& L = layouts[std::size_t(li)];
        ComponentWaves cw;
        cw.comp = L.comp;
        cw.selector_axis = L.selector;
        cw.axis_a = L.a;
        cw.axis_b = L.b;

        const int nsel = g.n[std::size_t(L.selector)];
        const int na = g.n[std::size_t(L.a)];
        const int nb = g.n[std::size_t(L.b)];
        cw.n_a = na;
        cw.n_b = nb;
        cw.wave_a.assign(std::size_t(nsel) * std::size_t(na), 0.0);
        cw.wave_b.assign(std::size_t(nsel) * std::size_t(nb), 0.0);
        cw.active_b.assign(std::size_t(nsel), 0);
        cw.mean_a.assign(std::size_t(nsel), 0.0);
        cw.mean_b.assign(std::size_t(nsel), 0.0);

        const auto& arr = e.comp[std::size_t(L.comp)];

        auto cell_at = [&](int sel, int xa, int xb) {
            std::array<int, 3> c{};
            c[std::size_t(L.selector)] = sel;
            c[std::size_t(L.a)] = xa;
            c[std::size_t(L.b)] = xb;
            return g.index(c[0], c[1], c[2]);
        };

        for (int sel = 0; sel < nsel; ++sel) {
            // Two-valuedness of the slice off the mask.
            for (int xa = 0; xa < na; ++xa) {
                for (int xb = 0; xb < nb; ++xb) {
                    const std::size_t cell = cell_at(sel, xa, xb);
                    if (e.masked(cell)) continue;
                    if (std::abs(std::abs(arr[cell]) - 1.0) > kEntryTol)
                        throw Error(ErrorCode::NotTwoValued,
                                    std::string(kCompNames[std::size_t(L.comp)]) + " = " +
                                        fmt_mag(arr[cell]) + " at cell " +
                                        cell_string(g, cell));
                }
            }

            // Constant along axis b <=> the slice is a function of x_a alone.
            // Masked cells still carry exact compatibility data, so the full
            // values are tried first; only when they disagree does the
            // decision fall back to the unmasked cells alone.
            auto line_profile = [&](bool along_b, bool full, std::vector<double>& values) -> bool {
                const int nx = along_b ? na : nb;
                const int ny = along_b ? nb : na;
                values.assign(std::size_t(nx), 0.0);
                for (int x = 0; x < nx; ++x) {
                    bool have = false;
                    double v = 0.0;
                    double fallback = 0.0;
                    bool have_fallback = false;
                    for (int y = 0; y < ny; ++y) {
                        const std::size_t cell =
                            along_b ? cell_at(sel, x, y) : cell_at(sel, y, x);
                        if (!have_fallback) {
                            fallback = arr[cell];
                            have_fallback = true;
                        }
                        if (!full && e.masked(cell)) continue;
                        if (!have) {
                            v = arr[cell];
                            have = true;
                        } else if (std::abs(arr[cell] - v) > kEntryTol) {
                            return false;
                        }
                    }
                    values[std::size_t(x)] = have ? v : fallback;
                }
                return true;
            };

            std::vector<double> prof_a, prof_b;
            bool fn_of_a = line_profile(true, true, prof_a);
            bool fn_of_b = line_profile(false, true, prof_b);
            if (!fn_of_a && !fn_of_b) {
                fn_of_a = line_profile(true, false, prof_a);
                fn_of_b = line_profile(false, false, prof_b);
            }
            if (!fn_of_a && !fn_of_b)
                throw Error(ErrorCode::UndecidableSlice,
                            std::string(kCompNames[std::size_t(L.comp)]) + " slice x" +
                                std::to_string(L.selector + 1) + "=" + std::to_string(sel) +
                                " is constant along neither axis");

            if (fn_of_a) {
                // Covers the all-constant slice: the constant goes to the
                // lexicographically earlier wave.
                cw.active_b[std::size_t(sel)] = 0;
                for (int x = 0; x < na; ++x)
                    cw.wave_a[std::size_t(sel) * std::size_t(na) + std::size_t(x)] =
                        prof_a[std::size_t(x)];
            } else {
                cw.active_b[std::size_t(sel)] = 1;
                for (int x = 0; x < nb; ++x)
                    cw.wave_b[std::size_t(sel) * std::size_t(nb) + std::size_t(x)] =
                        prof_b[std::size_t(x)];
            }

            double ma = 0.0, mb = 0.0;
            for (int x = 0; x < na; ++x)
                ma += cw.wave_a[std::size_t(sel) * std::size_t(na) + std::size_t(x)];
            for (int x = 0; x < nb; ++x)
                mb += cw.wave_b[std::size_t(sel) * std::size_t(nb) + std::size_t(x)];
            cw.mean_a[std::size_t(sel)] = ma / double(na);
            cw.mean_b[std::size_t(sel)] = mb / double(nb);
        }
        out.comps[std::size_t(li)] = std::move(cw);
    }
    return out;
}

namespace {

// View of the wave f_{sel,second} regardless of which slot it occupies.
struct WaveView {
    const std::vector<double>* values = nullptr;
    const std::vector<double>* means = nullptr;
    int nsel = 0, nsecond = 0;

    double value(int sel, int x) const {
        return (*values)[std::size_t(sel) * std::size_t(nsecond) + std::size_t(x)];
    }
    double mean(int sel) const { return (*means)[std::size_t(sel)]; }
};

WaveView find_wave(const PlanarWaveDecomp& pw, int selector, int second) {
    const int third = 3 - selector - second;
    const int comp = comp_of(second, third);
    const ComponentWaves& cw = pw.for_comp(comp);
    WaveView view;
    view.nsel = pw.grid.n[std::size_t(selector)];
    if (cw.axis_a == second) {
        view.values = &cw.wave_a;
        view.means = &cw.mean_a;
        view.nsecond = pw.grid.n[std::size_t(second)];
    } else {
        view.values = &cw.wave_b;
        view.means = &cw.mean_b;
        view.nsecond = pw.grid.n[std::size_t(second)];
    }
    return view;
}

// Global mean of a component recovered from its two waves' line means.
double component_mean(const PlanarWaveDecomp& pw, int comp) {
    const ComponentWaves& cw = pw.for_comp(comp);
    double acc = 0.0;
    for (std::size_t sel = 0; sel < cw.mean_a.size(); ++sel)
        acc += cw.mean_a[sel] + cw.mean_b[sel];
    return acc / double(cw.mean_a.size());
}

} // namespace

PrimitiveSet build_primitives(const PlanarWaveDecomp& pw) {
    const TorusGrid& g = pw.grid;
    PrimitiveSet out;
    out.grid = g;

    for (int p = 0; p < 3; ++p) {
        const int a = PrimitiveSet::kAxes[std::size_t(p)][0];
        const int b = PrimitiveSet::kAxes[std::size_t(p)][1];
        const int c = 3 - a - b;
        const int na = g.n[std::size_t(a)], nb = g.n[std::size_t(b)];
        const double ha = g.spacing(a), hb = g.spacing(b);

        const WaveView wave_ba = find_wave(pw, b, a); // drives D_a psi
        const WaveView wave_ab = find_wave(pw, a, b); // drives D_b psi

        auto step_a = [&](int ia, int ib) { return wave_ba.value(ib, ia) - wave_ba.mean(ib); };
        auto step_b = [&](int ia, int ib) { return wave_ab.value(ia, ib) - wave_ab.mean(ia); };

        std::vector<double>& psi = out.psi[std::size_t(p)];
        psi.assign(std::size_t(na) * std::size_t(nb), 0.0);
        auto at = [&](int ia, int ib) -> double& {
            return psi[std::size_t(ia) * std::size_t(nb) + std::size_t(ib)];
        };

        for (int ib = 0; ib + 1 < nb; ++ib) at(0, ib + 1) = at(0, ib) + hb * step_b(0, ib);
        for (int ib = 0; ib < nb; ++ib)
            for (int ia = 0; ia + 1 < na; ++ia) at(ia + 1, ib) = at(ia, ib) + ha * step_a(ia, ib);

        // Path independence and periodicity: both difference relations must
        // hold on every cell, wrap rows included.
        for (int ia = 0; ia < na; ++ia) {
            for (int ib = 0; ib < nb; ++ib) {
                const double da = (at((ia + 1) % na, ib) - at(ia, ib)) / ha;
                const double db = (at(ia, (ib + 1) % nb) - at(ia, ib)) / hb;
                if (std::abs(da - step_a(ia, ib)) > kPsiTol ||
                    std::abs(db - step_b(ia, ib)) > kPsiTol)
                    throw Error(ErrorCode::PathDependent,
                                "psi" + std::to_string(a + 1) + std::to_string(b + 1) +
                                    " closed-loop sum does not vanish at (" + std::to_string(ia) +
                                    "," + std::to_string(ib) + ")");
            }
        }

        // Discrete inclusion of both slopes against the global means.
        const double mean_bc = component_mean(pw, comp_of(b, c));
        const double mean_ac = component_mean(pw, comp_of(a, c));
        auto inclusion_dist = [](double v, double m) {
            return std::min({std::abs(v), std::abs(v - (1.0 - m)), std::abs(v - (-1.0 - m))});
        };
        for (int ia = 0; ia < na; ++ia)
            for (int ib = 0; ib < nb; ++ib) {
                out.max_inclusion_violation = std::max(
                    out.max_inclusion_violation, inclusion_dist(step_b(ia, ib), mean_bc));
                out.max_inclusion_violation = std::max(
                    out.max_inclusion_violation, inclusion_dist(step_a(ia, ib), mean_ac));
            }

        // Trichotomy along both directions, one line at a time.
        auto trichotomy = [&](bool along_b) {
            const int nlines = along_b ? na : nb;
            const int nx = along_b ? nb : na;
            for (int line = 0; line < nlines; ++line) {
                bool wave_const = true;
                bool slope_zero = true;
                bool has_zero = false;
                double first = along_b ? wave_ab.value(line, 0) : wave_ba.value(line, 0);
                for (int x = 0; x < nx; ++x) {
                    const double w = along_b ? wave_ab.value(line, x) : wave_ba.value(line, x);
                    const double st = along_b ? step_b(line, x) : step_a(x, line);
                    if (std::abs(w - first) > kEntryTol) wave_const = false;
                    if (std::abs(st) > kPsiTol) slope_zero = false;
                    if (std::abs(st) <= kPsiTol) has_zero = true;
                }
                if (wave_const != slope_zero || slope_zero != has_zero) {
                    out.trichotomy_ok = false;
                    if (out.trichotomy_detail.empty())
                        out.trichotomy_detail = "psi" + std::to_string(a + 1) +
                                                std::to_string(b + 1) + " line " +
                                                std::to_string(line) +
                                                (along_b ? " (second axis)" : " (first axis)");
                }
            }
        };
        trichotomy(true);
        trichotomy(false);

        double dev = 0.0;
        for (const double v : psi) dev = std::max(dev, std::abs(v - psi.front()));
        out.psi_constant[std::size_t(p)] = dev <= kPsiTol;
    }
    return out;
}

int detect_invariant_direction(const StrainField& e) {
    const auto& g = e.grid;
    for (int axis = 0; axis < 3; ++axis) {
        bool invariant = true;
        for (std::size_t cell = 0; cell < g.cells() && invariant; ++cell) {
            const std::size_t fwd = g.step(cell, axis);
            for (int c = 0; c < 6; ++c) {
                if (std::abs(e.comp[std::size_t(c)][fwd] - e.comp[std::size_t(c)][cell]) >
                    kEntryTol) {
                    invariant = false;
                    break;
                }
            }
        }
        if (invariant) return axis;
    }
    throw Error(ErrorCode::NoInvariantDirection,
                "no axis leaves every strain component constant");
}

const char* structure_kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::Constant: return "Constant";
        case StructureKind::SimpleLaminate: return "SimpleLaminate";
        case StructureKind::CrossingTwin: return "CrossingTwin";
        case StructureKind::Inadmissible: return "Inadmissible";
    }
    return "Unknown";
}

namespace {

// Representative value per hyperplane of the given axis. In full mode every
// cell participates (masked cells carry exact compatibility data); otherwise
// only unmasked cells vote and fully masked hyperplanes fall back to any
// stored value.
struct HyperplaneProfile {
    bool single_variable = true;
    std::vector<double> values;
};

HyperplaneProfile hyperplane_profile(const StrainField& e, int comp, int axis, bool full) {
    const auto& g = e.grid;
    const int n = g.n[std::size_t(axis)];
    HyperplaneProfile out;
    out.values.assign(std::size_t(n), 0.0);
    std::vector<std::uint8_t> have(std::size_t(n), 0);
    std::vector<std::uint8_t> have_fallback(std::size_t(n), 0);
    std::vector<double> fallback(std::size_t(n), 0.0);

    const auto& arr = e.comp[std::size_t(comp)];
    for (std::size_t cell = 0; cell < g.cells(); ++cell) {
        const int x = g.unpack(cell)[std::size_t(axis)];
        if (!have_fallback[std::size_t(x)]) {
            fallback[std::size_t(x)] = arr[cell];
            have_fallback[std::size_t(x)] = 1;
        }
        if (!full && e.masked(cell)) continue;
        if (!have[std::size_t(x)]) {
            out.values[std::size_t(x)] = arr[cell];
            have[std::size_t(x)] = 1;
        } else if (std::abs(arr[cell] - out.values[std::size_t(x)]) > kEntryTol) {
            out.single_variable = false;
            return out;
        }
    }
    for (int x = 0; x < n; ++x)
        if (!have[std::size_t(x)]) out.values[std::size_t(x)] = fallback[std::size_t(x)];
    return out;
}

int round_pm1(double v, const char* what) {
    if (std::abs(std::abs(v) - 1.0) > kEntryTol)
        throw Error(ErrorCode::StructureViolation,
                    std::string(what) + " value " + fmt_mag(v) + " is not +/-1");
    return v > 0 ? +1 : -1;
}

TwinPair table_normal(const WellParams& params, int wi, int wj, const Vec3& direction) {
    const SymMat3 diff = build_wells(params).well(wi) - build_wells(params).well(wj);
    const TwinDecomposition dec = rank_one_decompose(diff);
    const double da = std::abs(dot(dec.solution_a.n, direction));
    const double db = std::abs(dot(dec.solution_b.n, direction));
    return da >= db ? dec.solution_a : dec.solution_b;
}

// Well index implied by the extracted profiles; robust against wells whose
// every cell is hidden under the defect mask.
int well_from_profiles(const WellParams& params, int j, int s, int r, int gval, int fval) {
    SymMat3 m;
    m.e11 = params.d1;
    m.e22 = params.d2;
    m.e33 = params.d3;
    m.entry(j, s) = double(gval);
    m.entry(s, r) = double(fval);
    m.entry(j, r) = double(fval * gval);
    const WellSet set = build_wells(params);
    for (int w = 1; w <= 4; ++w)
        if (max_abs_diff(m, set.well(w)) <= kEntryTol) return w;
    throw Error(ErrorCode::StructureViolation, "profile signs match no well");
}

} // namespace

namespace {
StructureReport extract_structure_impl(const StrainField& e, int invariant_axis,
                                       const WellParams& params, bool full_values);
}

StructureReport extract_structure(const StrainField& e, int invariant_axis,
                                  const WellParams& params) {
    // Prefer the full field: masked cells are exempt from the inclusion but
    // their strain values are honest. When they contradict the structure,
    // retry with the unmasked cells alone.
    try {
        return extract_structure_impl(e, invariant_axis, params, true);
    } catch (const Error& err) {
        if (err.code() != ErrorCode::StructureViolation || e.masked_count() == 0) throw;
        return extract_structure_impl(e, invariant_axis, params, false);
    }
}

namespace {

StructureReport extract_structure_impl(const StrainField& e, int invariant_axis,
                                       const WellParams& params, bool full_values) {
    const auto& g = e.grid;
    if (invariant_axis < 0 || invariant_axis > 2)
        throw Error(ErrorCode::BadIndex, "invariant axis out of range");

    const int j = invariant_axis;
    const int p = j == 0 ? 1 : 0;
    const int q = j == 2 ? 1 : 2;

    StructureReport report;
    report.invariant_axis = j;

    // The cross component between the two active axes must be a function of
    // one of them; that function is f and fixes the role assignment.
    const int comp_cross = comp_of(p, q);
    int s = p, r = q;
    HyperplaneProfile fq = hyperplane_profile(e, comp_cross, q, full_values);
    HyperplaneProfile fp = hyperplane_profile(e, comp_cross, p, full_values);
    std::vector<double> f_raw;
    if (fq.single_variable) {
        s = p;
        r = q;
        f_raw = fq.values;
    } else if (fp.single_variable) {
        s = q;
        r = p;
        f_raw = fp.values;
    } else {
        throw Error(ErrorCode::StructureViolation,
                    std::string(kCompNames[std::size_t(comp_cross)]) +
                        " depends on both active axes");
    }

    const int nr = g.n[std::size_t(r)];
    const int ns = g.n[std::size_t(s)];

    std::vector<int> f(std::size_t(nr), 0);
    for (int k = 0; k < nr; ++k) f[std::size_t(k)] = round_pm1(f_raw[std::size_t(k)], "cross component");

    std::vector<int> shear(std::size_t(nr) + 1, 0);
    for (int k = 0; k < nr; ++k) shear[std::size_t(k) + 1] = shear[std::size_t(k)] + f[std::size_t(k)];
    auto wrap_s = [&](int v) { return ((v % ns) + ns) % ns; };

    // Pull the g-component back through the shear; every row must produce the
    // same one-dimensional pattern.
    const int comp_g = comp_of(j, s);
    const auto& arr_g = e.comp[std::size_t(comp_g)];
    std::vector<double> g_raw(std::size_t(ns), 0.0);
    std::vector<std::uint8_t> g_have(std::size_t(ns), 0), g_have_fb(std::size_t(ns), 0);
    std::vector<double> g_fb(std::size_t(ns), 0.0);
    for (std::size_t cell = 0; cell < g.cells(); ++cell) {
        const auto c = g.unpack(cell);
        const int ir = c[std::size_t(r)];
        const int is = c[std::size_t(s)];
        const int t = wrap_s(is + shear[std::size_t(ir)]);
        if (!g_have_fb[std::size_t(t)]) {
            g_fb[std::size_t(t)] = arr_g[cell];
            g_have_fb[std::size_t(t)] = 1;
        }
        if (!full_values && e.masked(cell)) continue;
        if (!g_have[std::size_t(t)]) {
            g_raw[std::size_t(t)] = arr_g[cell];
            g_have[std::size_t(t)] = 1;
        } else if (std::abs(arr_g[cell] - g_raw[std::size_t(t)]) > kEntryTol) {
            throw Error(ErrorCode::StructureViolation,
                        "sheared pullback of " + std::string(kCompNames[std::size_t(comp_g)]) +
                            " is not a function of one variable at cell " + cell_string(g, cell));
        }
    }
    for (int t = 0; t < ns; ++t)
        if (!g_have[std::size_t(t)]) g_raw[std::size_t(t)] = g_fb[std::size_t(t)];

    std::vector<int> gbits(std::size_t(ns), 0);
    for (int t = 0; t < ns; ++t) gbits[std::size_t(t)] = round_pm1(g_raw[std::size_t(t)], "g profile");

    // Product law with the upwind offset on f = -1 rows.
    const int comp_prod = comp_of(j, r);
    const auto& arr_prod = e.comp[std::size_t(comp_prod)];
    for (std::size_t cell = 0; cell < g.cells(); ++cell) {
        if (e.masked(cell)) continue;
        const auto c = g.unpack(cell);
        const int ir = c[std::size_t(r)];
        const int is = c[std::size_t(s)];
        const int fv = f[std::size_t(ir)];
        const int t = wrap_s(is + shear[std::size_t(ir)] + (fv - 1) / 2);
        const double expected = double(fv * gbits[std::size_t(t)]);
        if (std::abs(arr_prod[cell] - expected) > kEntryTol)
            throw Error(ErrorCode::StructureViolation,
                        std::string(kCompNames[std::size_t(comp_prod)]) + " = " +
                            fmt_mag(arr_prod[cell]) + " violates the product law at cell " +
                            cell_string(g, cell) + " (expected " + fmt_mag(expected) + ")");
    }

    const bool f_const = std::all_of(f.begin(), f.end(), [&](int v) { return v == f.front(); });
    const bool g_const =
        std::all_of(gbits.begin(), gbits.end(), [&](int v) { return v == gbits.front(); });

    if (f_const && g_const) {
        report.kind = StructureKind::Constant;
        const int w = well_from_profiles(params, j, s, r, gbits.front(), f.front());
        report.well_pair = {w, w};
        return report;
    }

    if (!f_const && !g_const) {
        report.kind = StructureKind::CrossingTwin;
        report.f_axis = r;
        report.g_axis = s;
        report.f.values = f;
        report.g.values = gbits;
        report.shear.assign(shear.begin(), shear.end() - 1);
        return report;
    }

    // Exactly one profile varies: a simple laminate between the two wells
    // implied by the profile signs.
    report.kind = StructureKind::SimpleLaminate;
    if (g_const) {
        // f varies along axis r: axis normal.
        const int g0 = gbits.front();
        const int w_plus = well_from_profiles(params, j, s, r, g0, +1);
        const int w_minus = well_from_profiles(params, j, s, r, g0, -1);
        report.well_pair = {std::min(w_plus, w_minus), std::max(w_plus, w_minus)};
        Vec3 dir{0, 0, 0};
        dir[r] = 1.0;
        report.normal = table_normal(params, report.well_pair[0], report.well_pair[1], dir);
        const int first_f = w_plus == report.well_pair[0] ? +1 : -1;
        report.profile.values.assign(std::size_t(nr), 0);
        for (int k = 0; k < nr; ++k)
            report.profile.values[std::size_t(k)] = f[std::size_t(k)] == first_f ? +1 : -1;
    } else {
        // g varies along the sheared diagonal (e_s + f0 e_r)/sqrt(2).
        const int f0 = f.front();
        const int w_plus = well_from_profiles(params, j, s, r, +1, f0);
        const int w_minus = well_from_profiles(params, j, s, r, -1, f0);
        report.well_pair = {std::min(w_plus, w_minus), std::max(w_plus, w_minus)};
        Vec3 dir{0, 0, 0};
        dir[s] = 1.0;
        dir[r] = double(f0);
        report.normal = table_normal(params, report.well_pair[0], report.well_pair[1],
                                     dir * (1.0 / std::sqrt(2.0)));
        const int first_g = w_plus == report.well_pair[0] ? +1 : -1;
        report.profile.values.assign(std::size_t(ns), 0);
        for (int t = 0; t < ns; ++t)
            report.profile.values[std::size_t(t)] = gbits[std::size_t(t)] == first_g ? +1 : -1;
    }
    return report;
}

} // namespace

StructureReport classify(const StrainField& e, const WellParams& params,
                         const ClassifyOptions& opts) {
    StructureReport report;
    report.kind = StructureKind::Inadmissible;
    report.diagnostics.defect_fraction = e.defect_fraction();

    auto fail = [&](const std::string& stage, const std::string& detail) {
        report.kind = StructureKind::Inadmissible;
        report.diagnostics.failed_stage = stage;
        report.diagnostics.detail = detail;
        return report;
    };

    try {
        check_inclusion(e, params);
    } catch (const Error& err) {
        return fail("inclusion", err.what());
    }

    report.diagnostics.residuals = saint_venant_residual(e);
    if (report.diagnostics.residuals.max_relative() > opts.sv_tol_relative)
        return fail("saint_venant",
                    report.diagnostics.residuals.worst().name + " relative residual " +
                        fmt_mag(report.diagnostics.residuals.worst().relative));

    report.diagnostics.slice_deviation = slice_average_check(e);
    if (report.diagnostics.slice_deviation.max() > opts.slice_tol)
        return fail("slice_average",
                    "slice average deviates by " +
                        fmt_mag(report.diagnostics.slice_deviation.max()));

    PlanarWaveDecomp pw;
    try {
        pw = planar_decompose(e);
    } catch (const Error& err) {
        return fail("planar_decomposition", err.what());
    }

    try {
        const PrimitiveSet prim = build_primitives(pw);
        report.diagnostics.psi_constant = prim.psi_constant;
        if (prim.max_inclusion_violation > kPsiTol)
            return fail("primitives", "slope inclusion violated by " +
                                          fmt_mag(prim.max_inclusion_violation));
        if (!prim.trichotomy_ok)
            return fail("primitives", "trichotomy broken on " + prim.trichotomy_detail);
        if (!prim.any_constant())
            return fail("primitives", "no potential is constant");
    } catch (const Error& err) {
        return fail("primitives", err.what());
    }

    int j = -1;
    try {
        j = detect_invariant_direction(e);
    } catch (const Error& err) {
        return fail("invariant_direction", err.what());
    }

    try {
        StructureReport structure = extract_structure(e, j, params);
        structure.diagnostics = report.diagnostics;
        if (structure.kind == StructureKind::SimpleLaminate)
            structure.diagnostics.detail =
                "also a degenerate crossing twin with one constant profile";
        return structure;
    } catch (const Error& err) {
        return fail("structure", err.what());
    }
}

} // namespace trigokit
