#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trigokit/fields.hpp"
#include "trigokit/spectral.hpp"
#include "trigokit/wells.hpp"

namespace trigokit {

// Per-cell well labels: 1..4, or 0 for a defect (off-well) cell.
struct InclusionResult {
    std::vector<std::uint8_t> labels;
    std::size_t masked_defects = 0;
    std::size_t unmasked_defects = 0;
    std::size_t first_unmasked_defect = SIZE_MAX;

    std::size_t defect_cells() const { return masked_defects + unmasked_defects; }
};

// Labels every cell by entrywise well match (tolerance 1e-9); throws
// InclusionViolation when an unmasked cell is off-well.
InclusionResult check_inclusion(const StrainField& e, const WellParams& params);

// Non-throwing variant used by the classification pipeline.
InclusionResult inclusion_labels(const StrainField& e, const WellParams& params);

// Decomposition of one off-diagonal component into its two planar waves.
// Component e_jk (selector axis i, axes 0-based): wave_a lives on
// (x_i, x_j) and wave_b on (x_i, x_k); per selector slice exactly one of the
// two carries the slice and the other vanishes (for constant slices the
// lexicographically earlier wave carries the constant).
struct ComponentWaves {
    int comp = 0;          // kE23 / kE13 / kE12
    int selector_axis = 0; // 0-based
    int axis_a = 0, axis_b = 0;
    int n_a = 0, n_b = 0;  // second-axis sizes of the two wave grids

    // Row-major [selector][second axis] grids.
    std::vector<double> wave_a, wave_b;
    std::vector<std::uint8_t> active_b; // per slice: 0 = wave_a active, 1 = wave_b
    std::vector<double> mean_a, mean_b; // per-slice line means G

    double wave_a_at(int sel, int x) const {
        return wave_a[std::size_t(sel) * std::size_t(n_a) + std::size_t(x)];
    }
    double wave_b_at(int sel, int x) const {
        return wave_b[std::size_t(sel) * std::size_t(n_b) + std::size_t(x)];
    }
};

struct PlanarWaveDecomp {
    TorusGrid grid;
    // Order: e23 (selector x1), e13 (selector x2), e12 (selector x3).
    std::array<ComponentWaves, 3> comps;

    const ComponentWaves& for_comp(int comp) const;
};

// Decide each slice's active wave by constancy along the two candidate axes.
// Masked cells do not vote. Throws NotTwoValued or UndecidableSlice.
PlanarWaveDecomp planar_decompose(const StrainField& e);

// Periodic potentials whose forward differences reproduce the mean-free
// planar waves, plus the lemma-level diagnostics evaluated on them.
struct PrimitiveSet {
    TorusGrid grid;
    // psi[0] on (x1,x2), psi[1] on (x2,x3), psi[2] on (x3,x1); row-major in
    // the listed axis order.
    std::array<std::vector<double>, 3> psi;
    static constexpr std::array<std::array<int, 2>, 3> kAxes = {{{0, 1}, {1, 2}, {2, 0}}};

    std::array<bool, 3> psi_constant{false, false, false}; // within 1e-10
    double max_inclusion_violation = 0.0; // distance to {-1-m, 1-m, 0}
    bool trichotomy_ok = true;
    std::string trichotomy_detail;

    bool any_constant() const { return psi_constant[0] || psi_constant[1] || psi_constant[2]; }
};

// Path-integrate the mean-free waves and assert path independence and
// periodicity; throws PathDependent when the closed-loop sums do not vanish.
PrimitiveSet build_primitives(const PlanarWaveDecomp& pw);

// Smallest axis (0-based) along which every component is constant
// (tolerance 1e-9); throws NoInvariantDirection when none exists.
int detect_invariant_direction(const StrainField& e);

enum class StructureKind { Constant, SimpleLaminate, CrossingTwin, Inadmissible };

const char* structure_kind_name(StructureKind k);

struct StructureDiagnostics {
    ResidualReport residuals;
    SliceAverageReport slice_deviation;
    double defect_fraction = 0.0;
    std::array<bool, 3> psi_constant{false, false, false};
    std::string failed_stage; // empty when admissible
    std::string detail;
};

struct StructureReport {
    StructureKind kind = StructureKind::Inadmissible;
    int invariant_axis = -1; // 0-based

    // Constant / SimpleLaminate
    std::array<int, 2> well_pair{0, 0};
    std::optional<TwinPair> normal;
    ProfileBits profile;

    // CrossingTwin
    int f_axis = -1, g_axis = -1; // 0-based
    ProfileBits f, g;
    std::vector<int> shear; // running sum of f, one entry per f-axis cell

    StructureDiagnostics diagnostics;
};

// Extract the one-dimensional structure in the plane of the two active axes:
// the cross component must depend on a single coordinate (this is f), the
// g-component pulled back by the integer shear must be a function of one
// variable (this is g), and the product component must equal f*g under the
// upwind offset. Throws StructureViolation with a location otherwise.
StructureReport extract_structure(const StrainField& e, int invariant_axis,
                                  const WellParams& params);

struct ClassifyOptions {
    double sv_tol_relative = 1e-8;
    double slice_tol = 1e-8;
};

// Full pipeline: inclusion, compatibility, slice averages, planar waves,
// primitives, invariant direction, structure extraction. Never throws;
// failures short-circuit into an Inadmissible report naming the stage.
StructureReport classify(const StrainField& e, const WellParams& params,
                         const ClassifyOptions& opts = {});

} // namespace trigokit
