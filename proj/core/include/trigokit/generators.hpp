#pragma once

#include "trigokit/fields.hpp"
#include "trigokit/wells.hpp"

namespace trigokit {

struct GenResult {
    StrainField strain;
    DisplacementField disp;
};

// Constant field equal to the chosen well (1..4); pure affine displacement.
GenResult gen_constant(const TorusGrid& grid, const WellParams& params, int well_index);

enum class NormalChoice { Axis, Diagonal };

// Simple laminate between wells i and j across planes with one of the two
// admissible twin normals. The profile has one +/-1 value per layer at cell
// resolution (+1 selects well i): for the axis normal it is indexed by the
// cell count of the normal axis; for the diagonal normal by the diagonal
// coordinate (i_s + c*i_r) mod N_s, where (s,r) are the two axes spanning the
// normal (s < r) and c is the shared off-diagonal value of the pair.
// Axis normals produce an empty defect mask; difference-type diagonals mask
// the cells cut by jump planes.
GenResult gen_laminate(const TorusGrid& grid, const WellParams& params, int well_i, int well_j,
                       NormalChoice normal, const ProfileBits& profile);

// Crossing twin: f rides spec.f_axis, g rides spec.g_axis sheared by the
// running sum of f, the strain is invariant along spec.invariant_axis.
// Requires equal spacings on the two active axes, and the total shear must
// vanish modulo the g-axis cell count unless g is constant. Cells where
// f = -1 meets a jump of g are masked.
GenResult gen_crossing(const TorusGrid& grid, const WellParams& params, const CrossingSpec& spec);

} // namespace trigokit
