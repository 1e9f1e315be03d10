#pragma once

#include <array>

#include "trigokit/algebra.hpp"

namespace trigokit {

// Material constants on the well diagonal.
struct WellParams {
    double d1 = 0.0, d2 = 0.0, d3 = 0.0;
};

// The four trigonal strain wells. Diagonals are (d1,d2,d3); the off-diagonal
// sign patterns (e12,e13,e23) are (+,+,+), (-,-,+), (+,-,-), (-,+,-), so every
// well satisfies e12*e13 = e23 and its two index permutations.
struct WellSet {
    std::array<SymMat3, 4> wells;
    WellParams params;

    const SymMat3& well(int index1based) const;
};

WellSet build_wells(const WellParams& params);

// Shear/normal pair of a symmetrized rank-one matrix: (1/2)(a(x)n + n(x)a).
// n is unit, a carries the full amplitude; the pair is defined up to
// (a,n) -> (c a, n/c) and a simultaneous global sign.
struct TwinPair {
    Vec3 a;
    Vec3 n;
};

struct TwinDecomposition {
    TwinPair solution_a; // |n| pattern lexicographically largest
    TwinPair solution_b;
};

// Decompose M = (1/2)(a(x)n + n(x)a). M must have middle eigenvalue zero
// (within 1e-10 * max(1, |M|_F)) and outer eigenvalues of opposite sign.
// Throws Degenerate for M = 0 and NotRankOne otherwise.
TwinDecomposition rank_one_decompose(const SymMat3& m);

struct TwinTableRow {
    int well_i;
    int well_j;
    TwinDecomposition decomposition;
};

// The six well differences e(i) - e(j) with both (a,n) solutions each.
// Independent of the diagonal params, which cancel in the differences.
std::array<TwinTableRow, 6> twin_table(const WellParams& params);

struct OrthoParams {
    double delta = 1.0; // > 0
};

// The six orthorhombic wells with shear parameter delta.
std::array<SymMat3, 6> ortho_wells(const OrthoParams& p);

// Change of coordinates sending the first four orthorhombic wells onto the
// trigonal wells with d = (-1/3, 3/delta^2, -1/3): returns C e C^t.
SymMat3 map_to_trigonal(const SymMat3& e, const OrthoParams& p);

// Trigonal parameters realized by the orthorhombic map for a given delta.
WellParams ortho_image_params(const OrthoParams& p);

} // namespace trigokit
