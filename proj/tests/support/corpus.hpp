// Randomized admissible-field corpus shared by the property tests and the
// acceptance suite.
#pragma once

#include <array>
#include <random>
#include <string>
#include <vector>

#include "trigokit/generators.hpp"

namespace trigokit::testing {

enum class SampleKind { Constant, AxisLaminate, DiagonalLaminate, Crossing };

struct Sample {
    SampleKind kind;
    std::string description;
    WellParams params;
    GenResult fields;

    // Ground truth for round trips.
    int well = 0;
    std::array<int, 2> pair{0, 0};
    ProfileBits profile; // laminate profile as passed to the generator
    CrossingSpec cross;  // crossing spec as passed to the generator
};

inline WellParams random_params(std::mt19937& rng) {
    switch (rng() % 4) {
        case 0: return {1.0, 2.0, 3.0};
        case 1: return {0.0, 0.0, 0.0};
        case 2: return {-1.0 / 3.0, 3.0, -1.0 / 3.0};
        default: {
            std::uniform_real_distribution<double> dist(-3.0, 3.0);
            return {dist(rng), dist(rng), dist(rng)};
        }
    }
}

inline ProfileBits random_profile(std::mt19937& rng, int n) {
    ProfileBits p;
    p.values.resize(std::size_t(n));
    for (int& v : p.values) v = (rng() % 2) ? +1 : -1;
    return p;
}

inline ProfileBits random_nonconstant_profile(std::mt19937& rng, int n) {
    ProfileBits p = random_profile(rng, n);
    while (p.is_constant()) {
        p.values[rng() % p.values.size()] *= -1;
    }
    return p;
}

// Random +/-1 profile of length n whose sum is the given target (same parity
// and |target| <= n required).
inline ProfileBits random_profile_with_sum(std::mt19937& rng, int n, int target) {
    ProfileBits p = random_profile(rng, n);
    int sum = p.sum();
    while (sum != target) {
        const std::size_t i = rng() % p.values.size();
        if (sum < target && p.values[i] == -1) {
            p.values[i] = +1;
            sum += 2;
        } else if (sum > target && p.values[i] == +1) {
            p.values[i] = -1;
            sum -= 2;
        }
    }
    return p;
}

inline int pick(std::mt19937& rng, std::initializer_list<int> values) {
    auto it = values.begin();
    std::advance(it, rng() % values.size());
    return *it;
}

// Grid with equal spacing h on all axes, so every generator precondition is
// satisfiable regardless of the drawn axes.
inline TorusGrid random_uniform_grid(std::mt19937& rng, int max_n = 32) {
    const double h = 1.0 / double(pick(rng, {4, 8, 16}));
    std::array<int, 3> n{};
    for (auto& v : n) {
        v = pick(rng, {4, 6, 8, 12, 16, 24, 32});
        while (v > max_n) v /= 2;
    }
    return TorusGrid(n[0], n[1], n[2], n[0] * h, n[1] * h, n[2] * h);
}

inline Sample random_constant(std::mt19937& rng, int max_n = 32) {
    Sample s;
    s.kind = SampleKind::Constant;
    s.params = random_params(rng);
    s.well = int(rng() % 4) + 1;
    const TorusGrid grid = random_uniform_grid(rng, max_n);
    s.fields = gen_constant(grid, s.params, s.well);
    s.description = "constant well " + std::to_string(s.well);
    return s;
}

inline std::array<int, 2> random_pair(std::mt19937& rng) {
    const int i = int(rng() % 4) + 1;
    int j = int(rng() % 4) + 1;
    while (j == i) j = int(rng() % 4) + 1;
    return {std::min(i, j), std::max(i, j)};
}

inline Sample random_axis_laminate(std::mt19937& rng, int max_n = 32) {
    Sample s;
    s.kind = SampleKind::AxisLaminate;
    s.params = random_params(rng);
    s.pair = random_pair(rng);
    const TorusGrid grid = random_uniform_grid(rng, max_n);

    // The normal axis is fixed by the pair: it is the axis missing from the
    // component on which the two wells agree.
    const WellSet set = build_wells(s.params);
    const SymMat3 wi = set.well(s.pair[0]), wj = set.well(s.pair[1]);
    int m = 2;
    if (wi.e23 == wj.e23) m = 0;
    else if (wi.e13 == wj.e13) m = 1;

    s.profile = random_nonconstant_profile(rng, grid.n[std::size_t(m)]);
    s.fields = gen_laminate(grid, s.params, s.pair[0], s.pair[1], NormalChoice::Axis, s.profile);
    s.description = "axis laminate (" + std::to_string(s.pair[0]) + "," +
                    std::to_string(s.pair[1]) + ")";
    return s;
}

inline Sample random_diagonal_laminate(std::mt19937& rng, int max_n = 32) {
    Sample s;
    s.kind = SampleKind::DiagonalLaminate;
    s.params = random_params(rng);
    s.pair = random_pair(rng);

    const WellSet set = build_wells(s.params);
    const SymMat3 wi = set.well(s.pair[0]), wj = set.well(s.pair[1]);
    int a = 0, b = 1;
    if (wi.e23 == wj.e23) { a = 1; b = 2; }
    else if (wi.e13 == wj.e13) { a = 0; b = 2; }

    // Equal cell counts on the two active axes keep the diagonal periodic.
    const double h = 1.0 / double(pick(rng, {4, 8, 16}));
    int nact = pick(rng, {4, 8, 16, 32});
    while (nact > max_n) nact /= 2;
    const int nj = pick(rng, {2, 3, 4, 8});
    std::array<int, 3> dims{};
    dims[std::size_t(a)] = nact;
    dims[std::size_t(b)] = nact;
    dims[std::size_t(3 - a - b)] = nj;
    const TorusGrid grid(dims[0], dims[1], dims[2], dims[0] * h, dims[1] * h, dims[2] * h);

    s.profile = random_nonconstant_profile(rng, nact);
    s.fields =
        gen_laminate(grid, s.params, s.pair[0], s.pair[1], NormalChoice::Diagonal, s.profile);
    s.description = "diagonal laminate (" + std::to_string(s.pair[0]) + "," +
                    std::to_string(s.pair[1]) + ")";
    return s;
}

inline Sample random_crossing(std::mt19937& rng, int max_n = 32) {
    Sample s;
    s.kind = SampleKind::Crossing;
    s.params = random_params(rng);

    CrossingSpec spec;
    spec.invariant_axis = int(rng() % 3);
    const int p = spec.invariant_axis == 0 ? 1 : 0;
    const int q = spec.invariant_axis == 2 ? 1 : 2;
    const bool swap = (rng() % 2) != 0;
    spec.f_axis = swap ? p : q;
    spec.g_axis = swap ? q : p;

    const double h = 1.0 / double(pick(rng, {4, 8, 16}));
    int nf = pick(rng, {4, 8, 16, 32});
    int ng = pick(rng, {4, 8, 16, 32});
    while (nf > max_n) nf /= 2;
    while (ng > max_n) ng /= 2;
    const int nj = pick(rng, {2, 3, 4, 8});
    std::array<int, 3> dims{};
    dims[std::size_t(spec.f_axis)] = nf;
    dims[std::size_t(spec.g_axis)] = ng;
    dims[std::size_t(spec.invariant_axis)] = nj;
    const TorusGrid grid(dims[0], dims[1], dims[2], dims[0] * h, dims[1] * h, dims[2] * h);

    // Total shear 0 most of the time, one full winding when it fits (nf > ng
    // keeps a nonconstant f possible).
    int target = 0;
    if (nf > ng && (rng() % 3) == 0) target = (rng() % 2) ? ng : -ng;
    if ((nf % 2) != (std::abs(target) % 2)) target = 0; // parity guard
    spec.f = random_profile_with_sum(rng, nf, target);
    while (spec.f.is_constant()) spec.f = random_profile_with_sum(rng, nf, target);
    spec.g = random_nonconstant_profile(rng, ng);
    s.cross = spec;

    s.fields = gen_crossing(grid, s.params, spec);
    s.description = "crossing j=" + std::to_string(spec.invariant_axis + 1);
    return s;
}

inline Sample random_sample(std::mt19937& rng, int max_n = 32) {
    switch (rng() % 6) {
        case 0: return random_constant(rng, max_n);
        case 1: return random_axis_laminate(rng, max_n);
        case 2: return random_diagonal_laminate(rng, max_n);
        default: return random_crossing(rng, max_n);
    }
}

} // namespace trigokit::testing
