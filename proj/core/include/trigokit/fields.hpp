#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "trigokit/algebra.hpp"
#include "trigokit/grid.hpp"

namespace trigokit {

// Component storage order; also the payload order of the field file format.
enum Comp : int { kE11 = 0, kE22 = 1, kE33 = 2, kE23 = 3, kE13 = 4, kE12 = 5 };

inline constexpr std::array<const char*, 6> kCompNames = {"e11", "e22", "e33",
                                                          "e23", "e13", "e12"};

// Storage slot of the (i,j) entry, 0-based axes.
int comp_of(int i, int j);

// Cell-centered symmetric strain field with a per-cell defect mask. Masked
// cells are exempt from the well inclusion (interface cells) but never from
// compatibility.
struct StrainField {
    TorusGrid grid;
    std::array<std::vector<double>, 6> comp;
    std::vector<std::uint8_t> mask;

    StrainField() = default;
    explicit StrainField(const TorusGrid& g);

    double at(std::size_t cell, int c) const { return comp[std::size_t(c)][cell]; }
    double& at(std::size_t cell, int c) { return comp[std::size_t(c)][cell]; }

    SymMat3 tensor_at(std::size_t cell) const {
        return {comp[kE11][cell], comp[kE22][cell], comp[kE33][cell],
                comp[kE23][cell], comp[kE13][cell], comp[kE12][cell]};
    }
    void set_tensor(std::size_t cell, const SymMat3& m);

    bool masked(std::size_t cell) const { return mask[cell] != 0; }
    std::size_t masked_count() const;
    double defect_fraction() const;

    SymMat3 mean() const; // component-wise average, fixed summation order
    double max_abs() const;
};

// Vertex-based periodic displacement plus the affine part's strain. The full
// displacement is u(x) = mean_strain * x + periodic part; periodic components
// have zero mean.
struct DisplacementField {
    TorusGrid grid;
    SymMat3 mean_strain;
    std::array<std::vector<double>, 3> u;

    DisplacementField() = default;
    explicit DisplacementField(const TorusGrid& g);

    void remove_component_means();
};

// +/-1 valued profile along one axis, one value per cell.
struct ProfileBits {
    std::vector<int> values;

    std::size_t size() const { return values.size(); }
    int operator[](std::size_t i) const { return values[i]; }

    bool is_constant() const;
    double mean() const;
    // Jump count between cyclically adjacent entries.
    int jump_count() const;
    int sum() const;

    static ProfileBits parse(const std::string& plus_minus);
    std::string to_string() const;
};

// A crossing-twin construction: the strain is invariant along invariant_axis;
// the profile f rides f_axis, g rides g_axis, and the g-pattern is sheared
// along f_axis by the running sum of f.
struct CrossingSpec {
    int invariant_axis = 1; // 0-based
    int f_axis = 2;
    int g_axis = 0;
    ProfileBits f;
    ProfileBits g;

    void validate(const TorusGrid& grid) const;
};

// Relabel axes: axis a of the input becomes perm[a] of the output.
StrainField permute_axes(const StrainField& e, const std::array<int, 3>& perm);
DisplacementField permute_axes(const DisplacementField& u, const std::array<int, 3>& perm);

} // namespace trigokit
