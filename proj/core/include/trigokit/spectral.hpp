#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "trigokit/fields.hpp"

namespace trigokit {

// Fourier multipliers of the forward difference on one axis:
// s(k) = (exp(2*pi*i*k/N) - 1)/h, so s(0) = 0 and |s(k)| <= 2/h.
struct DiffSymbol {
    std::array<std::vector<std::complex<double>>, 3> s;

    explicit DiffSymbol(const TorusGrid& grid);
    const std::complex<double>& operator()(int axis, int k) const {
        return s[std::size_t(axis)][std::size_t(k)];
    }
};

struct EquationResidual {
    std::string name;
    double max_abs = 0.0;          // max over wavevectors of |residual(k)|
    double relative = 0.0;         // max_abs / max(1, max-abs of involved components)
    std::array<int, 3> worst_k{0, 0, 0};
};

// The three wave-type and three curl-type compatibility residuals.
struct ResidualReport {
    std::array<EquationResidual, 6> equations;

    double max_relative() const;
    double max_abs() const;
    const EquationResidual& worst() const;
};

// e_ij = mean_strain_ij + (D_i u_j + D_j u_i)/2 with forward differences.
StrainField symmetrized_gradient(const DisplacementField& u);

// Evaluates the six compatibility equations in discrete Fourier space with
// the forward-difference symbols; zero for every discrete symmetrized
// gradient.
ResidualReport saint_venant_residual(const StrainField& e);

// Per off-diagonal component: max over slices of |slice average - global
// average|, where the slice runs over the component's own two axes.
struct SliceAverageReport {
    double e23 = 0.0, e13 = 0.0, e12 = 0.0;
    double max() const { return std::max(e23, std::max(e13, e12)); }
};
SliceAverageReport slice_average_check(const StrainField& e);

// Inverts the symmetrized gradient: per nonzero wavevector the closed-form
// least-squares solution u(k) = 2 e(k) conj(s) / |s|^2 - (conj(s)^t e(k)
// conj(s)) s / |s|^4; the mean strain absorbs the zero mode, the periodic
// part is mean-free and the skew-symmetric affine part is zero. Throws
// Incompatible when the relative residual exceeds the tolerance.
DisplacementField reconstruct_displacement(const StrainField& e, double tol_relative = 1e-8);

} // namespace trigokit
