#include "trigokit/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "trigokit/errors.hpp"
#include "trigokit/parallel.hpp"

namespace trigokit {

namespace {

std::string fmt_mag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::mutex g_fftw_plan_mutex; // FFTW planning is not thread-safe

using Cplx = std::complex<double>;

struct Spectrum {
    int n1 = 0, n2 = 0, n3 = 0;
    int n3r = 0; // reduced third dimension, n3/2 + 1
    std::array<std::vector<Cplx>, 6> comp;

    std::size_t modes() const { return std::size_t(n1) * std::size_t(n2) * std::size_t(n3r); }
    std::size_t index(int k1, int k2, int k3) const {
        return (std::size_t(k1) * std::size_t(n2) + std::size_t(k2)) * std::size_t(n3r) +
               std::size_t(k3);
    }
};

// Forward r2c transforms of all six components, normalized by the cell count
// so coefficients carry field amplitude.
Spectrum forward_transform(const StrainField& e) {
    const auto& g = e.grid;
    Spectrum spec;
    spec.n1 = g.n[0];
    spec.n2 = g.n[1];
    spec.n3 = g.n[2];
    spec.n3r = g.n[2] / 2 + 1;

    const std::size_t cells = g.cells();
    const std::size_t modes = spec.modes();
    const double inv = 1.0 / double(cells);

    std::vector<double> in(cells);
    std::vector<Cplx> out(modes);

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_3d(spec.n1, spec.n2, spec.n3, in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    }
    for (int c = 0; c < 6; ++c) {
        std::copy(e.comp[std::size_t(c)].begin(), e.comp[std::size_t(c)].end(), in.begin());
        fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
        spec.comp[std::size_t(c)].resize(modes);
        for (std::size_t m = 0; m < modes; ++m) spec.comp[std::size_t(c)][m] = out[m] * inv;
    }
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    return spec;
}

ResidualReport residual_from_spectrum(const Spectrum& spec, const StrainField& e) {
    const DiffSymbol sym(e.grid);

    // Field scale per equation: max-abs over the components it touches.
    std::array<double, 6> comp_max{};
    for (int c = 0; c < 6; ++c) {
        double m = 0.0;
        for (double v : e.comp[std::size_t(c)]) m = std::max(m, std::abs(v));
        comp_max[std::size_t(c)] = m;
    }
    auto scale_of = [&](std::initializer_list<int> comps) {
        double m = 0.0;
        for (int c : comps) m = std::max(m, comp_max[std::size_t(c)]);
        return std::max(1.0, m);
    };

    ResidualReport report;
    report.equations[0].name = "wave_e12";
    report.equations[1].name = "wave_e13";
    report.equations[2].name = "wave_e23";
    report.equations[3].name = "curl_e11";
    report.equations[4].name = "curl_e22";
    report.equations[5].name = "curl_e33";

    const std::array<double, 6> scales = {
        scale_of({kE12, kE11, kE22}), scale_of({kE13, kE11, kE33}), scale_of({kE23, kE22, kE33}),
        scale_of({kE11, kE23, kE13, kE12}), scale_of({kE22, kE23, kE13, kE12}),
        scale_of({kE33, kE23, kE13, kE12})};

    for (int k1 = 0; k1 < spec.n1; ++k1) {
        for (int k2 = 0; k2 < spec.n2; ++k2) {
            for (int k3 = 0; k3 < spec.n3r; ++k3) {
                const std::size_t m = spec.index(k1, k2, k3);
                const Cplx s1 = sym(0, k1), s2 = sym(1, k2), s3 = sym(2, k3);
                const Cplx e11 = spec.comp[kE11][m], e22 = spec.comp[kE22][m],
                           e33 = spec.comp[kE33][m], e23 = spec.comp[kE23][m],
                           e13 = spec.comp[kE13][m], e12 = spec.comp[kE12][m];

                const std::array<Cplx, 6> r = {
                    2.0 * s1 * s2 * e12 - s2 * s2 * e11 - s1 * s1 * e22,
                    2.0 * s1 * s3 * e13 - s3 * s3 * e11 - s1 * s1 * e33,
                    2.0 * s2 * s3 * e23 - s2 * s2 * e33 - s3 * s3 * e22,
                    s2 * s3 * e11 - s1 * (-s1 * e23 + s2 * e13 + s3 * e12),
                    s1 * s3 * e22 - s2 * (s1 * e23 - s2 * e13 + s3 * e12),
                    s1 * s2 * e33 - s3 * (s1 * e23 + s2 * e13 - s3 * e12),
                };
                for (int q = 0; q < 6; ++q) {
                    const double mag = std::abs(r[std::size_t(q)]);
                    auto& eq = report.equations[std::size_t(q)];
                    if (mag > eq.max_abs) {
                        eq.max_abs = mag;
                        eq.worst_k = {k1, k2, k3};
                    }
                }
            }
        }
    }
    for (int q = 0; q < 6; ++q)
        report.equations[std::size_t(q)].relative =
            report.equations[std::size_t(q)].max_abs / scales[std::size_t(q)];
    return report;
}

} // namespace

DiffSymbol::DiffSymbol(const TorusGrid& grid) {
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    for (int axis = 0; axis < 3; ++axis) {
        const int n = grid.n[std::size_t(axis)];
        const double h = grid.spacing(axis);
        s[std::size_t(axis)].resize(std::size_t(n));
        for (int k = 0; k < n; ++k) {
            const double phase = kTwoPi * double(k) / double(n);
            s[std::size_t(axis)][std::size_t(k)] =
                Cplx((std::cos(phase) - 1.0) / h, std::sin(phase) / h);
        }
    }
}

double ResidualReport::max_relative() const {
    double m = 0.0;
    for (const auto& eq : equations) m = std::max(m, eq.relative);
    return m;
}

double ResidualReport::max_abs() const {
    double m = 0.0;
    for (const auto& eq : equations) m = std::max(m, eq.max_abs);
    return m;
}

const EquationResidual& ResidualReport::worst() const {
    const EquationResidual* w = &equations[0];
    for (const auto& eq : equations)
        if (eq.relative > w->relative) w = &eq;
    return *w;
}

StrainField symmetrized_gradient(const DisplacementField& u) {
    const auto& g = u.grid;
    StrainField e(g);
    const std::array<double, 3> h = {g.spacing(0), g.spacing(1), g.spacing(2)};

    parallel_for(g.cells(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t cell = begin; cell < end; ++cell) {
            std::array<std::size_t, 3> fwd = {g.step(cell, 0), g.step(cell, 1), g.step(cell, 2)};
            for (int i = 0; i < 3; ++i) {
                for (int j = i; j < 3; ++j) {
                    const double dij = (u.u[std::size_t(j)][fwd[std::size_t(i)]] -
                                        u.u[std::size_t(j)][cell]) /
                                       h[std::size_t(i)];
                    const double dji = (u.u[std::size_t(i)][fwd[std::size_t(j)]] -
                                        u.u[std::size_t(i)][cell]) /
                                       h[std::size_t(j)];
                    e.comp[std::size_t(comp_of(i, j))][cell] =
                        u.mean_strain(i, j) + 0.5 * (dij + dji);
                }
            }
        }
    });
    return e;
}

ResidualReport saint_venant_residual(const StrainField& e) {
    return residual_from_spectrum(forward_transform(e), e);
}

SliceAverageReport slice_average_check(const StrainField& e) {
    const auto& g = e.grid;
    SliceAverageReport out;

    struct Item {
        int comp;
        int remaining_axis;
        double* slot;
    };
    std::array<Item, 3> items = {Item{kE23, 0, &out.e23}, Item{kE13, 1, &out.e13},
                                 Item{kE12, 2, &out.e12}};

    for (const auto& item : items) {
        const int m = item.remaining_axis;
        const int nm = g.n[std::size_t(m)];
        std::vector<double> sums(std::size_t(nm), 0.0);
        const auto& arr = e.comp[std::size_t(item.comp)];
        for (std::size_t cell = 0; cell < g.cells(); ++cell)
            sums[std::size_t(g.unpack(cell)[std::size_t(m)])] += arr[cell];

        const double plane = double(g.cells()) / double(nm);
        double global = 0.0;
        for (double s : sums) global += s;
        global /= double(g.cells());

        double dev = 0.0;
        for (double s : sums) dev = std::max(dev, std::abs(s / plane - global));
        *item.slot = dev;
    }
    return out;
}

DisplacementField reconstruct_displacement(const StrainField& e, double tol_relative) {
    const Spectrum spec = forward_transform(e);
    const ResidualReport report = residual_from_spectrum(spec, e);
    if (report.max_relative() > tol_relative)
        throw Error(ErrorCode::Incompatible,
                    "no displacement exists: " + report.worst().name + " residual " +
                        fmt_mag(report.worst().relative) + " exceeds tolerance " +
                        fmt_mag(tol_relative));

    const auto& g = e.grid;
    const DiffSymbol sym(g);
    const std::size_t modes = spec.modes();

    std::array<std::vector<Cplx>, 3> uhat;
    for (auto& c : uhat) c.assign(modes, Cplx(0.0, 0.0));

    for (int k1 = 0; k1 < spec.n1; ++k1) {
        for (int k2 = 0; k2 < spec.n2; ++k2) {
            for (int k3 = 0; k3 < spec.n3r; ++k3) {
                if (k1 == 0 && k2 == 0 && k3 == 0) continue;
                const std::size_t m = spec.index(k1, k2, k3);
                const std::array<Cplx, 3> s = {sym(0, k1), sym(1, k2), sym(2, k3)};
                const std::array<Cplx, 3> sc = {std::conj(s[0]), std::conj(s[1]), std::conj(s[2])};
                const double s2 = std::norm(s[0]) + std::norm(s[1]) + std::norm(s[2]);

                // Symmetric coefficient matrix at this mode.
                const Cplx e11 = spec.comp[kE11][m], e22 = spec.comp[kE22][m],
                           e33 = spec.comp[kE33][m], e23 = spec.comp[kE23][m],
                           e13 = spec.comp[kE13][m], e12 = spec.comp[kE12][m];
                const std::array<Cplx, 3> esc = {
                    e11 * sc[0] + e12 * sc[1] + e13 * sc[2],
                    e12 * sc[0] + e22 * sc[1] + e23 * sc[2],
                    e13 * sc[0] + e23 * sc[1] + e33 * sc[2],
                };
                const Cplx quad = sc[0] * esc[0] + sc[1] * esc[1] + sc[2] * esc[2];
                for (int a = 0; a < 3; ++a)
                    uhat[std::size_t(a)][m] =
                        2.0 * esc[std::size_t(a)] / s2 - quad * s[std::size_t(a)] / (s2 * s2);
            }
        }
    }

    DisplacementField u(g);
    u.mean_strain = e.mean();

    const std::size_t cells = g.cells();
    std::vector<Cplx> in(modes);
    std::vector<double> out(cells);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        plan = fftw_plan_dft_c2r_3d(spec.n1, spec.n2, spec.n3,
                                    reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                    FFTW_ESTIMATE);
    }
    for (int a = 0; a < 3; ++a) {
        std::copy(uhat[std::size_t(a)].begin(), uhat[std::size_t(a)].end(), in.begin());
        fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in.data()), out.data());
        u.u[std::size_t(a)].assign(out.begin(), out.end());
    }
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    u.remove_component_means();
    return u;
}

} // namespace trigokit
