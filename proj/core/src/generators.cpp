#include "trigokit/generators.hpp"

#include "trigokit/parallel.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "trigokit/errors.hpp"

namespace trigokit {

namespace {

// Shared exact construction. With {j,s,r} = {0,1,2} a permutation (j the
// invariant axis, f on axis r, g on axis s) and S the running sum of f, the
// strain is
//   e_sr = f[i_r],  e_js = g[k],  e_jr = f[i_r] * g[k + (f[i_r]-1)/2],
//   k = (i_s + S(i_r)) mod N_s,  diagonal = (d1,d2,d3),
// and the displacement below reproduces it exactly through forward
// differences. The offset (f-1)/2 is the upwind shift on f = -1 rows; the
// cells where it disagrees with k (f = -1 and g jumping at k-1) are masked.
GenResult build_crossing(const TorusGrid& grid, const WellParams& params, int j, int s, int r,
                         const std::vector<int>& f, const std::vector<int>& g) {
    const int ns = grid.n[std::size_t(s)];
    const int nr = grid.n[std::size_t(r)];

    const bool g_const = [&] {
        for (int v : g)
            if (v != g.front()) return false;
        return true;
    }();

    // Total shear must close up on the g-axis once g actually varies.
    int total = 0;
    for (int v : f) total += v;
    if (!g_const && ((total % ns) + ns) % ns != 0)
        throw Error(ErrorCode::PeriodicityViolation,
                    "total shear " + std::to_string(total) + " is not a multiple of the g-axis cell count " +
                        std::to_string(ns));

    const double hs = grid.spacing(s);
    const double hr = grid.spacing(r);

    double mf = 0.0, mg = 0.0;
    for (int v : f) mf += v;
    mf /= double(nr);
    for (int v : g) mg += v;
    mg /= double(ns);

    // Prefix shear S[0..nr], S[0] = 0.
    std::vector<int> shear(std::size_t(nr) + 1, 0);
    for (int k = 0; k < nr; ++k) shear[std::size_t(k) + 1] = shear[std::size_t(k)] + f[std::size_t(k)];

    auto wrap_s = [&](int v) { return ((v % ns) + ns) % ns; };

    // Discrete primitives feeding the displacement.
    std::vector<double> prim_f(std::size_t(nr), 0.0);   // u_s carrier, along r
    std::vector<double> prim_w(std::size_t(nr), 0.0);   // mean-of-g correction, along r
    for (int k = 0; k + 1 < nr; ++k) {
        prim_f[std::size_t(k) + 1] = prim_f[std::size_t(k)] + 2.0 * hr * (f[std::size_t(k)] - mf);
        prim_w[std::size_t(k) + 1] = prim_w[std::size_t(k)] + 2.0 * hr * mg * (f[std::size_t(k)] - mf);
    }
    std::vector<double> prim_g(std::size_t(ns), 0.0);   // G tilde, along the g-axis
    for (int k = 0; k + 1 < ns; ++k)
        prim_g[std::size_t(k) + 1] = prim_g[std::size_t(k)] + (g[std::size_t(k)] - mg);

    GenResult out{StrainField(grid), DisplacementField(grid)};

    SymMat3 mean;
    mean.e11 = params.d1;
    mean.e22 = params.d2;
    mean.e33 = params.d3;
    mean.entry(s, r) = mf;
    mean.entry(j, s) = mg;
    mean.entry(j, r) = mf * mg;
    out.disp.mean_strain = mean;

    const int c_sr = comp_of(s, r), c_js = comp_of(j, s), c_jr = comp_of(j, r);

    const std::size_t cells = grid.cells();
    parallel_for(cells, [&](std::size_t begin, std::size_t end) {
        for (std::size_t cell = begin; cell < end; ++cell) {
            const auto c = grid.unpack(cell);
            const int ir = c[std::size_t(r)];
            const int is = c[std::size_t(s)];
            const int fv = f[std::size_t(ir)];
            const int k = wrap_s(is + shear[std::size_t(ir)]);
            const int k_up = wrap_s(k + (fv - 1) / 2);

            out.strain.comp[kE11][cell] = params.d1;
            out.strain.comp[kE22][cell] = params.d2;
            out.strain.comp[kE33][cell] = params.d3;
            out.strain.comp[std::size_t(c_sr)][cell] = double(fv);
            out.strain.comp[std::size_t(c_js)][cell] = double(g[std::size_t(k)]);
            out.strain.comp[std::size_t(c_jr)][cell] = double(fv * g[std::size_t(k_up)]);

            if (fv == -1 && g[std::size_t(wrap_s(k - 1))] != g[std::size_t(k)])
                out.strain.mask[cell] = 1;
        }
    });

    parallel_for(cells, [&](std::size_t begin, std::size_t end) {
        for (std::size_t vert = begin; vert < end; ++vert) {
            const auto c = grid.unpack(vert);
            const int vr = c[std::size_t(r)];
            const int vs = c[std::size_t(s)];
            out.disp.u[std::size_t(s)][vert] = prim_f[std::size_t(vr)];
            out.disp.u[std::size_t(j)][vert] =
                2.0 * hs * prim_g[std::size_t(wrap_s(vs + shear[std::size_t(vr)]))] +
                prim_w[std::size_t(vr)];
        }
    });
    out.disp.remove_component_means();
    return out;
}

// Storage slot where the two wells agree; they differ in the other two.
int common_offdiag_comp(const SymMat3& a, const SymMat3& b) {
    if (a.e23 == b.e23) return kE23;
    if (a.e13 == b.e13) return kE13;
    return kE12;
}

void axes_of_comp(int comp, int& a, int& b) {
    switch (comp) {
        case kE23: a = 1; b = 2; break;
        case kE13: a = 0; b = 2; break;
        default: a = 0; b = 1; break;
    }
}

int sign_entry(const SymMat3& m, int i, int j) { return m(i, j) >= 0.0 ? +1 : -1; }

} // namespace

GenResult gen_constant(const TorusGrid& grid, const WellParams& params, int well_index) {
    const WellSet set = build_wells(params);
    const SymMat3& w = set.well(well_index);

    GenResult out{StrainField(grid), DisplacementField(grid)};
    const std::size_t cells = grid.cells();
    for (std::size_t cell = 0; cell < cells; ++cell) out.strain.set_tensor(cell, w);
    out.disp.mean_strain = w;
    return out;
}

GenResult gen_laminate(const TorusGrid& grid, const WellParams& params, int well_i, int well_j,
                       NormalChoice normal, const ProfileBits& profile) {
    if (well_i < 1 || well_i > 4 || well_j < 1 || well_j > 4 || well_i == well_j)
        throw Error(ErrorCode::BadPair, "well pair must be two distinct indices in 1..4");

    const WellSet set = build_wells(params);
    const SymMat3& wi = set.well(well_i);

    const int common = common_offdiag_comp(wi, set.well(well_j));
    int a = 0, b = 0;
    axes_of_comp(common, a, b);
    const int m = 3 - a - b; // axis of the table's axis normal
    const int cval = sign_entry(wi, a, b);

    if (normal == NormalChoice::Axis) {
        if (profile.size() != std::size_t(grid.n[std::size_t(m)]))
            throw Error(ErrorCode::BadProfile,
                        "axis-normal profile length must equal the normal-axis cell count " +
                            std::to_string(grid.n[std::size_t(m)]));
        // Crossing core with f carrying the profile along the normal axis and
        // a constant g; no spacing constraint arises.
        std::vector<int> f(profile.values);
        for (int& v : f) v *= sign_entry(wi, a, m);
        std::vector<int> g(std::size_t(grid.n[std::size_t(a)]), cval);
        return build_crossing(grid, params, b, a, m, f, g);
    }

    // Diagonal normal: profile indexed by the diagonal coordinate on the
    // (a,b)-plane; equal spacings required.
    if (std::abs(grid.spacing(a) - grid.spacing(b)) >
        1e-12 * std::max(grid.spacing(a), grid.spacing(b)))
        throw Error(ErrorCode::SpacingMismatch,
                    "diagonal normal requires equal spacings on axes " + std::to_string(a + 1) +
                        " and " + std::to_string(b + 1));
    if (profile.size() != std::size_t(grid.n[std::size_t(a)]))
        throw Error(ErrorCode::BadProfile,
                    "diagonal-normal profile length must equal the cell count of axis " +
                        std::to_string(a + 1));

    std::vector<int> f(std::size_t(grid.n[std::size_t(b)]), cval);
    std::vector<int> g(profile.values);
    for (int& v : g) v *= int(std::lround(wi(m, a)));
    return build_crossing(grid, params, m, a, b, f, g);
}

GenResult gen_crossing(const TorusGrid& grid, const WellParams& params, const CrossingSpec& spec) {
    spec.validate(grid);
    const int s = spec.g_axis, r = spec.f_axis;
    if (std::abs(grid.spacing(s) - grid.spacing(r)) >
        1e-12 * std::max(grid.spacing(s), grid.spacing(r)))
        throw Error(ErrorCode::SpacingMismatch,
                    "crossing construction requires equal spacings on axes " + std::to_string(s + 1) +
                        " and " + std::to_string(r + 1));
    return build_crossing(grid, params, spec.invariant_axis, s, r, spec.f.values, spec.g.values);
}

} // namespace trigokit
