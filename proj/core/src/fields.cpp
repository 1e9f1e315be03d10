#include "trigokit/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trigokit/errors.hpp"

namespace trigokit {

TorusGrid::TorusGrid(int n1, int n2, int n3, double l1, double l2, double l3)
    : n{n1, n2, n3}, length{l1, l2, l3} {
    for (int a = 0; a < 3; ++a) {
        if (n[std::size_t(a)] < 2)
            throw Error(ErrorCode::BadIndex, "grid needs at least 2 cells per axis");
        if (!(length[std::size_t(a)] > 0.0))
            throw Error(ErrorCode::BadIndex, "grid side lengths must be positive");
    }
}

std::size_t TorusGrid::step(std::size_t idx, int axis) const {
    const auto c = unpack(idx);
    switch (axis) {
        case 0: return index(wrap(0, c[0] + 1), c[1], c[2]);
        case 1: return index(c[0], wrap(1, c[1] + 1), c[2]);
        default: return index(c[0], c[1], wrap(2, c[2] + 1));
    }
}

int comp_of(int i, int j) {
    if (i == j) return i; // kE11, kE22, kE33
    const int s = i + j;
    return s == 1 ? kE12 : (s == 2 ? kE13 : kE23);
}

StrainField::StrainField(const TorusGrid& g) : grid(g) {
    for (auto& c : comp) c.assign(g.cells(), 0.0);
    mask.assign(g.cells(), 0);
}

void StrainField::set_tensor(std::size_t cell, const SymMat3& m) {
    comp[kE11][cell] = m.e11;
    comp[kE22][cell] = m.e22;
    comp[kE33][cell] = m.e33;
    comp[kE23][cell] = m.e23;
    comp[kE13][cell] = m.e13;
    comp[kE12][cell] = m.e12;
}

std::size_t StrainField::masked_count() const {
    return std::size_t(std::count_if(mask.begin(), mask.end(), [](std::uint8_t b) { return b != 0; }));
}

double StrainField::defect_fraction() const {
    return double(masked_count()) / double(grid.cells());
}

SymMat3 StrainField::mean() const {
    SymMat3 m;
    const double inv = 1.0 / double(grid.cells());
    for (int c = 0; c < 6; ++c) {
        double s = 0.0;
        for (double v : comp[std::size_t(c)]) s += v;
        double* slot[6] = {&m.e11, &m.e22, &m.e33, &m.e23, &m.e13, &m.e12};
        *slot[c] = s * inv;
    }
    return m;
}

double StrainField::max_abs() const {
    double m = 0.0;
    for (const auto& c : comp)
        for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

DisplacementField::DisplacementField(const TorusGrid& g) : grid(g) {
    for (auto& c : u) c.assign(g.cells(), 0.0);
}

void DisplacementField::remove_component_means() {
    for (auto& c : u) {
        double s = 0.0;
        for (double v : c) s += v;
        const double m = s / double(c.size());
        for (double& v : c) v -= m;
    }
}

bool ProfileBits::is_constant() const {
    return std::all_of(values.begin(), values.end(), [&](int v) { return v == values.front(); });
}

double ProfileBits::mean() const {
    return double(sum()) / double(values.size());
}

int ProfileBits::sum() const {
    return std::accumulate(values.begin(), values.end(), 0);
}

int ProfileBits::jump_count() const {
    int jumps = 0;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i)
        if (values[i] != values[(i + 1) % n]) ++jumps;
    return jumps;
}

ProfileBits ProfileBits::parse(const std::string& plus_minus) {
    ProfileBits p;
    p.values.reserve(plus_minus.size());
    for (char c : plus_minus) {
        if (c == '+')
            p.values.push_back(+1);
        else if (c == '-')
            p.values.push_back(-1);
        else
            throw Error(ErrorCode::BadProfile, std::string("profile characters must be + or -, got '") + c + "'");
    }
    if (p.values.empty()) throw Error(ErrorCode::BadProfile, "empty profile");
    return p;
}

std::string ProfileBits::to_string() const {
    std::string s;
    s.reserve(values.size());
    for (int v : values) s.push_back(v > 0 ? '+' : '-');
    return s;
}

void CrossingSpec::validate(const TorusGrid& grid) const {
    auto in_range = [](int a) { return a >= 0 && a <= 2; };
    if (!in_range(invariant_axis) || !in_range(f_axis) || !in_range(g_axis) ||
        invariant_axis == f_axis || invariant_axis == g_axis || f_axis == g_axis)
        throw Error(ErrorCode::BadIndex, "crossing axes must be a permutation of {1,2,3}");
    if (f.size() != std::size_t(grid.n[std::size_t(f_axis)]))
        throw Error(ErrorCode::BadProfile, "f profile length must match the f-axis cell count");
    if (g.size() != std::size_t(grid.n[std::size_t(g_axis)]))
        throw Error(ErrorCode::BadProfile, "g profile length must match the g-axis cell count");
}

namespace {

std::array<int, 3> permute_coords(const std::array<int, 3>& c, const std::array<int, 3>& perm) {
    std::array<int, 3> out{};
    for (int a = 0; a < 3; ++a) out[std::size_t(perm[std::size_t(a)])] = c[std::size_t(a)];
    return out;
}

TorusGrid permute_grid(const TorusGrid& g, const std::array<int, 3>& perm) {
    std::array<int, 3> n{};
    std::array<double, 3> l{};
    for (int a = 0; a < 3; ++a) {
        n[std::size_t(perm[std::size_t(a)])] = g.n[std::size_t(a)];
        l[std::size_t(perm[std::size_t(a)])] = g.length[std::size_t(a)];
    }
    return TorusGrid(n[0], n[1], n[2], l[0], l[1], l[2]);
}

void check_perm(const std::array<int, 3>& perm) {
    std::array<bool, 3> seen{false, false, false};
    for (int a : perm) {
        if (a < 0 || a > 2 || seen[std::size_t(a)])
            throw Error(ErrorCode::BadIndex, "invalid axis permutation");
        seen[std::size_t(a)] = true;
    }
}

} // namespace

StrainField permute_axes(const StrainField& e, const std::array<int, 3>& perm) {
    check_perm(perm);
    StrainField out(permute_grid(e.grid, perm));
    const std::size_t cells = e.grid.cells();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const auto c = e.grid.unpack(cell);
        const auto pc = permute_coords(c, perm);
        const std::size_t dst = out.grid.index(pc[0], pc[1], pc[2]);
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j)
                out.comp[std::size_t(comp_of(perm[std::size_t(i)], perm[std::size_t(j)]))][dst] =
                    e.comp[std::size_t(comp_of(i, j))][cell];
        out.mask[dst] = e.mask[cell];
    }
    return out;
}

DisplacementField permute_axes(const DisplacementField& u, const std::array<int, 3>& perm) {
    check_perm(perm);
    DisplacementField out(permute_grid(u.grid, perm));
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            out.mean_strain.entry(perm[std::size_t(i)], perm[std::size_t(j)]) =
                u.mean_strain(i, j);
    const std::size_t cells = u.grid.cells();
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const auto c = u.grid.unpack(cell);
        const auto pc = permute_coords(c, perm);
        const std::size_t dst = out.grid.index(pc[0], pc[1], pc[2]);
        for (int a = 0; a < 3; ++a)
            out.u[std::size_t(perm[std::size_t(a)])][dst] = u.u[std::size_t(a)][cell];
    }
    return out;
}

} // namespace trigokit
