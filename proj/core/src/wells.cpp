#include "trigokit/wells.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trigokit/errors.hpp"

namespace trigokit {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::BadPair: return "BadPair";
        case ErrorCode::BadProfile: return "BadProfile";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::NotRankOne: return "NotRankOne";
        case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
        case ErrorCode::SpacingMismatch: return "SpacingMismatch";
        case ErrorCode::PeriodicityViolation: return "PeriodicityViolation";
        case ErrorCode::Incompatible: return "Incompatible";
        case ErrorCode::InclusionViolation: return "InclusionViolation";
        case ErrorCode::NotTwoValued: return "NotTwoValued";
        case ErrorCode::UndecidableSlice: return "UndecidableSlice";
        case ErrorCode::PathDependent: return "PathDependent";
        case ErrorCode::StructureViolation: return "StructureViolation";
        case ErrorCode::NoInvariantDirection: return "NoInvariantDirection";
        case ErrorCode::FormatError: return "FormatError";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

EigenDecomposition3 eigen_sym3(const SymMat3& m) {
    // Work on a dense copy; accumulate rotations in v.
    double a[3][3] = {{m.e11, m.e12, m.e13}, {m.e12, m.e22, m.e23}, {m.e13, m.e23, m.e33}};
    double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    const double scale = std::max(1.0, m.frobenius());
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
        if (off <= 1e-16 * scale) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) <= 1e-18 * scale) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });

    EigenDecomposition3 out{};
    for (int i = 0; i < 3; ++i) {
        const int k = order[std::size_t(i)];
        out.values[std::size_t(i)] = a[k][k];
        out.vectors[std::size_t(i)] = Vec3{v[0][k], v[1][k], v[2][k]};
    }
    return out;
}

const SymMat3& WellSet::well(int index1based) const {
    if (index1based < 1 || index1based > 4)
        throw Error(ErrorCode::BadIndex, "well index must be in 1..4, got " + std::to_string(index1based));
    return wells[std::size_t(index1based - 1)];
}

WellSet build_wells(const WellParams& params) {
    WellSet set;
    set.params = params;
    static constexpr double kSigns[4][3] = {
        // e12, e13, e23
        {+1.0, +1.0, +1.0},
        {-1.0, -1.0, +1.0},
        {+1.0, -1.0, -1.0},
        {-1.0, +1.0, -1.0},
    };
    for (int w = 0; w < 4; ++w) {
        SymMat3& m = set.wells[std::size_t(w)];
        m.e11 = params.d1;
        m.e22 = params.d2;
        m.e33 = params.d3;
        m.e12 = kSigns[w][0];
        m.e13 = kSigns[w][1];
        m.e23 = kSigns[w][2];
    }
    return set;
}

namespace {

// Canonical sign: first component of n that is nonzero (beyond tolerance)
// must be positive; a flips together with n.
void fix_sign(TwinPair& pair) {
    double lead = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(pair.n[i]) > 1e-12) {
            lead = pair.n[i];
            break;
        }
    }
    if (lead < 0.0) {
        pair.n = -pair.n;
        pair.a = -pair.a;
    }
}

bool abs_pattern_less(const Vec3& lhs, const Vec3& rhs) {
    for (int i = 0; i < 3; ++i) {
        const double l = std::abs(lhs[i]), r = std::abs(rhs[i]);
        if (std::abs(l - r) > 1e-12) return l < r;
    }
    // Tie on the absolute pattern: compare signed entries, larger first.
    for (int i = 0; i < 3; ++i) {
        if (std::abs(lhs[i] - rhs[i]) > 1e-12) return lhs[i] < rhs[i];
    }
    return false;
}

} // namespace

TwinDecomposition rank_one_decompose(const SymMat3& m) {
    const double scale = m.frobenius();
    if (scale <= 1e-14) throw Error(ErrorCode::Degenerate, "zero matrix has no twin decomposition");

    const EigenDecomposition3 eig = eigen_sym3(m);
    const double lo = eig.values[0], mid = eig.values[1], hi = eig.values[2];

    const double tol = 1e-10 * std::max(1.0, scale);
    if (std::abs(mid) > tol)
        throw Error(ErrorCode::NotRankOne, "middle eigenvalue " + std::to_string(mid) + " exceeds tolerance");
    if (!(lo < -tol && hi > tol))
        throw Error(ErrorCode::NotRankOne, "outer eigenvalues do not have opposite signs");

    const double sp = std::sqrt(hi);
    const double sm = std::sqrt(-lo);
    const Vec3 vp = eig.vectors[2];
    const Vec3 vm = eig.vectors[0];

    TwinPair sol[2];
    for (int s = 0; s < 2; ++s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        Vec3 n_raw = vp * sp + vm * (sign * sm);
        Vec3 a_raw = vp * sp - vm * (sign * sm);
        const double len = norm(n_raw);
        sol[s].n = n_raw * (1.0 / len);
        sol[s].a = a_raw * len;
        fix_sign(sol[s]);
    }

    TwinDecomposition out;
    if (abs_pattern_less(sol[0].n, sol[1].n)) {
        out.solution_a = sol[1];
        out.solution_b = sol[0];
    } else {
        out.solution_a = sol[0];
        out.solution_b = sol[1];
    }
    return out;
}

std::array<TwinTableRow, 6> twin_table(const WellParams& params) {
    const WellSet set = build_wells(params);
    std::array<TwinTableRow, 6> rows;
    std::size_t r = 0;
    for (int i = 1; i <= 4; ++i) {
        for (int j = i + 1; j <= 4; ++j) {
            const SymMat3 diff = set.well(i) - set.well(j);
            rows[r] = TwinTableRow{i, j, rank_one_decompose(diff)};
            ++r;
        }
    }
    return rows;
}

std::array<SymMat3, 6> ortho_wells(const OrthoParams& p) {
    if (!(p.delta > 0.0))
        throw Error(ErrorCode::NonPositiveDelta, "delta must be positive, got " + std::to_string(p.delta));
    const double d = p.delta;
    std::array<SymMat3, 6> w;
    w[0] = SymMat3{1, 1, -2, 0, 0, d};
    w[1] = SymMat3{1, 1, -2, 0, 0, -d};
    w[2] = SymMat3{1, -2, 1, 0, d, 0};
    w[3] = SymMat3{1, -2, 1, 0, -d, 0};
    w[4] = SymMat3{-2, 1, 1, d, 0, 0};
    w[5] = SymMat3{-2, 1, 1, -d, 0, 0};
    return w;
}

namespace {

Mat3 ortho_to_trigonal_matrix(double delta) {
    Mat3 diag{};
    diag(0, 0) = 1.0 / std::sqrt(3.0);
    diag(1, 1) = std::sqrt(3.0) / (std::sqrt(2.0) * delta);
    diag(2, 2) = 1.0 / std::sqrt(3.0);

    Mat3 base{};
    base(0, 1) = 1.0;
    base(0, 2) = 1.0;
    base(1, 0) = std::sqrt(2.0);
    base(2, 1) = 1.0;
    base(2, 2) = -1.0;

    return Mat3::product(diag, base);
}

} // namespace

SymMat3 map_to_trigonal(const SymMat3& e, const OrthoParams& p) {
    if (!(p.delta > 0.0))
        throw Error(ErrorCode::NonPositiveDelta, "delta must be positive, got " + std::to_string(p.delta));
    return congruence(ortho_to_trigonal_matrix(p.delta), e);
}

WellParams ortho_image_params(const OrthoParams& p) {
    if (!(p.delta > 0.0))
        throw Error(ErrorCode::NonPositiveDelta, "delta must be positive, got " + std::to_string(p.delta));
    return WellParams{-1.0 / 3.0, 3.0 / (p.delta * p.delta), -1.0 / 3.0};
}

} // namespace trigokit
