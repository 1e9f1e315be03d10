#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "trigokit/errors.hpp"
#include "trigokit/wells.hpp"

using namespace trigokit;

namespace {

bool same_direction(const Vec3& a, const Vec3& b, double tol = 1e-10) {
    const double na = norm(a), nb = norm(b);
    return std::abs(std::abs(dot(a, b)) - na * nb) <= tol * std::max(1.0, na * nb);
}

// The published lamination table: for each pair, the two twin normals (one of
// them carried as an unnormalized shear vector).
struct TableRow {
    int i, j;
    Vec3 v1, v2;
};
const TableRow kTable[6] = {
    {1, 2, {1, 0, 0}, {0, 4, 4}},  {1, 3, {0, 0, 1}, {4, 4, 0}},  {1, 4, {0, 1, 0}, {4, 0, 4}},
    {2, 3, {0, 1, 0}, {-4, 0, 4}}, {2, 4, {0, 0, 1}, {-4, 4, 0}}, {3, 4, {1, 0, 0}, {0, 4, -4}},
};

} // namespace

TEST_CASE("build_wells reproduces the four strain wells") {
    const WellSet set = build_wells({1, 2, 3});
    const SymMat3& w1 = set.well(1);
    CHECK(w1.e11 == 1.0);
    CHECK(w1.e22 == 2.0);
    CHECK(w1.e33 == 3.0);
    CHECK(w1.e12 == 1.0);
    CHECK(w1.e13 == 1.0);
    CHECK(w1.e23 == 1.0);
    CHECK(w1(0, 1) == 1.0);
    CHECK(w1(2, 1) == 1.0);

    const WellSet zero = build_wells({0, 0, 0});
    const SymMat3& w2 = zero.well(2);
    CHECK(w2.e12 == -1.0);
    CHECK(w2.e13 == -1.0);
    CHECK(w2.e23 == 1.0);
    CHECK(w2.e11 == 0.0);
    CHECK(w2.e22 == 0.0);
    CHECK(w2.e33 == 0.0);

    CHECK_THROWS_AS((void)set.well(0), Error);
    CHECK_THROWS_AS((void)set.well(5), Error);
}

TEST_CASE("every well satisfies the three product relations") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        const WellSet set = build_wells({dist(rng), dist(rng), dist(rng)});
        for (const SymMat3& w : set.wells) {
            CHECK(w.e12 * w.e13 == w.e23);
            CHECK(w.e12 * w.e23 == w.e13);
            CHECK(w.e13 * w.e23 == w.e12);
        }
    }
}

TEST_CASE("only the four well sign patterns satisfy the product relations") {
    int admissible = 0;
    for (int bits = 0; bits < 8; ++bits) {
        const double s12 = (bits & 1) ? 1 : -1;
        const double s13 = (bits & 2) ? 1 : -1;
        const double s23 = (bits & 4) ? 1 : -1;
        if (s12 * s13 == s23 && s12 * s23 == s13 && s13 * s23 == s12) ++admissible;
    }
    CHECK(admissible == 4);
}

TEST_CASE("rank_one_decompose on the first well difference") {
    const WellSet set = build_wells({1, 2, 3});
    const SymMat3 m = set.well(1) - set.well(2);
    CHECK(m.e12 == 2.0);
    CHECK(m.e13 == 2.0);
    CHECK(m.e23 == 0.0);
    CHECK(m.e11 == 0.0);

    const TwinDecomposition dec = rank_one_decompose(m);
    CHECK(dec.solution_a.n.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.solution_a.n.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dec.solution_a.n.z == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dec.solution_a.a.x == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(dec.solution_a.a.y == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(dec.solution_a.a.z == doctest::Approx(4.0).epsilon(1e-10));

    CHECK(same_direction(dec.solution_b.n, Vec3{0, 1, 1}));
    CHECK(same_direction(dec.solution_b.a, Vec3{1, 0, 0}));
}

TEST_CASE("rank_one_decompose simple shear") {
    SymMat3 m;
    m.e12 = 1.0;
    const TwinDecomposition dec = rank_one_decompose(m);
    CHECK(dec.solution_a.n.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dec.solution_a.a.y == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(dec.solution_a.a.x) < 1e-10);
    CHECK(std::abs(dec.solution_a.a.z) < 1e-10);
}

TEST_CASE("rank_one_decompose error cases") {
    CHECK_THROWS_AS((void)rank_one_decompose(SymMat3{}), Error);

    SymMat3 psd; // two equal positive eigenvalues, middle one nonzero
    psd.e11 = 1.0;
    psd.e22 = 1.0;
    CHECK_THROWS_AS((void)rank_one_decompose(psd), Error);

    SymMat3 rank1; // a parallel to n: outer eigenvalues share a sign
    rank1.e11 = 1.0;
    CHECK_THROWS_AS((void)rank_one_decompose(rank1), Error);

    try {
        (void)rank_one_decompose(rank1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotRankOne);
    }
    try {
        (void)rank_one_decompose(SymMat3{});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Degenerate);
    }
}

TEST_CASE("decompose-reassemble is the identity on well differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 25; ++trial) {
        const WellParams params{dist(rng), dist(rng), dist(rng)};
        for (const auto& row : twin_table(params)) {
            const SymMat3 diff =
                build_wells(params).well(row.well_i) - build_wells(params).well(row.well_j);
            for (const TwinPair* s : {&row.decomposition.solution_a, &row.decomposition.solution_b}) {
                CHECK(std::abs(norm(s->n) - 1.0) <= 1e-12);
                CHECK(norm(s->a) > 0.0);
                const SymMat3 back = symmetrized_outer(s->a, s->n);
                CHECK(max_abs_diff(back, diff) <= 1e-10);
            }
        }
    }
}

TEST_CASE("twin table matches the published normals") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (const WellParams params :
         {WellParams{1, 2, 3}, WellParams{0, 0, 0}, WellParams{dist(rng), dist(rng), dist(rng)}}) {
        const auto table = twin_table(params);
        for (std::size_t r = 0; r < 6; ++r) {
            CHECK(table[r].well_i == kTable[r].i);
            CHECK(table[r].well_j == kTable[r].j);
            const Vec3 na = table[r].decomposition.solution_a.n;
            const Vec3 nb = table[r].decomposition.solution_b.n;
            const bool direct = same_direction(na, kTable[r].v1) && same_direction(nb, kTable[r].v2);
            const bool swapped = same_direction(na, kTable[r].v2) && same_direction(nb, kTable[r].v1);
            CHECK((direct || swapped));
        }
    }
}

TEST_CASE("twin table specific rows") {
    const auto table = twin_table({1, 2, 3});
    // pair (1,3) -> normals {(0,0,1), (1,1,0)/sqrt2}
    CHECK(same_direction(table[1].decomposition.solution_b.n, Vec3{0, 0, 1}));
    CHECK(same_direction(table[1].decomposition.solution_a.n, Vec3{1, 1, 0}));
    // pair (3,4) -> normals {(1,0,0), (0,1,-1)/sqrt2}
    CHECK(same_direction(table[5].decomposition.solution_a.n, Vec3{1, 0, 0}));
    CHECK(same_direction(table[5].decomposition.solution_b.n, Vec3{0, 1, -1}));
}

TEST_CASE("twin table is independent of the diagonal params") {
    const auto t1 = twin_table({0, 0, 0});
    const auto t2 = twin_table({5, -2, 7});
    for (std::size_t r = 0; r < 6; ++r) {
        for (int c = 0; c < 3; ++c) {
            CHECK(t1[r].decomposition.solution_a.n[c] ==
                  doctest::Approx(t2[r].decomposition.solution_a.n[c]).epsilon(1e-13));
            CHECK(t1[r].decomposition.solution_a.a[c] ==
                  doctest::Approx(t2[r].decomposition.solution_a.a[c]).epsilon(1e-13));
            CHECK(t1[r].decomposition.solution_b.n[c] ==
                  doctest::Approx(t2[r].decomposition.solution_b.n[c]).epsilon(1e-13));
        }
    }
}

TEST_CASE("ortho wells") {
    const auto w = ortho_wells({1.0});
    CHECK(w[0].e11 == 1.0);
    CHECK(w[0].e22 == 1.0);
    CHECK(w[0].e33 == -2.0);
    CHECK(w[0].e12 == 1.0);
    CHECK(w[0].e13 == 0.0);
    CHECK(w[0].e23 == 0.0);

    const auto w2 = ortho_wells({2.0});
    CHECK(w2[4].e11 == -2.0);
    CHECK(w2[4].e22 == 1.0);
    CHECK(w2[4].e33 == 1.0);
    CHECK(w2[4].e23 == 2.0);
    CHECK(w2[4].e13 == 0.0);
    CHECK(w2[4].e12 == 0.0);

    for (const auto& m : w) CHECK(m.e11 + m.e22 + m.e33 == 0.0);

    CHECK_THROWS_AS((void)ortho_wells({0.0}), Error);
    CHECK_THROWS_AS((void)ortho_wells({-1.0}), Error);
}

TEST_CASE("orthorhombic map hits the trigonal wells") {
    SUBCASE("delta = 1, first well") {
        const SymMat3 image = map_to_trigonal(ortho_wells({1.0})[0], {1.0});
        const SymMat3 expected = build_wells({-1.0 / 3.0, 3.0, -1.0 / 3.0}).well(1);
        CHECK(max_abs_diff(image, expected) <= 1e-12);
    }
    SUBCASE("zero maps to zero") {
        CHECK(map_to_trigonal(SymMat3{}, {0.7}).max_abs() == 0.0);
    }
    SUBCASE("set equality for several deltas") {
        for (double delta : {0.5, 1.0, 2.0}) {
            const auto ow = ortho_wells({delta});
            const WellSet target = build_wells(ortho_image_params({delta}));
            for (int k = 0; k < 4; ++k) {
                const SymMat3 image = map_to_trigonal(ow[std::size_t(k)], {delta});
                double best = 1e100;
                for (const auto& t : target.wells) best = std::min(best, max_abs_diff(image, t));
                CHECK(best <= 1e-12);
            }
        }
    }
    SUBCASE("linearity") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        SymMat3 a{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
        SymMat3 b{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
        const OrthoParams p{1.3};
        const SymMat3 lhs = map_to_trigonal(a * 2.0 + b * (-0.5), p);
        const SymMat3 rhs = map_to_trigonal(a, p) * 2.0 + map_to_trigonal(b, p) * (-0.5);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-14);
    }
    SUBCASE("delta must be positive") {
        CHECK_THROWS_AS((void)map_to_trigonal(SymMat3{}, {0.0}), Error);
    }
}

TEST_CASE("hand-rolled 3x3 eigensolver agrees with Eigen") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        SymMat3 m{dist(rng), dist(rng), dist(rng), dist(rng), dist(rng), dist(rng)};
        const EigenDecomposition3 mine = eigen_sym3(m);

        Eigen::Matrix3d em;
        em << m.e11, m.e12, m.e13, m.e12, m.e22, m.e23, m.e13, m.e23, m.e33;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(em);
        for (int i = 0; i < 3; ++i) {
            CHECK(mine.values[std::size_t(i)] ==
                  doctest::Approx(solver.eigenvalues()(i)).epsilon(1e-11));
            // The eigenvector must actually solve the eigenproblem.
            const Vec3 v = mine.vectors[std::size_t(i)];
            const Vec3 mv = m.apply(v);
            const Vec3 lv = v * mine.values[std::size_t(i)];
            CHECK(norm(mv - lv) <= 1e-10 * std::max(1.0, m.frobenius()));
        }
    }
}
