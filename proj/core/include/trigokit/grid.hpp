#pragma once

#include <array>
#include <cstddef>

namespace trigokit {

// Periodic cell-structured grid on the torus [0,L1) x [0,L2) x [0,L3).
// Strains live on cell centers, displacements on the matching vertex set;
// both index sets have n1*n2*n3 entries under periodic identification,
// linearized as (i1*n2 + i2)*n3 + i3 with i3 fastest.
struct TorusGrid {
    std::array<int, 3> n{2, 2, 2};
    std::array<double, 3> length{1.0, 1.0, 1.0};

    TorusGrid() = default;
    TorusGrid(int n1, int n2, int n3, double l1 = 1.0, double l2 = 1.0, double l3 = 1.0);

    double spacing(int axis) const { return length[std::size_t(axis)] / n[std::size_t(axis)]; }
    std::size_t cells() const {
        return std::size_t(n[0]) * std::size_t(n[1]) * std::size_t(n[2]);
    }

    int wrap(int axis, int i) const {
        const int m = n[std::size_t(axis)];
        const int r = i % m;
        return r < 0 ? r + m : r;
    }

    std::size_t index(int i1, int i2, int i3) const {
        return (std::size_t(i1) * std::size_t(n[1]) + std::size_t(i2)) * std::size_t(n[2]) +
               std::size_t(i3);
    }
    std::size_t index_wrapped(int i1, int i2, int i3) const {
        return index(wrap(0, i1), wrap(1, i2), wrap(2, i3));
    }

    // Neighbor of a linear index one step forward along the given axis.
    std::size_t step(std::size_t idx, int axis) const;

    std::array<int, 3> unpack(std::size_t idx) const {
        const auto n2 = std::size_t(n[1]), n3 = std::size_t(n[2]);
        return {int(idx / (n2 * n3)), int((idx / n3) % n2), int(idx % n3)};
    }

    bool operator==(const TorusGrid& o) const = default;
};

} // namespace trigokit
