#pragma once

#include <array>
#include <string>
#include <vector>

#include "gpl/subspace.hpp"

namespace gpl {

// Finite cell complex of dimension <= 2 with oriented incidence maps and
// positive Hodge weights. The weights define the inner product
// (u|v)_k = sum_c w_k[c] conj(u_c) v_c on k-cochains, and with it the
// codifferential as the exact adjoint of the differential. Cells may carry a
// collar marking ("near the ends"), used by the cohomology computations to
// model sections supported away from infinity.
struct CellComplex {
    std::string name;
    Mat d0; // edges x vertices
    Mat d1; // faces x edges
    Vec w0, w1, w2;
    std::array<std::vector<char>, 3> collar;

    int count(int k) const {
        switch (k) {
            case 0: return static_cast<int>(w0.size());
            case 1: return static_cast<int>(w1.size());
            case 2: return static_cast<int>(w2.size());
            default: return 0;
        }
    }

    const Vec& weights(int k) const {
        require(k >= 0 && k <= 2, err::DimensionMismatch, "cochain degree out of range");
        return k == 0 ? w0 : (k == 1 ? w1 : w2);
    }

    // d(k): C^k -> C^{k+1}; the zero map above the top dimension.
    Mat d(int k) const {
        require(k >= 0 && k <= 2, err::DimensionMismatch, "cochain degree out of range");
        if (k == 0) return d0;
        if (k == 1) return d1;
        return Mat(0, count(2));
    }

    // delta(k): C^k -> C^{k-1}, the weight adjoint of d(k-1).
    Mat delta(int k) const {
        require(k >= 1 && k <= 2, err::DimensionMismatch, "codifferential degree out of range");
        const Mat& dk = k == 1 ? d0 : d1;
        Mat out = dk.conj_transpose();
        // W_{k-1}^{-1} d^T W_k
        const Vec& wlow = weights(k - 1);
        const Vec& whigh = weights(k);
        Mat scaled(out.rows(), out.cols());
        for (int j = 0; j < out.cols(); ++j)
            for (const auto& [r, v] : out.col(j))
                scaled.set(r, j, v * whigh[static_cast<size_t>(j)] / wlow[static_cast<size_t>(r)]);
        return scaled;
    }

    bool has_collar() const {
        for (const auto& c : collar)
            for (char f : c)
                if (f) return true;
        return false;
    }

    void validate() const {
        require(d0.rows() == count(1) && d0.cols() == count(0), err::DimensionMismatch,
                "d0 shape inconsistent with cell counts");
        require(d1.rows() == count(2) && d1.cols() == count(1), err::DimensionMismatch,
                "d1 shape inconsistent with cell counts");
        require((d1 * d0).is_zero(), err::InternalContradiction, "d after d is not zero");
        for (int k = 0; k <= 2; ++k) {
            for (const auto& w : weights(k)) {
                require(w.is_real() && sgn(w.re) > 0, err::DimensionMismatch,
                        "Hodge weights must be positive rationals");
            }
            require(collar[static_cast<size_t>(k)].empty() ||
                        static_cast<int>(collar[static_cast<size_t>(k)].size()) == count(k),
                    err::DimensionMismatch, "collar marking size");
        }
    }

    // Collar grown by `rings` incidence steps: one step marks every cell that
    // shares an incidence (boundary or coboundary) with a marked cell.
    std::array<std::vector<char>, 3> grown_collar(int rings) const {
        std::array<std::vector<char>, 3> m;
        for (int k = 0; k <= 2; ++k) {
            m[static_cast<size_t>(k)] = collar[static_cast<size_t>(k)];
            m[static_cast<size_t>(k)].resize(static_cast<size_t>(count(k)), 0);
        }
        for (int step = 0; step < rings; ++step) {
            auto next = m;
            auto touch = [&](const Mat& dk, int lowdim) {
                for (int j = 0; j < dk.cols(); ++j)
                    for (const auto& [r, v] : dk.col(j)) {
                        (void)v;
                        if (m[static_cast<size_t>(lowdim)][static_cast<size_t>(j)])
                            next[static_cast<size_t>(lowdim + 1)][static_cast<size_t>(r)] = 1;
                        if (m[static_cast<size_t>(lowdim + 1)][static_cast<size_t>(r)])
                            next[static_cast<size_t>(lowdim)][static_cast<size_t>(j)] = 1;
                    }
            };
            touch(d0, 0);
            touch(d1, 1);
            m = next;
        }
        return m;
    }
};

// Subspace of k-cochains vanishing on the flagged cells.
inline Subspace supported_cochains(const CellComplex& c, int k,
                                   const std::vector<char>& forbidden) {
    const int n = c.count(k);
    Mat basis(n, 0);
    std::vector<Vec> cols;
    for (int i = 0; i < n; ++i) {
        if (i < static_cast<int>(forbidden.size()) && forbidden[static_cast<size_t>(i)]) continue;
        Vec e = zero_vec(n);
        e[static_cast<size_t>(i)] = Scalar(1);
        cols.push_back(e);
    }
    return Subspace::span(Mat::from_columns(n, cols));
}

inline CellComplex make_circle(int n) {
    require(n >= 3, err::DimensionMismatch, "circle needs at least 3 vertices");
    CellComplex c;
    c.name = "circle-" + std::to_string(n);
    c.d0 = Mat(n, n);
    for (int i = 0; i < n; ++i) {
        c.d0.set(i, i, Scalar(-1));
        c.d0.set(i, (i + 1) % n, Scalar(1));
    }
    c.d1 = Mat(0, n);
    c.w0 = Vec(static_cast<size_t>(n), Scalar(1));
    c.w1 = Vec(static_cast<size_t>(n), Scalar(1));
    c.validate();
    return c;
}

// Path with n vertices and n-1 edges; collar_depth vertices at each end (and
// the edges touching them) are marked as the end collar.
inline CellComplex make_path(int n, int collar_depth = 0) {
    require(n >= 2, err::DimensionMismatch, "path needs at least 2 vertices");
    require(2 * collar_depth < n, err::WindowTooSmall, "collar overlaps itself");
    CellComplex c;
    c.name = "interval-" + std::to_string(n);
    c.d0 = Mat(n - 1, n);
    for (int i = 0; i + 1 < n; ++i) {
        c.d0.set(i, i, Scalar(-1));
        c.d0.set(i, i + 1, Scalar(1));
    }
    c.d1 = Mat(0, n - 1);
    c.w0 = Vec(static_cast<size_t>(n), Scalar(1));
    c.w1 = Vec(static_cast<size_t>(n - 1), Scalar(1));
    if (collar_depth > 0) {
        c.collar[0].assign(static_cast<size_t>(n), 0);
        c.collar[1].assign(static_cast<size_t>(n - 1), 0);
        for (int i = 0; i < n; ++i)
            if (i < collar_depth || i >= n - collar_depth) c.collar[0][static_cast<size_t>(i)] = 1;
        for (int i = 0; i + 1 < n; ++i)
            if (c.collar[0][static_cast<size_t>(i)] || c.collar[0][static_cast<size_t>(i + 1)])
                c.collar[1][static_cast<size_t>(i)] = 1;
    }
    c.validate();
    return c;
}

namespace detail {

// Shared 2d builder: nx*ny vertices; wrap selects torus vs planar grid.
inline CellComplex make_2d(int nx, int ny, bool wrap, int collar_depth) {
    CellComplex c;
    const int nex = wrap ? nx : nx - 1; // x-edges per row
    const int ney = wrap ? ny : ny - 1; // y-edges per column
    const int n0 = nx * ny;
    const int n1 = nex * ny + nx * ney;
    const int n2 = nex * ney;
    auto vid = [&](int i, int j) { return (wrap ? ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx)
                                                : j * nx + i); };
    auto xid = [&](int i, int j) { return (wrap ? ((j % ny + ny) % ny) * nex + ((i % nx + nx) % nx)
                                                : j * nex + i); };
    auto yid = [&](int i, int j) {
        return nex * ny + (wrap ? ((j % ny + ny) % ny) * nx + ((i % nx + nx) % nx) : j * nx + i);
    };
    c.d0 = Mat(n1, n0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nex; ++i) {
            c.d0.set(xid(i, j), vid(i, j), Scalar(-1));
            c.d0.add_at(xid(i, j), vid(i + 1, j), Scalar(1));
        }
    for (int j = 0; j < ney; ++j)
        for (int i = 0; i < nx; ++i) {
            c.d0.set(yid(i, j), vid(i, j), Scalar(-1));
            c.d0.add_at(yid(i, j), vid(i, j + 1), Scalar(1));
        }
    c.d1 = Mat(n2, n1);
    for (int j = 0; j < ney; ++j)
        for (int i = 0; i < nex; ++i) {
            const int f = j * nex + i;
            c.d1.set(f, xid(i, j), Scalar(1));
            c.d1.add_at(f, yid(i + 1, j), Scalar(1));
            c.d1.add_at(f, xid(i, j + 1), Scalar(-1));
            c.d1.add_at(f, yid(i, j), Scalar(-1));
        }
    c.w0 = Vec(static_cast<size_t>(n0), Scalar(1));
    c.w1 = Vec(static_cast<size_t>(n1), Scalar(1));
    c.w2 = Vec(static_cast<size_t>(n2), Scalar(1));
    if (collar_depth > 0) {
        require(!wrap, err::WindowTooSmall, "closed surface has no collar");
        require(2 * collar_depth < nx && 2 * collar_depth < ny, err::WindowTooSmall,
                "collar overlaps itself");
        c.collar[0].assign(static_cast<size_t>(n0), 0);
        c.collar[1].assign(static_cast<size_t>(n1), 0);
        c.collar[2].assign(static_cast<size_t>(n2), 0);
        auto near_edge = [&](int i, int j) {
            return i < collar_depth || i >= nx - collar_depth || j < collar_depth ||
                   j >= ny - collar_depth;
        };
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                if (near_edge(i, j)) c.collar[0][static_cast<size_t>(vid(i, j))] = 1;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nex; ++i)
                if (near_edge(i, j) || near_edge(i + 1, j))
                    c.collar[1][static_cast<size_t>(xid(i, j))] = 1;
        for (int j = 0; j < ney; ++j)
            for (int i = 0; i < nx; ++i)
                if (near_edge(i, j) || near_edge(i, j + 1))
                    c.collar[1][static_cast<size_t>(yid(i, j))] = 1;
        for (int j = 0; j < ney; ++j)
            for (int i = 0; i < nex; ++i)
                if (near_edge(i, j) || near_edge(i + 1, j) || near_edge(i, j + 1) ||
                    near_edge(i + 1, j + 1))
                    c.collar[2][static_cast<size_t>(j * nex + i)] = 1;
    }
    c.validate();
    return c;
}

} // namespace detail

inline CellComplex make_torus(int nx, int ny) {
    require(nx >= 3 && ny >= 3, err::DimensionMismatch, "torus needs at least 3x3 cells");
    CellComplex c = detail::make_2d(nx, ny, true, 0);
    c.name = "torus-" + std::to_string(nx) + "x" + std::to_string(ny);
    return c;
}

inline CellComplex make_grid(int nx, int ny, int collar_depth = 0) {
    require(nx >= 2 && ny >= 2, err::DimensionMismatch, "grid needs at least 2x2 vertices");
    CellComplex c = detail::make_2d(nx, ny, false, collar_depth);
    c.name = "grid-" + std::to_string(nx) + "x" + std::to_string(ny);
    return c;
}

} // namespace gpl
