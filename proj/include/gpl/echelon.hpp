#pragma once

#include <optional>
#include <vector>

#include "gpl/matrix.hpp"

namespace gpl {

// Reduced column echelon data of a matrix A. The pivot columns form the
// canonical basis of the column space: pivot entries are 1, pivot rows are
// strictly increasing, and every pivot row is cleared in all other columns.
// Because the form is canonical, two matrices span the same column space
// exactly when their `basis` matrices are equal.
struct ColEchelon {
    Mat basis;                   // rows x rank
    Mat transform;               // cols x rank, with A * transform == basis
    Mat kernel;                  // cols x nullity, canonical basis of {x : Ax = 0}
    std::vector<int> pivot_rows; // leading row of each basis column, increasing

    int rank() const { return basis.cols(); }

    // Coordinates of b in `basis`, if b lies in the column space.
    std::optional<Vec> coordinates(const Vec& b) const {
        require(static_cast<int>(b.size()) == basis.rows(), err::DimensionMismatch,
                "vector length does not match ambient dimension");
        Vec residual = b;
        Vec coeff = zero_vec(basis.cols());
        for (int k = 0; k < basis.cols(); ++k) {
            const Scalar c = residual[static_cast<size_t>(pivot_rows[static_cast<size_t>(k)])];
            if (c.is_zero()) continue;
            coeff[static_cast<size_t>(k)] = c;
            for (const auto& [r, a] : basis.col(k)) residual[static_cast<size_t>(r)] -= c * a;
        }
        if (!is_zero(residual)) return std::nullopt;
        return coeff;
    }

    bool contains(const Vec& b) const { return coordinates(b).has_value(); }

    // A particular solution of A x = b, if one exists.
    std::optional<Vec> solve(const Vec& b) const {
        auto coeff = coordinates(b);
        if (!coeff) return std::nullopt;
        return transform.apply(*coeff);
    }
};

namespace detail {

// Column elimination over the top `pivot_rows_limit` rows of the stacked
// matrix [[A],[I]]. Pivot choice is deterministic: scan rows top to bottom,
// take the lowest-index remaining column with a nonzero entry.
struct ColReduceResult {
    std::vector<std::map<int, Scalar>> cols;
    std::vector<int> pivot_rows;
    int rank = 0;
};

inline ColReduceResult col_reduce_augmented(const Mat& A) {
    const int m = A.rows();
    const int n = A.cols();
    ColReduceResult res;
    res.cols.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        res.cols[static_cast<size_t>(j)] = A.col(j);
        res.cols[static_cast<size_t>(j)][m + j] = Scalar(1);
    }
    int next = 0;
    for (int r = 0; r < m && next < n; ++r) {
        int pivot = -1;
        for (int j = next; j < n; ++j) {
            auto it = res.cols[static_cast<size_t>(j)].find(r);
            if (it != res.cols[static_cast<size_t>(j)].end()) {
                pivot = j;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(res.cols[static_cast<size_t>(pivot)], res.cols[static_cast<size_t>(next)]);
        auto& pcol = res.cols[static_cast<size_t>(next)];
        const Scalar inv = pcol.at(r).inv();
        if (!(inv == Scalar(1)))
            for (auto& [row, v] : pcol) v *= inv;
        for (int j = 0; j < n; ++j) {
            if (j == next) continue;
            auto& col = res.cols[static_cast<size_t>(j)];
            auto it = col.find(r);
            if (it == col.end()) continue;
            const Scalar factor = it->second;
            for (const auto& [row, v] : pcol) {
                auto [cell, inserted] = col.try_emplace(row);
                cell->second -= factor * v;
                if (cell->second.is_zero()) col.erase(cell);
            }
        }
        res.pivot_rows.push_back(r);
        ++next;
    }
    res.rank = next;
    return res;
}

} // namespace detail

inline ColEchelon col_echelon(const Mat& A) {
    const int m = A.rows();
    const int n = A.cols();
    auto red = detail::col_reduce_augmented(A);

    ColEchelon out;
    out.pivot_rows = red.pivot_rows;
    out.basis = Mat(m, red.rank);
    out.transform = Mat(n, red.rank);
    for (int k = 0; k < red.rank; ++k)
        for (const auto& [row, v] : red.cols[static_cast<size_t>(k)]) {
            if (row < m)
                out.basis.set(row, k, v);
            else
                out.transform.set(row - m, k, v);
        }

    // Non-pivot columns end with zero top part; their bottom parts span the
    // kernel. Reduce once more for a canonical kernel basis.
    Mat raw_kernel(n, n - red.rank);
    for (int k = red.rank; k < n; ++k)
        for (const auto& [row, v] : red.cols[static_cast<size_t>(k)]) {
            require(row >= m, err::InternalContradiction, "non-pivot column not eliminated");
            raw_kernel.set(row - m, k - red.rank, v);
        }
    if (raw_kernel.cols() == 0) {
        out.kernel = raw_kernel;
    } else {
        auto kred = detail::col_reduce_augmented(raw_kernel);
        out.kernel = Mat(n, kred.rank);
        for (int k = 0; k < kred.rank; ++k)
            for (const auto& [row, v] : kred.cols[static_cast<size_t>(k)])
                if (row < n) out.kernel.set(row, k, v);
    }
    return out;
}

inline int rank(const Mat& A) { return col_echelon(A).rank(); }

// Canonical basis of the column space.
inline Mat image(const Mat& A) { return col_echelon(A).basis; }

// Canonical basis of the right kernel.
inline Mat kernel(const Mat& A) { return col_echelon(A).kernel; }

inline std::optional<Vec> solve(const Mat& A, const Vec& b) {
    return col_echelon(A).solve(b);
}

// Inverse of a square matrix; throws SingularMatrix if rank-deficient.
inline Mat inverse(const Mat& A) {
    require(A.rows() == A.cols(), err::DimensionMismatch, "inverse of non-square matrix");
    auto ech = col_echelon(A);
    require(ech.rank() == A.rows(), err::SingularMatrix, "matrix is singular");
    Mat inv(A.rows(), A.cols());
    for (int j = 0; j < A.cols(); ++j) {
        Vec e = zero_vec(A.rows());
        e[static_cast<size_t>(j)] = Scalar(1);
        auto x = ech.solve(e);
        require(x.has_value(), err::SingularMatrix, "matrix is singular");
        inv.set_col(j, *x);
    }
    return inv;
}

} // namespace gpl
