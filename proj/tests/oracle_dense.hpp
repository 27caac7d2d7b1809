#pragma once

// Independent dense brute-force oracle used to cross-check the sparse
// column-echelon code. Deliberately a different algorithm family: in-place
// dense row reduction with row swaps.

#include <vector>

#include "gpl/gpl.hpp"

namespace oracle {

using Dense = std::vector<gpl::Vec>;

inline int row_reduce(Dense& a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!a[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(rank)]);
        gpl::Scalar inv = a[static_cast<size_t>(rank)][static_cast<size_t>(c)].inv();
        for (auto& x : a[static_cast<size_t>(rank)]) x *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            gpl::Scalar f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            for (int k = 0; k < cols; ++k)
                a[static_cast<size_t>(r)][static_cast<size_t>(k)] -=
                    f * a[static_cast<size_t>(rank)][static_cast<size_t>(k)];
        }
        ++rank;
    }
    return rank;
}

inline int rank_of(const gpl::Mat& m) {
    Dense d = m.to_dense_rows();
    return row_reduce(d);
}

inline bool in_col_span(const gpl::Mat& B, const gpl::Vec& v) {
    gpl::Mat vm(B.rows(), 1);
    vm.set_col(0, v);
    return rank_of(B) == rank_of(gpl::Mat::hcat(B, vm));
}

inline bool same_col_span(const gpl::Mat& A, const gpl::Mat& B) {
    const int ra = rank_of(A);
    const int rb = rank_of(B);
    return ra == rb && rank_of(gpl::Mat::hcat(A, B)) == ra;
}

} // namespace oracle
