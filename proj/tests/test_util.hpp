#pragma once

#include <cstdlib>
#include <random>
#include <string>

#include "gpl/gpl.hpp"

namespace testutil {

inline uint64_t test_seed() {
    if (const char* s = std::getenv("GPL_SEED")) return std::strtoull(s, nullptr, 10);
    return 20250816ull;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(test_seed());
    return gen;
}

// Small random matrix with integer entries in {-2..2}; with_imag adds an
// imaginary part from the same range on roughly half the entries.
inline gpl::Mat random_mat(int rows, int cols, bool with_imag = false) {
    std::uniform_int_distribution<int> entry(-2, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    gpl::Mat m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int r = 0; r < rows; ++r) {
            gpl::Scalar v(entry(rng()));
            if (with_imag && coin(rng()))
                v += gpl::Scalar(0, 1) * gpl::Scalar(entry(rng()));
            m.set(r, j, v);
        }
    return m;
}

inline gpl::Vec random_vec(int n) {
    std::uniform_int_distribution<int> entry(-2, 2);
    gpl::Vec v = gpl::zero_vec(n);
    for (auto& x : v) x = gpl::Scalar(entry(rng()));
    return v;
}

} // namespace testutil
