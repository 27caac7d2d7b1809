#pragma once

#include <optional>

#include "gpl/echelon.hpp"

namespace gpl {

// A subspace of Q(i)^ambient held as a canonical reduced-column-echelon
// basis, so equality of subspaces is equality of `basis` matrices.
class Subspace {
public:
    Subspace() : ambient_(0) {}

    static Subspace span(const Mat& vectors) {
        Subspace s;
        s.ambient_ = vectors.rows();
        s.ech_ = col_echelon(vectors);
        return s;
    }

    static Subspace zero(int ambient) { return span(Mat(ambient, 0)); }
    static Subspace full(int ambient) { return span(Mat::identity(ambient)); }

    int ambient() const { return ambient_; }
    int dim() const { return ech_.rank(); }
    const Mat& basis() const { return ech_.basis; }
    const std::vector<int>& pivot_rows() const { return ech_.pivot_rows; }

    bool contains(const Vec& v) const { return ech_.contains(v); }

    bool contains(const Subspace& other) const {
        require(ambient_ == other.ambient_, err::DimensionMismatch,
                "subspaces of different ambient spaces");
        for (int j = 0; j < other.dim(); ++j)
            if (!contains(other.basis().get_col(j))) return false;
        return true;
    }

    // Coordinates of v in basis(); throws if v is outside the subspace.
    Vec coordinates(const Vec& v) const {
        auto c = ech_.coordinates(v);
        require(c.has_value(), err::NotInSubspace, "vector is not in the subspace");
        return *c;
    }

    std::optional<Vec> try_coordinates(const Vec& v) const { return ech_.coordinates(v); }

    Vec from_coordinates(const Vec& c) const { return ech_.basis.apply(c); }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.ech_.basis == b.ech_.basis;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    int ambient_;
    ColEchelon ech_;
};

inline Subspace sum(const Subspace& a, const Subspace& b) {
    require(a.ambient() == b.ambient(), err::DimensionMismatch,
            "subspaces of different ambient spaces");
    return Subspace::span(Mat::hcat(a.basis(), b.basis()));
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    require(a.ambient() == b.ambient(), err::DimensionMismatch,
            "subspaces of different ambient spaces");
    // x in both spans iff Ba*u = Bb*w for some u, w; read u off the kernel of
    // [Ba | -Bb] and map back into the ambient space.
    Mat K = kernel(Mat::hcat(a.basis(), -b.basis()));
    Mat u_part = K.select_rows(0, a.dim());
    return Subspace::span(a.basis() * u_part);
}

// {x : A x in S}
inline Subspace preimage(const Mat& A, const Subspace& S) {
    require(A.rows() == S.ambient(), err::DimensionMismatch,
            "map codomain does not match subspace ambient space");
    Mat K = kernel(Mat::hcat(A, -S.basis()));
    return Subspace::span(K.select_rows(0, A.cols()));
}

inline Subspace image_of(const Mat& A, const Subspace& S) {
    require(A.cols() == S.ambient(), err::DimensionMismatch,
            "map domain does not match subspace ambient space");
    return Subspace::span(A * S.basis());
}

inline Subspace kernel_space(const Mat& A) { return Subspace::span(kernel(A)); }
inline Subspace image_space(const Mat& A) { return Subspace::span(A); }

} // namespace gpl
