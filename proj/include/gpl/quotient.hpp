#pragma once

#include <string>

#include "gpl/subspace.hpp"

namespace gpl {

// Quotient num/den of two subspaces of the same ambient space, with den
// contained in num (checked). Classes are represented canonically by their
// coordinates at the non-pivot positions of den written in num-coordinates,
// so two vectors are congruent mod den exactly when reduce() agrees.
class Quotient {
public:
    Quotient() = default;

    Quotient(const Subspace& num, const Subspace& den) : num_(num), den_(den) {
        require(num.ambient() == den.ambient(), err::DimensionMismatch,
                "numerator and denominator live in different spaces");
        require(num.contains(den), err::IllFormedQuotient,
                "denominator is not contained in numerator");
        Mat den_in_num(num.dim(), den.dim());
        for (int j = 0; j < den.dim(); ++j)
            den_in_num.set_col(j, num.coordinates(den.basis().get_col(j)));
        den_ech_ = col_echelon(den_in_num);
        size_t next_pivot = 0;
        for (int k = 0; k < num.dim(); ++k) {
            if (next_pivot < den_ech_.pivot_rows.size() &&
                den_ech_.pivot_rows[next_pivot] == k) {
                ++next_pivot;
                continue;
            }
            rep_coords_.push_back(k);
        }
    }

    int ambient() const { return num_.ambient(); }
    int dim() const { return static_cast<int>(rep_coords_.size()); }
    const Subspace& num() const { return num_; }
    const Subspace& den() const { return den_; }

    // Canonical coordinates of the class [v]; throws if v is not in num.
    Vec reduce(const Vec& v) const {
        Vec c = num_.coordinates(v);
        for (int k = 0; k < den_ech_.basis.cols(); ++k) {
            const Scalar f = c[static_cast<size_t>(den_ech_.pivot_rows[static_cast<size_t>(k)])];
            if (f.is_zero()) continue;
            for (const auto& [r, a] : den_ech_.basis.col(k)) c[static_cast<size_t>(r)] -= f * a;
        }
        Vec out = zero_vec(dim());
        for (size_t i = 0; i < rep_coords_.size(); ++i)
            out[i] = c[static_cast<size_t>(rep_coords_[i])];
        return out;
    }

    bool is_zero_class(const Vec& v) const { return gpl::is_zero(reduce(v)); }

    // Ambient representative of a class given in quotient coordinates.
    Vec lift(const Vec& q) const {
        require(static_cast<int>(q.size()) == dim(), err::DimensionMismatch,
                "class coordinate length");
        Vec c = zero_vec(num_.dim());
        for (size_t i = 0; i < rep_coords_.size(); ++i)
            c[static_cast<size_t>(rep_coords_[i])] = q[i];
        return num_.from_coordinates(c);
    }

    // Ambient representatives of the canonical quotient basis.
    Mat rep_basis() const {
        Mat out(ambient(), dim());
        for (int i = 0; i < dim(); ++i) {
            Vec q = zero_vec(dim());
            q[static_cast<size_t>(i)] = Scalar(1);
            out.set_col(i, lift(q));
        }
        return out;
    }

private:
    Subspace num_, den_;
    ColEchelon den_ech_; // den in num-coordinates, reduced
    std::vector<int> rep_coords_;
};

// Matrix of the map [v] -> [A v] between quotients, with explicit
// well-definedness checks and a rank report.
struct InducedMap {
    bool well_defined = false;
    std::string obstruction; // empty when well_defined
    Mat matrix;              // dim(from) -> dim(to); valid when well_defined
    bool injective = false;
    bool surjective = false;
    int rank = 0;

    Subspace kernel_space_in(const Quotient& from) const {
        Mat K = kernel(matrix);
        Mat reps(from.ambient(), K.cols());
        for (int j = 0; j < K.cols(); ++j) reps.set_col(j, from.lift(K.get_col(j)));
        return Subspace::span(reps);
    }
};

inline InducedMap induced_map(const Mat& A, const Quotient& from, const Quotient& to) {
    require(A.cols() == from.ambient() && A.rows() == to.ambient(), err::DimensionMismatch,
            "map shape does not match the quotients");
    InducedMap out;
    for (int j = 0; j < from.num().dim(); ++j)
        if (!to.num().contains(A.apply(from.num().basis().get_col(j)))) {
            out.obstruction = "image of numerator leaves the target numerator";
            return out;
        }
    for (int j = 0; j < from.den().dim(); ++j)
        if (!to.den().contains(A.apply(from.den().basis().get_col(j)))) {
            out.obstruction = "image of denominator leaves the target denominator";
            return out;
        }
    out.well_defined = true;
    out.matrix = Mat(to.dim(), from.dim());
    for (int i = 0; i < from.dim(); ++i) {
        Vec q = zero_vec(from.dim());
        q[static_cast<size_t>(i)] = Scalar(1);
        out.matrix.set_col(i, to.reduce(A.apply(from.lift(q))));
    }
    out.rank = rank(out.matrix);
    out.injective = out.rank == from.dim();
    out.surjective = out.rank == to.dim();
    return out;
}

} // namespace gpl
