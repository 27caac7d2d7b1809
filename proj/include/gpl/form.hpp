#pragma once

#include <string>

#include "gpl/quotient.hpp"

namespace gpl {

// Sesquilinear form B(u, v) = u^H G v given by its ambient Gram matrix G.
inline Scalar form_value(const Mat& G, const Vec& u, const Vec& v) {
    return dot_conj(u, G.apply(v));
}

inline bool is_hermitian(const Mat& G) { return G == G.conj_transpose(); }
inline bool is_antihermitian(const Mat& G) { return G.conj_transpose() == -G; }

// The form B descends to a quotient exactly when the denominator pairs to
// zero against the whole numerator on both sides; the result reports the
// obstruction if not, otherwise the Gram matrix in canonical quotient
// coordinates together with its radical.
struct InducedForm {
    bool well_defined = false;
    std::string obstruction;
    Mat gram;       // dim x dim in quotient coordinates, valid when well_defined
    bool hermitian = false;
    int radical_dim = 0;
    Mat radical;    // quotient-coordinate basis of {x : gram x = 0}
    bool nondegenerate() const { return well_defined && radical_dim == 0; }
};

inline InducedForm induced_form(const Mat& G, const Quotient& Q) {
    require(G.rows() == Q.ambient() && G.cols() == Q.ambient(), err::DimensionMismatch,
            "Gram matrix does not match the quotient's ambient space");
    InducedForm out;
    const Mat& den = Q.den().basis();
    const Mat& num = Q.num().basis();
    for (int j = 0; j < den.cols(); ++j) {
        Vec d = den.get_col(j);
        Vec Gd = G.apply(d);
        for (int k = 0; k < num.cols(); ++k) {
            Vec n = num.get_col(k);
            if (!dot_conj(n, Gd).is_zero() || !dot_conj(d, G.apply(n)).is_zero()) {
                out.obstruction = "denominator does not pair to zero against numerator";
                return out;
            }
        }
    }
    out.well_defined = true;
    Mat reps = Q.rep_basis();
    out.gram = Mat(Q.dim(), Q.dim());
    for (int j = 0; j < Q.dim(); ++j) {
        Vec Gv = G.apply(reps.get_col(j));
        for (int i = 0; i < Q.dim(); ++i)
            out.gram.set(i, j, dot_conj(reps.get_col(i), Gv));
    }
    out.hermitian = is_hermitian(out.gram);
    out.radical = kernel(out.gram);
    out.radical_dim = out.radical.cols();
    return out;
}

// Radical of a form already given in coordinates: both left and right null
// directions; for hermitian or antihermitian Gram matrices they agree.
inline Mat right_radical(const Mat& gram) { return kernel(gram); }
inline Mat left_radical(const Mat& gram) { return kernel(gram.conj_transpose()); }

} // namespace gpl
