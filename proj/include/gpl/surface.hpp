#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gpl/complex.hpp"

namespace gpl {

// Graded space of Cauchy data: a list of spatial-cochain components over one
// surface. Weights are the (positive) spatial Hodge weights per component;
// the grading bookkeeping mirrors the spacetime side.
class SurfaceSpace {
public:
    SurfaceSpace(CellComplex sigma, std::vector<FieldComponent> components)
        : sigma_(std::move(sigma)), components_(std::move(components)) {
        int off = 0;
        for (const auto& c : components_) {
            require(c.time_type == 0, err::DimensionMismatch,
                    "surface data components carry no time extent");
            require(c.fiber >= 0, err::DimensionMismatch, "fiber dimension must be >= 0");
            offsets_.push_back(off);
            off += sigma_.count(c.space_degree) * c.fiber;
        }
        total_ = off;
    }

    const CellComplex& sigma() const { return sigma_; }
    const std::vector<FieldComponent>& components() const { return components_; }
    int total_dim() const { return total_; }
    int offset(int comp) const { return offsets_[static_cast<size_t>(comp)]; }
    int component_size(int comp) const {
        const auto& c = components_[static_cast<size_t>(comp)];
        return sigma_.count(c.space_degree) * c.fiber;
    }
    int component_index(const std::string& name) const {
        for (size_t i = 0; i < components_.size(); ++i)
            if (components_[i].name == name) return static_cast<int>(i);
        fail(err::DimensionMismatch, "unknown data component '" + name + "'");
    }
    int dof(int comp, int cell, int fib = 0) const {
        const auto& c = components_[static_cast<size_t>(comp)];
        require(cell >= 0 && cell < sigma_.count(c.space_degree), err::DimensionMismatch,
                "cell index out of range");
        require(fib >= 0 && fib < c.fiber, err::DimensionMismatch, "fiber index out of range");
        return offsets_[static_cast<size_t>(comp)] + cell * c.fiber + fib;
    }
    struct DofInfo {
        int comp, cell, fib;
    };
    DofInfo locate(int index) const {
        require(index >= 0 && index < total_, err::DimensionMismatch, "dof index out of range");
        int comp = static_cast<int>(components_.size()) - 1;
        while (offsets_[static_cast<size_t>(comp)] > index) --comp;
        const auto& c = components_[static_cast<size_t>(comp)];
        const int rel = index - offsets_[static_cast<size_t>(comp)];
        return {comp, rel / c.fiber, rel % c.fiber};
    }
    int ghost_of(int index) const {
        return components_[static_cast<size_t>(locate(index).comp)].ghost;
    }

    Vec weights() const {
        Vec w = zero_vec(total_);
        for (size_t ci = 0; ci < components_.size(); ++ci) {
            const auto& c = components_[ci];
            const Vec& ws = sigma_.weights(c.space_degree);
            for (int cell = 0; cell < sigma_.count(c.space_degree); ++cell)
                for (int f = 0; f < c.fiber; ++f)
                    w[static_cast<size_t>(dof(static_cast<int>(ci), cell, f))] =
                        ws[static_cast<size_t>(cell)];
        }
        return w;
    }

    Mat adjoint_endo(const Mat& A) const {
        Vec w = weights();
        return weighted_adjoint(A, w, w);
    }

    // Grading operator: multiplies each component by (-1)^{ghost}.
    Mat ghost_sign() const {
        Mat m(total_, total_);
        for (int i = 0; i < total_; ++i)
            m.set(i, i, Scalar(ghost_of(i) % 2 == 0 ? 1 : -1));
        return m;
    }

    // Sub-block of a data-space map.
    Mat block(int dst_comp, int src_comp, const Mat& A) const {
        require(A.rows() == total_ && A.cols() == total_, err::DimensionMismatch,
                "map does not act on this data space");
        Mat out(component_size(dst_comp), component_size(src_comp));
        for (int j = 0; j < component_size(src_comp); ++j)
            for (const auto& [r, v] : A.col(offset(src_comp) + j)) {
                if (r >= offset(dst_comp) && r < offset(dst_comp) + component_size(dst_comp))
                    out.set(r - offset(dst_comp), j, v);
            }
        return out;
    }

private:
    CellComplex sigma_;
    std::vector<FieldComponent> components_;
    std::vector<int> offsets_;
    int total_ = 0;
};

// Add M into the (dst_comp, src_comp) block of a map between data spaces.
inline void add_surface_map(Mat& acc, const SurfaceSpace& dst, int dst_comp,
                            const SurfaceSpace& src, int src_comp, const Mat& M,
                            const Scalar& scale = Scalar(1)) {
    require(acc.rows() == dst.total_dim() && acc.cols() == src.total_dim(),
            err::DimensionMismatch, "accumulator shape");
    require(M.rows() == dst.component_size(dst_comp) && M.cols() == src.component_size(src_comp),
            err::DimensionMismatch, "block shape");
    for (int j = 0; j < M.cols(); ++j)
        for (const auto& [r, v] : M.col(j))
            acc.add_at(dst.offset(dst_comp) + r, src.offset(src_comp) + j, scale * v);
}

} // namespace gpl
