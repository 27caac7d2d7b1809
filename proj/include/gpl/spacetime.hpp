#pragma once

#include <string>
#include <vector>

#include "gpl/complex.hpp"
#include "gpl/json_io.hpp"

namespace gpl {

// One graded field component living on the product of the time lattice with
// the spatial complex. time_type 0 means the component sits on time slices
// (T slots), time_type 1 on the intervals between slices (T-1 slots, the
// slot labeled by the lower slice).
struct FieldComponent {
    std::string name;
    int ghost = 0;
    int time_type = 0;
    int space_degree = 0;
    int fiber = 1;
};

// Finite causal lattice M = (T time slices) x sigma with an interior time
// pad: test sections ("compactly supported" ones) vanish in the first and
// last pad slices. tau is the time step; it enters only through the
// Lorentzian weights (tau on slice-type cells, -1/tau on interval-type), so
// at tau = 1 the time-interval weight is the bare Lorentzian -1.
class CausalModel {
public:
    CausalModel(CellComplex sigma, int T, int pad, std::vector<FieldComponent> components,
                Rational tau = Rational(1, 2))
        : sigma_(std::move(sigma)), T_(T), pad_(pad), tau_(std::move(tau)),
          components_(std::move(components)) {
        require(T_ >= 2 * pad_ + 3, err::WindowTooSmall, "need T >= 2*pad + 3");
        require(pad_ >= 1, err::WindowTooSmall, "interior pad must be at least 1");
        require(sgn(tau_) > 0, err::DimensionMismatch, "time step must be positive");
        offsets_.reserve(components_.size());
        int off = 0;
        for (const auto& c : components_) {
            require(c.fiber >= 0, err::DimensionMismatch, "fiber dimension must be >= 0");
            require(c.time_type == 0 || c.time_type == 1, err::DimensionMismatch,
                    "time_type must be 0 or 1");
            offsets_.push_back(off);
            off += slots(c) * sigma_.count(c.space_degree) * c.fiber;
        }
        total_ = off;
    }

    const CellComplex& sigma() const { return sigma_; }
    int T() const { return T_; }
    int pad() const { return pad_; }
    const Rational& tau() const { return tau_; }
    const std::vector<FieldComponent>& components() const { return components_; }
    int total_dim() const { return total_; }

    int slots(const FieldComponent& c) const { return T_ - c.time_type; }
    int component_index(const std::string& name) const {
        for (size_t i = 0; i < components_.size(); ++i)
            if (components_[i].name == name) return static_cast<int>(i);
        fail(err::DimensionMismatch, "unknown field component '" + name + "'");
    }
    int offset(int comp) const { return offsets_[static_cast<size_t>(comp)]; }
    int component_size(int comp) const {
        const auto& c = components_[static_cast<size_t>(comp)];
        return slots(c) * sigma_.count(c.space_degree) * c.fiber;
    }
    int slice_size(int comp) const {
        const auto& c = components_[static_cast<size_t>(comp)];
        return sigma_.count(c.space_degree) * c.fiber;
    }

    int dof(int comp, int slot, int cell, int fib = 0) const {
        const auto& c = components_[static_cast<size_t>(comp)];
        require(slot >= 0 && slot < slots(c), err::DimensionMismatch, "time slot out of range");
        require(cell >= 0 && cell < sigma_.count(c.space_degree), err::DimensionMismatch,
                "cell index out of range");
        require(fib >= 0 && fib < c.fiber, err::DimensionMismatch, "fiber index out of range");
        return offsets_[static_cast<size_t>(comp)] +
               (slot * sigma_.count(c.space_degree) + cell) * c.fiber + fib;
    }

    struct DofInfo {
        int comp, slot, cell, fib;
    };
    DofInfo locate(int index) const {
        require(index >= 0 && index < total_, err::DimensionMismatch, "dof index out of range");
        int comp = static_cast<int>(components_.size()) - 1;
        while (offsets_[static_cast<size_t>(comp)] > index) --comp;
        int rel = index - offsets_[static_cast<size_t>(comp)];
        const auto& c = components_[static_cast<size_t>(comp)];
        const int per_slice = sigma_.count(c.space_degree) * c.fiber;
        return {comp, rel / per_slice, (rel % per_slice) / c.fiber, rel % c.fiber};
    }

    // Time label of a dof: slice for slice-type cells, lower slice for
    // interval-type.
    int dof_time(int index) const { return locate(index).slot; }

    // Slice span occupied by a dof: {t} or {t, t+1}.
    std::pair<int, int> dof_span(int index) const {
        DofInfo in = locate(index);
        const auto& c = components_[static_cast<size_t>(in.comp)];
        return {in.slot, in.slot + c.time_type};
    }

    // Lorentzian inner-product weights: (u|v) = sum_i W_i conj(u_i) v_i.
    Vec weights() const {
        Vec w = zero_vec(total_);
        const Scalar t_slice(tau_);
        const Scalar t_interval(Rational(-1) / tau_);
        for (size_t ci = 0; ci < components_.size(); ++ci) {
            const auto& c = components_[ci];
            const Vec& ws = sigma_.weights(c.space_degree);
            for (int s = 0; s < slots(c); ++s)
                for (int cell = 0; cell < sigma_.count(c.space_degree); ++cell)
                    for (int f = 0; f < c.fiber; ++f)
                        w[static_cast<size_t>(dof(static_cast<int>(ci), s, cell, f))] =
                            (c.time_type == 0 ? t_slice : t_interval) *
                            ws[static_cast<size_t>(cell)];
        }
        return w;
    }

    Mat adjoint_endo(const Mat& A) const;

    // Dofs whose slice span lies within [lo, hi].
    std::vector<char> window_flags(int lo, int hi) const {
        std::vector<char> f(static_cast<size_t>(total_), 0);
        for (int i = 0; i < total_; ++i) {
            auto [a, b] = dof_span(i);
            if (a >= lo && b <= hi) f[static_cast<size_t>(i)] = 1;
        }
        return f;
    }

    Subspace window_subspace(int lo, int hi) const {
        auto flags = window_flags(lo, hi);
        std::vector<Vec> cols;
        for (int i = 0; i < total_; ++i)
            if (flags[static_cast<size_t>(i)]) {
                Vec e = zero_vec(total_);
                e[static_cast<size_t>(i)] = Scalar(1);
                cols.push_back(e);
            }
        return Subspace::span(Mat::from_columns(total_, cols));
    }

    // Test sections: vanish in the first and last pad slices.
    Subspace gamma_c() const { return window_subspace(pad_, T_ - 1 - pad_); }
    std::vector<char> gamma_c_flags() const { return window_flags(pad_, T_ - 1 - pad_); }

    Json to_json() const {
        Json fibers = Json::array();
        for (const auto& c : components_)
            fibers.push_back(Json{{"name", c.name},
                                  {"ghost", c.ghost},
                                  {"time_type", c.time_type},
                                  {"degree", c.space_degree},
                                  {"fiber", c.fiber}});
        return Json{{"T", T_},
                    {"pad", pad_},
                    {"sigma_ref", sigma_.name},
                    {"time_step", to_string(tau_)},
                    {"fibers", fibers}};
    }

private:
    CellComplex sigma_;
    int T_, pad_;
    Rational tau_;
    std::vector<FieldComponent> components_;
    std::vector<int> offsets_;
    int total_ = 0;
};

// Adjoint of A : (dom, w_dom) -> (cod, w_cod) w.r.t. the weighted pairings
// (u|v) = sum_i w_i conj(u_i) v_i, that is W_dom^{-1} A^H W_cod.
inline Mat weighted_adjoint(const Mat& A, const Vec& w_cod, const Vec& w_dom) {
    require(A.rows() == static_cast<int>(w_cod.size()) &&
                A.cols() == static_cast<int>(w_dom.size()),
            err::DimensionMismatch, "weight vectors do not match the map");
    Mat out = A.conj_transpose();
    Mat scaled(out.rows(), out.cols());
    for (int j = 0; j < out.cols(); ++j)
        for (const auto& [r, v] : out.col(j))
            scaled.set(r, j, v * w_cod[static_cast<size_t>(j)] / w_dom[static_cast<size_t>(r)]);
    return scaled;
}

inline Mat CausalModel::adjoint_endo(const Mat& A) const {
    Vec w = weights();
    return weighted_adjoint(A, w, w);
}

// Assembly helpers: maps between single components of (possibly different)
// models over the same time lattice. Each helper adds its entries into an
// accumulator sized (dst.total_dim x src.total_dim).

// Per-slot spatial map: dst(slot) = M * src(slot), where M acts on
// (cells x fiber) coordinates. Both components must have the same time_type.
inline void add_per_slot_map(Mat& acc, const CausalModel& dst, int dst_comp,
                             const CausalModel& src, int src_comp, const Mat& M,
                             const Scalar& scale = Scalar(1)) {
    require(acc.rows() == dst.total_dim() && acc.cols() == src.total_dim(),
            err::DimensionMismatch, "accumulator shape");
    require(dst.T() == src.T(), err::DimensionMismatch, "time lattices differ");
    const auto& cs = src.components()[static_cast<size_t>(src_comp)];
    const auto& cd = dst.components()[static_cast<size_t>(dst_comp)];
    require(cs.time_type == cd.time_type, err::DimensionMismatch,
            "per-slot map needs equal time types");
    require(M.rows() == dst.slice_size(dst_comp) && M.cols() == src.slice_size(src_comp),
            err::DimensionMismatch, "slice map shape");
    for (int s = 0; s < src.slots(cs); ++s)
        for (int j = 0; j < M.cols(); ++j)
            for (const auto& [r, v] : M.col(j))
                acc.add_at(dst.offset(dst_comp) + s * M.rows() + r,
                           src.offset(src_comp) + s * M.cols() + j, scale * v);
}

// Forward time difference: dst(interval t) = src(t+1) - src(t).
// src slice-type, dst interval-type, equal slice sizes.
inline void add_time_diff_map(Mat& acc, const CausalModel& dst, int dst_comp,
                              const CausalModel& src, int src_comp,
                              const Scalar& scale = Scalar(1)) {
    require(acc.rows() == dst.total_dim() && acc.cols() == src.total_dim(),
            err::DimensionMismatch, "accumulator shape");
    require(dst.T() == src.T(), err::DimensionMismatch, "time lattices differ");
    const auto& cs = src.components()[static_cast<size_t>(src_comp)];
    const auto& cd = dst.components()[static_cast<size_t>(dst_comp)];
    require(cs.time_type == 0 && cd.time_type == 1, err::DimensionMismatch,
            "time difference maps slice-type to interval-type");
    const int n = src.slice_size(src_comp);
    require(n == dst.slice_size(dst_comp), err::DimensionMismatch,
            "time difference needs equal slice sizes");
    for (int t = 0; t + 1 < src.T(); ++t)
        for (int k = 0; k < n; ++k) {
            acc.add_at(dst.offset(dst_comp) + t * n + k, src.offset(src_comp) + (t + 1) * n + k,
                       scale);
            acc.add_at(dst.offset(dst_comp) + t * n + k, src.offset(src_comp) + t * n + k,
                       -scale);
        }
}

// Identity copy between components of identical layout.
inline void add_component_identity(Mat& acc, const CausalModel& dst, int dst_comp,
                                   const CausalModel& src, int src_comp,
                                   const Scalar& scale = Scalar(1)) {
    require(acc.rows() == dst.total_dim() && acc.cols() == src.total_dim(),
            err::DimensionMismatch, "accumulator shape");
    require(dst.component_size(dst_comp) == src.component_size(src_comp),
            err::DimensionMismatch, "component sizes differ");
    const auto& cs = src.components()[static_cast<size_t>(src_comp)];
    const auto& cd = dst.components()[static_cast<size_t>(dst_comp)];
    require(cs.time_type == cd.time_type && cs.space_degree == cd.space_degree &&
                cs.fiber == cd.fiber,
            err::DimensionMismatch, "component layouts differ");
    for (int k = 0; k < src.component_size(src_comp); ++k)
        acc.add_at(dst.offset(dst_comp) + k, src.offset(src_comp) + k, scale);
}

// Restriction of a map to a (dst component, src component) block.
inline Mat component_block(const CausalModel& dst, int dst_comp, const CausalModel& src,
                           int src_comp, const Mat& A) {
    require(A.rows() == dst.total_dim() && A.cols() == src.total_dim(), err::DimensionMismatch,
            "map shape does not match the models");
    Mat out(dst.component_size(dst_comp), src.component_size(src_comp));
    for (int j = 0; j < src.component_size(src_comp); ++j) {
        auto col = A.col(src.offset(src_comp) + j);
        for (const auto& [r, v] : col) {
            if (r >= dst.offset(dst_comp) &&
                r < dst.offset(dst_comp) + dst.component_size(dst_comp))
                out.set(r - dst.offset(dst_comp), j, v);
        }
    }
    return out;
}

// Embedding matrix src.total_dim -> dst.total_dim copying one component.
inline Mat component_embedding(const CausalModel& dst, int dst_comp, const CausalModel& src,
                               int src_comp) {
    Mat acc(dst.total_dim(), src.total_dim());
    add_component_identity(acc, dst, dst_comp, src, src_comp);
    return acc;
}

// Time-stencil extents of a map between two models over the same time
// lattice, measured per (codomain component, domain component) pair from the
// matrix itself. Windowing only removes entries, so the extremal slot
// offsets over all rows recover the full interior stencil.
struct CrossStencil {
    std::vector<std::vector<char>> coupled; // [cod comp][dom comp]
    std::vector<std::vector<int>> lo, hi;   // dom slot minus cod slot, extremes
};

inline CrossStencil measure_cross_stencil(const CausalModel& cod, const CausalModel& dom,
                                          const Mat& A) {
    require(A.rows() == cod.total_dim() && A.cols() == dom.total_dim(), err::DimensionMismatch,
            "map shape does not match the models");
    require(cod.T() == dom.T(), err::DimensionMismatch, "time lattices differ");
    const size_t nc = cod.components().size();
    const size_t nd = dom.components().size();
    CrossStencil st;
    st.coupled.assign(nc, std::vector<char>(nd, 0));
    st.lo.assign(nc, std::vector<int>(nd, 0));
    st.hi.assign(nc, std::vector<int>(nd, 0));
    for (int j = 0; j < A.cols(); ++j) {
        const auto dj = dom.locate(j);
        for (const auto& [r, v] : A.col(j)) {
            (void)v;
            const auto dr = cod.locate(r);
            const int off = dj.slot - dr.slot;
            auto& cp = st.coupled[static_cast<size_t>(dr.comp)][static_cast<size_t>(dj.comp)];
            auto& lo = st.lo[static_cast<size_t>(dr.comp)][static_cast<size_t>(dj.comp)];
            auto& hi = st.hi[static_cast<size_t>(dr.comp)][static_cast<size_t>(dj.comp)];
            if (!cp) {
                cp = 1;
                lo = hi = off;
            } else {
                lo = std::min(lo, off);
                hi = std::max(hi, off);
            }
        }
    }
    return st;
}

// Rows whose full stencil lies inside the window (no truncated terms), so
// the row of the finite matrix agrees with the translation-invariant one.
inline std::vector<char> complete_rows_cross(const CausalModel& cod, const CausalModel& dom,
                                             const Mat& A) {
    const CrossStencil st = measure_cross_stencil(cod, dom, A);
    std::vector<char> out(static_cast<size_t>(cod.total_dim()), 1);
    const size_t nd = dom.components().size();
    for (int r = 0; r < cod.total_dim(); ++r) {
        const auto dr = cod.locate(r);
        for (size_t cj = 0; cj < nd; ++cj) {
            if (!st.coupled[static_cast<size_t>(dr.comp)][cj]) continue;
            const auto& c = dom.components()[cj];
            if (dr.slot + st.lo[static_cast<size_t>(dr.comp)][cj] < 0 ||
                dr.slot + st.hi[static_cast<size_t>(dr.comp)][cj] > dom.slots(c) - 1) {
                out[static_cast<size_t>(r)] = 0;
                break;
            }
        }
    }
    return out;
}

// Rows of A computed from trusted inputs only: complete rows all of whose
// entries sit at flagged domain dofs.
inline std::vector<char> determined_rows(const CausalModel& cod, const CausalModel& dom,
                                         const Mat& A, const std::vector<char>& ok_cols) {
    require(static_cast<int>(ok_cols.size()) == dom.total_dim(), err::DimensionMismatch,
            "flag length does not match the domain");
    std::vector<char> out = complete_rows_cross(cod, dom, A);
    for (int j = 0; j < A.cols(); ++j) {
        if (ok_cols[static_cast<size_t>(j)]) continue;
        for (const auto& [r, v] : A.col(j)) {
            (void)v;
            out[static_cast<size_t>(r)] = 0;
        }
    }
    return out;
}

} // namespace gpl
