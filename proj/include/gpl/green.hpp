#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "gpl/spacetime.hpp"

namespace gpl {

// Keep the rows flagged in `keep`, reindexed consecutively.
inline Mat select_rows_flagged(const Mat& A, const std::vector<char>& keep) {
    require(static_cast<int>(keep.size()) == A.rows(), err::DimensionMismatch,
            "row flag vector does not match");
    std::vector<int> to(keep.size(), -1);
    int m = 0;
    for (size_t i = 0; i < keep.size(); ++i)
        if (keep[i]) to[i] = m++;
    Mat out(m, A.cols());
    for (int j = 0; j < A.cols(); ++j)
        for (const auto& [r, v] : A.col(j))
            if (to[static_cast<size_t>(r)] >= 0) out.set(to[static_cast<size_t>(r)], j, v);
    return out;
}

// Of the flagged columns, keep those whose entries all lie at flagged rows,
// i.e. the test sections (among `cols`) whose image stays inside `ok_rows`.
inline std::vector<char> confined_columns(const Mat& A, std::vector<char> cols,
                                          const std::vector<char>& ok_rows) {
    require(static_cast<int>(cols.size()) == A.cols() &&
                static_cast<int>(ok_rows.size()) == A.rows(),
            err::DimensionMismatch, "flag lengths do not match the map");
    for (int j = 0; j < A.cols(); ++j) {
        if (!cols[static_cast<size_t>(j)]) continue;
        for (const auto& [r, v] : A.col(j)) {
            if (v.is_zero()) continue;
            if (!ok_rows[static_cast<size_t>(r)]) {
                cols[static_cast<size_t>(j)] = 0;
                break;
            }
        }
    }
    return cols;
}

// Image of the flagged columns of A as a subspace of the codomain.
inline Subspace image_of_columns(const Mat& A, const std::vector<char>& cols) {
    require(static_cast<int>(cols.size()) == A.cols(), err::DimensionMismatch,
            "flag length does not match the map");
    std::vector<Vec> picked;
    for (int j = 0; j < A.cols(); ++j)
        if (cols[static_cast<size_t>(j)]) picked.push_back(A.get_col(j));
    return Subspace::span(Mat::from_columns(A.rows(), picked));
}

inline std::vector<char> and_flags(std::vector<char> a, const std::vector<char>& b) {
    require(a.size() == b.size(), err::DimensionMismatch, "flag lengths differ");
    for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
    return a;
}

// Entrywise equality of A and B restricted to flagged rows and columns.
inline bool equal_on(const Mat& A, const Mat& B, const std::vector<char>& rows,
                     const std::vector<char>& cols) {
    require(A.rows() == B.rows() && A.cols() == B.cols(), err::DimensionMismatch,
            "matrix shapes differ");
    require(static_cast<int>(rows.size()) == A.rows() &&
                static_cast<int>(cols.size()) == A.cols(),
            err::DimensionMismatch, "flag lengths do not match");
    const Mat diff = A - B;
    for (int j = 0; j < diff.cols(); ++j) {
        if (!cols[static_cast<size_t>(j)]) continue;
        for (const auto& [r, v] : diff.col(j))
            if (rows[static_cast<size_t>(r)] && !v.is_zero()) return false;
    }
    return true;
}

// {v supported on the flagged columns : (flagged rows of A) v = 0}, as a
// subspace of the full domain.
inline Subspace kernel_on_window(const Mat& A, const std::vector<char>& cols,
                                 const std::vector<char>& rows) {
    require(static_cast<int>(cols.size()) == A.cols() &&
                static_cast<int>(rows.size()) == A.rows(),
            err::DimensionMismatch, "flag lengths do not match the map");
    std::vector<int> idx;
    for (int j = 0; j < A.cols(); ++j)
        if (cols[static_cast<size_t>(j)]) idx.push_back(j);
    Mat M = select_rows_flagged(A, rows).select_cols(idx);
    Mat k = kernel(M);
    Mat emb(A.cols(), k.cols());
    for (int j = 0; j < k.cols(); ++j)
        for (const auto& [r, v] : k.col(j)) emb.set(idx[static_cast<size_t>(r)], j, v);
    return Subspace::span(emb);
}

// A normally hyperbolic lattice operator together with its retarded and
// advanced solvers. Equations are marched slice by slice: at each time step a
// square block couples the rows whose stencil tops out (resp. bottoms out) at
// the next unknown label against the unknowns carrying that label. The
// stencil extents are measured from the matrix itself, rows with truncated
// stencils are never enforced, and the range of labels on which the solution
// agrees with the bi-infinite one is tracked explicitly.
class GreenSystem {
public:
    GreenSystem(CausalModel model, Mat D, bool self_adjoint = false, bool enforce_pad = true)
        : model_(std::move(model)), D_(std::move(D)), self_adjoint_(self_adjoint) {
        const int n = model_.total_dim();
        require(D_.rows() == n && D_.cols() == n, err::DimensionMismatch,
                "operator must be an endomorphism of the model's sections");
        if (self_adjoint_)
            require(model_.adjoint_endo(D_) == D_, err::NonHermitianInput,
                    "operator flagged self-adjoint is not self-adjoint for the model weights");
        labels_.resize(static_cast<size_t>(n));
        spans_.resize(static_cast<size_t>(n));
        comp_of_.resize(static_cast<size_t>(n));
        max_label_ = 0;
        for (int i = 0; i < n; ++i) {
            auto in = model_.locate(i);
            labels_[static_cast<size_t>(i)] = in.slot;
            comp_of_[static_cast<size_t>(i)] = in.comp;
            spans_[static_cast<size_t>(i)] = model_.dof_span(i);
            max_label_ = std::max(max_label_, in.slot);
        }
        measure_extents();
        mark_complete();
        fwd_ = build_plan(true);
        bwd_ = build_plan(false);
        min_pad_ = std::max({1, band_, fwd_.pad_needed, bwd_.pad_needed});
        if (enforce_pad)
            require(model_.pad() >= min_pad_, err::WindowTooSmall,
                    "interior time pad is smaller than the operator's marching band needs");
        gamma_flags_ = model_.gamma_c_flags();
    }

    const CausalModel& model() const { return model_; }
    const Mat& op() const { return D_; }
    bool self_adjoint() const { return self_adjoint_; }
    int band() const { return band_; }
    int min_pad() const { return min_pad_; }
    int max_label() const { return max_label_; }

    // Rows whose full stencil is present in the finite lattice.
    const std::vector<char>& complete_rows() const { return complete_; }

    // Rows enforced exactly by the retarded (resp. advanced) march:
    // (D G^+ f)_r = f_r holds for these r.
    const std::vector<char>& retarded_enforced() const { return fwd_.enforced; }
    const std::vector<char>& advanced_enforced() const { return bwd_.enforced; }

    // Labels on which the marched solution agrees with the bi-infinite one.
    int retarded_faithful_max_label() const { return fwd_.solved_max; }
    int advanced_faithful_min_label() const { return bwd_.solved_min; }

    std::vector<char> retarded_faithful_flags() const {
        return label_range_flags(0, fwd_.solved_max);
    }
    std::vector<char> advanced_faithful_flags() const {
        return label_range_flags(bwd_.solved_min, max_label_);
    }
    std::vector<char> causal_faithful_flags() const {
        return label_range_flags(bwd_.solved_min, fwd_.solved_max);
    }
    std::vector<char> label_range_flags(int lo, int hi) const {
        std::vector<char> f(labels_.size(), 0);
        for (size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] >= lo && labels_[i] <= hi) f[i] = 1;
        return f;
    }

    // Unique solution vanishing below (resp. above) the source. The source
    // must be a test section: supported in the interior time window.
    Vec solve_retarded(const Vec& f) const { return run(fwd_, f); }
    Vec solve_advanced(const Vec& f) const { return run(bwd_, f); }

    // Propagators as matrices on the test-section basis: the column for a dof
    // outside the interior window is zero (the operators are only defined on
    // test sections).
    const Mat& g_plus() const {
        if (!gp_) gp_ = build_g(fwd_);
        return *gp_;
    }
    const Mat& g_minus() const {
        if (!gm_) gm_ = build_g(bwd_);
        return *gm_;
    }
    Mat g_causal() const { return g_plus() - g_minus(); }

    // Operator restricted to its complete rows; its kernel is the space of
    // solutions of the interior equations ("spatially compact" solutions: on
    // these lattices every section is spatially compact).
    Mat op_interior() const { return select_rows_flagged(D_, complete_); }
    Subspace ker_interior() const { return Subspace::span(kernel(op_interior())); }

private:
    struct Step {
        int s = 0;
        std::vector<int> rows;
        std::vector<int> unknowns;
        bool solved = false;
        bool pre = false;
        std::shared_ptr<ColEchelon> ech;
    };
    struct Plan {
        std::vector<Step> steps;
        std::vector<char> enforced;
        int solved_min = -1;
        int solved_max = -1;
        int pad_needed = 1;
    };

    void measure_extents() {
        const int nc = static_cast<int>(model_.components().size());
        const int n = model_.total_dim();
        lo_.assign(static_cast<size_t>(nc * nc), 0);
        hi_.assign(static_cast<size_t>(nc * nc), 0);
        coupled_.assign(static_cast<size_t>(nc * nc), 0);
        for (int j = 0; j < n; ++j) {
            const int cj = comp_of_[static_cast<size_t>(j)];
            for (const auto& [r, v] : D_.col(j)) {
                const int cr = comp_of_[static_cast<size_t>(r)];
                const int off = labels_[static_cast<size_t>(j)] - labels_[static_cast<size_t>(r)];
                const size_t idx = static_cast<size_t>(cr * nc + cj);
                if (!coupled_[idx]) {
                    coupled_[idx] = 1;
                    lo_[idx] = hi_[idx] = off;
                } else {
                    lo_[idx] = std::min(lo_[idx], off);
                    hi_[idx] = std::max(hi_[idx], off);
                }
            }
        }
        row_lo_.assign(static_cast<size_t>(nc), 0);
        row_hi_.assign(static_cast<size_t>(nc), 0);
        row_coupled_.assign(static_cast<size_t>(nc), 0);
        band_ = 0;
        for (int cr = 0; cr < nc; ++cr)
            for (int cj = 0; cj < nc; ++cj) {
                const size_t idx = static_cast<size_t>(cr * nc + cj);
                if (!coupled_[idx]) continue;
                if (!row_coupled_[static_cast<size_t>(cr)]) {
                    row_coupled_[static_cast<size_t>(cr)] = 1;
                    row_lo_[static_cast<size_t>(cr)] = lo_[idx];
                    row_hi_[static_cast<size_t>(cr)] = hi_[idx];
                } else {
                    row_lo_[static_cast<size_t>(cr)] =
                        std::min(row_lo_[static_cast<size_t>(cr)], lo_[idx]);
                    row_hi_[static_cast<size_t>(cr)] =
                        std::max(row_hi_[static_cast<size_t>(cr)], hi_[idx]);
                }
                band_ = std::max({band_, std::abs(lo_[idx]), std::abs(hi_[idx])});
            }
    }

    void mark_complete() {
        const int nc = static_cast<int>(model_.components().size());
        const int n = model_.total_dim();
        complete_.assign(static_cast<size_t>(n), 0);
        for (int r = 0; r < n; ++r) {
            const int cr = comp_of_[static_cast<size_t>(r)];
            if (!row_coupled_[static_cast<size_t>(cr)]) continue;
            const int t = labels_[static_cast<size_t>(r)];
            bool ok = true;
            for (int cj = 0; cj < nc && ok; ++cj) {
                const size_t idx = static_cast<size_t>(cr * nc + cj);
                if (!coupled_[idx]) continue;
                const int maxslot = model_.slots(model_.components()[static_cast<size_t>(cj)]) - 1;
                if (t + lo_[idx] < 0 || t + hi_[idx] > maxslot) ok = false;
            }
            complete_[static_cast<size_t>(r)] = ok ? 1 : 0;
        }
    }

    Mat submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
        Mat B(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j)
            for (const auto& [r, v] : D_.col(cols[j])) {
                auto it = std::lower_bound(rows.begin(), rows.end(), r);
                if (it != rows.end() && *it == r)
                    B.set(static_cast<int>(it - rows.begin()), static_cast<int>(j), v);
            }
        return B;
    }

    Plan build_plan(bool forward) const {
        const int n = model_.total_dim();
        std::map<int, std::vector<int>> rows_by_step;
        for (int r = 0; r < n; ++r) {
            if (!complete_[static_cast<size_t>(r)]) continue;
            const int c = comp_of_[static_cast<size_t>(r)];
            const int step = forward ? labels_[static_cast<size_t>(r)] +
                                           row_hi_[static_cast<size_t>(c)] - 1
                                     : labels_[static_cast<size_t>(r)] +
                                           row_lo_[static_cast<size_t>(c)] + 1;
            rows_by_step[step].push_back(r);
        }
        std::vector<std::vector<int>> dofs_by_label(static_cast<size_t>(max_label_ + 1));
        for (int i = 0; i < n; ++i) dofs_by_label[static_cast<size_t>(labels_[i])].push_back(i);

        Plan plan;
        plan.enforced.assign(static_cast<size_t>(n), 0);
        enum Phase { PRE, CORE, POST } phase = PRE;
        Mat prevB;
        std::shared_ptr<ColEchelon> prev_ech;
        static const std::vector<int> no_rows;

        std::vector<int> schedule;
        if (forward)
            for (int s = -1; s <= max_label_ - 1; ++s) schedule.push_back(s);
        else
            for (int s = max_label_ + 1; s >= 1; --s) schedule.push_back(s);

        for (int s : schedule) {
            const int lab = forward ? s + 1 : s - 1;
            const auto& U = dofs_by_label[static_cast<size_t>(lab)];
            auto itR = rows_by_step.find(s);
            const std::vector<int>& R = itR == rows_by_step.end() ? no_rows : itR->second;
            if (U.empty()) {
                require(R.empty(), err::InternalContradiction,
                        "marching rows address a label with no unknowns");
                continue;
            }
            Step st;
            st.s = s;
            st.rows = R;
            st.unknowns = U;
            bool solvable = false;
            if (R.size() == U.size()) {
                Mat B = submatrix(R, U);
                std::shared_ptr<ColEchelon> ech;
                if (prev_ech && B == prevB)
                    ech = prev_ech;
                else
                    ech = std::make_shared<ColEchelon>(col_echelon(B));
                if (ech->rank() == static_cast<int>(U.size())) {
                    solvable = true;
                    st.ech = ech;
                    prevB = std::move(B);
                    prev_ech = ech;
                }
            }
            if (solvable) {
                require(phase != POST, err::SingularTimeStep,
                        "time-step system is singular at an interior step");
                phase = CORE;
                st.solved = true;
                for (int r : R) plan.enforced[static_cast<size_t>(r)] = 1;
                if (plan.solved_min < 0 || lab < plan.solved_min) plan.solved_min = lab;
                if (plan.solved_max < 0 || lab > plan.solved_max) plan.solved_max = lab;
            } else {
                st.pre = (phase == PRE);
                if (phase == CORE) phase = POST;
            }
            plan.steps.push_back(std::move(st));
        }
        require(plan.solved_min >= 0, err::SingularTimeStep,
                "no solvable time steps: the operator is not marchable");

        // Pad needed so that test sections cannot source the skipped region:
        // every row whose step precedes the core must lie in the pad zone.
        int pad = 1;
        const int T = model_.T();
        for (int r = 0; r < n; ++r) {
            const int c = comp_of_[static_cast<size_t>(r)];
            if (!row_coupled_[static_cast<size_t>(c)]) continue;
            const int step = forward ? labels_[static_cast<size_t>(r)] +
                                           row_hi_[static_cast<size_t>(c)] - 1
                                     : labels_[static_cast<size_t>(r)] +
                                           row_lo_[static_cast<size_t>(c)] + 1;
            const bool before_core =
                forward ? (step + 1 < plan.solved_min) : (step - 1 > plan.solved_max);
            if (!before_core) continue;
            if (forward)
                pad = std::max(pad, spans_[static_cast<size_t>(r)].first + 1);
            else
                pad = std::max(pad, T - spans_[static_cast<size_t>(r)].second);
        }
        plan.pad_needed = pad;
        return plan;
    }

    Vec run(const Plan& plan, const Vec& f) const {
        const int n = model_.total_dim();
        require(static_cast<int>(f.size()) == n, err::DimensionMismatch,
                "source does not match the model's sections");
        for (int i = 0; i < n; ++i)
            require(f[static_cast<size_t>(i)].is_zero() || gamma_flags_[static_cast<size_t>(i)],
                    err::SupportViolation, "source is supported inside the time pad");
        Vec x = zero_vec(n);
        Vec res = f;
        for (const Step& st : plan.steps) {
            if (!st.solved) {
                if (st.pre)
                    for (int r : st.rows)
                        require(res[static_cast<size_t>(r)].is_zero(), err::InternalContradiction,
                                "source feeds a time step outside the marchable range");
                continue;
            }
            Vec b(st.rows.size(), Scalar(0));
            for (size_t i = 0; i < st.rows.size(); ++i)
                b[i] = res[static_cast<size_t>(st.rows[i])];
            auto sol = st.ech->solve(b);
            require(sol.has_value(), err::InternalContradiction,
                    "full-rank marching block failed to solve");
            for (size_t j = 0; j < st.unknowns.size(); ++j) {
                const Scalar& v = (*sol)[j];
                if (v.is_zero()) continue;
                x[static_cast<size_t>(st.unknowns[j])] = v;
                for (const auto& [r, a] : D_.col(st.unknowns[j]))
                    res[static_cast<size_t>(r)] = res[static_cast<size_t>(r)] - a * v;
            }
        }
        return x;
    }

    Mat build_g(const Plan& plan) const {
        const int n = model_.total_dim();
        Mat G(n, n);
        Vec e = zero_vec(n);
        for (int i = 0; i < n; ++i) {
            if (!gamma_flags_[static_cast<size_t>(i)]) continue;
            e[static_cast<size_t>(i)] = Scalar(1);
            Vec col = run(plan, e);
            e[static_cast<size_t>(i)] = Scalar(0);
            for (int r = 0; r < n; ++r)
                if (!col[static_cast<size_t>(r)].is_zero()) G.set(r, i, col[static_cast<size_t>(r)]);
        }
        return G;
    }

    CausalModel model_;
    Mat D_;
    bool self_adjoint_;
    std::vector<int> labels_;
    std::vector<int> comp_of_;
    std::vector<std::pair<int, int>> spans_;
    std::vector<int> lo_, hi_;
    std::vector<char> coupled_;
    std::vector<int> row_lo_, row_hi_;
    std::vector<char> row_coupled_;
    std::vector<char> complete_;
    std::vector<char> gamma_flags_;
    int band_ = 0;
    int max_label_ = 0;
    int min_pad_ = 1;
    Plan fwd_, bwd_;
    mutable std::optional<Mat> gp_, gm_;
};

} // namespace gpl
