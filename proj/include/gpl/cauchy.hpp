#pragma once

#include <utility>

#include "gpl/green.hpp"
#include "gpl/surface.hpp"

namespace gpl {

// A data map together with the space it maps into.
struct CauchyMap {
    SurfaceSpace data;
    Mat rho;
};

// Cauchy-surface structure for a marchable operator: the data map rho sends
// sections to surface data at a reference slice, and the inverse of
// M = -rho G rho* plays the role of the data-space causal propagator. From it
// the solution map U = -G rho* M^{-1} reconstructs a solution from its data.
class CauchyStructure {
public:
    CauchyStructure(const GreenSystem& sys, SurfaceSpace data, Mat rho)
        : sys_(&sys), data_(std::move(data)), rho_(std::move(rho)) {
        const int n = sys.model().total_dim();
        const int m = data_.total_dim();
        require(rho_.rows() == m && rho_.cols() == n, err::DimensionMismatch,
                "data map shape does not match the model and data space");
        const auto& window = sys.model().gamma_c_flags();
        for (int j = 0; j < n; ++j)
            require(rho_.col(j).empty() || window[static_cast<size_t>(j)],
                    err::SupportViolation, "data map samples dofs inside the time pad");
        rho_star_ = weighted_adjoint(rho_, data_.weights(), sys.model().weights());
        g_rho_star_ = Mat(n, m);
        for (int d = 0; d < m; ++d) {
            Vec col = rho_star_.get_col(d);
            Vec g = sys.solve_retarded(col) - sys.solve_advanced(col);
            g_rho_star_.set_col(d, g);
        }
        Mat M = -(rho_ * g_rho_star_);
        try {
            g_sigma_ = inverse(M);
        } catch (const Error&) {
            fail(err::NotCauchyHyperbolic,
                 "the data pairing -rho G rho* is singular: data do not determine solutions");
        }
        u_map_ = -(g_rho_star_ * g_sigma_);
    }

    const GreenSystem& system() const { return *sys_; }
    const SurfaceSpace& data() const { return data_; }
    const Mat& rho() const { return rho_; }
    const Mat& rho_star() const { return rho_star_; }
    const Mat& g_sigma() const { return g_sigma_; }
    const Mat& u_map() const { return u_map_; }

    Vec data_of(const Vec& section) const { return rho_.apply(section); }
    Vec solution_from_data(const Vec& d) const { return u_map_.apply(d); }

    struct Report {
        bool data_inverse = false;       // -rho G rho* g_sigma = 1
        bool reconstruction = false;     // U rho = 1 on solutions (faithful window)
        bool propagator_factors = false; // G = -G rho* g_sigma rho G on test sections
        bool g_sigma_antisymmetric = false;
        bool ok() const {
            return data_inverse && reconstruction && propagator_factors && g_sigma_antisymmetric;
        }
    };

    Report verify() const {
        Report rep;
        const int m = data_.total_dim();
        rep.data_inverse = (-(rho_ * g_rho_star_)) * g_sigma_ == Mat::identity(m);

        rep.reconstruction = true;
        auto faithful = sys_->causal_faithful_flags();
        Subspace sols = sys_->ker_interior();
        for (int j = 0; j < sols.dim(); ++j) {
            Vec s = sols.basis().get_col(j);
            Vec back = u_map_.apply(rho_.apply(s));
            for (size_t i = 0; i < back.size(); ++i)
                if (faithful[i] && !(back[i] == s[i])) rep.reconstruction = false;
        }

        const Mat& G = sys_->g_causal();
        Mat rhs = -(g_rho_star_ * (g_sigma_ * (rho_ * G)));
        rep.propagator_factors = true;
        const auto& window = sys_->model().gamma_c_flags();
        for (int j = 0; j < G.cols(); ++j) {
            if (!window[static_cast<size_t>(j)]) continue;
            Vec a = G.get_col(j);
            Vec b = rhs.get_col(j);
            for (size_t i = 0; i < a.size(); ++i)
                if (faithful[i] && !(a[i] == b[i])) rep.propagator_factors = false;
        }

        rep.g_sigma_antisymmetric = data_.adjoint_endo(g_sigma_) == -g_sigma_;
        return rep;
    }

private:
    const GreenSystem* sys_;
    SurfaceSpace data_;
    Mat rho_, rho_star_, g_rho_star_, g_sigma_, u_map_;
};

} // namespace gpl
