#pragma once

#include <string>
#include <utility>

#include "gpl/cauchy.hpp"
#include "gpl/subsidiary.hpp"

namespace gpl {

// The constraint and gauge maps transported to Cauchy data. K maps solutions
// of R to solutions of D and K* maps solutions of D to solutions of Q, so
// sandwiching with the data/solution maps of the three Cauchy structures
// yields well-defined operators between data spaces:
//   K_data   = rho_D K U_R : data(R) -> data(D),
//   K_data^+ = rho_Q K* U_D : data(D) -> data(Q).
struct SurfaceGaugeOps {
    const SubsidiarySystem* sys = nullptr;
    const CauchyStructure* cd = nullptr; // for D, on sections of V1
    const CauchyStructure* cr = nullptr; // for R, on sections of V0
    const CauchyStructure* cq = nullptr; // for Q, on sections of V0
    Mat k_sigma;     // rho_D K U_R
    Mat k_sigma_dag; // rho_Q K* U_D
};

inline SurfaceGaugeOps surface_gauge_ops(const SubsidiarySystem& s, const CauchyStructure& cd,
                                         const CauchyStructure& cr, const CauchyStructure& cq) {
    require(cd.system().op() == s.D(), err::DimensionMismatch,
            "first Cauchy structure does not belong to the evolution operator D");
    require(cr.system().op() == s.R(), err::DimensionMismatch,
            "second Cauchy structure does not belong to the gauge-sector operator R");
    require(cq.system().op() == s.Q(), err::DimensionMismatch,
            "third Cauchy structure does not belong to the constraint-sector operator Q");
    SurfaceGaugeOps out;
    out.sys = &s;
    out.cd = &cd;
    out.cr = &cr;
    out.cq = &cq;
    out.k_sigma = cd.rho() * (s.K() * cr.u_map());
    out.k_sigma_dag = cq.rho() * (s.Ks() * cd.u_map());
    return out;
}

// The compatibility identities between the data-space maps and their
// spacetime counterparts, all checked exactly on the trusted windows.
//
// The kernel transport carries a conserved-charge correction: for any w with
// K* w = 0, the retarded and advanced solutions for w each vanish at one time
// end while their total temporal charge N(t) = sum_x weight_x (G w)_te(t, x)
// is exactly conserved (adjointness against the constant 0-form), so N = 0
// for both and the transported kernel rho_D G_D Ker K* lies inside the
// zero-charge slice of Ker K_sigma_dag. Pure-charge data is supplied by the
// gauge-motion sector instead, so the exact statements are the containment
// and the decomposition against Ran K_sigma; kernel_defect records the
// charge-sector dimension (the number of independent closed constants).
struct SurfaceRelations {
    bool constraint_lifts = false;     // K U_R = U_D K_sigma
    bool condition_lifts = false;      // K* U_D = U_Q K_sigma_dag
    bool constraint_samples = false;   // rho_D K = K_sigma rho_R on Ker R
    bool condition_samples = false;    // rho_Q K* = K_sigma_dag rho_D on Ker D
    bool kernel_contained = false;     // rho_D G_D Ker K*|Gc <= Ker K_sigma_dag
    bool kernel_decomposition = false; // Ker K_sigma_dag = rho_D G_D Ker K*|Gc + Ran K_sigma
    int kernel_defect = -1;            // dim Ker K_sigma_dag - dim rho_D G_D Ker K*|Gc
    bool image_transported = false;    // Ran K_sigma = rho_D G_D Ran T|Gc
    bool composite_zero = false;       // K_sigma_dag K_sigma = 0
    std::string detail;
    bool ok() const {
        return constraint_lifts && condition_lifts && constraint_samples && condition_samples &&
               kernel_contained && kernel_decomposition && image_transported && composite_zero;
    }
};

inline SurfaceRelations surface_relations(const SurfaceGaugeOps& ops) {
    const SubsidiarySystem& s = *ops.sys;
    SurfaceRelations out;

    const auto faithful_d = s.sys_d().causal_faithful_flags();
    const auto faithful_r = s.sys_r().causal_faithful_flags();
    const auto faithful_q = s.sys_q().causal_faithful_flags();
    const std::vector<char> all_r_data(static_cast<size_t>(ops.cr->data().total_dim()), 1);
    const std::vector<char> all_d_data(static_cast<size_t>(ops.cd->data().total_dim()), 1);

    // Solutions reconstructed from data are trusted on the faithful labels;
    // applying a map on top restricts further to its determined rows.
    {
        Mat lhs = s.K() * ops.cr->u_map();
        Mat rhs = ops.cd->u_map() * ops.k_sigma;
        auto rows = and_flags(determined_rows(s.v1(), s.v0(), s.K(), faithful_r), faithful_d);
        out.constraint_lifts = equal_on(lhs, rhs, rows, all_r_data);
        if (!out.constraint_lifts) out.detail += "constraint lift mismatch; ";
    }
    {
        Mat lhs = s.Ks() * ops.cd->u_map();
        Mat rhs = ops.cq->u_map() * ops.k_sigma_dag;
        auto rows = and_flags(determined_rows(s.v0(), s.v1(), s.Ks(), faithful_d), faithful_q);
        out.condition_lifts = equal_on(lhs, rhs, rows, all_d_data);
        if (!out.condition_lifts) out.detail += "condition lift mismatch; ";
    }

    // Sampling solutions commutes with the maps: the data rows only touch
    // dofs near the reference slice, where marched solutions are exact.
    out.constraint_samples = true;
    {
        const Subspace sols = s.sys_r().ker_interior();
        for (int j = 0; j < sols.dim(); ++j) {
            Vec u = sols.basis().get_col(j);
            if (!(ops.cd->data_of(s.K().apply(u)) == ops.k_sigma.apply(ops.cr->data_of(u))))
                out.constraint_samples = false;
        }
        if (!out.constraint_samples) out.detail += "constraint sampling mismatch; ";
    }
    out.condition_samples = true;
    {
        const Subspace sols = s.sys_d().ker_interior();
        for (int j = 0; j < sols.dim(); ++j) {
            Vec u = sols.basis().get_col(j);
            if (!(ops.cq->data_of(s.Ks().apply(u)) == ops.k_sigma_dag.apply(ops.cd->data_of(u))))
                out.condition_samples = false;
        }
        if (!out.condition_samples) out.detail += "condition sampling mismatch; ";
    }

    // Kernel and image of the data maps against their spacetime images under
    // rho_D G_D.
    const SubsidiaryWindows w = subsidiary_windows(s);
    const Mat GD = s.sys_d().g_causal();
    {
        Subspace lhs = kernel_space(ops.k_sigma_dag);
        Subspace rhs = image_of(ops.cd->rho() * GD, kernel_on_window(s.Ks(), w.gc1, w.all0));
        out.kernel_contained = lhs.contains(rhs);
        out.kernel_defect = lhs.dim() - rhs.dim();
        out.kernel_decomposition = sum(rhs, Subspace::span(image(ops.k_sigma))) == lhs;
        if (!out.kernel_contained) out.detail += "transported kernel leaves the data kernel; ";
        if (!out.kernel_decomposition)
            out.detail += "kernel decomposition mismatch (dims " + std::to_string(lhs.dim()) +
                          " vs " + std::to_string(rhs.dim()) + " + constraint image); ";
    }
    {
        Subspace lhs = Subspace::span(image(ops.k_sigma));
        Subspace rhs = image_of_columns(ops.cd->rho() * (GD * s.T()), w.t_cols);
        out.image_transported = lhs == rhs;
        if (!out.image_transported)
            out.detail += "image transport mismatch (dims " + std::to_string(lhs.dim()) + " vs " +
                          std::to_string(rhs.dim()) + "); ";
    }

    Mat z = ops.k_sigma_dag * ops.k_sigma;
    out.composite_zero = z == Mat(z.rows(), z.cols());
    if (!out.composite_zero) out.detail += "composite is nonzero; ";
    return out;
}

// The phase space carried by the data: sections annihilated by the data-side
// condition map modulo the image of the data-side constraint map, with the
// form i^{-1} (u | G_sigma v) in the data pairing.
inline Quotient surface_quotient(const SurfaceGaugeOps& ops) {
    return Quotient(kernel_space(ops.k_sigma_dag), Subspace::span(image(ops.k_sigma)));
}

inline PhaseSpace surface_phase_space(const SurfaceGaugeOps& ops) {
    Quotient q = surface_quotient(ops);
    const Mat F = Mat::diag(ops.cd->data().weights()) * ops.cd->g_sigma() * Scalar(0, -1);
    InducedForm f = induced_form(F, q);
    return PhaseSpace{std::move(q), std::move(f), "V_SigmaP"};
}

// Passage between the spacetime phase space and the data phase space: the
// data map descends to an isomorphism from the fixed-solutions quotient, the
// composite rho_D G_D descends to an isomorphism from the phase space, and
// the two forms have equal values in corresponding bases.
struct SurfacePassage {
    int dim_phase = -1;
    int dim_data_phase = -1;
    bool rho_well_defined = false;
    bool rho_bijective = false;
    bool composite_well_defined = false;
    bool composite_bijective = false;
    bool forms_agree = false;
    bool zero_class_fixed = false;
    std::string detail;
    bool ok() const {
        return dim_phase == dim_data_phase && rho_well_defined && rho_bijective &&
               composite_well_defined && composite_bijective && forms_agree && zero_class_fixed;
    }
};

inline SurfacePassage surface_passage(const SurfaceGaugeOps& ops) {
    const SubsidiarySystem& s = *ops.sys;
    SurfacePassage out;

    Quotient target = surface_quotient(ops);
    out.dim_data_phase = target.dim();

    const SubsidiaryWindows w = subsidiary_windows(s);
    const Mat GD = s.sys_d().g_causal();

    // Solutions fixed by the condition, modulo the residual ambiguity.
    Subspace fixed_num = intersect(s.sys_d().ker_interior(),
                                   kernel_space(select_rows_flagged(s.Ks(), w.ks_complete)));
    Subspace fixed_den = image_of_columns(GD * s.T(), w.t_cols);
    Quotient fixed(fixed_num, fixed_den);
    InducedMap rho_map = induced_map(ops.cd->rho(), fixed, target);
    out.rho_well_defined = rho_map.well_defined;
    out.rho_bijective = rho_map.injective && rho_map.surjective;
    if (!rho_map.well_defined) out.detail += rho_map.obstruction + "; ";

    PhaseSpace vp = subsidiary_phase_space(s);
    out.dim_phase = vp.dim();
    Mat rg = ops.cd->rho() * GD;
    InducedMap comp = induced_map(rg, vp.space, target);
    out.composite_well_defined = comp.well_defined;
    out.composite_bijective = comp.injective && comp.surjective;
    if (!comp.well_defined) out.detail += comp.obstruction + "; ";

    // Equal form values on corresponding representatives.
    if (comp.well_defined) {
        const Mat F_p = Mat::diag(s.v1().weights()) * GD * Scalar(0, -1);
        const Mat F_s = Mat::diag(ops.cd->data().weights()) * ops.cd->g_sigma() * Scalar(0, -1);
        Mat reps = vp.space.rep_basis();
        out.forms_agree = true;
        for (int a = 0; a < reps.cols(); ++a)
            for (int b = 0; b < reps.cols(); ++b) {
                Vec ua = reps.get_col(a), ub = reps.get_col(b);
                if (!(form_value(F_p, ua, ub) == form_value(F_s, rg.apply(ua), rg.apply(ub))))
                    out.forms_agree = false;
            }
        if (!out.forms_agree) out.detail += "forms disagree on representatives; ";
    }

    // Denominator classes land on the zero class.
    out.zero_class_fixed = true;
    for (int j = 0; j < vp.space.den().dim(); ++j)
        if (!target.is_zero_class(rg.apply(vp.space.den().basis().get_col(j))))
            out.zero_class_fixed = false;
    if (!out.zero_class_fixed) out.detail += "a null class maps to a nonzero class; ";
    return out;
}

} // namespace gpl
