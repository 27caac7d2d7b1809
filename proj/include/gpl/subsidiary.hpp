#pragma once

// Gauge field theories in the subsidiary-condition formulation: equations of
// motion P invariant under linear gauge transformations f -> f + K g, tamed
// through three hyperbolic auxiliaries -- the gauge-fixed operator
// D = P + T K*, the gauge-parameter operator R = K* K and the ghost operator
// Q = K* T -- whose solvers turn the singular problem {P f = 0, K* f = 0}
// into marching problems.

#include <string>
#include <utility>
#include <vector>

#include "gpl/form.hpp"
#include "gpl/green.hpp"
#include "gpl/quotient.hpp"

namespace gpl {

// Item-by-item result of the structural checks on a (P, K, T) triple
// against a gauge-fixed operator D. The relations K*D = QK* and DK = TR are
// formal consequences of PK = 0 when D is derived from the triple, so the
// check is only discriminating when D comes from an independent assembly
// (as the concrete theories provide).
struct SubsidiaryCheck {
    bool shapes = false;
    bool k_nonzero = false;
    bool p_self_adjoint = false;
    bool pk_zero = false;
    bool d_matches = false;           // D = P + T K*
    bool constraint_commutes = false; // K* D = Q K*
    bool gauge_commutes = false;      // D K = T R
    bool d_hyperbolic = false;
    bool r_hyperbolic = false;
    bool q_hyperbolic = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline SubsidiaryCheck check_subsidiary(const CausalModel& v1, const CausalModel& v0,
                                        const Mat& P, const Mat& K, const Mat& T,
                                        const Mat& D) {
    SubsidiaryCheck out;
    auto note = [&out](bool pass, const char* what) {
        if (!pass) out.failures.emplace_back(what);
        return pass;
    };
    out.shapes = note(P.rows() == v1.total_dim() && P.cols() == v1.total_dim() &&
                          D.rows() == v1.total_dim() && D.cols() == v1.total_dim() &&
                          K.rows() == v1.total_dim() && K.cols() == v0.total_dim() &&
                          T.rows() == v1.total_dim() && T.cols() == v0.total_dim(),
                      "operator shapes do not match the models");
    if (!out.shapes) return out;
    const Mat Ks = weighted_adjoint(K, v1.weights(), v0.weights());
    const Mat R = Ks * K;
    const Mat Q = Ks * T;
    out.k_nonzero = note(!(K == Mat(K.rows(), K.cols())), "gauge map K vanishes");
    out.p_self_adjoint = note(v1.adjoint_endo(P) == P, "P is not self-adjoint");
    out.pk_zero = note(P * K == Mat(P.rows(), K.cols()), "P K does not vanish");
    out.d_matches = note(D == P + T * Ks, "gauge-fixed operator differs from P + T K*");
    out.constraint_commutes = note(Ks * D == Q * Ks, "K* D differs from Q K*");
    out.gauge_commutes = note(D * K == T * R, "D K differs from T R");
    auto marchable = [](const CausalModel& m, const Mat& A) {
        try {
            GreenSystem probe(m, A);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    out.d_hyperbolic = note(marchable(v1, D), "the gauge-fixed operator D cannot be marched");
    out.r_hyperbolic = note(marchable(v0, R), "the gauge-parameter operator R cannot be marched");
    out.q_hyperbolic = note(marchable(v0, Q), "the ghost operator Q cannot be marched");
    return out;
}

inline SubsidiaryCheck check_subsidiary(const CausalModel& v1, const CausalModel& v0,
                                        const Mat& P, const Mat& K, const Mat& T) {
    return check_subsidiary(v1, v0, P, K, T,
                            P + T * weighted_adjoint(K, v1.weights(), v0.weights()));
}

// A validated triple (P, K, T) together with the derived operators and their
// solvers. D, R, Q are derived, never supplied.
class SubsidiarySystem {
public:
    SubsidiarySystem(const CausalModel& v1, const CausalModel& v0, Mat P, Mat K, Mat T)
        : P_(std::move(P)), K_(require_nonzero(std::move(K))), T_(std::move(T)),
          Ks_(weighted_adjoint(K_, v1.weights(), v0.weights())),
          Ts_(weighted_adjoint(T_, v1.weights(), v0.weights())),
          sys_d_(v1, P_ + T_ * Ks_),
          sys_r_(v0, Ks_ * K_, true),
          sys_q_(v0, Ks_ * T_) {
        // Marchability of D, R, Q was just proven by construction; the
        // remaining structural requirements are exact matrix identities.
        require(this->v1().adjoint_endo(P_) == P_, err::ConstraintViolation,
                "P is not self-adjoint");
        require(P_ * K_ == Mat(P_.rows(), K_.cols()), err::ConstraintViolation,
                "P K does not vanish");
        require(Ks_ * D() == Q() * Ks_, err::ConstraintViolation, "K* D differs from Q K*");
        require(D() * K_ == T_ * R(), err::ConstraintViolation, "D K differs from T R");
    }

    const CausalModel& v1() const { return sys_d_.model(); }
    const CausalModel& v0() const { return sys_r_.model(); }
    const Mat& P() const { return P_; }
    const Mat& K() const { return K_; }
    const Mat& T() const { return T_; }
    const Mat& Ks() const { return Ks_; }
    const Mat& Ts() const { return Ts_; }
    const Mat& D() const { return sys_d_.op(); }
    const Mat& R() const { return sys_r_.op(); }
    const Mat& Q() const { return sys_q_.op(); }
    const GreenSystem& sys_d() const { return sys_d_; }
    const GreenSystem& sys_r() const { return sys_r_; }
    const GreenSystem& sys_q() const { return sys_q_; }

private:
    // Runs before the Green systems are assembled: with K = 0 the gauge
    // structure degenerates (R = 0 cannot march) and the caller should see
    // the structural complaint, not the downstream solver failure.
    static Mat require_nonzero(Mat K) {
        require(!(K == Mat(K.rows(), K.cols())), err::ConstraintViolation,
                "gauge map K vanishes");
        return K;
    }

    Mat P_, K_, T_, Ks_, Ts_;
    GreenSystem sys_d_, sys_r_, sys_q_;
};

// The windows on which finite-lattice statements are exact. Test sections
// are drawn from the models' pad windows; `confined` marks the columns whose
// image under the named operator stays inside the target window, `complete`
// the rows evaluated with a full stencil.
struct SubsidiaryWindows {
    std::vector<char> gc1, gc0;   // test-section dofs of V1 resp. V0
    std::vector<char> all1, all0; // every dof
    std::vector<char> p_cols;     // test sections with P f again a test section
    std::vector<char> t_cols;     // test sections with T f a test section
    std::vector<char> k_cols;     // test sections with K f a test section
    std::vector<char> ks_cols;    // test sections with K* f a test section
    std::vector<char> p_complete, k_complete, t_complete, ks_complete;
};

inline SubsidiaryWindows subsidiary_windows(const SubsidiarySystem& s) {
    const CausalModel& v1 = s.v1();
    const CausalModel& v0 = s.v0();
    SubsidiaryWindows w;
    w.gc1 = v1.gamma_c_flags();
    w.gc0 = v0.gamma_c_flags();
    w.all1.assign(static_cast<size_t>(v1.total_dim()), 1);
    w.all0.assign(static_cast<size_t>(v0.total_dim()), 1);
    w.p_cols = confined_columns(s.P(), w.gc1, w.gc1);
    w.t_cols = confined_columns(s.T(), w.gc0, w.gc1);
    w.k_cols = confined_columns(s.K(), w.gc0, w.gc1);
    w.ks_cols = confined_columns(s.Ks(), w.gc1, w.gc0);
    w.p_complete = complete_rows_cross(v1, v1, s.P());
    w.k_complete = complete_rows_cross(v1, v0, s.K());
    w.t_complete = complete_rows_cross(v1, v0, s.T());
    w.ks_complete = complete_rows_cross(v0, v1, s.Ks());
    return w;
}

// Reduce a section to the subsidiary condition by a gauge transformation:
// psi - K h with h the retarded (or advanced) solution of R h = K* psi.
// Entries of K* psi at rows with truncated stencils are lattice artifacts
// and are dropped; the cleaned source must be a test section, which holds
// whenever psi is a solution plus a test section.
inline Vec gauge_reduce(const SubsidiarySystem& s, const Vec& psi, bool advanced = false) {
    require(static_cast<int>(psi.size()) == s.v1().total_dim(), err::DimensionMismatch,
            "section length does not match the model");
    Vec w = s.Ks().apply(psi);
    const auto complete = complete_rows_cross(s.v0(), s.v1(), s.Ks());
    for (size_t i = 0; i < w.size(); ++i)
        if (!complete[i]) w[i] = Scalar(0);
    const Vec h = advanced ? s.sys_r().solve_advanced(w) : s.sys_r().solve_retarded(w);
    return psi - s.K().apply(h);
}

// Propagator-level consequences of the structure, verified exactly on the
// windows where the finite lattice agrees with the bi-infinite one.
struct SubsidiaryRelations {
    // K* G+-_D = G+-_Q K* : the constraint of a gauge-fixed solution obeys
    // the ghost equation.
    bool constraint_intertwines_ret = false;
    bool constraint_intertwines_adv = false;
    // K G+-_R = G+-_D T : gauge transformations of solutions are solutions.
    bool gauge_intertwines_ret = false;
    bool gauge_intertwines_adv = false;
    // Every compactly supported solution of P can be gauge-transformed into
    // the subsidiary condition, staying a solution.
    bool gauge_reduction = false;
    // Gauge-fixed solutions = G_D(Ker K*|c) + G_D T(test sections).
    bool solution_decomposition = false;
    // Ran P|c = Ker K*|c ∩ G_D^{-1}(Ran K).
    bool image_p_characterized = false;
    // Ran T|c ∩ Ker K*|c = 0.
    bool pure_gauge_never_fixed = false;
    std::string detail;
    bool ok() const {
        return constraint_intertwines_ret && constraint_intertwines_adv &&
               gauge_intertwines_ret && gauge_intertwines_adv && gauge_reduction &&
               solution_decomposition && image_p_characterized && pure_gauge_never_fixed;
    }
};

inline SubsidiaryRelations subsidiary_relations(const SubsidiarySystem& s) {
    const CausalModel& v1 = s.v1();
    const CausalModel& v0 = s.v0();
    const SubsidiaryWindows w = subsidiary_windows(s);
    SubsidiaryRelations out;

    // (1) constraint intertwining: compare K* G+-_D against G+-_Q K* on rows
    // where the left side is computed from faithful data with a full stencil
    // and the right side's march is faithful.
    {
        const Mat lhs_r = s.Ks() * s.sys_d().g_plus();
        const Mat rhs_r = s.sys_q().g_plus() * s.Ks();
        const auto rows_r =
            and_flags(determined_rows(v0, v1, s.Ks(), s.sys_d().retarded_faithful_flags()),
                      s.sys_q().retarded_faithful_flags());
        out.constraint_intertwines_ret = equal_on(lhs_r, rhs_r, rows_r, w.ks_cols);

        const Mat lhs_a = s.Ks() * s.sys_d().g_minus();
        const Mat rhs_a = s.sys_q().g_minus() * s.Ks();
        const auto rows_a =
            and_flags(determined_rows(v0, v1, s.Ks(), s.sys_d().advanced_faithful_flags()),
                      s.sys_q().advanced_faithful_flags());
        out.constraint_intertwines_adv = equal_on(lhs_a, rhs_a, rows_a, w.ks_cols);
    }

    // (1') gauge intertwining: K G+-_R against G+-_D T.
    {
        const Mat lhs_r = s.K() * s.sys_r().g_plus();
        const Mat rhs_r = s.sys_d().g_plus() * s.T();
        const auto rows_r =
            and_flags(determined_rows(v1, v0, s.K(), s.sys_r().retarded_faithful_flags()),
                      s.sys_d().retarded_faithful_flags());
        out.gauge_intertwines_ret = equal_on(lhs_r, rhs_r, rows_r, w.t_cols);

        const Mat lhs_a = s.K() * s.sys_r().g_minus();
        const Mat rhs_a = s.sys_d().g_minus() * s.T();
        const auto rows_a =
            and_flags(determined_rows(v1, v0, s.K(), s.sys_r().advanced_faithful_flags()),
                      s.sys_d().advanced_faithful_flags());
        out.gauge_intertwines_adv = equal_on(lhs_a, rhs_a, rows_a, w.t_cols);
    }

    // (2) gauge reduction. First for arbitrary test sections psi: the
    // reduction K*(psi - K G+_R K* psi) = K* - R G+_R K* vanishes wherever
    // the retarded march enforces R G+_R = 1. Then for compactly supported
    // solutions of P: the reduced section solves both P and K* on the rows
    // determined by trusted data.
    {
        const Mat H = s.sys_r().g_plus() * s.Ks();
        const Mat Z = s.Ks() - s.R() * H;
        const Mat zero0(v0.total_dim(), v1.total_dim());
        bool pass = equal_on(Z, zero0, s.sys_r().retarded_enforced(), w.ks_cols);

        const auto psi_cols = confined_columns(s.Ks(), w.p_cols, w.gc0);
        const Subspace ker_p_c = kernel_on_window(s.P(), psi_cols, w.all1);
        const auto trust1 =
            determined_rows(v1, v0, s.K(), s.sys_r().retarded_faithful_flags());
        const auto trust0 = determined_rows(v0, v1, s.Ks(), trust1);
        const auto trust_p = determined_rows(v1, v1, s.P(), trust1);
        for (int j = 0; pass && j < ker_p_c.dim(); ++j) {
            const Vec psi = ker_p_c.basis().get_col(j);
            const Vec red = gauge_reduce(s, psi);
            const Vec c0 = s.Ks().apply(red);
            const Vec c1 = s.P().apply(red);
            for (size_t i = 0; i < c0.size(); ++i)
                if (trust0[i] && !c0[i].is_zero()) pass = false;
            for (size_t i = 0; i < c1.size(); ++i)
                if (trust_p[i] && !c1[i].is_zero()) pass = false;
        }
        out.gauge_reduction = pass;
    }

    const Mat GD = s.sys_d().g_causal();

    // (3) interior solutions of {D, K*} coincide with G_D(Ker K*|c) plus the
    // causal images of gauge motions G_D T(test sections).
    {
        const Subspace lhs =
            intersect(s.sys_d().ker_interior(),
                      kernel_space(select_rows_flagged(s.Ks(), w.ks_complete)));
        const Subspace fixed_data =
            image_of(GD, kernel_on_window(s.Ks(), w.gc1, w.all0));
        const Subspace gauge_part = image_of_columns(GD * s.T(), w.t_cols);
        const Subspace rhs = sum(fixed_data, gauge_part);
        out.solution_decomposition = (lhs == rhs);
        if (!out.solution_decomposition)
            out.detail += "solution decomposition: dim lhs " + std::to_string(lhs.dim()) +
                          ", dim rhs " + std::to_string(rhs.dim()) + "; ";
    }

    // (4) Ran P|c = Ker K*|c ∩ G_D^{-1}(Ran K).
    {
        const Subspace ran_p = image_of_columns(s.P(), w.p_cols);
        const Subspace ker_ks_c = kernel_on_window(s.Ks(), w.gc1, w.all0);
        const Subspace ran_k = Subspace::span(image(s.K()));
        const Subspace rhs = intersect(ker_ks_c, preimage(GD, ran_k));
        out.image_p_characterized = (ran_p == rhs);
        if (!out.image_p_characterized)
            out.detail += "image of P: dim lhs " + std::to_string(ran_p.dim()) + ", dim rhs " +
                          std::to_string(rhs.dim()) + "; ";
    }

    // (5) no nonzero T-image of a test section satisfies the condition.
    {
        const Subspace ran_t = image_of_columns(s.T(), w.gc0);
        const Subspace ker_ks =
            kernel_space(select_rows_flagged(s.Ks(), w.ks_complete));
        out.pure_gauge_never_fixed = intersect(ran_t, ker_ks).dim() == 0;
    }

    return out;
}

// A quotient phase space together with the Gram matrix of its sesquilinear
// form on the canonical representatives.
struct PhaseSpace {
    Quotient space;
    InducedForm form;
    std::string label;
    int dim() const { return space.dim(); }
};

// The physical phase space of the subsidiary framework: test sections
// satisfying the condition modulo images of the equations of motion, with
// the form i^{-1} (u | G_D v).
inline Quotient subsidiary_quotient(const SubsidiarySystem& s) {
    const SubsidiaryWindows w = subsidiary_windows(s);
    const Subspace num = kernel_on_window(s.Ks(), w.gc1, w.all0);
    const Subspace den = image_of_columns(s.P(), w.p_cols);
    return Quotient(num, den);
}

inline PhaseSpace subsidiary_phase_space(const SubsidiarySystem& s) {
    Quotient q = subsidiary_quotient(s);
    const Mat F =
        Mat::diag(s.v1().weights()) * s.sys_d().g_causal() * Scalar(0, -1);
    InducedForm f = induced_form(F, q);
    return PhaseSpace{std::move(q), std::move(f), "V_P"};
}

// The two quotient presentations of the space of solutions and the induced
// isomorphisms from the phase space, plus the checks on the gauge-reduction
// map between them.
struct GaugeQuotientReport {
    int dim_phase = -1;
    int dim_solutions_mod_gauge = -1;
    int dim_fixed_mod_residual = -1;
    bool to_solutions_well_defined = false;
    bool to_solutions_bijective = false;
    bool to_fixed_well_defined = false;
    bool to_fixed_bijective = false;
    bool reduction_matches = false;       // gauge_reduce lands in the G_D class
    bool reduction_ambiguity_residual = false; // K(Ker R) lies in Ran G_D T|c
    std::string obstruction;
    bool ok() const {
        return to_solutions_well_defined && to_solutions_bijective && to_fixed_well_defined &&
               to_fixed_bijective && reduction_matches && reduction_ambiguity_residual;
    }
};

inline GaugeQuotientReport gauge_quotients(const SubsidiarySystem& s) {
    const SubsidiaryWindows w = subsidiary_windows(s);
    GaugeQuotientReport out;
    try {
        const Mat GD = s.sys_d().g_causal();
        const Quotient phase = subsidiary_quotient(s);
        out.dim_phase = phase.dim();

        // a) interior solutions of P modulo gauge images.
        const Subspace ker_p = kernel_space(select_rows_flagged(s.P(), w.p_complete));
        const Subspace ran_k = Subspace::span(image(s.K()));
        const Quotient solutions(ker_p, ran_k);
        out.dim_solutions_mod_gauge = solutions.dim();
        const InducedMap a = induced_map(GD, phase, solutions);
        out.to_solutions_well_defined = a.well_defined;
        out.to_solutions_bijective = a.injective && a.surjective;
        if (!a.well_defined) out.obstruction += "to solutions: " + a.obstruction + "; ";

        // b) gauge-fixed interior solutions modulo causal gauge motions.
        const Subspace fixed_solutions =
            intersect(s.sys_d().ker_interior(),
                      kernel_space(select_rows_flagged(s.Ks(), w.ks_complete)));
        const Subspace residual = image_of_columns(GD * s.T(), w.t_cols);
        const Quotient fixed(fixed_solutions, residual);
        out.dim_fixed_mod_residual = fixed.dim();
        const InducedMap b = induced_map(GD, phase, fixed);
        out.to_fixed_well_defined = b.well_defined;
        out.to_fixed_bijective = b.injective && b.surjective;
        if (!b.well_defined) out.obstruction += "to fixed solutions: " + b.obstruction + "; ";

        // The gauge-reduction map sends the class of G_D u (+ any gauge
        // image) to the class of G_D u.
        if (b.well_defined) {
            bool match = true;
            Vec g = zero_vec(s.v0().total_dim());
            int picked = 0;
            for (size_t i = 0; i < w.k_cols.size() && picked < 3; ++i)
                if (w.k_cols[i]) {
                    g[i] = Scalar(1, 1);
                    ++picked;
                }
            const Vec kg = s.K().apply(g);
            for (int j = 0; match && j < phase.dim(); ++j) {
                Vec q = zero_vec(phase.dim());
                q[static_cast<size_t>(j)] = Scalar(1);
                const Vec gd_u = GD.apply(phase.lift(q));
                const Vec psi = gd_u + kg;
                if (fixed.reduce(gauge_reduce(s, psi)) != fixed.reduce(gd_u)) match = false;
                if (fixed.reduce(gauge_reduce(s, psi, true)) != fixed.reduce(gd_u))
                    match = false;
            }
            out.reduction_matches = match;

            // Two admissible gauge parameters differ by an interior solution
            // of R; their K-images must lie in the residual denominator.
            bool amb = true;
            const Subspace ker_r = s.sys_r().ker_interior();
            for (int j = 0; amb && j < ker_r.dim(); ++j)
                if (!residual.contains(s.K().apply(ker_r.basis().get_col(j)))) amb = false;
            out.reduction_ambiguity_residual = amb;
        }
    } catch (const Error& e) {
        out.obstruction += e.what();
    }
    return out;
}

} // namespace gpl
