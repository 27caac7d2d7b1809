#include <catch2/catch_amalgamated.hpp>

#include "gpl/models.hpp"
#include "gpl/subsidiary.hpp"

using namespace gpl;

TEST_CASE("electromagnetism fits the subsidiary structure") {
    MaxwellTheory th = build_maxwell(make_circle(5), 9, 2);
    SubsidiaryCheck c = check_subsidiary(th.m1, th.m0, th.P, th.K, th.T, th.D);
    CHECK(c.shapes);
    CHECK(c.k_nonzero);
    CHECK(c.p_self_adjoint);
    CHECK(c.pk_zero);
    CHECK(c.d_matches);
    CHECK(c.constraint_commutes);
    CHECK(c.gauge_commutes);
    CHECK(c.d_hyperbolic);
    CHECK(c.r_hyperbolic);
    CHECK(c.q_hyperbolic);
    CHECK(c.ok());
}

TEST_CASE("corrupted operators are reported item by item") {
    MaxwellTheory th = build_maxwell(make_circle(3), 9, 2);

    SECTION("a sign-flipped gauge motion breaks the commutation relations") {
        Mat bad_T = th.T * Scalar(-1);
        SubsidiaryCheck c = check_subsidiary(th.m1, th.m0, th.P, th.K, bad_T, th.D);
        CHECK(c.pk_zero);
        CHECK_FALSE(c.d_matches);
        CHECK_FALSE(c.constraint_commutes);
        CHECK_FALSE(c.ok());
    }

    SECTION("a vanishing gauge map is rejected") {
        Mat zero_K(th.m1.total_dim(), th.m0.total_dim());
        SubsidiaryCheck c = check_subsidiary(th.m1, th.m0, th.P, zero_K, zero_K);
        CHECK_FALSE(c.k_nonzero);
        try {
            SubsidiarySystem bad(th.m1, th.m0, th.P, zero_K, zero_K);
            FAIL("expected the constructor to reject K = 0");
        } catch (const Error& e) {
            CHECK(e.code() == std::string(err::ConstraintViolation));
        }
    }
}

TEST_CASE("propagator relations of the gauge structure hold exactly") {
    MaxwellTheory th = build_maxwell(make_circle(5), 9, 2);
    SubsidiarySystem s(th.m1, th.m0, th.P, th.K, th.T);
    SubsidiaryRelations r = subsidiary_relations(s);
    CHECK(r.constraint_intertwines_ret);
    CHECK(r.constraint_intertwines_adv);
    CHECK(r.gauge_intertwines_ret);
    CHECK(r.gauge_intertwines_adv);
    CHECK(r.gauge_reduction);
    CHECK(r.solution_decomposition);
    CHECK(r.image_p_characterized);
    CHECK(r.pure_gauge_never_fixed);
}

TEST_CASE("the circle phase space is the holonomy pair") {
    // 1+1-dimensional electromagnetism has no local degrees of freedom: the
    // quotient reduces to the spatial holonomy and its conjugate electric
    // zero mode, dim = 2(#edges - #vertices + #components) = 2.
    MaxwellTheory th = build_maxwell(make_circle(5), 9, 2);
    SubsidiarySystem s(th.m1, th.m0, th.P, th.K, th.T);
    GaugeQuotientReport g = gauge_quotients(s);
    CHECK(g.dim_phase == 2);
    CHECK(g.dim_solutions_mod_gauge == 2);
    CHECK(g.dim_fixed_mod_residual == 2);
    CHECK(g.to_solutions_well_defined);
    CHECK(g.to_solutions_bijective);
    CHECK(g.to_fixed_well_defined);
    CHECK(g.to_fixed_bijective);
    CHECK(g.reduction_matches);
    CHECK(g.reduction_ambiguity_residual);

    PhaseSpace ps = subsidiary_phase_space(s);
    CHECK(ps.dim() == 2);
    CHECK(ps.form.well_defined);
    CHECK(ps.form.hermitian);
    CHECK(ps.form.radical_dim == 0);
    CHECK(ps.label == "V_P");
}

TEST_CASE("the torus phase space carries one local mode per site") {
    // 2+1-dimensional electromagnetism: one local degree of freedom per
    // site plus the harmonic pair, dim = 2(#edges - #vertices + 1) = 20.
    MaxwellTheory th = build_maxwell(make_torus(3, 3), 9, 2);
    SubsidiarySystem s(th.m1, th.m0, th.P, th.K, th.T);
    SubsidiaryRelations r = subsidiary_relations(s);
    CHECK(r.ok());
    GaugeQuotientReport g = gauge_quotients(s);
    CHECK(g.dim_phase == 20);
    CHECK(g.dim_solutions_mod_gauge == 20);
    CHECK(g.dim_fixed_mod_residual == 20);
    CHECK(g.ok());
    PhaseSpace ps = subsidiary_phase_space(s);
    CHECK(ps.form.hermitian);
    CHECK(ps.form.radical_dim == 0);
}

TEST_CASE("gauge reduction fixes sections and kills pure gauge") {
    MaxwellTheory th = build_maxwell(make_circle(3), 9, 2);
    SubsidiarySystem s(th.m1, th.m0, th.P, th.K, th.T);
    const SubsidiaryWindows w = subsidiary_windows(s);

    // A pure gauge image reduces to exactly zero.
    Vec g = zero_vec(th.m0.total_dim());
    for (size_t i = 0; i < w.k_cols.size(); ++i)
        if (w.k_cols[i]) {
            g[i] = Scalar(2, -1);
            break;
        }
    Vec psi = s.K().apply(g);
    CHECK(is_zero(gauge_reduce(s, psi)));

    // A section already satisfying the condition is returned unchanged.
    Quotient phase = subsidiary_quotient(s);
    Vec u = phase.num().basis().get_col(0);
    Vec sol = s.sys_d().g_causal().apply(u);
    CHECK(gauge_reduce(s, sol) == sol);
    CHECK(gauge_reduce(s, sol, true) == sol);
}
