#include <catch2/catch_amalgamated.hpp>

#include "gpl/brst.hpp"
#include "gpl/models.hpp"

using namespace gpl;

namespace {

// One enlarged electromagnetism system shared by the whole file: the
// construction marches a 345-dimensional operator and the causal inverses
// are cached on it, so the fixture is built once.
struct EnlargedMaxwell {
    MaxwellTheory th;
    SubsidiarySystem sys;
    SubsidiaryBRST sb;
    CauchyMap md, mr;
    GradedCauchyMap gm;
    CauchyStructure cl;
    SurfaceBRST surf;

    EnlargedMaxwell()
        : th(build_maxwell(make_circle(5), 14, 2)),
          sys(th.m1, th.m0, th.P, th.K, th.T),
          sb(brst_from_subsidiary(sys)),
          md(maxwell_rho(th, 5)),
          mr(scalar_rho(th.m0, 5)),
          gm(brst_rho(sb, md, mr)),
          cl(sb.brst.system(), gm.data, gm.rho),
          surf(surface_brst(sb.brst, cl)) {}
};

EnlargedMaxwell& fixture() {
    static EnlargedMaxwell f;
    return f;
}

} // namespace

TEST_CASE("enlarging electromagnetism yields a marchable graded system") {
    EnlargedMaxwell& f = fixture();
    const BRSTSystem& b = f.sb.brst;

    // Field + multiplier at ghost zero, one ghost, one antighost.
    const int n1 = f.th.m1.total_dim();
    const int n0 = f.th.m0.total_dim();
    CHECK(b.space().total_dim() == n1 + 3 * n0);
    CHECK(b.grading().dims() ==
          std::map<int, int>{{-1, n0}, {0, n1 + n0}, {1, n0}});
    CHECK(f.sb.blocks.cbar == n1 + 2 * n0);

    const int N = b.space().total_dim();
    CHECK(b.gamma() * b.gamma() == Mat(N, N));
    CHECK(b.gamma_star() * b.op() == b.op() * b.gamma());
    CHECK(b.space().adjoint_endo(b.op()) == b.op());

    GreenSplitReport split = brst_green_split(f.sb);
    CHECK(split.unit_retarded);
    CHECK(split.unit_advanced);
    CHECK(split.split_retarded);
    CHECK(split.split_advanced);
    CHECK(split.ok());

    IntertwineReport tw = brst_intertwine(b);
    CHECK(tw.retarded);
    CHECK(tw.advanced);
}

TEST_CASE("phase space of the enlarged system presents the gauge classes") {
    EnlargedMaxwell& f = fixture();

    PhaseSpace v = phase_space_brst(f.sb.brst);
    CHECK(v.label == "V");
    CHECK(v.dim() == 2);
    CHECK(v.form.well_defined);
    CHECK(v.form.hermitian);
    CHECK(v.form.radical_dim == 0);

    // Sector split: gauge classes at ghost zero, multiplier classes at ghost
    // one, nothing at ghost minus one.
    CHECK(brst_sector_dims(f.sb.brst) == std::map<int, int>{{-1, 0}, {0, 2}, {1, 1}});

    // The ghost-one value independently: compactly supported scalar sections
    // modulo the image of the constraint map.
    const SubsidiaryWindows w = subsidiary_windows(f.sys);
    Quotient multiplier_classes(f.th.m0.window_subspace(2, 11),
                                image_of_columns(f.sys.Ks(), w.ks_cols));
    CHECK(multiplier_classes.dim() == 1);

    // The field-slot embedding identifies the two phase spaces, forms
    // included.
    BridgeReport bridge = brst_bridge(f.sb);
    CHECK(bridge.dim_subsidiary == 2);
    CHECK(bridge.dim_brst == 2);
    CHECK(bridge.embed_well_defined);
    CHECK(bridge.embed_bijective);
    CHECK(bridge.forms_agree);
    CHECK(bridge.ok());
}

TEST_CASE("the gauge-fixing parameter does not change the cohomology") {
    EnlargedMaxwell& f = fixture();
    const auto reference = brst_sector_dims(f.sb.brst);

    for (Rational alpha : {Rational(0), Rational(2)}) {
        SubsidiaryBRST other = brst_from_subsidiary(f.sys, alpha);
        CHECK(brst_sector_dims(other.brst) == reference);
    }

    // The correction term of the block splitting is exercised away from the
    // distinguished parameter value.
    SubsidiaryBRST two = brst_from_subsidiary(f.sys, Rational(2));
    CHECK(brst_green_split(two).ok());
}

TEST_CASE("the causal inverse classifies closed solutions") {
    EnlargedMaxwell& f = fixture();

    SolutionClassReport rep = induced1(f.sb.brst);
    CHECK(rep.dim_phase == 2);
    CHECK(rep.dim_target == 2);
    CHECK(rep.well_defined);
    CHECK(rep.bijective);
    CHECK(rep.witnesses == 11);
    CHECK(rep.witnesses_passed == 11);
    CHECK(rep.ok());

    // Perturbing a closed solution by the causal image of an exact section
    // does not change its class: antighost-slot sources perturb at ghost
    // zero.
    const BRSTSystem& b = f.sb.brst;
    const GreenSystem& ls = b.system();
    const int N = b.space().total_dim();
    Subspace solutions = Subspace::zero(N);
    Quotient target = detail::brst_solution_quotient(b, &solutions);
    Vec psi = intersect(solutions, b.grading().sector(0)).basis().get_col(0);

    int cbar_comp = -1;
    for (size_t ci = 0; ci < b.space().components().size(); ++ci)
        if (b.space().components()[ci].ghost == -1) cbar_comp = static_cast<int>(ci);
    REQUIRE(cbar_comp >= 0);
    Vec fsrc = zero_vec(N);
    fsrc[static_cast<size_t>(b.space().dof(cbar_comp, 7, 0, 0))] = Scalar(1);
    Vec gsf = b.gamma_star().apply(fsrc);
    Vec delta = ls.solve_retarded(gsf) - ls.solve_advanced(gsf);
    Vec perturbed = psi;
    for (int i = 0; i < N; ++i)
        perturbed[static_cast<size_t>(i)] =
            perturbed[static_cast<size_t>(i)] + delta[static_cast<size_t>(i)];
    CHECK(target.reduce(perturbed) == target.reduce(psi));
}

TEST_CASE("a system without gauge directions classifies its own solutions") {
    // Trivially graded: one sector at ghost zero, vanishing symmetry. The
    // phase space degenerates to compact sections modulo sources of
    // solutions, and the causal inverse matches it with the solution space.
    ScalarTheory th = build_scalar(make_circle(5), 12, 2, Rational(0));
    const int n = th.m0.total_dim();
    BRSTSystem b(th.m0, th.D, Mat(n, n));
    CHECK(b.grading().indices() == std::vector<int>{0});

    PhaseSpace v = phase_space_brst(b);
    CHECK(v.dim() == 10);
    CHECK(v.form.hermitian);
    CHECK(v.form.radical_dim == 0);

    SolutionClassReport rep = induced1(b);
    CHECK(rep.dim_phase == 10);
    CHECK(rep.dim_target == 10);
    CHECK(rep.witnesses == 10);
    CHECK(rep.witnesses_passed == 10);
    CHECK(rep.ok());
}

TEST_CASE("the symmetry transports to data with the constraint maps as blocks") {
    EnlargedMaxwell& f = fixture();

    // The data-side symmetry has exactly two nonzero blocks: the constraint
    // map from ghost data into field data and its adjoint counterpart from
    // field data into antighost data.
    CauchyStructure cd(f.sys.sys_d(), f.md.data, f.md.rho);
    CauchyStructure cr(f.sys.sys_r(), f.mr.data, f.mr.rho);
    CauchyStructure cq(f.sys.sys_q(), f.mr.data, f.mr.rho);
    SurfaceGaugeOps ops = surface_gauge_ops(f.sys, cd, cr, cq);

    const int nd = f.gm.field_dim;
    const int nq = f.gm.ghost_dim;
    Mat expect(f.gm.data.total_dim(), f.gm.data.total_dim());
    for (int j = 0; j < ops.k_sigma.cols(); ++j)
        for (const auto& [r, val] : ops.k_sigma.col(j))
            expect.set(f.gm.field_offset + r, f.gm.ghost_offset + j, val);
    for (int j = 0; j < ops.k_sigma_dag.cols(); ++j)
        for (const auto& [r, val] : ops.k_sigma_dag.col(j))
            expect.set(f.gm.antighost_offset + r, f.gm.field_offset + j, val);
    CHECK(f.surf.gamma_sigma == expect);
    CHECK(f.gm.data.total_dim() == nd + 2 * nq);

    SurfaceBRSTReport rel = surface_brst_relations(f.surf);
    CHECK(rel.intertwines_solutions);
    CHECK(rel.intertwines_data);
    CHECK(rel.kernel_matches);
    CHECK(rel.range_matches);
    CHECK(rel.nilpotent);
    CHECK(rel.self_adjoint);
    CHECK(rel.ok());
}

TEST_CASE("data and spacetime phase spaces of the enlarged system coincide") {
    EnlargedMaxwell& f = fixture();

    PhaseSpace vs = surface_brst_phase_space(f.surf);
    CHECK(vs.label == "V_Sigma");
    CHECK(vs.dim() == 2);
    CHECK(vs.form.hermitian);
    CHECK(vs.form.radical_dim == 0);

    CHECK(surface_brst_sector_dims(f.surf) ==
          std::map<int, int>{{-1, 1}, {0, 2}, {1, 1}});

    SurfacePassage pass = surface_brst_passage(f.surf);
    CHECK(pass.dim_phase == 2);
    CHECK(pass.dim_data_phase == 2);
    CHECK(pass.rho_well_defined);
    CHECK(pass.rho_bijective);
    CHECK(pass.composite_well_defined);
    CHECK(pass.composite_bijective);
    CHECK(pass.forms_agree);
    CHECK(pass.zero_class_fixed);
    CHECK(pass.ok());
}

TEST_CASE("ghost sign bookkeeping and rejected inputs") {
    EnlargedMaxwell& f = fixture();
    const BRSTSystem& b = f.sb.brst;

    GhostSign sign(b.grading());
    CHECK(sign.sign(f.sb.blocks.a, f.sb.blocks.c) == 1);        // 0 * 1
    CHECK(sign.sign(f.sb.blocks.c, f.sb.blocks.c) == -1);       // 1 * 1
    CHECK(sign.sign(f.sb.blocks.c, f.sb.blocks.cbar) == -1);    // 1 * -1
    CHECK(sign.sign(f.sb.blocks.cbar, f.sb.blocks.cbar) == -1); // -1 * -1
    CHECK(sign.conjugate(sign.conjugate(b.op())) == b.op());

    // The symmetry must lower the ghost number...
    const int N = b.space().total_dim();
    CHECK_THROWS_AS(BRSTSystem(b.space(), b.op(), Mat::identity(N)), Error);

    // ...and be nilpotent: a lowering map pairing the constraint with its
    // adjoint fails the square-zero requirement.
    Mat bad(N, N);
    for (int j = 0; j < f.sb.blocks.n0; ++j)
        for (const auto& [r, val] : f.sys.K().col(j)) bad.set(r, f.sb.blocks.c + j, val);
    for (int j = 0; j < f.sb.blocks.n1; ++j)
        for (const auto& [r, val] : f.sys.Ks().col(j))
            bad.set(f.sb.blocks.cbar + r, f.sb.blocks.a + j, val);
    CHECK_THROWS_AS(BRSTSystem(b.space(), b.op(), bad), Error);

    // The enlargement needs the taming map to equal the gauge map.
    MaxwellTheory small = build_maxwell(make_circle(5), 9, 2);
    SubsidiarySystem skew(small.m1, small.m0, small.P, small.K, small.T * Scalar(2));
    CHECK_THROWS_AS(brst_from_subsidiary(skew), Error);

    // The data structure handed to the transport must invert the graded
    // operator itself, not one of the component operators.
    CauchyStructure cd(f.sys.sys_d(), f.md.data, f.md.rho);
    CHECK_THROWS_AS(surface_brst(f.sb.brst, cd), Error);
}
