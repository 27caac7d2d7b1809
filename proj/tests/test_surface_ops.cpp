#include <catch2/catch_amalgamated.hpp>

#include "gpl/models.hpp"
#include "gpl/surface_ops.hpp"

using namespace gpl;

namespace {

struct MaxwellOnData {
    MaxwellTheory th;
    SubsidiarySystem sys;
    CauchyMap md, mr;
    CauchyStructure cd, cr, cq;

    MaxwellOnData(const CellComplex& sigma, int T, int pad, int t0)
        : th(build_maxwell(sigma, T, pad)),
          sys(th.m1, th.m0, th.P, th.K, th.T),
          md(maxwell_rho(th, t0)),
          mr(scalar_rho(th.m0, t0)),
          cd(sys.sys_d(), md.data, md.rho),
          cr(sys.sys_r(), mr.data, mr.rho),
          cq(sys.sys_q(), mr.data, mr.rho) {}

    SurfaceGaugeOps ops() { return surface_gauge_ops(sys, cd, cr, cq); }
};

} // namespace

TEST_CASE("data-side constraint maps of electromagnetism take their closed forms") {
    MaxwellOnData m(make_circle(5), 9, 2, 4);
    SurfaceGaugeOps ops = m.ops();

    const CellComplex& sigma = m.th.m1.sigma();
    const Mat d_sigma = sigma.d(0);
    const Mat delta_sigma = weighted_adjoint(d_sigma, sigma.weights(1), sigma.weights(0));
    const int n0 = sigma.count(0);
    const int n1 = sigma.count(1);

    // Rows (n, a, dl, e) from columns (val, mom): the normal component reads
    // i times the momentum and the pulled-back part differentiates the value.
    Mat expect_k(m.md.data.total_dim(), m.mr.data.total_dim());
    add_surface_map(expect_k, m.md.data, 0, m.mr.data, 1, Mat::identity(n0), Scalar(0, 1));
    add_surface_map(expect_k, m.md.data, 1, m.mr.data, 0, d_sigma);
    CHECK(ops.k_sigma == expect_k);

    // Rows (val, mom) from columns (n, a, dl, e): i times the divergence part
    // and the spatial codifferential of the electric part.
    Mat expect_kd(m.mr.data.total_dim(), m.md.data.total_dim());
    add_surface_map(expect_kd, m.mr.data, 0, m.md.data, 2, Mat::identity(n0), Scalar(0, 1));
    add_surface_map(expect_kd, m.mr.data, 1, m.md.data, 3, delta_sigma);
    CHECK(ops.k_sigma_dag == expect_kd);

    Mat z = ops.k_sigma_dag * ops.k_sigma;
    CHECK(z == Mat(2 * n0, 2 * n0));
    CHECK(ops.k_sigma.rows() == 2 * n0 + 2 * n1);
}

TEST_CASE("transport between data and spacetime pictures is exact") {
    MaxwellOnData m(make_circle(5), 9, 2, 4);
    SurfaceGaugeOps ops = m.ops();
    SurfaceRelations rel = surface_relations(ops);

    CHECK(rel.constraint_lifts);
    CHECK(rel.condition_lifts);
    CHECK(rel.constraint_samples);
    CHECK(rel.condition_samples);
    CHECK(rel.kernel_contained);
    CHECK(rel.kernel_decomposition);
    CHECK(rel.image_transported);
    CHECK(rel.composite_zero);
    CHECK(rel.ok());
    CHECK(rel.detail.empty());

    // One conserved charge on a connected circle: the transported kernel is
    // the zero-charge slice and the charge direction arrives from the
    // constraint image.
    CHECK(rel.kernel_defect == 1);
}

TEST_CASE("the data phase space matches the spacetime phase space") {
    MaxwellOnData m(make_circle(5), 9, 2, 4);
    SurfaceGaugeOps ops = m.ops();

    PhaseSpace ps = surface_phase_space(ops);
    CHECK(ps.label == "V_SigmaP");
    CHECK(ps.dim() == 2);
    CHECK(ps.form.well_defined);
    CHECK(ps.form.hermitian);
    CHECK(ps.form.radical_dim == 0);

    SurfacePassage pass = surface_passage(ops);
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

TEST_CASE("the torus data phase space keeps the local modes") {
    MaxwellOnData m(make_torus(3, 3), 9, 2, 4);
    SurfaceGaugeOps ops = m.ops();

    SurfaceRelations rel = surface_relations(ops);
    CHECK(rel.ok());
    CHECK(rel.kernel_defect == 1);

    SurfacePassage pass = surface_passage(ops);
    CHECK(pass.dim_phase == 20);
    CHECK(pass.dim_data_phase == 20);
    CHECK(pass.ok());
}

TEST_CASE("moving the reference slice does not change the data phase space") {
    MaxwellOnData a(make_circle(5), 9, 2, 4);
    MaxwellOnData b(make_circle(5), 9, 2, 5);
    SurfacePassage pa = surface_passage(a.ops());
    SurfacePassage pb = surface_passage(b.ops());
    CHECK(pa.ok());
    CHECK(pb.ok());
    CHECK(pa.dim_data_phase == pb.dim_data_phase);
}

TEST_CASE("data structures for the wrong operator are rejected") {
    MaxwellOnData m(make_circle(5), 9, 2, 4);
    // The gauge-sector structure offered as the evolution structure.
    CHECK_THROWS_AS(surface_gauge_ops(m.sys, m.cr, m.cr, m.cq), Error);
    try {
        surface_gauge_ops(m.sys, m.cr, m.cr, m.cq);
    } catch (const Error& e) {
        CHECK(e.code() == std::string(err::DimensionMismatch));
    }
}
