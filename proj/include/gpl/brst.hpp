#pragma once

// Gauge theories in the BRST formulation: the field content is enlarged by a
// multiplier, a ghost and an antighost so that the full equation of motion L
// becomes marchable, while the gauge structure survives as a nilpotent odd
// symmetry gamma with gamma* L = L gamma. The physical content is recovered
// as the ghost-number-zero part of Ker gamma* modulo gamma*-exact and
// on-shell-trivial sections, and the whole package can be transported to
// Cauchy data through the solution maps.
//
// The construction consuming a subsidiary-condition triple (P, K, T) with
// K = T produces such a system for any value of the gauge-fixing parameter
// alpha, together with a block formula for its retarded and advanced
// inverses in terms of the inverses of D and Q.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpl/cauchy.hpp"
#include "gpl/form.hpp"
#include "gpl/green.hpp"
#include "gpl/quotient.hpp"
#include "gpl/subsidiary.hpp"
#include "gpl/surface_ops.hpp"

namespace gpl {

// Ghost-number bookkeeping for a space whose coordinates carry integer ghost
// degrees. Works for spacetime sections (degrees attached to the model's
// components) and for Cauchy data alike.
class GradedSpace {
public:
    explicit GradedSpace(const CausalModel& m) : GradedSpace(ghosts_of(m)) {}
    explicit GradedSpace(const SurfaceSpace& d) : GradedSpace(ghosts_of(d)) {}

    int total_dim() const { return static_cast<int>(ghost_of_.size()); }
    int ghost_of(int index) const { return ghost_of_[static_cast<size_t>(index)]; }

    // Sorted list of the ghost numbers that actually occur.
    const std::vector<int>& indices() const { return indices_; }

    int dim(int ghost) const {
        int n = 0;
        for (int g : ghost_of_)
            if (g == ghost) ++n;
        return n;
    }

    std::map<int, int> dims() const {
        std::map<int, int> out;
        for (int g : ghost_of_) ++out[g];
        return out;
    }

    std::vector<char> flags(int ghost) const {
        std::vector<char> f(ghost_of_.size(), 0);
        for (size_t i = 0; i < ghost_of_.size(); ++i)
            if (ghost_of_[i] == ghost) f[i] = 1;
        return f;
    }

    // Coordinate subspace of one ghost sector.
    Subspace sector(int ghost) const {
        const int n = total_dim();
        std::vector<Vec> cols;
        for (int i = 0; i < n; ++i)
            if (ghost_of_[static_cast<size_t>(i)] == ghost) {
                Vec e = zero_vec(n);
                e[static_cast<size_t>(i)] = Scalar(1);
                cols.push_back(std::move(e));
            }
        return Subspace::span(Mat::from_columns(n, cols));
    }

private:
    explicit GradedSpace(std::vector<int> ghost_of) : ghost_of_(std::move(ghost_of)) {
        for (int g : ghost_of_)
            if (indices_.empty() || indices_.back() != g) {
                if (std::find(indices_.begin(), indices_.end(), g) == indices_.end())
                    indices_.push_back(g);
            }
        std::sort(indices_.begin(), indices_.end());
    }

    static std::vector<int> ghosts_of(const CausalModel& m) {
        std::vector<int> g(static_cast<size_t>(m.total_dim()), 0);
        for (int i = 0; i < m.total_dim(); ++i)
            g[static_cast<size_t>(i)] =
                m.components()[static_cast<size_t>(m.locate(i).comp)].ghost;
        return g;
    }
    static std::vector<int> ghosts_of(const SurfaceSpace& d) {
        std::vector<int> g(static_cast<size_t>(d.total_dim()), 0);
        for (int i = 0; i < d.total_dim(); ++i) g[static_cast<size_t>(i)] = d.ghost_of(i);
        return g;
    }

    std::vector<int> ghost_of_;
    std::vector<int> indices_;
};

// The pairing sign operator of a graded space: conjugating a matrix scales
// the (r, c) entry by (-1)^{g_r g_c}. Conjugating twice gives the original
// matrix back.
class GhostSign {
public:
    explicit GhostSign(const GradedSpace& g) {
        ghost_of_.reserve(static_cast<size_t>(g.total_dim()));
        for (int i = 0; i < g.total_dim(); ++i) ghost_of_.push_back(g.ghost_of(i));
    }

    int sign(int r, int c) const {
        const int p = ghost_of_[static_cast<size_t>(r)] * ghost_of_[static_cast<size_t>(c)];
        return (p % 2 == 0) ? 1 : -1;
    }

    Mat conjugate(const Mat& m) const {
        require(m.rows() == static_cast<int>(ghost_of_.size()) &&
                    m.cols() == static_cast<int>(ghost_of_.size()),
                err::DimensionMismatch, "ghost sign conjugation needs an endomorphism");
        Mat out(m.rows(), m.cols());
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [r, v] : m.col(j))
                out.set(r, j, sign(r, j) > 0 ? v : -v);
        return out;
    }

private:
    std::vector<int> ghost_of_;
};

// A marchable self-adjoint operator L on a ghost-graded model together with
// a nilpotent symmetry gamma. The constructor verifies the structural
// requirements exactly:
//   - gamma lowers the ghost number by one and squares to zero,
//   - L maps the sector of ghost number i into the sector of ghost number -i,
//   - gamma* L = L gamma as matrices,
//   - every compactly supported gamma-closed section of the lowest ghost
//     sector is gamma-exact (so the lowest compact cohomology vanishes).
// A trivially graded system (single sector, gamma = 0) is allowed; all
// conditions degenerate gracefully.
class BRSTSystem {
public:
    BRSTSystem(CausalModel graded, Mat op, Mat gamma)
        : sys_(std::move(graded), std::move(op), /*self_adjoint=*/true),
          gamma_(std::move(gamma)), gamma_star_(checked_star(sys_, gamma_)),
          grading_(sys_.model()) {
        const CausalModel& m = sys_.model();
        const int n = m.total_dim();
        for (int j = 0; j < n; ++j) {
            const int gj = grading_.ghost_of(j);
            for (const auto& [r, v] : gamma_.col(j))
                require(grading_.ghost_of(r) == gj - 1, err::ConstraintViolation,
                        "the symmetry must lower the ghost number by one");
            for (const auto& [r, v] : sys_.op().col(j))
                require(grading_.ghost_of(r) == -gj, err::ConstraintViolation,
                        "the equation of motion must flip the ghost number");
        }
        require(gamma_ * gamma_ == Mat(n, n), err::ConstraintViolation,
                "the symmetry is not nilpotent");
        require(gamma_star_ * sys_.op() == sys_.op() * gamma_, err::IntertwiningViolated,
                "gamma* L differs from L gamma");
        check_lowest_cohomology();
    }

    const CausalModel& space() const { return sys_.model(); }
    const GreenSystem& system() const { return sys_; }
    const Mat& op() const { return sys_.op(); }
    const Mat& gamma() const { return gamma_; }
    const Mat& gamma_star() const { return gamma_star_; }
    const GradedSpace& grading() const { return grading_; }

private:
    static Mat checked_star(const GreenSystem& sys, const Mat& g) {
        require(g.rows() == sys.model().total_dim() && g.cols() == g.rows(),
                err::DimensionMismatch, "the symmetry must be an endomorphism of sections");
        return sys.model().adjoint_endo(g);
    }

    // Compactly supported gamma-closed sections of the lowest sector are all
    // hit by gamma: the image of the window columns whose image stays inside
    // the window must cover the whole lowest window sector. (Sections of the
    // lowest sector are closed automatically, since the sector below is
    // empty.)
    void check_lowest_cohomology() const {
        const int lowest = grading_.indices().front();
        if (lowest >= 0) return; // single-sector or non-negative grading: nothing to check
        const CausalModel& m = sys_.model();
        const auto& gc = m.gamma_c_flags();
        const auto conf = confined_columns(gamma_, gc, gc);
        const Subspace im = image_of_columns(gamma_, conf);
        const auto target = and_flags(gc, grading_.flags(lowest));
        const int n = m.total_dim();
        for (int i = 0; i < n; ++i)
            if (target[static_cast<size_t>(i)]) {
                Vec e = zero_vec(n);
                e[static_cast<size_t>(i)] = Scalar(1);
                require(im.contains(e), err::ConstraintViolation,
                        "a compactly supported section of the lowest ghost sector "
                        "is not in the image of the symmetry");
            }
    }

    GreenSystem sys_;
    Mat gamma_;
    Mat gamma_star_;
    GradedSpace grading_;
};

// Block layout of a system produced by brst_from_subsidiary: offsets of the
// field, multiplier, ghost and antighost slots inside the graded model.
struct BRSTBlocks {
    int n1 = 0;    // field sections
    int n0 = 0;    // multiplier / ghost / antighost sections
    int a = 0;     // field offset
    int b = 0;     // multiplier offset
    int c = 0;     // ghost offset
    int cbar = 0;  // antighost offset
};

struct SubsidiaryBRST {
    BRSTSystem brst;
    BRSTBlocks blocks;
    Rational alpha;
    const SubsidiarySystem* src = nullptr;
};

// Enlarges a subsidiary-condition system with K = T into a BRST system with
// gauge-fixing parameter alpha:
//
//     L = [ P    K    0   0  ]        gamma = [ 0  0  K  0 ]
//         [ K*  -a1   0   0  ]                [ 0  0  0  0 ]
//         [ 0    0    0   Q  ]                [ 0  0  0  0 ]
//         [ 0    0    Q   0  ]                [ 0  1  0  0 ]
//
// acting on field + multiplier + ghost + antighost sections with ghost
// numbers (0, 0, +1, -1). The BRSTSystem constructor then proves that L
// marches and that the structural identities hold.
inline SubsidiaryBRST brst_from_subsidiary(const SubsidiarySystem& s,
                                           const Rational& alpha = Rational(1)) {
    require(s.K() == s.T(), err::ConstraintViolation,
            "the enlargement is only available when the taming map equals the gauge map");
    const CausalModel& v1 = s.v1();
    const CausalModel& v0 = s.v0();
    std::vector<FieldComponent> comps;
    auto append = [&comps](const CausalModel& m, const std::string& prefix, int ghost) {
        for (const auto& c : m.components()) {
            FieldComponent cc = c;
            cc.name = prefix + c.name;
            cc.ghost = ghost;
            comps.push_back(std::move(cc));
        }
    };
    append(v1, "a_", 0);
    append(v0, "b_", 0);
    append(v0, "c_", 1);
    append(v0, "cb_", -1);
    CausalModel graded(v1.sigma(), v1.T(), v1.pad(), comps, v1.tau());

    BRSTBlocks bl;
    bl.n1 = v1.total_dim();
    bl.n0 = v0.total_dim();
    bl.a = 0;
    bl.b = bl.n1;
    bl.c = bl.n1 + bl.n0;
    bl.cbar = bl.n1 + 2 * bl.n0;

    const int N = graded.total_dim();
    auto add_block = [](Mat& acc, int ro, int co, const Mat& M, Scalar scale = Scalar(1)) {
        for (int j = 0; j < M.cols(); ++j)
            for (const auto& [r, v] : M.col(j)) acc.add_at(ro + r, co + j, scale * v);
    };
    Mat L(N, N), G(N, N);
    add_block(L, bl.a, bl.a, s.P());
    add_block(L, bl.a, bl.b, s.K());
    add_block(L, bl.b, bl.a, s.Ks());
    add_block(L, bl.b, bl.b, Mat::identity(bl.n0), Scalar(-alpha));
    add_block(L, bl.c, bl.cbar, s.Q());
    add_block(L, bl.cbar, bl.c, s.Q());
    add_block(G, bl.a, bl.c, s.K());
    add_block(G, bl.cbar, bl.b, Mat::identity(bl.n0));

    return SubsidiaryBRST{BRSTSystem(std::move(graded), std::move(L), std::move(G)), bl, alpha,
                          &s};
}

// Item-by-item comparison of the block formula for the retarded and advanced
// inverses of L against the marched inverses:
//
//   G(L) = [ G(D) + (a-1) G(D) K K* G(D)   K G(Q)   0      0    ]
//          [ K* G(D)                       0        0      0    ]
//          [ 0                             0        0      G(Q) ]
//          [ 0                             0        G(Q)   0    ]
//
// together with its key ingredient K* G(D) K = 1. All comparisons are exact
// on the windows where both sides are determined.
struct GreenSplitReport {
    bool unit_retarded = false;    // K* G+(D) K = 1
    bool unit_advanced = false;    // K* G-(D) K = 1
    bool split_retarded = false;   // block formula = marched retarded inverse
    bool split_advanced = false;   // block formula = marched advanced inverse
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline GreenSplitReport brst_green_split(const SubsidiaryBRST& sb) {
    const SubsidiarySystem& s = *sb.src;
    const BRSTBlocks& bl = sb.blocks;
    const GreenSystem& ls = sb.brst.system();
    const CausalModel& graded = sb.brst.space();
    GreenSplitReport out;
    auto note = [&out](bool pass, const char* what) {
        if (!pass) out.failures.emplace_back(what);
        return pass;
    };

    const SubsidiaryWindows w = subsidiary_windows(s);
    const Mat I0 = Mat::identity(bl.n0);
    const auto unit_cols = confined_columns(s.K(), w.gc0, w.gc1);
    {
        const Mat lhs = s.Ks() * (s.sys_d().g_plus() * s.K());
        const auto rows =
            determined_rows(s.v0(), s.v1(), s.Ks(), s.sys_d().retarded_faithful_flags());
        out.unit_retarded =
            note(equal_on(lhs, I0, rows, unit_cols), "K* G+(D) K is not the identity");
    }
    {
        const Mat lhs = s.Ks() * (s.sys_d().g_minus() * s.K());
        const auto rows =
            determined_rows(s.v0(), s.v1(), s.Ks(), s.sys_d().advanced_faithful_flags());
        out.unit_advanced =
            note(equal_on(lhs, I0, rows, unit_cols), "K* G-(D) K is not the identity");
    }

    const int N = graded.total_dim();
    auto formula = [&](const Mat& gD, const Mat& gQ) {
        Mat F(N, N);
        auto put = [&F](int ro, int co, const Mat& M) {
            for (int j = 0; j < M.cols(); ++j)
                for (const auto& [r, v] : M.col(j)) F.add_at(ro + r, co + j, v);
        };
        Mat aa = gD;
        if (!(sb.alpha == Rational(1)))
            aa = aa + gD * (s.K() * (s.Ks() * gD)) * Scalar(sb.alpha - Rational(1));
        put(bl.a, bl.a, aa);
        put(bl.a, bl.b, s.K() * gQ);
        put(bl.b, bl.a, s.Ks() * gD);
        put(bl.c, bl.cbar, gQ);
        put(bl.cbar, bl.c, gQ);
        return F;
    };
    const auto cols = graded.gamma_c_flags();
    const int T = graded.T(), pad = graded.pad();
    out.split_retarded =
        note(equal_on(formula(s.sys_d().g_plus(), s.sys_q().g_plus()), ls.g_plus(),
                      ls.label_range_flags(0, T - 1 - pad), cols),
             "the block formula disagrees with the marched retarded inverse");
    out.split_advanced =
        note(equal_on(formula(s.sys_d().g_minus(), s.sys_q().g_minus()), ls.g_minus(),
                      ls.label_range_flags(pad, ls.max_label()), cols),
             "the block formula disagrees with the marched advanced inverse");
    return out;
}

// The causal inverse of L intertwines the symmetry: G(L) gamma* = gamma G(L),
// checked exactly for the retarded and advanced inverses separately on the
// windows where all factors are determined.
struct IntertwineReport {
    bool retarded = false;
    bool advanced = false;
    bool ok() const { return retarded && advanced; }
};

inline IntertwineReport brst_intertwine(const BRSTSystem& b) {
    const GreenSystem& ls = b.system();
    const CausalModel& m = b.space();
    const auto& gc = m.gamma_c_flags();
    const auto cols = confined_columns(b.gamma_star(), gc, gc);
    IntertwineReport out;
    {
        const auto faithful = ls.retarded_faithful_flags();
        const auto rows = and_flags(determined_rows(m, m, b.gamma(), faithful), faithful);
        out.retarded = equal_on(ls.g_plus() * b.gamma_star(), b.gamma() * ls.g_plus(), rows, cols);
    }
    {
        const auto faithful = ls.advanced_faithful_flags();
        const auto rows = and_flags(determined_rows(m, m, b.gamma(), faithful), faithful);
        out.advanced =
            equal_on(ls.g_minus() * b.gamma_star(), b.gamma() * ls.g_minus(), rows, cols);
    }
    return out;
}

namespace detail {

// Numerator of the phase-space quotient: compactly supported sections closed
// under gamma*.
inline Subspace brst_closed(const BRSTSystem& b) {
    const CausalModel& m = b.space();
    return kernel_on_window(b.gamma_star(), m.gamma_c_flags(),
                            std::vector<char>(static_cast<size_t>(m.total_dim()), 1));
}

// Denominator: gamma*-exact sections plus on-shell-trivial closed sections.
inline Subspace brst_exact(const BRSTSystem& b, const Subspace& closed) {
    const CausalModel& m = b.space();
    const auto& gc = m.gamma_c_flags();
    const auto conf = confined_columns(b.gamma_star(), gc, gc);
    return sum(image_of_columns(b.gamma_star(), conf),
               intersect(image_of_columns(b.op(), gc), closed));
}

} // namespace detail

// Phase space of a BRST system: the ghost-number-zero part of
// Ker gamma*|compact modulo (Ran gamma*|compact + Ran L|compact inside the
// kernel), with the causal-inverse pairing as its hermitian form.
inline PhaseSpace phase_space_brst(const BRSTSystem& b) {
    const Subspace closed = detail::brst_closed(b);
    const Subspace exact = detail::brst_exact(b, closed);
    const Subspace sec0 = b.grading().sector(0);
    Quotient space(intersect(closed, sec0), intersect(exact, sec0));
    Mat F = Mat::diag(b.space().weights()) * b.system().g_causal() * Scalar(0, -1);
    InducedForm form = induced_form(F, space);
    return PhaseSpace{std::move(space), std::move(form), "V"};
}

// Dimension of the full quotient split by ghost sector. For the system built
// from a subsidiary triple the sectors report Ker K*/Ran P at ghost zero,
// the multiplier classes at ghost one, and zero at ghost minus one.
inline std::map<int, int> brst_sector_dims(const BRSTSystem& b) {
    const Subspace closed = detail::brst_closed(b);
    const Subspace exact = detail::brst_exact(b, closed);
    std::map<int, int> out;
    for (int g : b.grading().indices()) {
        const Subspace sec = b.grading().sector(g);
        out[g] = Quotient(intersect(closed, sec), intersect(exact, sec)).dim();
    }
    return out;
}

// Comparison of the phase space of an enlarged system with the phase space
// of the subsidiary triple it came from: the field-slot embedding descends
// to a bijection and the two hermitian forms take equal values on
// corresponding representatives.
struct BridgeReport {
    int dim_subsidiary = -1;
    int dim_brst = -1;
    bool embed_well_defined = false;
    bool embed_bijective = false;
    bool forms_agree = false;
    std::string detail;
    bool ok() const {
        return dim_subsidiary == dim_brst && embed_well_defined && embed_bijective && forms_agree;
    }
};

inline BridgeReport brst_bridge(const SubsidiaryBRST& sb) {
    const SubsidiarySystem& s = *sb.src;
    BridgeReport out;
    PhaseSpace vp = subsidiary_phase_space(s);
    PhaseSpace v = phase_space_brst(sb.brst);
    out.dim_subsidiary = vp.dim();
    out.dim_brst = v.dim();

    const int N = sb.brst.space().total_dim();
    Mat embed(N, sb.blocks.n1);
    for (int i = 0; i < sb.blocks.n1; ++i) embed.set(sb.blocks.a + i, i, Scalar(1));
    InducedMap em = induced_map(embed, vp.space, v.space);
    out.embed_well_defined = em.well_defined;
    out.embed_bijective = em.injective && em.surjective;
    if (!em.well_defined) out.detail += em.obstruction + "; ";

    if (em.well_defined) {
        const Mat F_p = Mat::diag(s.v1().weights()) * s.sys_d().g_causal() * Scalar(0, -1);
        const Mat F_l =
            Mat::diag(sb.brst.space().weights()) * sb.brst.system().g_causal() * Scalar(0, -1);
        Mat reps = vp.space.rep_basis();
        out.forms_agree = true;
        for (int i = 0; i < reps.cols(); ++i)
            for (int j = 0; j < reps.cols(); ++j) {
                Vec ui = reps.get_col(i), uj = reps.get_col(j);
                if (!(form_value(F_p, ui, uj) ==
                      form_value(F_l, embed.apply(ui), embed.apply(uj))))
                    out.forms_agree = false;
            }
        if (!out.forms_agree) out.detail += "forms disagree on representatives; ";
    }
    return out;
}

namespace detail {

// Solutions with compact spatial support that are closed under gamma,
// intersected with the marchable-kernel window, and the on-shell quotient
// they present: solutions modulo causal images of gamma*-exact sections.
inline Quotient brst_solution_quotient(const BRSTSystem& b, Subspace* num_all = nullptr) {
    const CausalModel& m = b.space();
    const auto& gc = m.gamma_c_flags();
    const auto gam_complete = complete_rows_cross(m, m, b.gamma());
    Subspace num = intersect(b.system().ker_interior(),
                             kernel_space(select_rows_flagged(b.gamma(), gam_complete)));
    const auto conf = confined_columns(b.gamma_star(), gc, gc);
    Subspace den = image_of_columns(b.system().g_causal() * b.gamma_star(), conf);
    if (num_all) *num_all = num;
    const Subspace sec0 = b.grading().sector(0);
    return Quotient(intersect(num, sec0), intersect(den, sec0));
}

} // namespace detail

// The causal inverse descends to a bijection from the phase space onto
// gamma-closed solutions at ghost zero modulo causal images of exact
// sections. Surjectivity is re-proven constructively on a basis of the
// target: every closed solution psi is written as G(L) h' with gamma* h' = 0
// by correcting an arbitrary compactly supported preimage h through the
// chain  L k = gamma* h,  k compact and gamma-exact,  h' = h - L ktilde.
struct SolutionClassReport {
    int dim_phase = -1;
    int dim_target = -1;
    bool well_defined = false;
    bool bijective = false;
    int witnesses = 0;
    int witnesses_passed = 0;
    std::vector<std::string> failures;
    bool ok() const {
        return failures.empty() && well_defined && bijective && witnesses_passed == witnesses;
    }
};

inline SolutionClassReport induced1(const BRSTSystem& b) {
    SolutionClassReport out;
    auto note = [&out](bool pass, const std::string& what) {
        if (!pass) out.failures.push_back(what);
        return pass;
    };
    const CausalModel& m = b.space();
    const GreenSystem& ls = b.system();
    const int n = m.total_dim();
    const auto& gc = m.gamma_c_flags();

    PhaseSpace v = phase_space_brst(b);
    Subspace solutions = Subspace::zero(n);
    Quotient target = detail::brst_solution_quotient(b, &solutions);
    out.dim_phase = v.dim();
    out.dim_target = target.dim();

    InducedMap gl = induced_map(ls.g_causal(), v.space, target);
    out.well_defined = note(gl.well_defined, "the causal inverse does not descend: " +
                                                 gl.obstruction);
    out.bijective = note(gl.injective && gl.surjective, "the descended map is not bijective");

    // Constructive surjectivity: find the margin at which every ghost-zero
    // closed solution is a causal image of a shrunken-window section.
    const Subspace sec0 = b.grading().sector(0);
    Mat targets = intersect(solutions, sec0).basis();
    out.witnesses = targets.cols();
    const int T = m.T(), pad = m.pad();
    std::optional<ColEchelon> ech;
    std::vector<int> hcols;
    for (int margin = 3; margin >= 1 && !ech; --margin) {
        if (pad + margin > T - 1 - pad - margin) continue;
        const auto sh = and_flags(and_flags(gc, m.window_flags(pad + margin, T - 1 - pad - margin)),
                                  b.grading().flags(0));
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (sh[static_cast<size_t>(i)]) idx.push_back(i);
        if (idx.empty()) continue;
        ColEchelon cand = col_echelon(ls.g_causal().select_cols(idx));
        bool all = true;
        for (int c = 0; c < targets.cols() && all; ++c)
            if (!cand.solve(targets.get_col(c))) all = false;
        if (all) {
            ech = std::move(cand);
            hcols = std::move(idx);
        }
    }
    if (!note(ech.has_value() || targets.cols() == 0,
              "no window margin makes every closed solution a causal image"))
        return out;

    std::optional<ColEchelon> gam_ech; // for writing compact closed sections as gamma-images
    const auto gam_conf = confined_columns(b.gamma(), gc, gc);
    std::vector<int> gcols;
    for (int i = 0; i < n; ++i)
        if (gam_conf[static_cast<size_t>(i)]) gcols.push_back(i);

    for (int c = 0; c < targets.cols(); ++c) {
        const Vec psi = targets.get_col(c);
        auto sol = ech->solve(psi);
        if (!sol) continue;
        Vec h = zero_vec(n);
        for (size_t k = 0; k < hcols.size(); ++k)
            h[static_cast<size_t>(hcols[k])] = (*sol)[k];

        bool pass = true;
        const Vec gsh = b.gamma_star().apply(h);
        const Vec k_ret = ls.solve_retarded(gsh);
        const Vec k_adv = ls.solve_advanced(gsh);
        pass = pass && note(k_ret == k_adv, "the correction is not compactly supported");
        pass = pass && note(b.op().apply(k_ret) == gsh, "the correction does not solve L k = gamma* h");
        const Vec gk = b.gamma().apply(k_ret);
        pass = pass && note(gk == zero_vec(n), "the correction is not closed");

        Vec ktilde = zero_vec(n);
        bool have_pre = true;
        if (!(k_ret == zero_vec(n))) {
            if (!gam_ech) {
                if (gcols.empty())
                    have_pre = false;
                else
                    gam_ech = col_echelon(b.gamma().select_cols(gcols));
            }
            std::optional<Vec> pre;
            if (gam_ech) pre = gam_ech->solve(k_ret);
            have_pre = have_pre && pre.has_value();
            if (pre)
                for (size_t k = 0; k < gcols.size(); ++k)
                    ktilde[static_cast<size_t>(gcols[k])] = (*pre)[k];
        }
        pass = pass && note(have_pre, "the compact closed correction is not exact");
        if (have_pre)
            pass = pass && note(b.gamma().apply(ktilde) == k_ret,
                                "the exactness witness does not reproduce the correction");

        const Vec lkt = b.op().apply(ktilde);
        Vec hp = h;
        for (int i = 0; i < n; ++i)
            hp[static_cast<size_t>(i)] = hp[static_cast<size_t>(i)] - lkt[static_cast<size_t>(i)];
        bool in_window = true;
        for (int i = 0; i < n; ++i)
            if (!hp[static_cast<size_t>(i)].is_zero() && !gc[static_cast<size_t>(i)])
                in_window = false;
        pass = pass && note(in_window, "the corrected section leaves the compact window");
        pass = pass && note(b.gamma_star().apply(hp) == zero_vec(n),
                            "the corrected section is not closed under gamma*");
        const Vec img_r = ls.solve_retarded(hp);
        const Vec img_a = ls.solve_advanced(hp);
        Vec img = img_r;
        for (int i = 0; i < n; ++i)
            img[static_cast<size_t>(i)] =
                img[static_cast<size_t>(i)] - img_a[static_cast<size_t>(i)];
        pass = pass && note(img == psi, "the corrected section has a different causal image");
        if (pass) ++out.witnesses_passed;
    }
    return out;
}

// Cauchy data for an enlarged system: the field data of the gauge-fixed
// operator at ghost zero, plus one copy of the scalar data each for the
// ghost and the antighost. The multiplier needs no slot of its own -- on
// solutions it is determined by the field through K* a = b.
struct GradedCauchyMap {
    SurfaceSpace data;
    Mat rho;
    int field_offset = 0;
    int ghost_offset = 0;
    int antighost_offset = 0;
    int field_dim = 0;
    int ghost_dim = 0;
};

inline GradedCauchyMap brst_rho(const SubsidiaryBRST& sb, const CauchyMap& field,
                                const CauchyMap& ghost) {
    const BRSTBlocks& bl = sb.blocks;
    require(field.rho.cols() == bl.n1, err::DimensionMismatch,
            "field data must sample the field sections");
    require(ghost.rho.cols() == bl.n0, err::DimensionMismatch,
            "ghost data must sample the scalar sections");
    const CausalModel& graded = sb.brst.space();

    std::vector<FieldComponent> comps;
    auto append = [&comps](const SurfaceSpace& d, const std::string& prefix, int ghost_no) {
        for (const auto& c : d.components()) {
            FieldComponent cc = c;
            cc.name = prefix + c.name;
            cc.ghost = ghost_no;
            comps.push_back(std::move(cc));
        }
    };
    append(field.data, "a_", 0);
    append(ghost.data, "c_", 1);
    append(ghost.data, "cb_", -1);
    SurfaceSpace data(graded.sigma(), comps);

    const int nd = field.data.total_dim();
    const int nq = ghost.data.total_dim();
    Mat rho(data.total_dim(), graded.total_dim());
    for (int j = 0; j < bl.n1; ++j)
        for (const auto& [r, v] : field.rho.col(j)) rho.set(r, bl.a + j, v);
    for (int j = 0; j < bl.n0; ++j)
        for (const auto& [r, v] : ghost.rho.col(j)) {
            rho.set(nd + r, bl.c + j, v);
            rho.set(nd + nq + r, bl.cbar + j, v);
        }
    return GradedCauchyMap{std::move(data), std::move(rho), 0, nd, nd + nq, nd, nq};
}

// The symmetry transported to Cauchy data: gamma_S = rho gamma U. For an
// enlarged system its only nonzero blocks are the two surface constraint
// maps, acting ghost -> field data and field -> antighost data.
struct SurfaceBRST {
    const BRSTSystem* sys = nullptr;
    const CauchyStructure* cauchy = nullptr;
    Mat gamma_sigma;
};

inline SurfaceBRST surface_brst(const BRSTSystem& b, const CauchyStructure& cl) {
    require(&cl.system() == &b.system(), err::DimensionMismatch,
            "the Cauchy structure must invert the system's own operator");
    Mat gs = cl.rho() * (b.gamma() * cl.u_map());
    return SurfaceBRST{&b, &cl, std::move(gs)};
}

// The five structural identities of the transported symmetry, all exact:
//   (1) it intertwines the solution map and the data map,
//   (2) its kernel is the data of closed solutions,
//   (3) its range is the data of causal images of gamma*-exact sections,
//   (4) it is nilpotent,
//   (5) it is self-adjoint for the data pairing.
struct SurfaceBRSTReport {
    bool intertwines_solutions = false;
    bool intertwines_data = false;
    bool kernel_matches = false;
    bool range_matches = false;
    bool nilpotent = false;
    bool self_adjoint = false;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

inline SurfaceBRSTReport surface_brst_relations(const SurfaceBRST& sb) {
    SurfaceBRSTReport out;
    auto note = [&out](bool pass, const char* what) {
        if (!pass) out.failures.emplace_back(what);
        return pass;
    };
    const BRSTSystem& b = *sb.sys;
    const CauchyStructure& cl = *sb.cauchy;
    const GreenSystem& ls = b.system();
    const CausalModel& m = b.space();
    const int nd = cl.data().total_dim();
    const auto& gc = m.gamma_c_flags();

    out.intertwines_solutions =
        note(equal_on(b.gamma() * cl.u_map(), cl.u_map() * sb.gamma_sigma,
                      ls.causal_faithful_flags(), std::vector<char>(static_cast<size_t>(nd), 1)),
             "gamma U differs from U gamma_S");
    {
        Mat kb = ls.ker_interior().basis();
        bool ok = true;
        for (int c = 0; c < kb.cols(); ++c) {
            Vec v = kb.get_col(c);
            if (!(sb.gamma_sigma.apply(cl.rho().apply(v)) == cl.rho().apply(b.gamma().apply(v))))
                ok = false;
        }
        out.intertwines_data = note(ok, "gamma_S rho differs from rho gamma on solutions");
    }
    {
        const auto gam_complete = complete_rows_cross(m, m, b.gamma());
        Subspace closed_solutions =
            intersect(ls.ker_interior(),
                      kernel_space(select_rows_flagged(b.gamma(), gam_complete)));
        out.kernel_matches =
            note(kernel_space(sb.gamma_sigma) == image_of(cl.rho(), closed_solutions),
                 "Ker gamma_S is not the data of closed solutions");
    }
    {
        const auto conf = confined_columns(b.gamma_star(), gc, gc);
        Subspace transported =
            image_of_columns(cl.rho() * (ls.g_causal() * b.gamma_star()), conf);
        out.range_matches = note(image_space(sb.gamma_sigma) == transported,
                                 "Ran gamma_S is not the data of transported exact sections");
    }
    out.nilpotent = note(sb.gamma_sigma * sb.gamma_sigma == Mat(nd, nd),
                         "gamma_S is not nilpotent");
    {
        const Mat star = weighted_adjoint(sb.gamma_sigma, cl.data().weights(), cl.data().weights());
        out.self_adjoint = note(star * cl.g_sigma() == cl.g_sigma() * sb.gamma_sigma,
                                "gamma_S is not self-adjoint for the data pairing");
    }
    return out;
}

// Data-side phase space: ghost-zero part of Ker gamma_S / Ran gamma_S with
// the data pairing as its hermitian form.
inline PhaseSpace surface_brst_phase_space(const SurfaceBRST& sb) {
    const CauchyStructure& cl = *sb.cauchy;
    const GradedSpace grading(cl.data());
    const Subspace sec0 = grading.sector(0);
    Quotient space(intersect(kernel_space(sb.gamma_sigma), sec0),
                   intersect(image_space(sb.gamma_sigma), sec0));
    Mat F = Mat::diag(cl.data().weights()) * cl.g_sigma() * Scalar(0, -1);
    InducedForm form = induced_form(F, space);
    return PhaseSpace{std::move(space), std::move(form), "V_Sigma"};
}

// Dimension of Ker gamma_S / Ran gamma_S split by ghost sector.
inline std::map<int, int> surface_brst_sector_dims(const SurfaceBRST& sb) {
    const GradedSpace grading(sb.cauchy->data());
    const Subspace num = kernel_space(sb.gamma_sigma);
    const Subspace den = image_space(sb.gamma_sigma);
    std::map<int, int> out;
    for (int g : grading.indices()) {
        const Subspace sec = grading.sector(g);
        out[g] = Quotient(intersect(num, sec), intersect(den, sec)).dim();
    }
    return out;
}

// Passage between the spacetime phase space and the data phase space of a
// BRST system: the data map descends to a bijection from ghost-zero closed
// solutions modulo transported exact sections, the composite rho G(L)
// descends to a bijection from the phase space, and the forms agree.
inline SurfacePassage surface_brst_passage(const SurfaceBRST& sb) {
    const BRSTSystem& b = *sb.sys;
    const CauchyStructure& cl = *sb.cauchy;
    SurfacePassage out;

    PhaseSpace vs = surface_brst_phase_space(sb);
    out.dim_data_phase = vs.dim();

    Quotient fixed = detail::brst_solution_quotient(b);
    InducedMap rho_map = induced_map(cl.rho(), fixed, vs.space);
    out.rho_well_defined = rho_map.well_defined;
    out.rho_bijective = rho_map.injective && rho_map.surjective;
    if (!rho_map.well_defined) out.detail += rho_map.obstruction + "; ";

    PhaseSpace v = phase_space_brst(b);
    out.dim_phase = v.dim();
    const Mat rg = cl.rho() * b.system().g_causal();
    InducedMap comp = induced_map(rg, v.space, vs.space);
    out.composite_well_defined = comp.well_defined;
    out.composite_bijective = comp.injective && comp.surjective;
    if (!comp.well_defined) out.detail += comp.obstruction + "; ";

    if (comp.well_defined) {
        const Mat F_l = Mat::diag(b.space().weights()) * b.system().g_causal() * Scalar(0, -1);
        const Mat F_s = Mat::diag(cl.data().weights()) * cl.g_sigma() * Scalar(0, -1);
        Mat reps = v.space.rep_basis();
        out.forms_agree = true;
        for (int i = 0; i < reps.cols(); ++i)
            for (int j = 0; j < reps.cols(); ++j) {
                Vec ui = reps.get_col(i), uj = reps.get_col(j);
                if (!(form_value(F_l, ui, uj) == form_value(F_s, rg.apply(ui), rg.apply(uj))))
                    out.forms_agree = false;
            }
        if (!out.forms_agree) out.detail += "forms disagree on representatives; ";
    }

    out.zero_class_fixed = true;
    for (int j = 0; j < v.space.den().dim(); ++j)
        if (!vs.space.is_zero_class(rg.apply(v.space.den().basis().get_col(j))))
            out.zero_class_fixed = false;
    if (!out.zero_class_fixed) out.detail += "a null class maps to a nonzero class; ";
    return out;
}

} // namespace gpl
