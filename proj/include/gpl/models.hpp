#pragma once

#include <string>
#include <utility>

#include "gpl/cauchy.hpp"
#include "gpl/green.hpp"
#include "gpl/surface.hpp"

namespace gpl {

// M ⊗ I_fiber acting on (cell, fiber) coordinates, cell-major.
inline Mat fiber_blowup(const Mat& M, int fiber) {
    require(fiber >= 1, err::DimensionMismatch, "fiber dimension must be positive");
    if (fiber == 1) return M;
    Mat out(M.rows() * fiber, M.cols() * fiber);
    for (int j = 0; j < M.cols(); ++j)
        for (const auto& [r, v] : M.col(j))
            for (int f = 0; f < fiber; ++f) out.set(r * fiber + f, j * fiber + f, v);
    return out;
}

// Section models for k-forms on the product of the time lattice with sigma.
// A spacetime 1-form has a time-interval part (spatial degree 0) and a
// slice part (spatial degree 1); a 2-form has the mixed part (interval x
// spatial edge) and the slice part (spatial degree 2).
inline CausalModel form0_model(const CellComplex& sigma, int T, int pad, int fiber = 1,
                               Rational tau = Rational(1, 2), int ghost = 0,
                               const std::string& prefix = "v") {
    return CausalModel(sigma, T, pad, {FieldComponent{prefix, ghost, 0, 0, fiber}},
                       std::move(tau));
}

inline CausalModel form1_model(const CellComplex& sigma, int T, int pad, int fiber = 1,
                               Rational tau = Rational(1, 2), int ghost = 0) {
    return CausalModel(sigma, T, pad,
                       {FieldComponent{"te", ghost, 1, 0, fiber},
                        FieldComponent{"sp", ghost, 0, 1, fiber}},
                       std::move(tau));
}

inline CausalModel form2_model(const CellComplex& sigma, int T, int pad, int fiber = 1,
                               Rational tau = Rational(1, 2), int ghost = 0) {
    return CausalModel(sigma, T, pad,
                       {FieldComponent{"mx", ghost, 1, 1, fiber},
                        FieldComponent{"sp", ghost, 0, 2, fiber}},
                       std::move(tau));
}

// d on 0-forms: (df)_te(t) = f(t+1) - f(t), (df)_sp(t) = dsp0 f(t).
inline Mat spacetime_d0(const CausalModel& one, const CausalModel& zero, const Mat& dsp0) {
    Mat acc(one.total_dim(), zero.total_dim());
    add_time_diff_map(acc, one, one.component_index("te"), zero, 0);
    add_per_slot_map(acc, one, one.component_index("sp"), zero, 0, dsp0);
    return acc;
}

// d on 1-forms: mixed part (dA)_mx(t) = A_sp(t+1) - A_sp(t) - dsp0 A_te(t),
// slice part (dA)_sp(t) = dsp1 A_sp(t). The time factor is ordered first, so
// the spatial differential of the interval part enters with a minus sign.
inline Mat spacetime_d1(const CausalModel& two, const CausalModel& one, const Mat& dsp0,
                        const Mat& dsp1) {
    Mat acc(two.total_dim(), one.total_dim());
    const int mx = two.component_index("mx");
    add_time_diff_map(acc, two, mx, one, one.component_index("sp"));
    add_per_slot_map(acc, two, mx, one, one.component_index("te"), dsp0, Scalar(-1));
    add_per_slot_map(acc, two, two.component_index("sp"), one, one.component_index("sp"), dsp1);
    return acc;
}

// Free scalar field: wave operator delta d + m^2 on 0-form sections.
struct ScalarTheory {
    CausalModel m0, m1;
    Mat d, delta;
    Mat D;
    Rational mass_sq;

    GreenSystem system() const { return GreenSystem(m0, D, true); }
};

inline ScalarTheory build_scalar(const CellComplex& sigma, int T, int pad, Rational mass_sq,
                                 Rational tau = Rational(1, 2)) {
    CausalModel m0 = form0_model(sigma, T, pad, 1, tau);
    CausalModel m1 = form1_model(sigma, T, pad, 1, tau);
    Mat d = spacetime_d0(m1, m0, sigma.d(0));
    Mat delta = weighted_adjoint(d, m1.weights(), m0.weights());
    Mat D = delta * d + Mat::identity(m0.total_dim()) * Scalar(mass_sq);
    return ScalarTheory{std::move(m0), std::move(m1), std::move(d), std::move(delta),
                        std::move(D), std::move(mass_sq)};
}

// Lattice electromagnetism on 1-form sections: P = delta d, the constraint
// operator K and the gauge generator T both equal to d on functions, so
// D = P + K K* is the 1-form wave operator and R = Q = K*K the 0-form one.
struct MaxwellTheory {
    CausalModel m0, m1, m2;
    Mat d0, d1, delta1, delta2;
    Mat K, Ks, T, Ts;
    Mat P, D, R, Q;

    GreenSystem system_D() const { return GreenSystem(m1, D, true); }
    GreenSystem system_R() const { return GreenSystem(m0, R, true); }
    GreenSystem system_Q() const { return GreenSystem(m0, Q, true); }
};

inline MaxwellTheory build_maxwell(const CellComplex& sigma, int T, int pad,
                                   Rational tau = Rational(1, 2)) {
    CausalModel m0 = form0_model(sigma, T, pad, 1, tau);
    CausalModel m1 = form1_model(sigma, T, pad, 1, tau);
    CausalModel m2 = form2_model(sigma, T, pad, 1, tau);
    Mat d0 = spacetime_d0(m1, m0, sigma.d(0));
    Mat d1 = spacetime_d1(m2, m1, sigma.d(0), sigma.d(1));
    Mat delta1 = weighted_adjoint(d0, m1.weights(), m0.weights());
    Mat delta2 = weighted_adjoint(d1, m2.weights(), m1.weights());
    Mat P = delta2 * d1;
    Mat D = P + d0 * delta1;
    Mat R = delta1 * d0;
    MaxwellTheory t{std::move(m0), std::move(m1), std::move(m2),
                    d0,            d1,            delta1,        delta2,
                    /*K*/ d0,      /*Ks*/ delta1, /*T*/ d0,      /*Ts*/ delta1,
                    std::move(P),  std::move(D),  /*R*/ R,       /*Q*/ R};
    return t;
}


// Data of a 0-form section: (value, i^{-1} * forward difference / tau) at the
// reference slice.
inline CauchyMap scalar_rho(const CausalModel& m0, int t0) {
    require(m0.components().size() == 1 && m0.components()[0].space_degree == 0 &&
                m0.components()[0].time_type == 0,
            err::UnsupportedModel, "scalar data needs a single 0-form component");
    const auto& c = m0.components()[0];
    SurfaceSpace data(m0.sigma(), {FieldComponent{"val", c.ghost, 0, 0, c.fiber},
                                   FieldComponent{"mom", c.ghost, 0, 0, c.fiber}});
    Mat rho(data.total_dim(), m0.total_dim());
    const Scalar iinv_tau = Scalar(0, -1) / Scalar(m0.tau());
    const int n0 = m0.sigma().count(0);
    for (int v = 0; v < n0; ++v)
        for (int f = 0; f < c.fiber; ++f) {
            rho.set(data.dof(0, v, f), m0.dof(0, t0, v, f), Scalar(1));
            rho.set(data.dof(1, v, f), m0.dof(0, t0 + 1, v, f), iinv_tau);
            rho.add_at(data.dof(1, v, f), m0.dof(0, t0, v, f), -iinv_tau);
        }
    return CauchyMap{std::move(data), std::move(rho)};
}

// Data of a 1-form section A: the normal component, the pulled-back spatial
// part, the divergence and the electric part,
//   ( A_te/tau , A_sp , i^{-1} (delta A) , i^{-1} (dA)_mx/tau )
// all read off at the reference slice. delta1 is the spacetime codifferential
// and dsp0 the (possibly transported) spatial differential on functions.
inline CauchyMap one_form_rho(const CausalModel& m1, const CausalModel& m0, const Mat& delta1,
                              const Mat& dsp0, int t0) {
    const int te = m1.component_index("te");
    const int sp = m1.component_index("sp");
    const auto& cte = m1.components()[static_cast<size_t>(te)];
    SurfaceSpace data(m1.sigma(), {FieldComponent{"n", cte.ghost, 0, 0, cte.fiber},
                                   FieldComponent{"a", cte.ghost, 0, 1, cte.fiber},
                                   FieldComponent{"dl", cte.ghost, 0, 0, cte.fiber},
                                   FieldComponent{"e", cte.ghost, 0, 1, cte.fiber}});
    Mat rho(data.total_dim(), m1.total_dim());
    const Scalar iinv_tau = Scalar(0, -1) / Scalar(m1.tau());
    const int n0 = m1.sigma().count(0);
    const int n1 = m1.sigma().count(1);
    const int fib = cte.fiber;
    const Scalar inv_tau = Scalar(1) / Scalar(m1.tau());
    for (int v = 0; v < n0; ++v)
        for (int f = 0; f < fib; ++f)
            rho.set(data.dof(0, v, f), m1.dof(te, t0, v, f), inv_tau);
    for (int e = 0; e < n1; ++e)
        for (int f = 0; f < fib; ++f) {
            rho.set(data.dof(1, e, f), m1.dof(sp, t0, e, f), Scalar(1));
            rho.set(data.dof(3, e, f), m1.dof(sp, t0 + 1, e, f), iinv_tau);
            rho.add_at(data.dof(3, e, f), m1.dof(sp, t0, e, f), -iinv_tau);
        }
    // (dA)_mx picks up -dsp0 A_te; with the i^{-1}/tau factor in front.
    Mat dsp0f = fiber_blowup(dsp0, fib);
    for (int j = 0; j < dsp0f.cols(); ++j)
        for (const auto& [r, v] : dsp0f.col(j))
            rho.add_at(data.offset(3) + r, m1.dof(te, t0, j / fib, j % fib), -iinv_tau * v);
    // Divergence rows: the slot-t0 rows of the spacetime codifferential.
    require(delta1.rows() == m0.total_dim() && delta1.cols() == m1.total_dim(),
            err::DimensionMismatch, "codifferential shape");
    const int base = m0.dof(0, t0, 0, 0);
    const Scalar iinv(0, -1);
    for (int j = 0; j < delta1.cols(); ++j)
        for (const auto& [r, v] : delta1.col(j))
            if (r >= base && r < base + n0 * fib)
                rho.add_at(data.offset(2) + (r - base), j, iinv * v);
    return CauchyMap{std::move(data), std::move(rho)};
}

inline CauchyMap maxwell_rho(const MaxwellTheory& th, int t0) {
    return one_form_rho(th.m1, th.m0, th.delta1, th.m1.sigma().d(0), t0);
}

} // namespace gpl

