// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "solstat/geometry.hpp"

namespace solstat {

/// (d^nabla h)(X,Y,Z) = (nabla_X h)(Y,Z) - (nabla_Y h)(X,Z) + h(T(X,Y),Z),
/// stored t(i,j,k). The torsion term keeps the operator meaningful for
/// connections with torsion (quasi-statistical structures).
inline JetTensor d_nabla(const JetTensor& gam, const JetTensor& h) {
    const int n = gam.dim;
    const JetTensor dh = covd_02(gam, h);
    const JetTensor tor = torsion(gam);
    JetTensor r(n, {Variance::Lower, Variance::Lower, Variance::Lower}, gam.point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet acc = dh(i, j, k) - dh(j, i, k);
                for (int m = 0; m < n; ++m) acc = acc + tor(m, i, j) * h(m, k);
                r(i, j, k) = acc;
            }
    return r;
}

/// Coefficients of the g-dual connection:
/// Gamma*^q_{il} = g^{qj} (d_i g_{jl} - Gamma^m_{ij} g_{ml}), from
/// X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla*_X Z).
inline JetTensor dual_christoffels(const MetricJets& G, const JetTensor& gam) {
    const int n = G.dim;
    JetTensor r(n, {Variance::Upper, Variance::Lower, Variance::Lower}, gam.point);
    for (int q = 0; q < n; ++q)
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                Jet acc = Jet::constant(G.g[0].dim(), 0.0);
                for (int j = 0; j < n; ++j) {
                    Jet inner = G.gj(j, l).partial(i);
                    for (int m = 0; m < n; ++m) inner = inner - gam(m, i, j) * G.gj(m, l);
                    acc = acc + G.gup(q, j) * inner;
                }
                r(q, i, l) = acc;
            }
    return r;
}

inline ConnectionField dual_connection(const MetricField& g, const ConnectionField& nabla) {
    return {g.dim, "dual",
            [g, nabla](const Point& x) { return dual_christoffels(g.at(x), nabla.at(x)); }};
}

/// Max defect of the duality display on basis triples (values only).
inline double duality_defect(const MetricJets& G, const JetTensor& gam, const JetTensor& gam_dual) {
    const int n = G.dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                double v = G.gj(j, l).d(i);
                for (int m = 0; m < n; ++m)
                    v -= gam(m, i, j).value() * G.gj(m, l).value() +
                         gam_dual(m, i, l).value() * G.gj(j, m).value();
                worst = std::max(worst, std::abs(v));
            }
    return worst;
}

inline double max_abs_value(const JetTensor& t) {
    double m = 0.0;
    for (const Jet& c : t.comp) m = std::max(m, std::abs(c.value()));
    return m;
}

/// Pointwise residuals of the structure taxonomy for a pair (h, nabla).
struct StructureResiduals {
    double torsion = 0.0;      // max |T^k_{ij}|
    double h_asymmetry = 0.0;  // max |h_{ij} - h_{ji}|
    double d_nabla_h = 0.0;    // max |(d^nabla h)_{ijk}|
    double covd_sym = 0.0;     // max |(nabla_X h)(Y,Z) - (nabla_Y h)(X,Z)| without torsion term

    double statistical() const { return std::max({torsion, h_asymmetry, d_nabla_h}); }
    double nearly_statistical() const { return std::max({torsion, h_asymmetry, covd_sym}); }
    double quasi_statistical() const { return d_nabla_h; }
};

inline StructureResiduals structure_residuals(const JetTensor& gam, const JetTensor& h) {
    const int n = gam.dim;
    StructureResiduals r;
    r.torsion = max_abs_value(torsion(gam));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.h_asymmetry = std::max(r.h_asymmetry, std::abs(h(i, j).value() - h(j, i).value()));
    const JetTensor dh = covd_02(gam, h);
    const JetTensor dnh = d_nabla(gam, h);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                r.covd_sym = std::max(r.covd_sym, std::abs(dh(i, j, k).value() - dh(j, i, k).value()));
                r.d_nabla_h = std::max(r.d_nabla_h, std::abs(dnh(i, j, k).value()));
            }
    return r;
}

/// Equiaffinity criterion for torsion-free connections: Ricci symmetry.
inline double ricci_asymmetry(const JetTensor& ric) {
    const int n = ric.dim;
    double worst = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            worst = std::max(worst, std::abs(ric(j, k).value() - ric(k, j).value()));
    return worst;
}

/// max |g(AX, Y) - g(X, AY)| over basis pairs for a (1,1) field A.
inline double self_adjoint_defect(const MetricJets& G, const JetTensor& a) {
    const int n = G.dim;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k)
                v += a(k, i).value() * G.gj(k, j).value() - a(k, j).value() * G.gj(k, i).value();
            worst = std::max(worst, std::abs(v));
        }
    return worst;
}

/// Codazzi defect of a (1,1) field: max |(nabla_X J)Y - (nabla_Y J)X|.
inline double codazzi_defect_11(const JetTensor& gam, const JetTensor& j) {
    const int n = gam.dim;
    const JetTensor dj = covd_11(gam, j);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                worst = std::max(worst, std::abs(dj(k, a, b).value() - dj(k, b, a).value()));
    return worst;
}

/// Killing defect, polarized: max |(nabla_X J)Y + (nabla_Y J)X|.
inline double killing_defect_11(const JetTensor& gam, const JetTensor& j) {
    const int n = gam.dim;
    const JetTensor dj = covd_11(gam, j);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b)
                worst = std::max(worst, std::abs(dj(k, a, b).value() + dj(k, b, a).value()));
    return worst;
}

/// Omega := g(J.,.) as jets.
inline JetTensor omega_of(const MetricJets& G, const JetTensor& j) {
    const int n = G.dim;
    JetTensor om(n, {Variance::Lower, Variance::Lower}, j.point);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Jet acc = Jet::constant(G.g[0].dim(), 0.0);
            for (int k = 0; k < n; ++k) acc = acc + G.gj(k, b) * j(k, a);
            om(a, b) = acc;
        }
    return om;
}

struct OmegaCodazziReport {
    double identity = 0.0;        // residual of the expansion identity below
    double omega_codazzi = 0.0;   // Codazzi defect of Omega under nabla
    double j_codazzi = 0.0;       // Codazzi defect of J under nabla
};

/// Checks the expansion behind the Codazzi lemma for Omega = g(J.,.):
/// (nabla_X Om)(Y,Z) - (nabla_Y Om)(X,Z)
///   = (nabla_X g)(JY,Z) - (nabla_Y g)(JX,Z) + g((nabla_X J)Y - (nabla_Y J)X, Z),
/// an identity for any connection, any J. For nabla = nabla^g the metric terms
/// drop and Omega is Codazzi iff J is Codazzi.
inline OmegaCodazziReport omega_codazzi_lemma(const MetricJets& G, const JetTensor& gam,
                                              const JetTensor& j) {
    const int n = G.dim;
    const JetTensor om = omega_of(G, j);
    const JetTensor dom = covd_02(gam, om);
    JetTensor gt(n, {Variance::Lower, Variance::Lower}, j.point);
    gt.comp = G.g;
    const JetTensor dg = covd_02(gam, gt);
    const JetTensor dj = covd_11(gam, j);
    OmegaCodazziReport rep;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double lhs = dom(a, b, c).value() - dom(b, a, c).value();
                double rhs = 0.0;
                for (int m = 0; m < n; ++m)
                    rhs += dg(a, m, c).value() * j(m, b).value() -
                           dg(b, m, c).value() * j(m, a).value() +
                           G.gj(m, c).value() * (dj(m, a, b).value() - dj(m, b, a).value());
                rep.identity = std::max(rep.identity, std::abs(lhs - rhs));
                rep.omega_codazzi = std::max(rep.omega_codazzi, std::abs(lhs));
            }
    rep.j_codazzi = codazzi_defect_11(gam, j);
    return rep;
}

struct Theorem2Residuals {
    double stated = 0.0;     // |d^nabla Hess^nabla(f) - g(R^nabla(X,Y)grad f, Z)|
    double corrected = 0.0;  // same with the (nabla g)(A., .) terms included
    double both_sides = 0.0; // max magnitude of either side (non-vacuity witness)
};

/// Radial-curvature identity for a torsion-free connection nabla and the
/// nabla-Hessian Hess(f)(X,Y) = g(nabla_X grad f, Y). The exact identity is
///   d^nabla Hess(f)(X,Y,Z)
///     = (nabla_X g)(AY,Z) - (nabla_Y g)(AX,Z) + g(R^nabla(X,Y)grad f, Z),
/// with A = nabla grad f. For nabla = nabla^g the metric terms vanish and the
/// stated form d^nabla Hess = g(R grad f, .) is exact. Takes grad f directly
/// so closed 1-form data works unchanged.
inline Theorem2Residuals hess_radial_curvature(const MetricJets& G, const JetTensor& gam,
                                               const std::vector<Jet>& xi) {
    const int n = G.dim;
    const JetTensor a = covd_vector(gam, xi);  // A^k_i = (nabla_i grad f)^k, t(k,i)
    JetTensor hess(n, {Variance::Lower, Variance::Lower}, gam.point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet acc = Jet::constant(xi[0].dim(), 0.0);
            for (int k = 0; k < n; ++k) acc = acc + G.gj(k, j) * a(k, i);
            hess(i, j) = acc;
        }
    const JetTensor dh = d_nabla(gam, hess);
    const JetTensor R = riemann(gam);
    JetTensor gt(n, {Variance::Lower, Variance::Lower}, gam.point);
    gt.comp = G.g;
    const JetTensor dg = covd_02(gam, gt);
    Theorem2Residuals r;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double lhs = dh(i, j, k).value();
                double radial = 0.0;
                for (int l = 0; l < n; ++l)
                    for (int m = 0; m < n; ++m)
                        radial += G.gj(l, k).value() * R(l, m, i, j).value() * xi[static_cast<std::size_t>(m)].value();
                double metric_terms = 0.0;
                for (int m = 0; m < n; ++m)
                    metric_terms += dg(i, m, k).value() * a(m, j).value() -
                                    dg(j, m, k).value() * a(m, i).value();
                r.stated = std::max(r.stated, std::abs(lhs - radial));
                r.corrected = std::max(r.corrected, std::abs(lhs - metric_terms - radial));
                r.both_sides = std::max(r.both_sides, std::min(std::abs(lhs), std::abs(radial)));
            }
    return r;
}

} // namespace solstat
