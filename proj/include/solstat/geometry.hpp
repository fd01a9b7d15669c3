// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "solstat/fields.hpp"

namespace solstat {

// ---------------------------------------------------------------------------
// Pointwise kernels on jet bundles. Index conventions used everywhere:
//   Gamma             t(k,i,j) = Gamma^k_{ij}, nabla_{d_i} d_j = Gamma^k_{ij} d_k
//   Riemann           R(l,k,i,j): R(d_i,d_j)d_k = R^l_{kij} d_l
//                     R^l_{kij} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
//                               + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
//   Ricci             Ric(j,k) = R^i_{kij}   (trace over the first slot)
//   (1,1) field A     t(k,i) = A^k_i, A(d_i) = A^k_i d_k
//   covd of vector    t(k,i) = (nabla_{d_i} V)^k
// ---------------------------------------------------------------------------

/// Levi-Civita coefficients of a symmetric nondegenerate (0,2) jet matrix h:
/// Gamma^k_{ij} = 1/2 h^{kl} (d_i h_{jl} + d_j h_{il} - d_l h_{ij}).
inline JetTensor christoffel_lc(int n, const std::vector<Jet>& h, const std::vector<Jet>& h_inv,
                                const Point& x) {
    JetTensor gam(n, {Variance::Upper, Variance::Lower, Variance::Lower}, x);
    const int jd = h[0].dim();
    std::vector<Jet> dh(static_cast<std::size_t>(n * n * n));  // dh[(i*n+j)*n+l] = d_l h_{ij}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                dh[static_cast<std::size_t>((i * n + j) * n + l)] =
                    h[static_cast<std::size_t>(i * n + j)].partial(l);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet acc = Jet::constant(jd, 0.0);
                for (int l = 0; l < n; ++l) {
                    const Jet term = dh[static_cast<std::size_t>((j * n + l) * n + i)] +
                                     dh[static_cast<std::size_t>((i * n + l) * n + j)] -
                                     dh[static_cast<std::size_t>((i * n + j) * n + l)];
                    acc = acc + h_inv[static_cast<std::size_t>(k * n + l)] * term;
                }
                acc = 0.5 * acc;
                gam(k, i, j) = acc;
                gam(k, j, i) = acc;
            }
    return gam;
}

/// Levi-Civita connection of a metric field.
inline ConnectionField levi_civita(const MetricField& g) {
    const int n = g.dim;
    return {n, "levi-civita", [g, n](const Point& x) {
                const MetricJets G = g.at(x);
                return christoffel_lc(n, G.g, G.g_inv, x);
            }};
}

/// Levi-Civita connection of an arbitrary symmetric (0,2) field (Ric, Hess(f));
/// throws DegenerateMetric where the field degenerates.
inline ConnectionField levi_civita_of(const TensorField& h) {
    const int n = h.dim;
    return {n, "levi-civita", [h, n](const Point& x) {
                const JetTensor hj = h.at(x);
                TensorAtPoint hv = values(hj);
                MetricAtPoint::build(hv);  // nondegeneracy + symmetry guard
                const std::vector<Jet> hinv = jet_matrix_inverse(n, hj.comp);
                return christoffel_lc(n, hj.comp, hinv, x);
            }};
}

/// Full curvature tensor of a connection, jet-valued (one order below Gamma).
inline JetTensor riemann(const JetTensor& gam) {
    const int n = gam.dim;
    JetTensor R(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower}, gam.point);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    Jet acc = gam(l, j, k).partial(i) - gam(l, i, k).partial(j);
                    for (int m = 0; m < n; ++m)
                        acc = acc + gam(l, i, m) * gam(m, j, k) - gam(l, j, m) * gam(m, i, k);
                    R(l, k, i, j) = acc;
                    R(l, k, j, i) = -acc;
                }
    const int jd = gam.comp[0].dim();
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) R(l, k, i, i) = Jet::constant(jd, 0.0);
    return R;
}

/// Ricci tensor Ric(Y,Z) = trace(X -> R(X,Y)Z); not symmetric for general
/// connections.
inline JetTensor ricci(const JetTensor& riem) {
    const int n = riem.dim;
    JetTensor ric(n, {Variance::Lower, Variance::Lower}, riem.point);
    const int jd = riem.comp[0].dim();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet acc = Jet::constant(jd, 0.0);
            for (int i = 0; i < n; ++i) acc = acc + riem(i, k, i, j);
            ric(j, k) = acc;
        }
    return ric;
}

inline JetTensor ricci_of_connection(const JetTensor& gam) { return ricci(riemann(gam)); }

/// Derived field x -> Ric^{nabla}(x) as jets.
inline TensorField ricci_field(const ConnectionField& nabla) {
    return {nabla.dim,
            {Variance::Lower, Variance::Lower},
            [nabla](const Point& x) { return ricci_of_connection(nabla.at(x)); }};
}

/// scal^{(g,nabla)} = g^{jk} Ric^{nabla}_{jk}, as a jet.
inline Jet scalar_curvature(const MetricJets& G, const JetTensor& ric) {
    Jet acc = Jet::constant(ric.comp[0].dim(), 0.0);
    for (int j = 0; j < G.dim; ++j)
        for (int k = 0; k < G.dim; ++k) acc = acc + G.gup(j, k) * ric(j, k);
    return acc;
}

/// grad_g f as jets: xi^k = g^{kl} d_l f.
inline std::vector<Jet> gradient(const MetricJets& G, const Jet& f) {
    const int n = G.dim;
    std::vector<Jet> xi(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Jet acc = Jet::constant(f.dim(), 0.0);
        for (int l = 0; l < n; ++l) acc = acc + G.gup(k, l) * f.partial(l);
        xi[static_cast<std::size_t>(k)] = acc;
    }
    return xi;
}

/// (nabla_i V)^k = d_i V^k + Gamma^k_{ij} V^j, stored t(k,i).
inline JetTensor covd_vector(const JetTensor& gam, const std::vector<Jet>& v) {
    const int n = gam.dim;
    JetTensor r(n, {Variance::Upper, Variance::Lower}, gam.point);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            Jet acc = v[static_cast<std::size_t>(k)].partial(i);
            for (int j = 0; j < n; ++j) acc = acc + gam(k, i, j) * v[static_cast<std::size_t>(j)];
            r(k, i) = acc;
        }
    return r;
}

/// Hess^{nabla}(f)(X,Y) = g(nabla_X grad_g f, Y); t(i,j) with X = d_i the
/// differentiation slot. Symmetric for the Levi-Civita connection.
inline JetTensor hessian(const MetricJets& G, const JetTensor& gam, const std::vector<Jet>& gradf) {
    const int n = G.dim;
    const JetTensor dv = covd_vector(gam, gradf);
    JetTensor h(n, {Variance::Lower, Variance::Lower}, gam.point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Jet acc = Jet::constant(gradf[0].dim(), 0.0);
            for (int k = 0; k < n; ++k) acc = acc + G.gj(k, j) * dv(k, i);
            h(i, j) = acc;
        }
    return h;
}

/// div^{(g,nabla)} X = trace(Y -> nabla_Y X).
inline Jet divergence(const JetTensor& gam, const std::vector<Jet>& v) {
    const JetTensor dv = covd_vector(gam, v);
    Jet acc = Jet::constant(v[0].dim(), 0.0);
    for (int k = 0; k < gam.dim; ++k) acc = acc + dv(k, k);
    return acc;
}

inline Jet laplacian(const MetricJets& G, const JetTensor& gam, const Jet& f) {
    return divergence(gam, gradient(G, f));
}

/// Laplacian of a jet-valued scalar (order >= 2), value only:
/// g^{ij}(d_i d_j s - Gamma^k_{ij} d_k s).
inline double laplacian_value(const MetricJets& G, const JetTensor& gam, const Jet& s) {
    const int n = G.dim;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double t = s.d2(i, j);
            for (int k = 0; k < n; ++k) t -= gam(k, i, j).value() * s.d(k);
            acc += G.value.g_inv(i, j) * t;
        }
    return acc;
}

/// Classical Bochner identity residual at a point:
/// 1/2 Lap|grad f|^2 - |Hess f|^2 - Ric(grad f, grad f) - grad f(Lap f).
/// Zero for every smooth (g, f). Takes grad f directly, so closed 1-form data
/// (df without a global potential) works unchanged.
inline double bochner_residual_from_gradient(const MetricJets& G, const std::vector<Jet>& xi) {
    const int n = G.dim;
    const JetTensor gam = christoffel_lc(n, G.g, G.g_inv, G.x);
    Jet norm2 = Jet::constant(xi[0].dim(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) norm2 = norm2 + G.gj(i, j) * xi[static_cast<std::size_t>(i)] * xi[static_cast<std::size_t>(j)];
    const double lap_norm2 = laplacian_value(G, gam, norm2);

    const JetTensor hess = hessian(G, gam, xi);
    const double hess2 = inner_02(values(hess), values(hess), G.value);

    const JetTensor ric = ricci_of_connection(gam);
    double ric_ff = 0.0;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            ric_ff += ric(j, k).value() * xi[static_cast<std::size_t>(j)].value() * xi[static_cast<std::size_t>(k)].value();

    const Jet lap_f = divergence(gam, xi);
    double xf_lapf = 0.0;
    for (int k = 0; k < n; ++k) xf_lapf += xi[static_cast<std::size_t>(k)].value() * lap_f.d(k);

    return 0.5 * lap_norm2 - hess2 - ric_ff - xf_lapf;
}

inline double bochner_residual(const MetricJets& G, const Jet& f) {
    return bochner_residual_from_gradient(G, gradient(G, f));
}

/// (nabla_i h)_{jk} for a (0,2) field, stored t(i,j,k) with i the
/// differentiation slot.
inline JetTensor covd_02(const JetTensor& gam, const JetTensor& h) {
    const int n = gam.dim;
    JetTensor r(n, {Variance::Lower, Variance::Lower, Variance::Lower}, gam.point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Jet acc = h(j, k).partial(i);
                for (int m = 0; m < n; ++m)
                    acc = acc - gam(m, i, j) * h(m, k) - gam(m, i, k) * h(j, m);
                r(i, j, k) = acc;
            }
    return r;
}

/// T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji}, stored t(k,i,j).
inline JetTensor torsion(const JetTensor& gam) {
    const int n = gam.dim;
    JetTensor t(n, {Variance::Upper, Variance::Lower, Variance::Lower}, gam.point);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t(k, i, j) = gam(k, i, j) - gam(k, j, i);
    return t;
}

/// nabla^2_{X,Y} V = nabla_X nabla_Y V - nabla_{nabla_X Y} V on basis pairs,
/// stored t(k,i,j) = (nabla^2_{d_i,d_j} V)^k.
inline JetTensor second_covd_vector(const JetTensor& gam, const std::vector<Jet>& v) {
    const int n = gam.dim;
    const JetTensor w = covd_vector(gam, v);  // w(k,j) = (nabla_j V)^k
    JetTensor r(n, {Variance::Upper, Variance::Lower, Variance::Lower}, gam.point);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc = w(k, j).partial(i);
                for (int m = 0; m < n; ++m)
                    acc = acc + gam(k, i, m) * w(m, j) - gam(m, i, j) * w(k, m);
                r(k, i, j) = acc;
            }
    return r;
}

/// (nabla_i A)^k_j for a (1,1) field, stored t(k,i,j).
inline JetTensor covd_11(const JetTensor& gam, const JetTensor& a) {
    const int n = gam.dim;
    JetTensor r(n, {Variance::Upper, Variance::Lower, Variance::Lower}, gam.point);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc = a(k, j).partial(i);
                for (int m = 0; m < n; ++m)
                    acc = acc + gam(k, i, m) * a(m, j) - gam(m, i, j) * a(k, m);
                r(k, i, j) = acc;
            }
    return r;
}

/// Residual of the Koszul difference display for h in {Ric, Hess(f)}:
/// 2 g(nabla^h_X Y - nabla^g_X Y, QZ) =
///   g((nabla^g_Y Q)X, Z) + g((nabla^g_X Q)Y, Z) - g((nabla^g_Z Q)X, Y),
/// with Q the g-endomorphism of h (Q^k_j = g^{km} h_{mj}). Returns the max
/// residual over basis triples, normalized by max(1, input magnitude).
inline double koszul_difference_residual(const MetricJets& G, const JetTensor& gam_g,
                                         const JetTensor& h) {
    const int n = G.dim;
    // Q^k_j = g^{km} h_{mj}
    JetTensor q(n, {Variance::Upper, Variance::Lower}, h.point);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            Jet acc = Jet::constant(h.comp[0].dim(), 0.0);
            for (int m = 0; m < n; ++m) acc = acc + G.gup(k, m) * h(m, j);
            q(k, j) = acc;
        }
    const JetTensor dq = covd_11(gam_g, q);

    TensorAtPoint hv = values(h);
    MetricAtPoint::build(hv);  // throws DegenerateMetric when h degenerates
    const std::vector<Jet> hinv = jet_matrix_inverse(n, h.comp);
    const JetTensor gam_h = christoffel_lc(n, h.comp, hinv, h.point);

    double scale = std::max(1.0, max_abs(values(h)));
    scale = std::max(scale, max_abs(G.value.g));
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                double lhs = 0.0;
                for (int m = 0; m < n; ++m) {
                    const double diff = gam_h(m, i, j).value() - gam_g(m, i, j).value();
                    for (int k = 0; k < n; ++k)
                        lhs += 2.0 * diff * G.gj(m, k).value() * q(k, l).value();
                }
                double rhs = 0.0;
                for (int m = 0; m < n; ++m)
                    rhs += dq(m, j, i).value() * G.gj(m, l).value() +
                           dq(m, i, j).value() * G.gj(m, l).value() -
                           dq(m, l, i).value() * G.gj(m, j).value();
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
    return worst;
}

} // namespace solstat
