// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "solstat/connection.hpp"

namespace solstat {

/// The 1-form data of an eta-connection: eta itself, its g-dual xi, and the
/// optional potential with df = eta.
struct EtaData {
    int dim = 0;
    TensorField eta;              // (0,1)
    std::optional<ScalarField> f; // df = eta when present
};

/// Pointwise jets of eta, xi = eta-sharp and |xi|^2_g.
struct EtaJets {
    std::vector<Jet> eta;
    std::vector<Jet> xi;
    Jet xi_norm2;
};

inline EtaJets eta_jets(const MetricJets& G, std::vector<Jet> eta) {
    EtaJets e;
    e.eta = std::move(eta);
    e.xi = sharp(G, e.eta);
    e.xi_norm2 = Jet::constant(e.eta[0].dim(), 0.0);
    for (int i = 0; i < G.dim; ++i)
        e.xi_norm2 = e.xi_norm2 + e.eta[static_cast<std::size_t>(i)] * e.xi[static_cast<std::size_t>(i)];
    return e;
}

/// eta as jets from a potential: eta_i = d_i f (one order below f).
inline std::vector<Jet> one_form_from_potential(const Jet& f, int n) {
    std::vector<Jet> eta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eta[static_cast<std::size_t>(i)] = f.partial(i);
    return eta;
}

/// Gamma^eta^k_{ij} = Gamma^g^k_{ij} + eta_i d^k_j + eta_j d^k_i + g_{ij} xi^k.
inline JetTensor eta_christoffels(const MetricJets& G, const JetTensor& gam_g, const EtaJets& e) {
    const int n = G.dim;
    JetTensor gam(n, {Variance::Upper, Variance::Lower, Variance::Lower}, gam_g.point);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Jet acc = gam_g(k, i, j) + G.gj(i, j) * e.xi[static_cast<std::size_t>(k)];
                if (k == j) acc = acc + e.eta[static_cast<std::size_t>(i)];
                if (k == i) acc = acc + e.eta[static_cast<std::size_t>(j)];
                gam(k, i, j) = acc;
            }
    return gam;
}

inline ConnectionField build_eta_connection(const MetricField& g, const TensorField& eta) {
    return {g.dim, "eta", [g, eta](const Point& x) {
                const MetricJets G = g.at(x);
                const JetTensor gam_g = christoffel_lc(G.dim, G.g, G.g_inv, x);
                return eta_christoffels(G, gam_g, eta_jets(G, eta.at(x).comp));
            }};
}

/// The closed-form right-hand side of the curvature difference
/// (R^{nabla^eta} - R^{nabla^g})(X,Y)Z, on basis triples, stored like riemann().
inline TensorAtPoint curvature_difference_formula(const MetricJets& G, const JetTensor& gam_g,
                                                  const EtaJets& e) {
    const int n = G.dim;
    const JetTensor nx = covd_vector(gam_g, e.xi);  // (nabla^g_i xi)^k at t(k,i)
    const double xi2 = e.xi_norm2.value();
    auto eta = [&](int i) { return e.eta[static_cast<std::size_t>(i)].value(); };
    auto xiv = [&](int k) { return e.xi[static_cast<std::size_t>(k)].value(); };
    auto gv = [&](int i, int j) { return G.gj(i, j).value(); };
    auto g_nab = [&](int a, int b) {  // g(d_a, nabla_b xi)
        double acc = 0.0;
        for (int m = 0; m < n; ++m) acc += gv(a, m) * nx(m, b).value();
        return acc;
    };
    TensorAtPoint r(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower}, G.x);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double v = 0.0;
                    if (l == k) v += g_nab(j, i) - g_nab(i, j);
                    if (l == i) v += eta(j) * eta(k) + gv(j, k) * xi2 - g_nab(k, j);
                    v += gv(j, k) * nx(l, i).value() - gv(i, k) * nx(l, j).value();
                    if (l == j) v -= eta(i) * eta(k) + gv(i, k) * xi2 - g_nab(k, i);
                    v += (eta(i) * gv(j, k) - eta(j) * gv(i, k)) * xiv(l);
                    r(l, k, i, j) = v;
                }
    return r;
}

/// max |formula - (riemann(eta) - riemann(g))| over all components.
inline double curvature_difference_residual(const MetricJets& G, const JetTensor& gam_g,
                                            const EtaJets& e) {
    const TensorAtPoint form = curvature_difference_formula(G, gam_g, e);
    const JetTensor r_eta = riemann(eta_christoffels(G, gam_g, e));
    const JetTensor r_g = riemann(gam_g);
    double worst = 0.0;
    for (std::size_t t = 0; t < form.comp.size(); ++t)
        worst = std::max(worst,
                         std::abs(form.comp[t] - (r_eta.comp[t].value() - r_g.comp[t].value())));
    return worst;
}

/// Walker-kernel property: with xi null and parallel, the curvature difference
/// lies in ker(eta). Returns max |eta((R^eta - R^g)(X,Y)Z)|.
inline double walker_kernel_residual(const MetricJets& G, const JetTensor& gam_g, const EtaJets& e) {
    const int n = G.dim;
    const JetTensor r_eta = riemann(eta_christoffels(G, gam_g, e));
    const JetTensor r_g = riemann(gam_g);
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0.0;
                for (int l = 0; l < n; ++l)
                    v += e.eta[static_cast<std::size_t>(l)].value() *
                         (r_eta(l, k, i, j).value() - r_g(l, k, i, j).value());
                worst = std::max(worst, std::abs(v));
            }
    return worst;
}

/// Closed-form Ricci of the eta-connection:
/// Ric^eta(Y,Z) = Ric^g(Y,Z) + g(Y,Z){n|xi|^2 + div xi} + (n-2) eta(Y) eta(Z)
///              + g(Y, nabla^g_Z xi) - (n+1) g(Z, nabla^g_Y xi).
inline TensorAtPoint ricci_eta_formula(const MetricJets& G, const JetTensor& gam_g, const EtaJets& e) {
    const int n = G.dim;
    const JetTensor ricg = ricci_of_connection(gam_g);
    const JetTensor nx = covd_vector(gam_g, e.xi);
    double div = 0.0;
    for (int k = 0; k < n; ++k) div += nx(k, k).value();
    const double xi2 = e.xi_norm2.value();
    TensorAtPoint r(n, {Variance::Lower, Variance::Lower}, G.x);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = ricg(j, k).value() + G.gj(j, k).value() * (n * xi2 + div) +
                       (n - 2) * e.eta[static_cast<std::size_t>(j)].value() *
                           e.eta[static_cast<std::size_t>(k)].value();
            for (int m = 0; m < n; ++m)
                v += G.gj(j, m).value() * nx(m, k).value() -
                     (n + 1) * G.gj(k, m).value() * nx(m, j).value();
            r(j, k) = v;
        }
    return r;
}

inline double ricci_eta_residual(const MetricJets& G, const JetTensor& gam_g, const EtaJets& e) {
    const TensorAtPoint form = ricci_eta_formula(G, gam_g, e);
    const JetTensor direct = ricci_of_connection(eta_christoffels(G, gam_g, e));
    double worst = 0.0;
    for (std::size_t t = 0; t < form.comp.size(); ++t)
        worst = std::max(worst, std::abs(form.comp[t] - direct.comp[t].value()));
    return worst;
}

/// Conjugate Ricci symmetry of the dual pair (nabla^eta, nabla^{-eta}).
/// `equality` and `transpose` are the two readings of Ric^eta = Ric^{-eta};
/// `derived_sum` is the identity that actually holds for every eta:
/// Ric^eta + Ric^{-eta} = 2 Ric^g + 2n |xi|^2 g + 2(n-2) eta x eta.
struct ConjugateRicciResiduals {
    double equality = 0.0;
    double transpose = 0.0;
    double derived_sum = 0.0;
};

inline ConjugateRicciResiduals conjugate_ricci_residuals(const MetricJets& G, const JetTensor& gam_g,
                                                         const EtaJets& e) {
    const int n = G.dim;
    EtaJets minus;
    minus.eta.resize(static_cast<std::size_t>(n));
    minus.xi.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        minus.eta[static_cast<std::size_t>(i)] = -e.eta[static_cast<std::size_t>(i)];
        minus.xi[static_cast<std::size_t>(i)] = -e.xi[static_cast<std::size_t>(i)];
    }
    minus.xi_norm2 = e.xi_norm2;
    const JetTensor ric_p = ricci_of_connection(eta_christoffels(G, gam_g, e));
    const JetTensor ric_m = ricci_of_connection(eta_christoffels(G, gam_g, minus));
    const JetTensor ric_g = ricci_of_connection(gam_g);
    ConjugateRicciResiduals r;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double p = ric_p(j, k).value(), m = ric_m(j, k).value();
            r.equality = std::max(r.equality, std::abs(p - m));
            r.transpose = std::max(r.transpose, std::abs(p - ric_m(k, j).value()));
            const double want = 2.0 * ric_g(j, k).value() +
                                2.0 * n * e.xi_norm2.value() * G.gj(j, k).value() +
                                2.0 * (n - 2) * e.eta[static_cast<std::size_t>(j)].value() *
                                    e.eta[static_cast<std::size_t>(k)].value();
            r.derived_sum = std::max(r.derived_sum, std::abs(p + m - want));
        }
    return r;
}

// ---------------------------------------------------------------------------
// Gradient specialization eta = df: the closed-form expansions and their
// checks against the direct pipeline.
// ---------------------------------------------------------------------------

/// Ric^{df} = Ric^g + {n|grad f|^2 + Lap f} g + (n-2) df x df - n Hess^g(f).
inline TensorAtPoint ric_df_formula(const MetricJets& G, const JetTensor& gam_g, const Jet& f) {
    const int n = G.dim;
    const JetTensor ricg = ricci_of_connection(gam_g);
    const std::vector<Jet> xi = gradient(G, f);
    const JetTensor hess = hessian(G, gam_g, xi);
    double xi2 = 0.0, lap = 0.0;
    for (int i = 0; i < n; ++i) {
        xi2 += xi[static_cast<std::size_t>(i)].value() * f.d(i);
    }
    {
        const JetTensor nx = covd_vector(gam_g, xi);
        for (int k = 0; k < n; ++k) lap += nx(k, k).value();
    }
    TensorAtPoint r(n, {Variance::Lower, Variance::Lower}, G.x);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            r(j, k) = ricg(j, k).value() + (n * xi2 + lap) * G.gj(j, k).value() +
                      (n - 2) * f.d(j) * f.d(k) - n * hess(j, k).value();
    return r;
}

/// Hess^{df}(f) = Hess^g(f) + |grad f|^2 g + 2 df x df.
inline TensorAtPoint hess_df_formula(const MetricJets& G, const JetTensor& gam_g, const Jet& f) {
    const int n = G.dim;
    const std::vector<Jet> xi = gradient(G, f);
    const JetTensor hess = hessian(G, gam_g, xi);
    double xi2 = 0.0;
    for (int i = 0; i < n; ++i) xi2 += xi[static_cast<std::size_t>(i)].value() * f.d(i);
    TensorAtPoint r(n, {Variance::Lower, Variance::Lower}, G.x);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r(i, j) = hess(i, j).value() + xi2 * G.gj(i, j).value() + 2.0 * f.d(i) * f.d(j);
    return r;
}

/// Hess^eta(f) = Hess^g(f) + eta(grad f) g + eta x df + df x eta, general eta.
inline double hess_eta_relation_residual(const MetricJets& G, const JetTensor& gam_g,
                                         const EtaJets& e, const Jet& f) {
    const int n = G.dim;
    const std::vector<Jet> gradf = gradient(G, f);
    const JetTensor gam_eta = eta_christoffels(G, gam_g, e);
    const JetTensor direct = hessian(G, gam_eta, gradf);
    const JetTensor hess_g = hessian(G, gam_g, gradf);
    double eta_gradf = 0.0;
    for (int i = 0; i < n; ++i)
        eta_gradf += e.eta[static_cast<std::size_t>(i)].value() * gradf[static_cast<std::size_t>(i)].value();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double want = hess_g(i, j).value() + eta_gradf * G.gj(i, j).value() +
                                e.eta[static_cast<std::size_t>(i)].value() * f.d(j) +
                                e.eta[static_cast<std::size_t>(j)].value() * f.d(i);
            worst = std::max(worst, std::abs(direct(i, j).value() - want));
        }
    return worst;
}

/// div^{(g,nabla^{df})} X = div^{(g,nabla^g)} X + (n+2) df(X), checked on the
/// coordinate fields and on grad f itself.
inline double div_relation_residual(const MetricJets& G, const JetTensor& gam_g, const Jet& f) {
    const int n = G.dim;
    const EtaJets e = eta_jets(G, one_form_from_potential(f, n));
    const JetTensor gam_eta = eta_christoffels(G, gam_g, e);
    double worst = 0.0;
    for (int m = 0; m < n; ++m) {  // X = d_m, a coordinate field: div X = Gamma^k_{km}
        double d_eta = 0.0, d_g = 0.0;
        for (int k = 0; k < n; ++k) {
            d_eta += gam_eta(k, k, m).value();
            d_g += gam_g(k, k, m).value();
        }
        worst = std::max(worst, std::abs(d_eta - d_g - (n + 2) * f.d(m)));
    }
    const double dive = divergence(gam_eta, e.xi).value();
    const double divg = divergence(gam_g, e.xi).value();
    worst = std::max(worst, std::abs(dive - divg - (n + 2) * e.xi_norm2.value()));
    return worst;
}

/// Lap^{df}(h) = Lap^g(h) + (n+2) g(grad f, grad h).
inline double laplace_relation_residual(const MetricJets& G, const JetTensor& gam_g, const Jet& f,
                                        const Jet& h) {
    const int n = G.dim;
    const EtaJets e = eta_jets(G, one_form_from_potential(f, n));
    const JetTensor gam_eta = eta_christoffels(G, gam_g, e);
    const double lap_eta = laplacian(G, gam_eta, h).value();
    const double lap_g = laplacian(G, gam_g, h).value();
    double cross = 0.0;
    const std::vector<Jet> gh = gradient(G, h);
    for (int i = 0; i < n; ++i) cross += f.d(i) * gh[static_cast<std::size_t>(i)].value();
    return std::abs(lap_eta - lap_g - (n + 2) * cross);
}

/// scal^{(g,nabla^{df})} = scal^{(g,nabla^g)} + (n-1)(n+2) |grad f|^2,
/// with the left side computed from the direct Ricci of nabla^{df}.
inline double scal_relation_residual(const MetricJets& G, const JetTensor& gam_g, const Jet& f) {
    const int n = G.dim;
    const EtaJets e = eta_jets(G, one_form_from_potential(f, n));
    const JetTensor ric_df = ricci_of_connection(eta_christoffels(G, gam_g, e));
    const JetTensor ric_g = ricci_of_connection(gam_g);
    const double scal_df = scalar_curvature(G, ric_df).value();
    const double scal_g = scalar_curvature(G, ric_g).value();
    return std::abs(scal_df - scal_g - (n - 1) * (n + 2) * e.xi_norm2.value());
}

/// Residual of the expansion nabla^eta_X xi = nabla^g_X xi + 2 eta(X) xi + |xi|^2 X
/// on the coordinate frame, plus the derived soliton data for the two
/// parallelism equivalences (lambda signs derived, not copied).
struct XiParallelReport {
    double expansion = 0.0;       // the display above
    double xi_parallel = 0.0;     // |nabla^eta xi|
    double eta_parallel = 0.0;    // |nabla^eta eta|
    // xi parallel  <=> (nabla^g, J = 2 eta x xi, xi, lambda = -|xi|^2) soliton
    // eta parallel <=> (nabla^g, J = -2 eta x xi, xi, lambda = +|xi|^2) soliton
    double soliton_residual_xi = 0.0;
    double soliton_residual_eta = 0.0;
};

inline XiParallelReport xi_parallel_soliton(const MetricJets& G, const JetTensor& gam_g,
                                            const EtaJets& e) {
    const int n = G.dim;
    const JetTensor gam_eta = eta_christoffels(G, gam_g, e);
    const JetTensor nx_eta = covd_vector(gam_eta, e.xi);
    const JetTensor nx_g = covd_vector(gam_g, e.xi);
    XiParallelReport rep;
    const double xi2 = e.xi_norm2.value();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const double want = nx_g(k, i).value() +
                                2.0 * e.eta[static_cast<std::size_t>(i)].value() *
                                    e.xi[static_cast<std::size_t>(k)].value() +
                                xi2 * (k == i ? 1.0 : 0.0);
            rep.expansion = std::max(rep.expansion, std::abs(nx_eta(k, i).value() - want));
            rep.xi_parallel = std::max(rep.xi_parallel, std::abs(nx_eta(k, i).value()));
            // (nabla^g, 2 eta x xi, xi, -|xi|^2): residual nabla^g xi + J - lambda I
            const double res_xi = nx_g(k, i).value() +
                                  2.0 * e.eta[static_cast<std::size_t>(i)].value() *
                                      e.xi[static_cast<std::size_t>(k)].value() +
                                  xi2 * (k == i ? 1.0 : 0.0);
            rep.soliton_residual_xi = std::max(rep.soliton_residual_xi, std::abs(res_xi));
            const double res_eta = nx_g(k, i).value() -
                                   2.0 * e.eta[static_cast<std::size_t>(i)].value() *
                                       e.xi[static_cast<std::size_t>(k)].value() -
                                   xi2 * (k == i ? 1.0 : 0.0);
            rep.soliton_residual_eta = std::max(rep.soliton_residual_eta, std::abs(res_eta));
        }
    // nabla^eta eta, lowered: (nabla^eta_i eta)_j = d_i eta_j - Gamma^eta^m_{ij} eta_m
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double v = e.eta[static_cast<std::size_t>(j)].d(i);
            for (int m = 0; m < n; ++m)
                v -= gam_eta(m, i, j).value() * e.eta[static_cast<std::size_t>(m)].value();
            rep.eta_parallel = std::max(rep.eta_parallel, std::abs(v));
        }
    return rep;
}

/// Residual of nabla^eta_xi xi = nabla^g_xi xi + 3 |xi|^2 xi.
inline double geodesic_condition_residual(const MetricJets& G, const JetTensor& gam_g,
                                          const EtaJets& e) {
    const int n = G.dim;
    const JetTensor nx_eta = covd_vector(eta_christoffels(G, gam_g, e), e.xi);
    const JetTensor nx_g = covd_vector(gam_g, e.xi);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        double lhs = 0.0, rhs = 3.0 * e.xi_norm2.value() * e.xi[static_cast<std::size_t>(k)].value();
        for (int i = 0; i < n; ++i) {
            lhs += nx_eta(k, i).value() * e.xi[static_cast<std::size_t>(i)].value();
            rhs += nx_g(k, i).value() * e.xi[static_cast<std::size_t>(i)].value();
        }
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

} // namespace solstat
