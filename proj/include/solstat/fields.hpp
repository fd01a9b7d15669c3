// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "solstat/expr.hpp"
#include "solstat/tensor.hpp"

namespace solstat {

/// The coordinate basis at a point. All "for any X, Y, Z" displays are checked
/// on this frame; multilinearity over functions makes basis evaluation
/// exhaustive for pointwise identities.
struct FrameAtPoint {
    int dim = 0;
};

/// Inverse of an n*n matrix of jets by Gauss-Jordan with value-magnitude
/// pivoting. The caller is responsible for a nondegeneracy check at value
/// level; a zero pivot still throws.
inline std::vector<Jet> jet_matrix_inverse(int n, std::vector<Jet> m) {
    std::vector<Jet> inv(static_cast<std::size_t>(n * n));
    const int dim = m[0].dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv[static_cast<std::size_t>(i * n + j)] = Jet::constant(dim, i == j ? 1.0 : 0.0);
    for (int col = 0; col < n; ++col) {
        int p = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[static_cast<std::size_t>(r * n + col)].value()) >
                std::abs(m[static_cast<std::size_t>(p * n + col)].value()))
                p = r;
        if (p != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m[static_cast<std::size_t>(p * n + c)], m[static_cast<std::size_t>(col * n + c)]);
                std::swap(inv[static_cast<std::size_t>(p * n + c)], inv[static_cast<std::size_t>(col * n + c)]);
            }
        if (m[static_cast<std::size_t>(col * n + col)].value() == 0.0)
            throw DegenerateMetric("singular matrix in jet inverse");
        const Jet piv = m[static_cast<std::size_t>(col * n + col)];
        for (int c = 0; c < n; ++c) {
            m[static_cast<std::size_t>(col * n + c)] = m[static_cast<std::size_t>(col * n + c)] / piv;
            inv[static_cast<std::size_t>(col * n + c)] = inv[static_cast<std::size_t>(col * n + c)] / piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Jet f = m[static_cast<std::size_t>(r * n + col)];
            if (f.max_abs_coeff() == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                m[static_cast<std::size_t>(r * n + c)] =
                    m[static_cast<std::size_t>(r * n + c)] - f * m[static_cast<std::size_t>(col * n + c)];
                inv[static_cast<std::size_t>(r * n + c)] =
                    inv[static_cast<std::size_t>(r * n + c)] - f * inv[static_cast<std::size_t>(col * n + c)];
            }
        }
    }
    return inv;
}

/// Jet-valued metric data at one point: components, inverse (both rings) and
/// the value-level MetricAtPoint with determinant and signature.
struct MetricJets {
    int dim = 0;
    Point x;
    std::vector<Jet> g;      // n*n jets
    std::vector<Jet> g_inv;  // n*n jets
    MetricAtPoint value;

    const Jet& gj(int i, int j) const { return g[static_cast<std::size_t>(i * dim + j)]; }
    const Jet& gup(int i, int j) const { return g_inv[static_cast<std::size_t>(i * dim + j)]; }
};

struct ScalarField {
    int dim = 0;
    std::function<Jet(const Point&)> eval;
    Jet at(const Point& x) const { return eval(x); }
};

/// Tensor-valued field evaluated as jets. The evaluator owns whatever it
/// captured (expressions, connections, other fields); fields are immutable
/// and evaluation is pure.
struct TensorField {
    int dim = 0;
    std::vector<Variance> variance;
    std::function<JetTensor(const Point&)> eval;
    JetTensor at(const Point& x) const { return eval(x); }
};

/// Coefficients of an affine connection, jet-valued so curvature (one
/// derivative) and curvature derivatives (two) stay available. Storage is a
/// (1,2) tensor with t(k,i,j) = Gamma^k_{ij}; torsion is not assumed zero.
struct ConnectionField {
    int dim = 0;
    std::string provenance;  // levi-civita | eta | dual | custom
    std::function<JetTensor(const Point&)> christoffels;
    JetTensor at(const Point& x) const { return christoffels(x); }
};

inline ScalarField scalar_from_expr(int dim, const Expression& e) {
    e.bind(dim);
    return {dim, [e, dim](const Point& x) {
                if (static_cast<int>(x.size()) != dim) throw Error("point dimension mismatch");
                return e.eval_jet(x);
            }};
}

inline TensorField field_from_exprs(int dim, std::vector<Variance> var, std::vector<Expression> comps) {
    std::size_t want = 1;
    for (std::size_t s = 0; s < var.size(); ++s) want *= static_cast<std::size_t>(dim);
    if (comps.size() != want) throw Error("component count does not match rank");
    for (const auto& e : comps) e.bind(dim);
    return {dim, var, [dim, var, comps](const Point& x) {
                JetTensor t(dim, var, x);
                for (std::size_t i = 0; i < comps.size(); ++i) t.comp[i] = comps[i].eval_jet(x);
                return t;
            }};
}

struct MetricField {
    int dim = 0;
    std::function<std::vector<Jet>(const Point&)> components;  // n*n symmetric

    MetricJets at(const Point& x) const {
        MetricJets m;
        m.dim = dim;
        m.x = x;
        m.g = components(x);
        TensorAtPoint gv(dim, {Variance::Lower, Variance::Lower}, x);
        for (std::size_t i = 0; i < m.g.size(); ++i) gv.comp[i] = m.g[i].value();
        m.value = MetricAtPoint::build(std::move(gv));  // throws DegenerateMetric / AsymmetricMetric
        m.g_inv = jet_matrix_inverse(dim, m.g);
        return m;
    }

    static MetricField from_exprs(int dim, std::vector<Expression> comps) {
        if (comps.size() != static_cast<std::size_t>(dim * dim)) throw Error("metric needs dim*dim expressions");
        for (const auto& e : comps) e.bind(dim);
        return {dim, [dim, comps](const Point& x) {
                    std::vector<Jet> g(static_cast<std::size_t>(dim * dim));
                    for (std::size_t i = 0; i < g.size(); ++i) g[i] = comps[i].eval_jet(x);
                    return g;
                }};
    }
};

/// g-dual vector field of a 1-form as jets: xi^k = g^{kl} eta_l.
inline std::vector<Jet> sharp(const MetricJets& G, const std::vector<Jet>& eta) {
    const int n = G.dim;
    std::vector<Jet> xi(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Jet acc = Jet::constant(eta[0].dim(), 0.0);
        for (int l = 0; l < n; ++l) acc = acc + G.gup(k, l) * eta[static_cast<std::size_t>(l)];
        xi[static_cast<std::size_t>(k)] = acc;
    }
    return xi;
}

} // namespace solstat
