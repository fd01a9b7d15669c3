// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "solstat/errors.hpp"
#include "solstat/jet.hpp"

namespace solstat {

using Point = std::vector<double>;

enum class Variance : std::uint8_t { Upper, Lower };

/// Dense tensor components at a single chart point, with declared index
/// variance. T is double for reported values and Jet inside the derivative
/// pipeline; the index mechanics are identical.
template <class T>
struct TensorData {
    int dim = 0;
    std::vector<Variance> variance;
    std::vector<T> comp;
    Point point;

    TensorData() = default;
    TensorData(int n, std::vector<Variance> var, Point at = {})
        : dim(n), variance(std::move(var)), comp(), point(std::move(at)) {
        std::size_t sz = 1;
        for (std::size_t s = 0; s < variance.size(); ++s) sz *= static_cast<std::size_t>(n);
        comp.resize(sz);
    }

    int rank() const { return static_cast<int>(variance.size()); }
    std::size_t size() const { return comp.size(); }

    T& operator()(int i) { return comp[static_cast<std::size_t>(i)]; }
    const T& operator()(int i) const { return comp[static_cast<std::size_t>(i)]; }
    T& operator()(int i, int j) { return comp[static_cast<std::size_t>(i * dim + j)]; }
    const T& operator()(int i, int j) const { return comp[static_cast<std::size_t>(i * dim + j)]; }
    T& operator()(int i, int j, int k) { return comp[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
    const T& operator()(int i, int j, int k) const {
        return comp[static_cast<std::size_t>((i * dim + j) * dim + k)];
    }
    T& operator()(int i, int j, int k, int l) {
        return comp[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
    }
    const T& operator()(int i, int j, int k, int l) const {
        return comp[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
    }
};

using TensorAtPoint = TensorData<double>;
using JetTensor = TensorData<Jet>;

inline TensorAtPoint values(const JetTensor& t) {
    TensorAtPoint r(t.dim, t.variance, t.point);
    for (std::size_t i = 0; i < t.comp.size(); ++i) r.comp[i] = t.comp[i].value();
    return r;
}

template <class T>
TensorData<T> operator+(const TensorData<T>& a, const TensorData<T>& b) {
    if (a.variance != b.variance || a.dim != b.dim) throw VarianceMismatch("tensor addition shape mismatch");
    TensorData<T> r = a;
    for (std::size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = r.comp[i] + b.comp[i];
    return r;
}

template <class T>
TensorData<T> operator-(const TensorData<T>& a, const TensorData<T>& b) {
    if (a.variance != b.variance || a.dim != b.dim) throw VarianceMismatch("tensor subtraction shape mismatch");
    TensorData<T> r = a;
    for (std::size_t i = 0; i < r.comp.size(); ++i) r.comp[i] = r.comp[i] - b.comp[i];
    return r;
}

template <class T, class S>
TensorData<T> operator*(const S& s, const TensorData<T>& a) {
    TensorData<T> r = a;
    for (auto& c : r.comp) c = s * c;
    return r;
}

inline double max_abs(const TensorAtPoint& t) {
    double m = 0.0;
    for (double v : t.comp) m = std::max(m, std::abs(v));
    return m;
}

namespace detail {
inline std::vector<std::size_t> strides(int dim, int rank) {
    std::vector<std::size_t> s(static_cast<std::size_t>(rank));
    std::size_t acc = 1;
    for (int k = rank - 1; k >= 0; --k) {
        s[static_cast<std::size_t>(k)] = acc;
        acc *= static_cast<std::size_t>(dim);
    }
    return s;
}
} // namespace detail

/// Einstein contraction of one upper against one lower slot.
template <class T>
TensorData<T> contract(const TensorData<T>& t, int slot_a, int slot_b) {
    const int rank = t.rank();
    if (slot_a == slot_b || slot_a < 0 || slot_b < 0 || slot_a >= rank || slot_b >= rank)
        throw VarianceMismatch("contract: bad slot indices");
    if (t.variance[static_cast<std::size_t>(slot_a)] == t.variance[static_cast<std::size_t>(slot_b)])
        throw VarianceMismatch("contract needs one upper and one lower slot");
    std::vector<Variance> rvar;
    std::vector<int> keep;
    for (int s = 0; s < rank; ++s)
        if (s != slot_a && s != slot_b) {
            rvar.push_back(t.variance[static_cast<std::size_t>(s)]);
            keep.push_back(s);
        }
    TensorData<T> r(t.dim, rvar, t.point);
    const auto st = detail::strides(t.dim, rank);
    const auto rst = detail::strides(t.dim, rank - 2);
    const std::size_t diag = st[static_cast<std::size_t>(slot_a)] + st[static_cast<std::size_t>(slot_b)];
    for (std::size_t out = 0; out < r.comp.size(); ++out) {
        std::size_t base = 0;
        for (std::size_t s = 0; s < keep.size(); ++s)
            base += ((out / rst[s]) % static_cast<std::size_t>(t.dim)) * st[static_cast<std::size_t>(keep[s])];
        T acc = t.comp[base] - t.comp[base];  // zero of T with the right shape
        for (int m = 0; m < t.dim; ++m) acc = acc + t.comp[base + static_cast<std::size_t>(m) * diag];
        r.comp[out] = acc;
    }
    return r;
}

/// Raises (with metric_inv) or lowers (with metric) one slot. `metric` is an
/// n*n row-major component array of the same scalar type.
template <class T>
TensorData<T> move_slot(const TensorData<T>& t, int slot, const std::vector<T>& metric, Variance to) {
    const int rank = t.rank();
    if (slot < 0 || slot >= rank) throw VarianceMismatch("raise/lower: bad slot");
    if (t.variance[static_cast<std::size_t>(slot)] == to)
        throw VarianceMismatch("raise/lower: slot already has the requested variance");
    TensorData<T> r(t.dim, t.variance, t.point);
    r.variance[static_cast<std::size_t>(slot)] = to;
    const auto st = detail::strides(t.dim, rank);
    const std::size_t slot_stride = st[static_cast<std::size_t>(slot)];
    const std::size_t total = t.comp.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        const std::size_t m = (idx / slot_stride) % static_cast<std::size_t>(t.dim);
        const std::size_t base = idx - m * slot_stride;
        T acc = metric[0] - metric[0];
        for (int k = 0; k < t.dim; ++k)
            acc = acc + metric[m * static_cast<std::size_t>(t.dim) + static_cast<std::size_t>(k)] *
                            t.comp[base + static_cast<std::size_t>(k) * slot_stride];
        r.comp[idx] = acc;
    }
    return r;
}

inline std::vector<double> lu_inverse(int n, const std::vector<double>& a, double* det_out) {
    std::vector<double> lu = a;
    std::vector<int> piv(static_cast<std::size_t>(n));
    double det = 1.0;
    for (int i = 0; i < n; ++i) piv[static_cast<std::size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int p = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(lu[static_cast<std::size_t>(r * n + col)]) >
                std::abs(lu[static_cast<std::size_t>(p * n + col)]))
                p = r;
        if (p != col) {
            for (int c = 0; c < n; ++c)
                std::swap(lu[static_cast<std::size_t>(p * n + c)], lu[static_cast<std::size_t>(col * n + c)]);
            std::swap(piv[static_cast<std::size_t>(p)], piv[static_cast<std::size_t>(col)]);
            det = -det;
        }
        const double pivot = lu[static_cast<std::size_t>(col * n + col)];
        det *= pivot;
        if (pivot == 0.0) {
            if (det_out) *det_out = 0.0;
            return {};
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = lu[static_cast<std::size_t>(r * n + col)] / pivot;
            lu[static_cast<std::size_t>(r * n + col)] = f;
            for (int c = col + 1; c < n; ++c)
                lu[static_cast<std::size_t>(r * n + c)] -= f * lu[static_cast<std::size_t>(col * n + c)];
        }
    }
    if (det_out) *det_out = det;
    std::vector<double> inv(static_cast<std::size_t>(n * n), 0.0);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = piv[static_cast<std::size_t>(r)] == e ? 1.0 : 0.0;
        for (int r = 1; r < n; ++r)
            for (int c = 0; c < r; ++c)
                col[static_cast<std::size_t>(r)] -= lu[static_cast<std::size_t>(r * n + c)] * col[static_cast<std::size_t>(c)];
        for (int r = n - 1; r >= 0; --r) {
            for (int c = r + 1; c < n; ++c)
                col[static_cast<std::size_t>(r)] -= lu[static_cast<std::size_t>(r * n + c)] * col[static_cast<std::size_t>(c)];
            col[static_cast<std::size_t>(r)] /= lu[static_cast<std::size_t>(r * n + r)];
        }
        for (int r = 0; r < n; ++r) inv[static_cast<std::size_t>(r * n + e)] = col[static_cast<std::size_t>(r)];
    }
    return inv;
}

/// Eigenvalue signs of a symmetric matrix by cyclic Jacobi; enough for the
/// signature check, no ordering guarantees beyond the sorted sign list.
inline std::vector<int> symmetric_eigen_signs(int n, std::vector<double> a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(a[static_cast<std::size_t>(p * n + q)]);
        if (off < 1e-14) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<std::size_t>(p * n + q)];
                if (std::abs(apq) < 1e-300) continue;
                const double theta =
                    0.5 * (a[static_cast<std::size_t>(q * n + q)] - a[static_cast<std::size_t>(p * n + p)]) / apq;
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[static_cast<std::size_t>(k * n + p)];
                    const double akq = a[static_cast<std::size_t>(k * n + q)];
                    a[static_cast<std::size_t>(k * n + p)] = c * akp - s * akq;
                    a[static_cast<std::size_t>(k * n + q)] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[static_cast<std::size_t>(p * n + k)];
                    const double aqk = a[static_cast<std::size_t>(q * n + k)];
                    a[static_cast<std::size_t>(p * n + k)] = c * apk - s * aqk;
                    a[static_cast<std::size_t>(q * n + k)] = s * apk + c * aqk;
                }
            }
    }
    std::vector<int> signs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) signs[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i * n + i)] >= 0.0 ? 1 : -1;
    std::sort(signs.begin(), signs.end());
    return signs;
}

/// Pointwise metric data: components, inverse, determinant, eigenvalue signs.
struct MetricAtPoint {
    int dim = 0;
    TensorAtPoint g;      // (0,2)
    TensorAtPoint g_inv;  // (2,0)
    double det = 0.0;
    std::vector<int> signature;  // sorted -1/+1 eigenvalue signs

    static MetricAtPoint build(TensorAtPoint g_in) {
        MetricAtPoint m;
        m.dim = g_in.dim;
        const int n = m.dim;
        const double scale = max_abs(g_in);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(g_in(i, j) - g_in(j, i)) > 1e-12 * std::max(1.0, scale))
                    throw AsymmetricMetric();
        double det = 0.0;
        std::vector<double> inv = lu_inverse(n, g_in.comp, &det);
        if (std::abs(det) <= 1e-12 * std::pow(std::max(scale, 1e-300), n))
            throw DegenerateMetric("metric determinant below nondegeneracy threshold");
        m.det = det;
        m.g = std::move(g_in);
        m.g_inv = TensorAtPoint(n, {Variance::Upper, Variance::Upper}, m.g.point);
        m.g_inv.comp = std::move(inv);
        m.signature = symmetric_eigen_signs(n, m.g.comp);
        return m;
    }
};

inline TensorAtPoint raise_slot(const TensorAtPoint& t, int slot, const MetricAtPoint& g) {
    return move_slot(t, slot, g.g_inv.comp, Variance::Upper);
}

inline TensorAtPoint lower_slot(const TensorAtPoint& t, int slot, const MetricAtPoint& g) {
    return move_slot(t, slot, g.g.comp, Variance::Lower);
}

/// <A,B>_g = g^{ik} g^{jl} A_{ij} B_{kl} for (0,2) tensors; may be negative in
/// indefinite signature.
inline double inner_02(const TensorAtPoint& a, const TensorAtPoint& b, const MetricAtPoint& g) {
    if (a.rank() != 2 || b.rank() != 2 || a.dim != b.dim) throw VarianceMismatch("inner_02 shape mismatch");
    const int n = a.dim;
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    acc += g.g_inv(i, k) * g.g_inv(j, l) * a(i, j) * b(k, l);
    return acc;
}

inline double norm2_02(const TensorAtPoint& a, const MetricAtPoint& g) { return inner_02(a, a, g); }

inline double vol_density(const MetricAtPoint& g) { return std::sqrt(std::abs(g.det)); }

} // namespace solstat
