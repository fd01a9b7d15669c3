// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "solstat/errors.hpp"

namespace solstat {

/// Truncated order-3 forward-mode derivative bundle of a scalar at a point.
///
/// Stores the raw partial derivatives d^a f (not divided Taylor coefficients)
/// for every multi-index a with |a| <= 3 over `dim` variables, mixed partials
/// once per sorted index tuple. Order is fixed at 3 globally: first derivatives
/// of the metric give Christoffel symbols, second give curvature, third feed
/// covariant derivatives of curvature and Hessians.
///
/// `valid_order` tracks how many derivative orders are still meaningful:
/// differentiating (partial()) loses one order, arithmetic takes the min of its
/// operands. Reading a coefficient above valid_order is a logic error.
class Jet {
public:
    static constexpr int kOrder = 3;
    static constexpr int kMaxDim = 8;

    Jet() = default;

    static Jet constant(int dim, double v) {
        Jet j(dim);
        j.c_[0] = v;
        return j;
    }

    /// Seed jet of coordinate i at coordinate value xi.
    static Jet variable(int dim, int i, double xi) {
        if (i < 0 || i >= dim) throw Error("jet variable index out of range");
        Jet j(dim);
        j.c_[0] = xi;
        j.c_[1 + i] = 1.0;
        return j;
    }

    int dim() const { return n_; }
    int valid_order() const { return valid_; }
    int size() const { return static_cast<int>(c_.size()); }

    double value() const { return c_[0]; }

    double d(int i) const {
        check_order(1);
        return c_[1 + i];
    }

    double d2(int i, int j) const {
        check_order(2);
        if (i > j) std::swap(i, j);
        return c_[idx2(i, j)];
    }

    double d3(int i, int j, int k) const {
        check_order(3);
        sort3(i, j, k);
        return c_[idx3(i, j, k)];
    }

    /// The jet of the scalar field d_i f, one order shorter.
    Jet partial(int i) const {
        if (valid_ < 1) throw std::logic_error("partial() of an order-0 jet");
        Jet r(n_);
        r.valid_ = valid_ - 1;
        r.c_[0] = c_[1 + i];
        for (int j = 0; j < n_; ++j) r.c_[1 + j] = c_[idx2s(i, j)];
        if (valid_ >= 3) {
            for (int j = 0; j < n_; ++j)
                for (int k = j; k < n_; ++k) r.c_[idx2(j, k)] = c_[idx3s(i, j, k)];
        }
        return r;
    }

    friend Jet operator-(const Jet& a) {
        Jet r = a;
        for (double& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = a.merge_shape(b);
        for (int t = 0; t < r.size(); ++t) r.c_[t] = a.c_[t] + b.c_[t];
        r.clear_tail();
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = a.merge_shape(b);
        for (int t = 0; t < r.size(); ++t) r.c_[t] = a.c_[t] - b.c_[t];
        r.clear_tail();
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r = a.merge_shape(b);
        const int n = r.n_;
        r.c_[0] = a.c_[0] * b.c_[0];
        for (int i = 0; i < n; ++i)
            r.c_[1 + i] = a.c_[1 + i] * b.c_[0] + a.c_[0] * b.c_[1 + i];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                r.c_[r.idx2(i, j)] = a.c_[a.idx2(i, j)] * b.c_[0] + a.c_[0] * b.c_[b.idx2(i, j)] +
                                     a.c_[1 + i] * b.c_[1 + j] + a.c_[1 + j] * b.c_[1 + i];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    r.c_[r.idx3(i, j, k)] =
                        a.c_[a.idx3(i, j, k)] * b.c_[0] + a.c_[0] * b.c_[b.idx3(i, j, k)] +
                        a.c_[a.idx2(i, j)] * b.c_[1 + k] + a.c_[a.idx2s(i, k)] * b.c_[1 + j] +
                        a.c_[a.idx2(j, k)] * b.c_[1 + i] + a.c_[1 + i] * b.c_[b.idx2(j, k)] +
                        a.c_[1 + j] * b.c_[b.idx2s(i, k)] + a.c_[1 + k] * b.c_[b.idx2(i, j)];
        r.clear_tail();
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.c_[0] == 0.0) throw DivisionByZero();
        const double v = b.c_[0];
        return a * compose(b, 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), -6.0 / (v * v * v * v));
    }

    friend Jet operator+(const Jet& a, double s) { Jet r = a; r.c_[0] += s; return r; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { Jet r = a; r.c_[0] -= s; return r; }
    friend Jet operator-(double s, const Jet& a) { Jet r = -a; r.c_[0] += s; return r; }
    friend Jet operator*(const Jet& a, double s) {
        Jet r = a;
        for (double& v : r.c_) v *= s;
        return r;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) {
        if (s == 0.0) throw DivisionByZero();
        return a * (1.0 / s);
    }
    friend Jet operator/(double s, const Jet& a) { return constant(a.n_, s) / a; }

    Jet& operator+=(const Jet& b) { *this = *this + b; return *this; }
    Jet& operator-=(const Jet& b) { *this = *this - b; return *this; }
    Jet& operator*=(const Jet& b) { *this = *this * b; return *this; }

    /// Composition with a univariate function given by its derivatives at value():
    /// propagates f(u), f'(u), f''(u), f'''(u) through the stored partials.
    static Jet compose(const Jet& u, double f0, double f1, double f2, double f3) {
        const int n = u.n_;
        Jet r(n);
        r.valid_ = u.valid_;
        r.c_[0] = f0;
        for (int i = 0; i < n; ++i) r.c_[1 + i] = f1 * u.c_[1 + i];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                r.c_[r.idx2(i, j)] = f2 * u.c_[1 + i] * u.c_[1 + j] + f1 * u.c_[u.idx2(i, j)];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    r.c_[r.idx3(i, j, k)] =
                        f3 * u.c_[1 + i] * u.c_[1 + j] * u.c_[1 + k] +
                        f2 * (u.c_[u.idx2(i, j)] * u.c_[1 + k] + u.c_[u.idx2s(i, k)] * u.c_[1 + j] +
                              u.c_[u.idx2(j, k)] * u.c_[1 + i]) +
                        f1 * u.c_[u.idx3(i, j, k)];
        r.clear_tail();
        return r;
    }

    /// True when every stored derivative coefficient is exactly zero.
    bool is_constant() const {
        for (std::size_t t = 1; t < c_.size(); ++t)
            if (c_[t] != 0.0) return false;
        return true;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
        os << "jet(" << j.c_[0];
        for (std::size_t t = 1; t < j.c_.size(); ++t) os << ", " << j.c_[t];
        return os << ")";
    }

private:
    explicit Jet(int dim) : n_(dim), valid_(kOrder), c_(storage_size(dim), 0.0) {
        if (dim < 1 || dim > kMaxDim) throw Error("jet dimension out of range [1,8]");
    }

    static int storage_size(int n) { return 1 + n + n * (n + 1) / 2 + n * (n + 1) * (n + 2) / 6; }

    // rank of sorted pair (i<=j), then sorted triple (i<=j<=k), within their blocks
    int idx2(int i, int j) const { return 1 + n_ + (i * (2 * n_ - i - 1)) / 2 + j; }
    int idx2s(int i, int j) const { return i <= j ? idx2(i, j) : idx2(j, i); }
    int idx3(int i, int j, int k) const {
        int off = 0;
        for (int t = 0; t < i; ++t) off += (n_ - t) * (n_ - t + 1) / 2;
        const int m = n_ - i, jj = j - i, kk = k - i;
        return 1 + n_ + n_ * (n_ + 1) / 2 + off + (jj * (2 * m - jj - 1)) / 2 + kk;
    }
    int idx3s(int i, int j, int k) const {
        sort3(i, j, k);
        return idx3(i, j, k);
    }

    static void sort3(int& i, int& j, int& k) {
        if (i > j) std::swap(i, j);
        if (j > k) std::swap(j, k);
        if (i > j) std::swap(i, j);
    }

    void check_order(int o) const {
        if (valid_ < o) throw std::logic_error("jet coefficient read above valid order");
    }

    Jet merge_shape(const Jet& b) const {
        if (n_ != b.n_) throw Error("jet dimension mismatch");
        Jet r(n_);
        r.valid_ = std::min(valid_, b.valid_);
        return r;
    }

    // Coefficients above valid_order are forced to zero so results stay deterministic.
    void clear_tail() {
        if (valid_ >= kOrder) return;
        const int ends[4] = {1, 1 + n_, 1 + n_ + n_ * (n_ + 1) / 2, size()};
        std::fill(c_.begin() + ends[valid_], c_.end(), 0.0);
    }

    int n_ = 0;
    int valid_ = 0;
    std::vector<double> c_;
};

namespace detail {
inline bool near_integer(double p) { return std::abs(p - std::round(p)) == 0.0 && std::abs(p) < 1e15; }
}

inline Jet sin(const Jet& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return Jet::compose(u, s, c, -s, -c);
}

inline Jet cos(const Jet& u) {
    const double s = std::sin(u.value()), c = std::cos(u.value());
    return Jet::compose(u, c, -s, -c, s);
}

inline Jet tan(const Jet& u) {
    const double t = std::tan(u.value()), w = 1.0 + t * t;
    return Jet::compose(u, t, w, 2.0 * t * w, w * (2.0 + 6.0 * t * t));
}

inline Jet exp(const Jet& u) {
    const double e = std::exp(u.value());
    return Jet::compose(u, e, e, e, e);
}

inline Jet log(const Jet& u) {
    const double v = u.value();
    if (v <= 0.0) throw DomainError("log of non-positive value");
    return Jet::compose(u, std::log(v), 1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

inline Jet sinh(const Jet& u) {
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    return Jet::compose(u, s, c, s, c);
}

inline Jet cosh(const Jet& u) {
    const double s = std::sinh(u.value()), c = std::cosh(u.value());
    return Jet::compose(u, c, s, c, s);
}

inline Jet tanh(const Jet& u) {
    const double t = std::tanh(u.value()), w = 1.0 - t * t;
    return Jet::compose(u, t, w, -2.0 * t * w, w * (6.0 * t * t - 2.0));
}

inline Jet sqrt(const Jet& u) {
    const double v = u.value();
    if (v <= 0.0) throw DomainError("sqrt of non-positive value");
    const double r = std::sqrt(v);
    return Jet::compose(u, r, 0.5 / r, -0.25 / (r * v), 0.375 / (r * v * v));
}

inline Jet abs(const Jet& u) {
    const double v = u.value();
    if (v == 0.0) throw DomainError("abs is not differentiable at 0");
    return v > 0.0 ? u : -u;
}

/// u^p for constant exponent. Negative bases are allowed for integer p;
/// base 0 needs a non-negative integer p.
inline Jet pow(const Jet& u, double p) {
    const double v = u.value();
    const bool integer = detail::near_integer(p);
    if (v < 0.0 && !integer) throw DomainError("pow of negative base with non-integer exponent");
    if (v == 0.0 && (!integer || p < 0.0)) throw DomainError("pow of zero base with negative or non-integer exponent");
    const double m1 = p, m2 = p * (p - 1.0), m3 = m2 * (p - 2.0);
    auto term = [&](double factor, double e) {
        if (factor == 0.0) return 0.0;
        if (v == 0.0) return e > 0.0 ? 0.0 : (e == 0.0 ? factor : throw DomainError("pow: derivative singular at 0"));
        return factor * std::pow(v, e);
    };
    return Jet::compose(u, std::pow(v, p), term(m1, p - 1.0), term(m2, p - 2.0), term(m3, p - 3.0));
}

inline Jet pow(const Jet& u, const Jet& w) {
    if (w.is_constant()) return pow(u, w.value());
    if (u.value() <= 0.0) throw DomainError("pow with varying exponent needs a positive base");
    return exp(w * log(u));
}

} // namespace solstat
