// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "solstat/eta.hpp"
#include "solstat/rng.hpp"

namespace solstat {

/// A single-chart manifold description: metric components, optional potential
/// and 1-form data, periodicity and the sampling box. Loaded from JSON or
/// taken from the builtin registry; immutable once constructed.
struct ManifoldSpec {
    std::string name;
    int dim = 0;
    std::vector<int> signature;
    std::vector<std::string> coordinates;
    std::vector<std::string> metric_src;  // n*n row-major
    std::vector<double> periods;          // per coordinate, 0 = aperiodic
    std::vector<std::array<double, 2>> domain;
    std::string f_src;
    std::vector<std::string> oneform_src;
    std::vector<std::string> eta_src;
    std::vector<std::string> j_src;  // n*n
    std::string lambda_src;

    std::vector<Expression> metric_expr;
    Expression f_expr;
    std::vector<Expression> oneform_expr;
    std::vector<Expression> eta_expr;
    std::vector<Expression> j_expr;
    Expression lambda_expr;

    bool compact() const {
        for (double p : periods)
            if (p <= 0.0) return false;
        return true;
    }

    bool has_f() const { return !f_src.empty(); }
    bool has_oneform() const { return !oneform_src.empty(); }
    bool has_eta() const { return !eta_src.empty(); }
    bool has_lambda() const { return !lambda_src.empty(); }
    bool has_j() const { return !j_src.empty(); }

    /// df-level data exists: a potential or a closed 1-form.
    bool has_df_data() const { return has_f() || has_oneform(); }

    Point center() const {
        Point c(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i)
            c[static_cast<std::size_t>(i)] =
                0.5 * (domain[static_cast<std::size_t>(i)][0] + domain[static_cast<std::size_t>(i)][1]);
        return c;
    }

    MetricField metric_field() const { return MetricField::from_exprs(dim, metric_expr); }

    std::optional<ScalarField> f_field() const {
        if (!has_f()) return std::nullopt;
        return scalar_from_expr(dim, f_expr);
    }

    std::optional<ScalarField> lambda_field() const {
        if (!has_lambda()) return std::nullopt;
        return scalar_from_expr(dim, lambda_expr);
    }

    /// The 1-form driving the eta-connection suites: explicit eta if given,
    /// else the df data (oneform, else derived from f by differentiation).
    std::optional<TensorField> eta_field() const {
        if (has_eta()) return field_from_exprs(dim, {Variance::Lower}, eta_expr);
        return df_field();
    }

    /// df as a field: oneform expressions, or eta_i = d_i f from the potential.
    std::optional<TensorField> df_field() const {
        if (has_oneform()) return field_from_exprs(dim, {Variance::Lower}, oneform_expr);
        if (!has_f()) return std::nullopt;
        const Expression fe = f_expr;
        const int n = dim;
        return TensorField{n, {Variance::Lower}, [fe, n](const Point& x) {
                               JetTensor t(n, {Variance::Lower}, x);
                               const Jet fj = fe.eval_jet(x);
                               for (int i = 0; i < n; ++i) t(i) = fj.partial(i);
                               return t;
                           }};
    }

    std::optional<TensorField> j_field() const {
        if (!has_j()) return std::nullopt;
        return field_from_exprs(dim, {Variance::Upper, Variance::Lower}, j_expr);
    }

    /// Parses all sources and probes the chart center. Throws SpecParseError,
    /// AsymmetricMetric or DegenerateMetric on bad data.
    void finalize() {
        if (dim < 1 || dim > 8) throw SpecParseError("dim", "chart dimension must be in [1,8]");
        auto parse_all = [&](const std::vector<std::string>& src, std::vector<Expression>& out,
                             const char* field, std::size_t want) {
            if (src.empty()) return;
            if (src.size() != want)
                throw SpecParseError(field, "expected " + std::to_string(want) + " expressions");
            out.clear();
            for (const std::string& s : src) {
                try {
                    out.push_back(Expression::parse(s));
                } catch (const SyntaxError& err) {
                    throw SpecParseError(field, std::string(err.what()) + " in '" + s + "'");
                }
                out.back().bind(dim);
            }
        };
        parse_all(metric_src, metric_expr, "metric", static_cast<std::size_t>(dim * dim));
        if (metric_src.empty()) throw SpecParseError("metric", "missing");
        parse_all(oneform_src, oneform_expr, "oneform", static_cast<std::size_t>(dim));
        parse_all(eta_src, eta_expr, "eta", static_cast<std::size_t>(dim));
        parse_all(j_src, j_expr, "J", static_cast<std::size_t>(dim * dim));
        if (!f_src.empty()) {
            f_expr = Expression::parse(f_src);
            f_expr.bind(dim);
        }
        if (!lambda_src.empty()) {
            lambda_expr = Expression::parse(lambda_src);
            lambda_expr.bind(dim);
        }
        if (static_cast<int>(coordinates.size()) != dim)
            throw SpecParseError("coordinates", "expected one name per dimension");
        if (static_cast<int>(domain.size()) != dim)
            throw SpecParseError("domain", "expected one [lo,hi] per dimension");
        if (periods.empty()) periods.assign(static_cast<std::size_t>(dim), 0.0);
        if (static_cast<int>(signature.size()) != dim)
            throw SpecParseError("signature", "expected one entry per dimension");
        // symmetry of the component expressions as given
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                if (!same_structure(metric_expr[static_cast<std::size_t>(i * dim + j)],
                                    metric_expr[static_cast<std::size_t>(j * dim + i)]))
                    throw AsymmetricMetric();
        // probe nondegeneracy and the declared signature at the chart center
        const MetricJets G = metric_field().at(center());
        std::vector<int> want = signature;
        std::sort(want.begin(), want.end());
        if (G.value.signature != want)
            throw SpecParseError("signature", "declared signature does not match the metric at the chart center");
    }
};

// ---------------------------------------------------------------------------
// JSON interface. Format: top-level object with exact field names
//   name, dim, signature, coordinates, metric, periodic, domain,
//   f, oneform, eta, J, lambda        (the last five optional)
// metric and J are dim x dim arrays of expression strings; periodic is an
// array of {"coordinate": <name>, "period": <number>}; unknown keys error.
// ---------------------------------------------------------------------------

inline ManifoldSpec manifold_from_json(const nlohmann::ordered_json& j) {
    static const std::vector<std::string> known = {"name",   "dim",     "signature", "coordinates",
                                                   "metric", "periodic", "domain",   "f",
                                                   "oneform", "eta",     "J",        "lambda"};
    if (!j.is_object()) throw SpecParseError("document", "top level must be an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const auto& k : known) ok = ok || item.key() == k;
        if (!ok) throw SpecParseError(item.key(), "unknown field");
    }
    auto need = [&](const char* key) -> const nlohmann::ordered_json& {
        if (!j.contains(key)) throw SpecParseError(key, "missing required field");
        return j.at(key);
    };
    ManifoldSpec m;
    try {
        m.name = need("name").get<std::string>();
        m.dim = need("dim").get<int>();
        m.signature = need("signature").get<std::vector<int>>();
        m.coordinates = need("coordinates").get<std::vector<std::string>>();
        for (const auto& row : need("metric")) {
            if (!row.is_array()) throw SpecParseError("metric", "expected a dim x dim array");
            for (const auto& cell : row) m.metric_src.push_back(cell.get<std::string>());
        }
        for (const auto& box : need("domain"))
            m.domain.push_back({box.at(0).get<double>(), box.at(1).get<double>()});
        m.periods.assign(static_cast<std::size_t>(m.dim), 0.0);
        if (j.contains("periodic")) {
            for (const auto& p : j.at("periodic")) {
                const std::string coord = p.at("coordinate").get<std::string>();
                int idx = -1;
                for (std::size_t c = 0; c < m.coordinates.size(); ++c)
                    if (m.coordinates[c] == coord) idx = static_cast<int>(c);
                if (idx < 0) throw SpecParseError("periodic", "unknown coordinate '" + coord + "'");
                m.periods[static_cast<std::size_t>(idx)] = p.at("period").get<double>();
            }
        }
        if (j.contains("f")) m.f_src = j.at("f").get<std::string>();
        if (j.contains("oneform")) m.oneform_src = j.at("oneform").get<std::vector<std::string>>();
        if (j.contains("eta")) m.eta_src = j.at("eta").get<std::vector<std::string>>();
        if (j.contains("J"))
            for (const auto& row : j.at("J"))
                for (const auto& cell : row) m.j_src.push_back(cell.get<std::string>());
        if (j.contains("lambda")) m.lambda_src = j.at("lambda").get<std::string>();
    } catch (const nlohmann::json::exception& err) {
        throw SpecParseError("document", err.what());
    }
    m.finalize();
    return m;
}

inline ManifoldSpec load_manifold_text(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw SpecParseError("document", err.what());
    }
    return manifold_from_json(j);
}

inline ManifoldSpec load_manifold_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("document", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_manifold_text(ss.str());
}

inline std::string print_manifold(const ManifoldSpec& m) {
    nlohmann::ordered_json j;
    j["name"] = m.name;
    j["dim"] = m.dim;
    j["signature"] = m.signature;
    j["coordinates"] = m.coordinates;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.dim; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < m.dim; ++k) row.push_back(m.metric_src[static_cast<std::size_t>(i * m.dim + k)]);
        rows.push_back(row);
    }
    j["metric"] = rows;
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    for (int i = 0; i < m.dim; ++i)
        if (m.periods[static_cast<std::size_t>(i)] > 0.0)
            per.push_back({{"coordinate", m.coordinates[static_cast<std::size_t>(i)]},
                           {"period", m.periods[static_cast<std::size_t>(i)]}});
    j["periodic"] = per;
    nlohmann::ordered_json dom = nlohmann::ordered_json::array();
    for (const auto& box : m.domain) dom.push_back({box[0], box[1]});
    j["domain"] = dom;
    if (!m.f_src.empty()) j["f"] = m.f_src;
    if (!m.oneform_src.empty()) j["oneform"] = m.oneform_src;
    if (!m.eta_src.empty()) j["eta"] = m.eta_src;
    if (!m.j_src.empty()) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (int i = 0; i < m.dim; ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < m.dim; ++k) row.push_back(m.j_src[static_cast<std::size_t>(i * m.dim + k)]);
            jr.push_back(row);
        }
        j["J"] = jr;
    }
    if (!m.lambda_src.empty()) j["lambda"] = m.lambda_src;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Builtin registry. Entries are JSON documents fed through the same loader as
// external files.
// ---------------------------------------------------------------------------

namespace detail {
inline const std::vector<std::pair<std::string, const char*>>& builtin_documents() {
    static const std::vector<std::pair<std::string, const char*>> docs = {
        {"flat-torus-2", R"json({
            "name": "flat-torus-2", "dim": 2, "signature": [1, 1],
            "coordinates": ["x", "y"],
            "metric": [["1", "0"], ["0", "1"]],
            "periodic": [{"coordinate": "x", "period": 6.283185307179586},
                         {"coordinate": "y", "period": 6.283185307179586}],
            "domain": [[0.0, 6.283185307179586], [0.0, 6.283185307179586]],
            "oneform": ["1", "0"],
            "lambda": "2"
        })json"},
        {"flat-torus-3", R"json({
            "name": "flat-torus-3", "dim": 3, "signature": [1, 1, 1],
            "coordinates": ["x", "y", "z"],
            "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
            "periodic": [{"coordinate": "x", "period": 6.283185307179586},
                         {"coordinate": "y", "period": 6.283185307179586},
                         {"coordinate": "z", "period": 6.283185307179586}],
            "domain": [[0.0, 6.283185307179586], [0.0, 6.283185307179586], [0.0, 6.283185307179586]],
            "oneform": ["1", "0", "0"]
        })json"},
        {"warped-torus-2", R"json({
            "name": "warped-torus-2", "dim": 2, "signature": [1, 1],
            "coordinates": ["x", "y"],
            "metric": [["1", "0"], ["0", "(2 + cos(x0))^2"]],
            "periodic": [{"coordinate": "x", "period": 6.283185307179586},
                         {"coordinate": "y", "period": 6.283185307179586}],
            "domain": [[0.0, 6.283185307179586], [0.0, 6.283185307179586]],
            "oneform": ["1", "0"]
        })json"},
        {"round-sphere-2", R"json({
            "name": "round-sphere-2", "dim": 2, "signature": [1, 1],
            "coordinates": ["theta", "phi"],
            "metric": [["1", "0"], ["0", "sin(x0)^2"]],
            "periodic": [{"coordinate": "phi", "period": 6.283185307179586}],
            "domain": [[0.2, 2.941592653589793], [0.0, 6.283185307179586]],
            "f": "cos(x0)",
            "lambda": "1 - cos(x0)"
        })json"},
        {"hyperbolic-2", R"json({
            "name": "hyperbolic-2", "dim": 2, "signature": [1, 1],
            "coordinates": ["x", "y"],
            "metric": [["1/x1^2", "0"], ["0", "1/x1^2"]],
            "domain": [[-1.0, 1.0], [0.5, 2.0]],
            "f": "log(x1)"
        })json"},
        {"kenmotsu-3", R"json({
            "name": "kenmotsu-3", "dim": 3, "signature": [1, 1, 1],
            "coordinates": ["t", "x", "y"],
            "metric": [["1", "0", "0"], ["0", "exp(2*x0)", "0"], ["0", "0", "exp(2*x0)"]],
            "domain": [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]],
            "f": "x0",
            "eta": ["1", "0", "0"],
            "lambda": "2"
        })json"},
        {"pp-wave-4", R"json({
            "name": "pp-wave-4", "dim": 4, "signature": [-1, 1, 1, 1],
            "coordinates": ["u", "v", "x", "y"],
            "metric": [["x2^2 - x3^2", "1", "0", "0"],
                       ["1", "0", "0", "0"],
                       ["0", "0", "1", "0"],
                       ["0", "0", "0", "1"]],
            "domain": [[-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0], [-1.0, 1.0]],
            "f": "x0",
            "eta": ["1", "0", "0", "0"]
        })json"},
        {"minkowski-2", R"json({
            "name": "minkowski-2", "dim": 2, "signature": [-1, 1],
            "coordinates": ["t", "x"],
            "metric": [["-1", "0"], ["0", "1"]],
            "domain": [[-1.0, 1.0], [-1.0, 1.0]],
            "f": "x0^2 + x1^2"
        })json"},
        {"gradlog-2", R"json({
            "name": "gradlog-2", "dim": 2, "signature": [1, 1],
            "coordinates": ["x", "y"],
            "metric": [["1", "0"], ["0", "1"]],
            "domain": [[-0.5, 0.5], [-1.0, 1.0]],
            "f": "-log(1 - x0)"
        })json"},
    };
    return docs;
}
} // namespace detail

inline std::vector<std::string> builtin_names() {
    std::vector<std::string> names;
    for (const auto& [name, doc] : detail::builtin_documents()) names.push_back(name);
    return names;
}

inline ManifoldSpec builtin(const std::string& name) {
    for (const auto& [n, doc] : detail::builtin_documents())
        if (n == name) return load_manifold_text(doc);
    throw UnknownManifold(name);
}

// ---------------------------------------------------------------------------
// Sampling and seeded random data.
// ---------------------------------------------------------------------------

struct SampleSet {
    std::vector<Point> points;
    int skipped = 0;  // draws rejected by the nondegeneracy guard
};

/// Seeded uniform draws from the chart interior with a boundary margin,
/// skipping (and counting) points where the metric degenerates.
inline SampleSet sample_points(const ManifoldSpec& m, int count, std::uint64_t seed,
                               double margin = 0.05) {
    Rng rng(seed);
    const MetricField g = m.metric_field();
    SampleSet out;
    for (int k = 0; k < count; ++k) {
        Point x(static_cast<std::size_t>(m.dim));
        for (int i = 0; i < m.dim; ++i) {
            const double lo = m.domain[static_cast<std::size_t>(i)][0];
            const double hi = m.domain[static_cast<std::size_t>(i)][1];
            const double pad = margin * (hi - lo);
            x[static_cast<std::size_t>(i)] = rng.uniform(lo + pad, hi - pad);
        }
        try {
            (void)g.at(x);
            out.points.push_back(std::move(x));
        } catch (const DegenerateMetric&) {
            ++out.skipped;
        }
    }
    return out;
}

namespace detail {
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Smooth chart-adapted basis function of coordinate i: a full-period sine on
/// periodic coordinates (so torus data stays globally smooth), a bounded sine
/// of the scaled coordinate otherwise.
inline std::string basis_fn(const ManifoldSpec& m, int i, bool cosine) {
    const double lo = m.domain[static_cast<std::size_t>(i)][0];
    const double hi = m.domain[static_cast<std::size_t>(i)][1];
    const double period = m.periods[static_cast<std::size_t>(i)];
    const double freq = period > 0.0 ? 6.283185307179586 / period : 2.0 / (hi - lo);
    const double mid = period > 0.0 ? lo : 0.5 * (lo + hi);
    const std::string arg = fmt(freq) + "*(x" + std::to_string(i) + " - " + fmt(mid) + ")";
    return (cosine ? "cos(" : "sin(") + arg + ")";
}

inline std::string random_scalar_src(const ManifoldSpec& m, Rng& rng) {
    std::string s = fmt(rng.uniform(-0.5, 0.5));
    for (int i = 0; i < m.dim; ++i) {
        s += " + " + fmt(rng.uniform(-0.7, 0.7)) + "*" + basis_fn(m, i, false);
        s += " + " + fmt(rng.uniform(-0.7, 0.7)) + "*" + basis_fn(m, i, true);
    }
    return s;
}
} // namespace detail

/// The eta-connection data of a spec: the driving 1-form plus the potential
/// when the 1-form is exact with a declared f.
inline std::optional<EtaData> eta_data(const ManifoldSpec& m) {
    auto eta = m.eta_field();
    if (!eta) return std::nullopt;
    EtaData d;
    d.dim = m.dim;
    d.eta = std::move(*eta);
    if (auto f = m.f_field()) d.f = std::move(*f);
    return d;
}

/// Seeded random 1-form with chart-adapted smooth components.
inline TensorField random_one_form(const ManifoldSpec& m, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Expression> comps;
    for (int i = 0; i < m.dim; ++i) comps.push_back(Expression::parse(detail::random_scalar_src(m, rng)));
    return field_from_exprs(m.dim, {Variance::Lower}, std::move(comps));
}

/// Seeded random scalar field (used for f and lambda draws).
inline ScalarField random_scalar_field(const ManifoldSpec& m, std::uint64_t seed) {
    Rng rng(seed);
    return scalar_from_expr(m.dim, Expression::parse(detail::random_scalar_src(m, rng)));
}

} // namespace solstat
