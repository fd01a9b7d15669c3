// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "solstat/suites.hpp"

namespace solstat {

/// Output of one CLI command: exit status plus the rendered report.
/// Exit codes: 0 clean (DISCREPANT/SKIPPED allowed), 1 any FAIL, 2 input error.
struct CommandResult {
    int exit_code = 0;
    std::string output;
};

enum class OutputFormat { Text, Structured };

inline ManifoldSpec resolve_manifold(const std::string& ref) {
    constexpr const char* prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) return builtin(ref.substr(std::string(prefix).size()));
    return load_manifold_file(ref);
}

inline std::string render_reports(const std::string& manifold, const std::vector<CheckReport>& reports,
                                  OutputFormat format) {
    std::ostringstream os;
    int pass = 0, fail = 0, discrepant = 0, skipped = 0;
    for (const CheckReport& r : reports) {
        switch (r.verdict) {
            case Verdict::Pass: ++pass; break;
            case Verdict::Fail: ++fail; break;
            case Verdict::Discrepant: ++discrepant; break;
            case Verdict::Skipped: ++skipped; break;
        }
    }
    if (format == OutputFormat::Structured) {
        for (const CheckReport& r : reports) os << manifold << "|" << structured_line(r) << "\n";
    } else {
        os << manifold << ":\n";
        for (const CheckReport& r : reports) os << text_line(r) << "\n";
        os << "  summary: " << pass << " pass, " << fail << " fail, " << discrepant
           << " discrepant, " << skipped << " skipped\n";
    }
    return os.str();
}

/// `check`: run a named suite over one manifold or over every builtin.
inline CommandResult cmd_check(const std::string& manifold_ref, const std::string& suite,
                               const SuiteConfig& cfg, OutputFormat format) {
    CommandResult res;
    std::ostringstream os;
    std::vector<std::string> targets;
    try {
        if (manifold_ref == "builtin:all") {
            for (const auto& n : builtin_names()) targets.push_back("builtin:" + n);
        } else {
            targets.push_back(manifold_ref);
        }
        bool any_fail = false;
        for (const std::string& t : targets) {
            const ManifoldSpec m = resolve_manifold(t);
            const auto reports = run_suite(m, suite, cfg);
            os << render_reports(m.name, reports, format);
            for (const CheckReport& r : reports) any_fail = any_fail || r.verdict == Verdict::Fail;
        }
        res.exit_code = any_fail ? 1 : 0;
    } catch (const Error& err) {
        os << "error: " << err.what() << "\n";
        res.exit_code = 2;
    }
    res.output = os.str();
    return res;
}

/// `volume`: compare vol(M) by quadrature with a named volume formula.
inline CommandResult cmd_volume(const std::string& manifold_ref, const std::string& formula,
                                const SuiteConfig& cfg, OutputFormat format) {
    CommandResult res;
    std::ostringstream os;
    try {
        const ManifoldSpec m = resolve_manifold(manifold_ref);
        if (!m.compact()) throw NonCompactManifold(m.name);
        if (!m.has_df_data())
            throw SpecParseError("oneform", "volume formulas need df data on '" + m.name + "'");
        const PeriodicGrid grid = PeriodicGrid::make(
            [&] {
                std::vector<double> lo;
                for (const auto& box : m.domain) lo.push_back(box[0]);
                return lo;
            }(),
            m.periods, cfg.grid);
        const MetricField g = m.metric_field();
        const ClosedOneFormPotential df{*m.df_field(), m.has_f()};
        const auto lam = m.lambda_field();

        std::vector<VolumeFormula> formulas;
        if (formula == "all") {
            formulas = {VolumeFormula::PropP,      VolumeFormula::PropBochnerForm,
                        VolumeFormula::ZeroRemark, VolumeFormula::SolitonGdf,
                        VolumeFormula::SolitonDfg, VolumeFormula::RemarkI,
                        VolumeFormula::RemarkII};
        } else {
            bool found = false;
            for (VolumeFormula f : {VolumeFormula::PropP, VolumeFormula::PropBochnerForm,
                                    VolumeFormula::ZeroRemark, VolumeFormula::SolitonGdf,
                                    VolumeFormula::SolitonDfg, VolumeFormula::RemarkI,
                                    VolumeFormula::RemarkII})
                if (formula == volume_formula_name(f)) {
                    formulas = {f};
                    found = true;
                }
            if (!found) throw Error("unknown volume formula: " + formula);
        }

        bool any_fail = false;
        for (VolumeFormula f : formulas) {
            const VolumeReport rep = volume_formula_check(grid, g, df, lam ? &*lam : nullptr, f);
            Verdict verdict = Verdict::Skipped;
            if (rep.status == VolumeStatus::Ok)
                verdict = rep.rel_residual <= cfg.quad_tol ? Verdict::Pass : Verdict::Fail;
            any_fail = any_fail || verdict == Verdict::Fail;
            if (format == OutputFormat::Structured) {
                os << m.name << "|volume." << volume_formula_name(f) << "|vol=" << format_residual(rep.vol)
                   << "|rhs=" << format_residual(rep.rhs) << "|" << format_residual(rep.rel_residual)
                   << "|" << verdict_name(verdict) << "\n";
            } else {
                os << m.name << " " << volume_formula_name(f) << ": ";
                if (rep.status == VolumeStatus::Ok) {
                    os << "vol=" << rep.vol << " formula=" << rep.rhs
                       << " rel_residual=" << format_residual(rep.rel_residual) << " "
                       << verdict_name(verdict) << "\n";
                } else {
                    const char* why = rep.status == VolumeStatus::NonconstantGradientNorm
                                          ? "nonconstant |grad f|"
                                          : rep.status == VolumeStatus::ZeroGradient ? "zero gradient"
                                          : rep.status == VolumeStatus::SolitonHypothesisFailed
                                                ? "soliton hypothesis failed"
                                                : rep.status == VolumeStatus::ThresholdViolation
                                                      ? "lambda threshold violated"
                                                      : "not applicable";
                    os << "SKIPPED (" << why << (rep.note.empty() ? "" : "; " + rep.note) << ")\n";
                }
            }
        }
        res.exit_code = any_fail ? 1 : 0;
    } catch (const Error& err) {
        os << "error: " << err.what() << "\n";
        res.exit_code = 2;
    }
    res.output = os.str();
    return res;
}

/// `catalog list` and `catalog show <name>`.
inline CommandResult cmd_catalog(const std::string& action, const std::string& name = "") {
    CommandResult res;
    std::ostringstream os;
    try {
        if (action == "list") {
            for (const auto& n : builtin_names()) os << n << "\n";
        } else if (action == "show") {
            os << print_manifold(builtin(name));
        } else {
            throw Error("unknown catalog action: " + action);
        }
    } catch (const Error& err) {
        os << "error: " << err.what() << "\n";
        res.exit_code = 2;
    }
    res.output = os.str();
    return res;
}

} // namespace solstat
