// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace solstat {

enum class Verdict { Pass, Fail, Discrepant, Skipped };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Discrepant: return "DISCREPANT";
        case Verdict::Skipped: return "SKIPPED";
    }
    return "?";
}

/// One named check: per-point residuals, the max, and the verdict. The anchor
/// is a stable formula-style tag for the display being verified.
struct CheckReport {
    std::string id;
    std::string anchor;
    int n_points = 0;
    int skipped_points = 0;
    double max_residual = 0.0;
    double tol = 1e-9;
    Verdict verdict = Verdict::Skipped;
    std::string diagnostics;
    std::vector<double> per_point;
};

inline std::string format_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

/// Stable line-oriented record: fixed field order id|anchor|n_points|max_residual|verdict.
inline std::string structured_line(const CheckReport& r) {
    return r.id + "|" + r.anchor + "|" + std::to_string(r.n_points) + "|" +
           format_residual(r.max_residual) + "|" + verdict_name(r.verdict);
}

inline std::string text_line(const CheckReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "  %-28s %-10s max_residual=%s points=%d%s%s%s", r.id.c_str(),
                  verdict_name(r.verdict), format_residual(r.max_residual).c_str(), r.n_points,
                  r.skipped_points ? (" skipped=" + std::to_string(r.skipped_points)).c_str() : "",
                  r.diagnostics.empty() ? "" : "  ", r.diagnostics.c_str());
    return buf;
}

} // namespace solstat
