#include "qff/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace qff {

Aggregate aggregate(const std::vector<double>& xs) {
    Aggregate a;
    a.n = int(xs.size());
    if (a.n == 0) return a;
    a.min = *std::min_element(xs.begin(), xs.end());
    a.max = *std::max_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) s += x;
    a.mean = s / a.n;
    if (a.n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - a.mean) * (x - a.mean);
        a.stderr_ = std::sqrt(ss / (a.n - 1)) / std::sqrt(double(a.n));
    }
    return a;
}

nlohmann::json aggregate_to_json(const Aggregate& a) {
    return {{"n", a.n}, {"mean", a.mean}, {"stderr", a.stderr_}, {"min", a.min}, {"max", a.max}};
}

nlohmann::json ledger_to_json(const CostLedger& led, int d) {
    return {{"qw_steps", led.qw_steps},
            {"initial_reflections", led.initial_reflections},
            {"classical_rw_steps", led.classical_rw_steps},
            {"charged_queries", charged_queries(led, d)}};
}

nlohmann::json report_envelope(const std::string& command, const nlohmann::json& config,
                               std::uint64_t seed) {
    nlohmann::json rep;
    rep["schema"] = kReportSchema;
    rep["version"] = kVersion;
    rep["command"] = command;
    rep["config"] = config;
    rep["seed"] = seed;
    return rep;
}

std::string csv_render(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            double x = row[i];
            if (x == std::floor(x) && std::abs(x) < 1e15)
                std::snprintf(buf, sizeof buf, "%.0f", x);
            else
                std::snprintf(buf, sizeof buf, "%.10g", x);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace qff
