#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qff/walk.hpp"

namespace qff {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct Aggregate {
    int n = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double min = 0.0;
    double max = 0.0;
};

Aggregate aggregate(const std::vector<double>& xs);
nlohmann::json aggregate_to_json(const Aggregate& a);

nlohmann::json ledger_to_json(const CostLedger& led, int d);

// versioned envelope every command report starts from
nlohmann::json report_envelope(const std::string& command, const nlohmann::json& config,
                               std::uint64_t seed);

std::string csv_render(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace qff
