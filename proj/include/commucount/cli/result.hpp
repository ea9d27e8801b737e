#pragma once

/**
 * One computed result as emitted by the command-line tool, with its JSON and
 * CSV renderings. Exact values travel as decimal strings.
 */

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace commucount::cli {

inline constexpr const char* kVersion = "1.0.0";

struct CommandResult {
    std::string command;
    std::map<std::string, std::string> params;
    std::string value;
    std::vector<std::pair<std::string, std::string>> diagnostics;
    std::int64_t runtime_ms = 0;

    void add(std::string name, std::string value_text) {
        diagnostics.emplace_back(std::move(name), std::move(value_text));
    }

    friend bool operator==(const CommandResult&, const CommandResult&) = default;
};

/// "k1=v1;k2=v2" with keys sorted.
std::string param_string(const std::map<std::string, std::string>& params);

nlohmann::ordered_json to_json(const CommandResult& result);
/// Throws nlohmann::json::exception or std::invalid_argument on schema errors.
CommandResult from_json(const nlohmann::ordered_json& j);

std::string csv_header();
/// One row per diagnostic; a single row with empty diagnostic columns when
/// there are none.
std::vector<std::string> to_csv_rows(const CommandResult& result);
/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace commucount::cli
