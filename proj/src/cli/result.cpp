#include "commucount/cli/result.hpp"

#include <stdexcept>

namespace commucount::cli {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string param_string(const std::map<std::string, std::string>& params) {
    std::string out;
    for (const auto& [k, v] : params) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out;
}

nlohmann::ordered_json to_json(const CommandResult& result) {
    nlohmann::ordered_json j;
    j["command"] = result.command;
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.params) j["params"][k] = v;
    j["value"] = result.value;
    j["diagnostics"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.diagnostics) j["diagnostics"][k] = v;
    j["runtime_ms"] = result.runtime_ms;
    return j;
}

CommandResult from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("result is not a JSON object");
    CommandResult out;
    out.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("params").items()) out.params[k] = v.get<std::string>();
    out.value = j.at("value").get<std::string>();
    for (const auto& [k, v] : j.at("diagnostics").items()) out.diagnostics.emplace_back(k, v.get<std::string>());
    out.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
    return out;
}

std::string csv_header() { return "command,param_string,value,diagnostic_name,diagnostic_value,runtime_ms"; }

std::vector<std::string> to_csv_rows(const CommandResult& result) {
    const std::string prefix =
        csv_field(result.command) + "," + csv_field(param_string(result.params)) + "," + csv_field(result.value) + ",";
    const std::string suffix = "," + std::to_string(result.runtime_ms);
    std::vector<std::string> rows;
    for (const auto& [name, value] : result.diagnostics) {
        rows.push_back(prefix + csv_field(name) + "," + csv_field(value) + suffix);
    }
    if (rows.empty()) rows.push_back(prefix + "," + suffix);
    return rows;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

}  // namespace commucount::cli
