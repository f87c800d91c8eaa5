#pragma once
// Renders check reports to JSON and Markdown.  Both forms are deterministic:
// the JSON form serializes with sorted keys, clause and data rows keep their
// insertion order, and nothing environment-dependent (paths, timestamps)
// enters the output, so identical runs produce byte-identical files.

#include <nlohmann/json.hpp>
#include <map>
#include <optional>
#include <string>

#include "recollem/report.hpp"

namespace recollem {

inline constexpr const char* tool_name = "recollem";
inline constexpr const char* tool_version = "0.1.0";

// Run context stamped into every report.
struct ReportMeta {
    std::string subcommand;
    std::string input;  // basename of the primary input file, never a full path
    std::string field;
    std::optional<long long> seed;
    // subcommand-specific scalar results ("status", "holds", ...), merged at
    // the top level of the JSON form
    std::map<std::string, std::string> extra;
};

inline nlohmann::json report_to_json(const CheckReport& r, const ReportMeta& meta) {
    nlohmann::json out;
    out["tool"] = tool_name;
    out["version"] = tool_version;
    out["subcommand"] = meta.subcommand;
    if (!meta.input.empty()) out["input"] = meta.input;
    out["field"] = meta.field;
    if (meta.seed) out["seed"] = *meta.seed;
    for (const auto& [k, v] : meta.extra) out[k] = v;
    out["ok"] = r.ok();

    auto clauses = nlohmann::json::array();
    for (const auto& c : r.clauses) {
        nlohmann::json row;
        row["name"] = c.name;
        row["ok"] = c.ok;
        if (!c.witness.empty()) row["witness"] = c.witness;
        clauses.push_back(std::move(row));
    }
    out["clauses"] = std::move(clauses);

    if (!r.data.empty()) {
        auto rows = nlohmann::json::array();
        for (const auto& [name, value] : r.data) {
            nlohmann::json row;
            row["name"] = name;
            row["value"] = value;
            rows.push_back(std::move(row));
        }
        out["data"] = std::move(rows);
    }
    return out;
}

inline std::string render_report_json(const CheckReport& r, const ReportMeta& meta) {
    return report_to_json(r, meta).dump(2) + "\n";
}

namespace detail {

// Markdown table cells may not contain pipes or line breaks.
inline std::string md_cell(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char ch : s) {
        if (ch == '|')
            out += "\\|";
        else if (ch == '\n')
            out += ' ';
        else
            out += ch;
    }
    return out;
}

}  // namespace detail

inline std::string render_report_markdown(const CheckReport& r, const ReportMeta& meta) {
    std::string out = "# " + std::string(tool_name) + " " + meta.subcommand + " report\n\n";
    out += "- tool: " + std::string(tool_name) + " " + tool_version + "\n";
    if (!meta.input.empty()) out += "- input: " + detail::md_cell(meta.input) + "\n";
    out += "- field: " + meta.field + "\n";
    if (meta.seed) out += "- seed: " + std::to_string(*meta.seed) + "\n";
    for (const auto& [k, v] : meta.extra) out += "- " + k + ": " + detail::md_cell(v) + "\n";
    out += std::string("- result: ") + (r.ok() ? "pass" : "FAIL") + "\n";

    if (!r.clauses.empty()) {
        out += "\n| check | result | witness |\n| --- | --- | --- |\n";
        for (const auto& c : r.clauses)
            out += "| " + detail::md_cell(c.name) + " | " + (c.ok ? "pass" : "FAIL") +
                   " | " + detail::md_cell(c.witness) + " |\n";
    }
    if (!r.data.empty()) {
        out += "\n## Data\n\n| name | value |\n| --- | --- |\n";
        for (const auto& [name, value] : r.data)
            out += "| " + detail::md_cell(name) + " | " + detail::md_cell(value) + " |\n";
    }
    return out;
}

inline std::string render_report(const CheckReport& r, const ReportMeta& meta,
                                 const std::string& format) {
    if (format == "md") return render_report_markdown(r, meta);
    return render_report_json(r, meta);
}

}  // namespace recollem
