#pragma once
// Pass/fail clause lists returned by the verification entry points.  A clause
// keeps its witness only on failure so reports stay small when everything
// holds.

#include <string>
#include <utility>
#include <vector>

namespace recollem {

struct CheckClause {
    std::string name;
    bool ok = false;
    std::string witness;  // empty when ok
};

struct CheckReport {
    std::vector<CheckClause> clauses;
    // informational rows (dimension tables and the like); never affect ok()
    std::vector<std::pair<std::string, std::string>> data;

    void add(const std::string& name, bool ok, const std::string& witness) {
        clauses.push_back({name, ok, ok ? std::string() : witness});
    }

    void add_data(const std::string& name, const std::string& value) {
        data.emplace_back(name, value);
    }

    bool ok() const {
        for (const auto& c : clauses)
            if (!c.ok) return false;
        return true;
    }
};

}  // namespace recollem
