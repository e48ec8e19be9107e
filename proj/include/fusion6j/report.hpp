#pragma once

#include <string>
#include <vector>

namespace fusion6j {

struct ReportEntry {
    std::string code;
    std::string detail;
};

// Violations are report entries, not failures; an empty report means all
// checked invariants hold.
struct ValidationReport {
    std::vector<ReportEntry> entries;

    bool ok() const { return entries.empty(); }

    void add(std::string code, std::string detail) {
        entries.push_back({std::move(code), std::move(detail)});
    }

    std::string summary() const {
        if (ok()) return "ok";
        std::string s;
        for (auto& e : entries) {
            s += e.code;
            s += ": ";
            s += e.detail;
            s += "\n";
        }
        return s;
    }
};

} // namespace fusion6j
