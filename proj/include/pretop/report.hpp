#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace pretop::cli {

/// Check outcome in both human and machine form. The machine form is
/// byte-deterministic: wall-clock timing appears only in the text rendering.
struct Report {
    std::string command;
    std::string verdict;  // pass | fail | pass-up-to-bound | input-error
    std::vector<std::string> witnesses;
    // numeric claims with their origin, e.g. ("levels", "0 1 2 5 26 @ wtype chain")
    std::vector<std::pair<std::string, std::string>> claims;
    double elapsed_ms = 0.0;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
    int exit_code(bool strict) const;

    void claim(const std::string& name, const std::string& value, const std::string& origin);
};

} // namespace pretop::cli
