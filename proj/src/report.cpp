#include "pretop/report.hpp"

namespace pretop::cli {

void Report::claim(const std::string& name, const std::string& value,
                   const std::string& origin) {
    claims.push_back({name, value + " @ " + origin});
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["verdict"] = verdict;
    j["witnesses"] = witnesses;
    nlohmann::ordered_json cl = nlohmann::ordered_json::object();
    for (const auto& [k, v] : claims) cl[k] = v;
    j["claims"] = cl;
    return j;
}

std::string Report::to_text() const {
    std::string out = command + ": " + verdict + "\n";
    for (const auto& [k, v] : claims) out += "  " + k + " = " + v + "\n";
    for (const auto& w : witnesses) out += "  ! " + w + "\n";
    out += "  (" + std::to_string(elapsed_ms) + " ms)\n";
    return out;
}

int Report::exit_code(bool strict) const {
    if (verdict == "pass") return 0;
    if (verdict == "pass-up-to-bound") return strict ? 1 : 2;
    if (verdict == "fail") return 1;
    return 3;
}

} // namespace pretop::cli
