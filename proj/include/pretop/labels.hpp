#pragma once

#include <map>
#include <string>
#include <vector>

namespace pretop {

// Canonical element-label constructors. Every universal object built by the
// library (products, pullbacks, sums, quotients, function spaces) labels its
// elements with these, so independently computed objects compare bit-equal.

inline std::string lbl_pair(const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
}

inline std::string lbl_tag(const std::string& tag, const std::string& a) {
    return tag + "(" + a + ")";
}

// Function-table label: sorted by key, "{k>v;k>v}".
inline std::string lbl_table(const std::map<std::string, std::string>& t) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : t) {
        if (!first) out += ";";
        out += k + ">" + v;
        first = false;
    }
    return out + "}";
}

inline std::string lbl_triple(const std::string& a, const std::string& b,
                              const std::string& c) {
    return "(" + a + "," + b + "," + c + ")";
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

} // namespace pretop
