#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "engine.hpp"

namespace dolce::testing {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot read " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(DOLCE_CASES_DIR) + "/" + name;
}

inline KnowledgeBase build(const std::string& text) {
    return build_kb(parse_document(text), default_taxonomy());
}

inline ClosedKB closed(const std::string& text, Options opts = {}) {
    return close_kb(build(text), std::move(opts));
}

inline ClosedKB closed_fixture(const std::string& name, Options opts = {}) {
    return close_kb(build(read_file(fixture_path(name))), std::move(opts));
}

inline std::vector<std::string> labels_of(const std::vector<Violation>& vs) {
    std::vector<std::string> out;
    for (const Violation& v : vs) out.push_back(v.label);
    return out;
}

inline bool has_label(const std::vector<Violation>& vs, const std::string& label) {
    for (const Violation& v : vs)
        if (v.label == label) return true;
    return false;
}

inline bool only_label(const std::vector<Violation>& vs, const std::string& label) {
    if (vs.empty()) return false;
    for (const Violation& v : vs)
        if (v.label != label) return false;
    return true;
}

}  // namespace dolce::testing
