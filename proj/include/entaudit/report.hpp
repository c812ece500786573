#pragma once

#include <string>

#include <json.hpp>

namespace entaudit {

using json = nlohmann::ordered_json;

// Self-describing check report. The body is a function of the inputs (and
// seed) alone, so identical runs serialize byte-identically; wall time and
// timestamps live in comment-style header lines outside the body.
struct RunReport {
    std::string command;
    json inputs = json::object();
    json records = json::object();
    bool pass = false;

    json body() const;
    std::string body_text() const;                 // deterministic
    std::string full_text(double wall_ms) const;   // header + body

    // PASS -> 0, FAIL -> 1 (usage errors are the CLI's concern).
    int exit_code() const { return pass ? 0 : 1; }
};

// Strips header lines (leading '#') — the part of a rendered report that the
// determinism guarantee covers.
std::string strip_report_header(const std::string& text);

}  // namespace entaudit
