#include "entaudit/report.hpp"

#include <chrono>
#include <sstream>

namespace entaudit {

json RunReport::body() const {
    json b;
    b["schema"] = "entaudit.report/1";
    b["command"] = command;
    b["inputs"] = inputs;
    b["records"] = records;
    b["verdict"] = pass ? "PASS" : "FAIL";
    return b;
}

std::string RunReport::body_text() const { return body().dump(2) + "\n"; }

std::string RunReport::full_text(double wall_ms) const {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    std::ostringstream os;
    os << "# entaudit " << command << "\n";
    os << "# generated: " << stamp << "\n";
    os << "# wall_ms: " << static_cast<long long>(wall_ms) << "\n";
    os << body_text();
    return os.str();
}

std::string strip_report_header(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') out << line << "\n";
    return out.str();
}

}  // namespace entaudit
