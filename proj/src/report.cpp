#include "scaf/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace scaf {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", round12(x));
    return buf;
}

std::string cnum(cplx z) {
    if (std::abs(z.imag()) < 1e-13) return num(z.real());
    return num(z.real()) + (z.imag() < 0 ? "-" : "+") + num(std::abs(z.imag())) + "i";
}

}  // namespace

CaseRecord& IdentityReport::add(const std::string& id, cplx expected, cplx computed, double tol,
                                const std::string& note) {
    CaseRecord c;
    c.id = id;
    c.expected = expected;
    c.computed = computed;
    c.residual = std::abs(expected - computed);
    c.tol = tol;
    c.pass = c.residual <= tol;
    c.note = note;
    pass = pass && c.pass;
    cases.push_back(c);
    return cases.back();
}

CaseRecord& IdentityReport::add_residual(const std::string& id, double residual, double tol, const std::string& note) {
    CaseRecord c;
    c.id = id;
    c.computed = residual;
    c.residual = residual;
    c.tol = tol;
    c.pass = residual <= tol;
    c.note = note;
    pass = pass && c.pass;
    cases.push_back(c);
    return cases.back();
}

void IdentityReport::merge(const IdentityReport& other, const std::string& prefix) {
    for (auto c : other.cases) {
        c.id = prefix + c.id;
        cases.push_back(c);
    }
    pass = pass && other.pass;
    hypothesis_failed = hypothesis_failed || other.hypothesis_failed;
    wall_time += other.wall_time;
}

double IdentityReport::max_residual() const {
    double m = 0;
    for (const auto& c : cases) m = std::max(m, c.residual);
    return m;
}

nlohmann::ordered_json IdentityReport::to_json(bool with_time) const {
    using json = nlohmann::ordered_json;
    json j;
    j["suite"] = suite;
    j["pass"] = pass;
    if (hypothesis_failed) j["hypothesis_failed"] = true;
    if (!message.empty()) j["message"] = message;
    j["max_residual"] = round12(max_residual());
    json cs = json::array();
    for (const auto& c : cases) {
        json r;
        r["id"] = c.id;
        r["expected"] = {{"re", round12(c.expected.real())}, {"im", round12(c.expected.imag())}};
        r["computed"] = {{"re", round12(c.computed.real())}, {"im", round12(c.computed.imag())}};
        r["residual"] = round12(c.residual);
        r["tol"] = c.tol;
        r["pass"] = c.pass;
        if (!c.note.empty()) r["note"] = c.note;
        cs.push_back(r);
    }
    j["cases"] = cs;
    if (with_time) j["wall_time"] = wall_time;
    return j;
}

std::string IdentityReport::table() const {
    std::ostringstream out;
    size_t w = 4;
    for (const auto& c : cases) w = std::max(w, c.id.size());
    out << "suite " << suite << "\n";
    char line[512];
    std::snprintf(line, sizeof line, "%-*s  %-20s  %-20s  %-10s  %s\n", static_cast<int>(w), "case", "expected",
                  "computed", "residual", "ok");
    out << line;
    for (const auto& c : cases) {
        std::snprintf(line, sizeof line, "%-*s  %-20s  %-20s  %-10.3g  %s%s%s\n", static_cast<int>(w), c.id.c_str(),
                      cnum(c.expected).c_str(), cnum(c.computed).c_str(), c.residual, c.pass ? "pass" : "FAIL",
                      c.note.empty() ? "" : "  ", c.note.c_str());
        out << line;
    }
    if (!message.empty()) out << message << "\n";
    out << (hypothesis_failed ? "HYPOTHESIS NOT MET" : (pass ? "PASS" : "FAIL")) << "  (" << cases.size()
        << " cases, max residual " << num(max_residual()) << ")\n";
    return out.str();
}

}  // namespace scaf
