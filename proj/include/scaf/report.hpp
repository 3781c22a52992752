#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "scaf/algebra.hpp"

namespace scaf {

struct CaseRecord {
    std::string id;
    cplx expected{0.0, 0.0};
    cplx computed{0.0, 0.0};
    double residual = 0;
    double tol = 0;
    bool pass = true;
    std::string note;
};

struct IdentityReport {
    std::string suite;
    std::vector<CaseRecord> cases;
    bool pass = true;
    bool hypothesis_failed = false;  // maps to exit status 2
    std::string message;
    double wall_time = 0;

    // residual = |expected - computed|
    CaseRecord& add(const std::string& id, cplx expected, cplx computed, double tol, const std::string& note = "");
    CaseRecord& add_residual(const std::string& id, double residual, double tol, const std::string& note = "");
    void merge(const IdentityReport& other, const std::string& prefix = "");
    double max_residual() const;
    int exit_code() const { return hypothesis_failed ? 2 : (pass ? 0 : 1); }

    nlohmann::ordered_json to_json(bool with_time = false) const;
    std::string table() const;
};

}  // namespace scaf
