#pragma once

#include <json.hpp>

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace artifact {

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string key;        // selector used by --suite
    std::string statement;  // what is verified
    std::string tolerance = "exact";
    double budget_s = 0;    // 0: no budget
    double seconds = 0;
    std::vector<SuiteItem> items;
    std::string summary;
    bool pass() const;
};

struct SuiteConfig {
    std::set<std::string> only;  // keys or ids; empty: all
    unsigned workers = 0;        // 0: ARTIFACT_WORKERS or 1
    bool corrupt_sign = false;   // test fixture: run with the alternative mod-p product
};

struct SuiteReport {
    std::vector<CriterionResult> criteria;
    bool pass() const;
};

// Keys in order: derham, hkr, psi, operators, formality, dennis, mult, uc, controls.
std::vector<std::string> suite_keys();
SuiteReport run_suite(const SuiteConfig& cfg);

unsigned worker_count(unsigned requested);
// Runs f(0..n-1) on up to `workers` threads; results are collected by index.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& f);

// Deterministic: no timings.
nlohmann::json to_json(const SuiteReport& r);
// "[PASS] 3 ..." one line per criterion, with timings
std::string render_lines(const SuiteReport& r);

}  // namespace artifact
