#pragma once

#include "artifact/polyring.hpp"
#include "artifact/suite.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>

namespace artifact {

// Bad flags or parameters; exit code 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    long p = 5;
    int L = 2, M = 1;
    std::optional<int> r;  // homology: twist; verify-psi: single twist
    int r_max = 2;
    std::optional<int> n;  // homology: single degree
    int n_max = 3;
    std::vector<std::string> vars{"T"};
    std::vector<bool> laurent{false};
    int window = 6;
    int precision = 8;
    bool integral = false;  // verify-psi: integral mode
    std::set<std::string> suites;
    std::string format = "json";
    std::string output;  // empty: stdout
    unsigned workers = 0;
    bool corrupt_sign = false;

    RingSpec ring() const;
    // throws UsageError; returns warnings
    std::vector<std::string> validate() const;
};

nlohmann::json homology_report(const RunConfig& cfg);
nlohmann::json verify_psi_report(const RunConfig& cfg);
nlohmann::json verify_hkr_report(const RunConfig& cfg);
nlohmann::json mult_table_report(const RunConfig& cfg);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace artifact
