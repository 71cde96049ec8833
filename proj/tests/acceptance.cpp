#include "artifact/suite.hpp"

#include <iostream>

// One line per acceptance criterion; exit status 0 iff all pass.
int main(int argc, char** argv) {
    artifact::SuiteConfig cfg;
    for (int k = 1; k < argc; ++k) cfg.only.insert(argv[k]);
    const artifact::SuiteReport rep = artifact::run_suite(cfg);
    std::cout << artifact::render_lines(rep);
    std::cout << (rep.pass() ? "ALL PASS" : "FAILURES") << " (" << rep.criteria.size() << " criteria)\n";
    return rep.pass() ? 0 : 1;
}
