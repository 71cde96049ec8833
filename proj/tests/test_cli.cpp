#include <doctest.h>

#include "artifact/cli.hpp"
#include "artifact/suite.hpp"

#include <sstream>

using namespace artifact;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<const char*> args) {
    args.insert(args.begin(), "artifact");
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("homology command") {
    Run r = run({"homology", "--p", "5", "--L", "2", "--M", "1", "--r", "2", "--window", "4"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    const auto& deg = j["relative_derham"][0]["degrees"];
    CHECK(deg["-1"]["dims_mod_p"] == 5);
    CHECK(deg["0"]["dims_mod_p"] == 9);
    CHECK(deg["1"]["dims_mod_p"] == 4);
    for (const auto& [k, v] : deg.items()) {
        CHECK(v["dims_mod_p"] == v["predicted_mod_p"]);
        for (const auto& t : v["integral"]["torsion"]) {
            const std::string s = t.get<std::string>();
            CHECK((s == "5" || s == "25" || s == "125" || s == "625"));
        }
    }

    Run h = run({"homology", "--p", "5", "--L", "3", "--M", "1", "--n", "0", "--window", "4"});
    REQUIRE(h.code == 0);
    auto hj = nlohmann::json::parse(h.out);
    const auto& hc0 = hj["bold"]["0"]["HC_bold"];
    CHECK(hc0["free_rank"] == 0);
    CHECK(hc0["torsion"].size() == 5);  // T^0..T^4
    for (const auto& t : hc0["torsion"]) CHECK(t == "25");
    CHECK(hj["pass"] == true);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({"homology", "--M", "0"}).code == 2);
    CHECK(run({"homology", "--L", "1", "--M", "1"}).code == 2);
    CHECK(run({"homology", "--p", "9"}).code == 2);
    CHECK(run({"homology", "--p", "2"}).code == 2);
    CHECK(run({"suite", "--suite", "nosuch"}).code == 2);
    CHECK(run({"mult-table", "--format", "xml"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"mult-table", "--rmax", "4"}).code == 2);  // r_max + 1 >= p
    Run w = run({"homology", "--M", "0"});
    CHECK(w.err.find("--M") != std::string::npos);
    CHECK(run({"verify-psi", "--nmax", "4", "--window", "2"}).err.find("warning") != std::string::npos);
}

TEST_CASE("deterministic JSON") {
    const std::vector<const char*> args{"verify-psi", "--p", "5", "--nmax", "2", "--window", "4"};
    Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["pass"] == true);
    Run s1 = run({"suite", "--suite", "dennis"}), s2 = run({"suite", "--suite", "6", "--workers", "2"});
    CHECK(s1.code == 0);
    CHECK(s1.out == s2.out);
}

TEST_CASE("mult-table renderings") {
    Run t = run({"mult-table", "--p", "5", "--L", "2", "--M", "1", "--rmax", "2", "--laurent", "1", "--format", "text"});
    CHECK(t.code == 0);
    CHECK(t.out.find("FAIL") == std::string::npos);
    Run c = run({"mult-table", "--rmax", "2", "--laurent", "1", "--format", "csv"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("op,r,i,family", 0) == 0);
    Run j = run({"mult-table", "--rmax", "2", "--laurent", "1", "--format", "json"});
    CHECK(nlohmann::json::parse(j.out)["table"]["passed"] == true);
}

TEST_CASE("suite selection and the corrupted-sign fixture") {
    Run psi = run({"suite", "--suite", "psi", "--format", "text"});
    CHECK(psi.code == 0);
    CHECK(psi.out.rfind("[PASS] 3 ", 0) == 0);
    CHECK(psi.out.find("[PASS] 1 ") == std::string::npos);

    Run bad = run({"suite", "--suite", "mult", "--corrupt-sign"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("Kato-cone mod-p product identities") != std::string::npos);
}

TEST_CASE("parallel_for collects by index") {
    std::vector<int> v(100);
    parallel_for(v.size(), 4, [&](std::size_t k) { v[k] = static_cast<int>(k * k); });
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(v[k] == static_cast<int>(k * k));
    CHECK_THROWS(parallel_for(10, 3, [](std::size_t k) {
        if (k == 7) throw std::runtime_error("x");
    }));
    CHECK(worker_count(3) == 3);
}
