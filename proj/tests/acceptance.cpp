// Runs the full verification suite once and reports every criterion on its
// own line; the test fails if any criterion does.

#include <iostream>

#include <catch2/catch_amalgamated.hpp>

#include "flk/verify.hpp"

using namespace flk;

TEST_CASE("acceptance criteria") {
    VerifySuiteConfig cfg;
    auto results = run_verify(cfg);
    REQUIRE(results.size() == 15);
    for (const CheckResult& r : results) {
        std::cout << "criterion " << r.id << ": " << (r.pass ? "pass" : "fail") << " - "
                  << r.name << " (" << r.detail << ") [" << r.millis << " ms]" << std::endl;
    }
    for (const CheckResult& r : results) {
        INFO("criterion " << r.id << " (" << r.name << "): " << r.detail);
        CHECK(r.pass);
    }
    json report = report_to_json(results, cfg);
    CHECK(report.at("all_pass").get<bool>());
}
